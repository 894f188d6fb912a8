//! Objective functions, direction queries and call accounting.

use std::cell::Cell;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Axis, Point2, Segment};
use crate::scalar::Scalar;

pub mod corpus;
mod max_affine;
mod perturbed;

pub use max_affine::{AffinePiece, MaxAffine, SubgradientSelection};
pub use perturbed::{NoiseMode, PerturbedOracle};

/// A convex objective on the plane together with its declared constants.
///
/// `direction` is what the halving method consumes: any vector whose side
/// relative to a cut is meaningful. Exact oracles return the gradient;
/// perturbed ones return something within [`Objective::direction_error`] of
/// it.
pub trait Objective<T: Scalar> {
    fn value(&self, x: Point2<T>) -> Result<T>;

    /// Gradient, or a subgradient selection at kinks.
    fn gradient(&self, x: Point2<T>) -> Result<Point2<T>>;

    fn direction(&self, x: Point2<T>, _cut: Axis) -> Result<Point2<T>> {
        self.gradient(x)
    }

    /// `L` with `|f(x) - f(y)| <= L |x - y|` on the domain.
    fn lipschitz(&self) -> T;

    /// `M` with `|grad f(x) - grad f(y)| <= M |x - y|`; `None` when nonsmooth.
    fn grad_lipschitz(&self) -> Option<T>;

    /// Lipschitz constants of `d f / d x1` along `x1` and `d f / d x2` along
    /// `x2`, when known.
    fn axis_grad_lipschitz(&self) -> Option<[T; 2]> {
        None
    }

    /// Bound on `|direction(x) - gradient(x)|`.
    fn direction_error(&self) -> T {
        T::zero()
    }

    /// Lets an objective end a run early through its own stopping rule.
    fn stop_requested(&self) -> bool {
        false
    }
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for &O {
    fn value(&self, x: Point2<T>) -> Result<T> {
        (**self).value(x)
    }
    fn gradient(&self, x: Point2<T>) -> Result<Point2<T>> {
        (**self).gradient(x)
    }
    fn direction(&self, x: Point2<T>, cut: Axis) -> Result<Point2<T>> {
        (**self).direction(x, cut)
    }
    fn lipschitz(&self) -> T {
        (**self).lipschitz()
    }
    fn grad_lipschitz(&self) -> Option<T> {
        (**self).grad_lipschitz()
    }
    fn axis_grad_lipschitz(&self) -> Option<[T; 2]> {
        (**self).axis_grad_lipschitz()
    }
    fn direction_error(&self) -> T {
        (**self).direction_error()
    }
    fn stop_requested(&self) -> bool {
        (**self).stop_requested()
    }
}

impl<T: Scalar, O: Objective<T> + ?Sized> Objective<T> for Arc<O> {
    fn value(&self, x: Point2<T>) -> Result<T> {
        (**self).value(x)
    }
    fn gradient(&self, x: Point2<T>) -> Result<Point2<T>> {
        (**self).gradient(x)
    }
    fn direction(&self, x: Point2<T>, cut: Axis) -> Result<Point2<T>> {
        (**self).direction(x, cut)
    }
    fn lipschitz(&self) -> T {
        (**self).lipschitz()
    }
    fn grad_lipschitz(&self) -> Option<T> {
        (**self).grad_lipschitz()
    }
    fn axis_grad_lipschitz(&self) -> Option<[T; 2]> {
        (**self).axis_grad_lipschitz()
    }
    fn direction_error(&self) -> T {
        (**self).direction_error()
    }
    fn stop_requested(&self) -> bool {
        (**self).stop_requested()
    }
}

type ValueFn<T> = Arc<dyn Fn(Point2<T>) -> T + Send + Sync>;
type GradFn<T> = Arc<dyn Fn(Point2<T>) -> Point2<T> + Send + Sync>;

/// Objective built from closures.
#[derive(Clone)]
pub struct FnOracle<T> {
    value: ValueFn<T>,
    grad: GradFn<T>,
    lipschitz: T,
    grad_lipschitz: Option<T>,
    axis_grad_lipschitz: Option<[T; 2]>,
}

impl<T: Scalar> FnOracle<T> {
    pub fn new(
        value: impl Fn(Point2<T>) -> T + Send + Sync + 'static,
        grad: impl Fn(Point2<T>) -> Point2<T> + Send + Sync + 'static,
        lipschitz: T,
        grad_lipschitz: Option<T>,
    ) -> Self {
        FnOracle {
            value: Arc::new(value),
            grad: Arc::new(grad),
            lipschitz,
            grad_lipschitz,
            axis_grad_lipschitz: None,
        }
    }

    pub fn with_axis_constants(mut self, m: [T; 2]) -> Self {
        self.axis_grad_lipschitz = Some(m);
        self
    }
}

impl<T: Scalar> fmt::Debug for FnOracle<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnOracle")
            .field("lipschitz", &self.lipschitz)
            .field("grad_lipschitz", &self.grad_lipschitz)
            .finish_non_exhaustive()
    }
}

impl<T: Scalar> Objective<T> for FnOracle<T> {
    fn value(&self, x: Point2<T>) -> Result<T> {
        let v = (self.value)(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(non_finite("value", x))
        }
    }

    fn gradient(&self, x: Point2<T>) -> Result<Point2<T>> {
        let g = (self.grad)(x);
        if g.is_finite() {
            Ok(g)
        } else {
            Err(non_finite("gradient", x))
        }
    }

    fn lipschitz(&self) -> T {
        self.lipschitz
    }

    fn grad_lipschitz(&self) -> Option<T> {
        self.grad_lipschitz
    }

    fn axis_grad_lipschitz(&self) -> Option<[T; 2]> {
        self.axis_grad_lipschitz
    }
}

pub(crate) fn non_finite<T: Scalar>(what: &'static str, x: Point2<T>) -> Error {
    Error::NonFinite {
        what,
        x1: x.x1.as_f64(),
        x2: x.x2.as_f64(),
    }
}

/// Oracle calls made during one run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CallCounters {
    pub value_calls: u64,
    pub direction_calls: u64,
    pub full_grad_calls: u64,
}

/// Where a direction vector points relative to a cut line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Toward decreasing normal coordinate: below a horizontal cut, left of
    /// a vertical one.
    Negative,
    /// Toward increasing normal coordinate: above / right.
    Positive,
    /// Parallel to the cut.
    Along,
    /// Norm at or below the zero tolerance.
    Zero,
}

/// Classifies `v` against a cut running along `axis`.
pub fn classify<T: Scalar>(v: Point2<T>, axis: Axis, zero_tol: T) -> Side {
    if v.norm() <= zero_tol {
        return Side::Zero;
    }
    let n = v.normal(axis);
    if n > T::zero() {
        Side::Positive
    } else if n < T::zero() {
        Side::Negative
    } else {
        Side::Along
    }
}

/// Default zero tolerance when no budget is known.
pub fn default_zero_tol<T: Scalar>() -> T {
    T::lit(1e-12)
}

/// Per-run wrapper that counts every oracle call.
pub struct CountingOracle<'a, T: Scalar, O: Objective<T> + ?Sized> {
    inner: &'a O,
    counters: Cell<CallCounters>,
    _scalar: std::marker::PhantomData<T>,
}

impl<'a, T: Scalar, O: Objective<T> + ?Sized> CountingOracle<'a, T, O> {
    pub fn new(inner: &'a O) -> Self {
        CountingOracle {
            inner,
            counters: Cell::new(CallCounters::default()),
            _scalar: std::marker::PhantomData,
        }
    }

    pub fn inner(&self) -> &'a O {
        self.inner
    }

    pub fn counters(&self) -> CallCounters {
        self.counters.get()
    }

    fn bump(&self, f: impl FnOnce(&mut CallCounters)) {
        let mut c = self.counters.get();
        f(&mut c);
        self.counters.set(c);
    }

    pub fn value(&self, x: Point2<T>) -> Result<T> {
        self.bump(|c| c.value_calls += 1);
        self.inner.value(x)
    }

    pub fn gradient(&self, x: Point2<T>) -> Result<Point2<T>> {
        self.bump(|c| c.full_grad_calls += 1);
        self.inner.gradient(x)
    }

    /// Direction query at `x` on `seg`; returns the side and the vector seen.
    pub fn direction_side(
        &self,
        x: Point2<T>,
        seg: &Segment<T>,
        zero_tol: T,
    ) -> Result<(Side, Point2<T>)> {
        self.bump(|c| c.direction_calls += 1);
        let v = self.inner.direction(x, seg.axis)?;
        if !v.is_finite() {
            return Err(non_finite("direction", x));
        }
        Ok((classify(v, seg.axis, zero_tol), v))
    }
}

/// One-shot direction query with its own counter.
pub fn direction_side<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    x: Point2<T>,
    seg: &Segment<T>,
    zero_tol: T,
) -> Result<Side> {
    CountingOracle::new(o)
        .direction_side(x, seg, zero_tol)
        .map(|(s, _)| s)
}

/// `|grad f(x) - central difference estimate|` with step `h`.
pub fn finite_difference_check<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    x: Point2<T>,
    h: T,
) -> Result<T> {
    let e1 = Point2::new(h, T::zero());
    let e2 = Point2::new(T::zero(), h);
    let d1 = (o.value(x + e1)? - o.value(x - e1)?) / (T::two() * h);
    let d2 = (o.value(x + e2)? - o.value(x - e2)?) / (T::two() * h);
    Ok((o.gradient(x)? - Point2::new(d1, d2)).norm())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn horizontal(y: f64) -> Segment<f64> {
        Segment::new(Point2::new(0.0, y), Point2::new(1.0, y), Axis::Horizontal).unwrap()
    }

    #[test]
    fn tilted_linear_gradient_points_down() {
        let o = corpus::tilted_linear::<f64>();
        for x1 in [0.0, 0.3, 1.0] {
            let s =
                direction_side(&o.oracle, Point2::new(x1, 0.5), &horizontal(0.5), 1e-12).unwrap();
            assert_eq!(s, Side::Negative);
        }
    }

    #[test]
    fn absdiff_subgradient_flips_across_the_kink() {
        let o = corpus::absdiff::<f64>();
        let seg = horizontal(0.5);
        let left = Point2::new(0.3, 0.5);
        let right = Point2::new(0.7, 0.5);
        assert_eq!(o.oracle.gradient(left).unwrap(), Point2::new(-0.1, 1.0));
        let gr = o.oracle.gradient(right).unwrap();
        assert!((gr.x1 - 1.9).abs() < 1e-15 && gr.x2 == -1.0);
        assert_eq!(
            direction_side(&o.oracle, left, &seg, 1e-12).unwrap(),
            Side::Positive
        );
        assert_eq!(
            direction_side(&o.oracle, right, &seg, 1e-12).unwrap(),
            Side::Negative
        );
    }

    #[test]
    fn quartic_at_cut_endpoint() {
        let o = corpus::quartic::<f64>();
        let seg = Segment::new(
            Point2::new(-3.0, -1.0),
            Point2::new(1.0, -1.0),
            Axis::Horizontal,
        )
        .unwrap();
        let x = Point2::new(1.0, -1.0);
        assert_eq!(o.oracle.gradient(x).unwrap(), Point2::new(0.0, -4.0));
        assert_eq!(
            direction_side(&o.oracle, x, &seg, 1e-12).unwrap(),
            Side::Negative
        );
    }

    #[test]
    fn classify_along_and_zero() {
        assert_eq!(
            classify(Point2::new(2.0, 0.0), Axis::Horizontal, 1e-12),
            Side::Along
        );
        assert_eq!(
            classify(Point2::new(0.0, 3.0), Axis::Vertical, 1e-12),
            Side::Along
        );
        assert_eq!(
            classify(Point2::new(1e-13, 0.0), Axis::Vertical, 1e-12),
            Side::Zero
        );
        assert_eq!(
            classify(Point2::new(-1.0, 0.0), Axis::Vertical, 1e-12),
            Side::Negative
        );
    }

    #[test]
    fn counters_separate_value_and_direction_calls() {
        let o = corpus::sphere::<f64>();
        let c = CountingOracle::new(&o.oracle);
        let seg = horizontal(0.0);
        c.direction_side(Point2::new(0.2, 0.0), &seg, 1e-12)
            .unwrap();
        c.direction_side(Point2::new(0.4, 0.0), &seg, 1e-12)
            .unwrap();
        c.value(Point2::new(0.1, 0.1)).unwrap();
        assert_eq!(
            c.counters(),
            CallCounters {
                value_calls: 1,
                direction_calls: 2,
                full_grad_calls: 0
            }
        );
        c.gradient(Point2::zero()).unwrap();
        assert_eq!(c.counters().full_grad_calls, 1);
    }

    #[test]
    fn non_finite_values_are_errors() {
        let o = FnOracle::new(
            |x: Point2<f64>| 1.0 / x.x1,
            |_| Point2::new(f64::NAN, 0.0),
            1.0,
            None,
        );
        assert!(matches!(
            o.value(Point2::zero()),
            Err(Error::NonFinite { .. })
        ));
        let seg = horizontal(0.0);
        assert!(direction_side(&o, Point2::new(0.5, 0.0), &seg, 1e-12).is_err());
    }

    #[test]
    fn finite_differences_agree_with_analytic_gradients() {
        let q = corpus::quartic::<f64>();
        assert!(finite_difference_check(&q.oracle, Point2::zero(), 1e-5).unwrap() <= 1e-6);
        let t = corpus::tilted_linear::<f64>();
        for x in [
            Point2::new(0.1, 0.9),
            Point2::new(0.5, 0.5),
            Point2::new(0.77, 0.01),
        ] {
            assert!(finite_difference_check(&t.oracle, x, 1e-5).unwrap() <= 1e-10);
        }
        let e = corpus::exp_sum::<f64>();
        assert!(finite_difference_check(&e.oracle, Point2::zero(), 1e-5).unwrap() <= 1e-5);
    }
}
