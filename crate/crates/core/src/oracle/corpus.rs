//! Built-in test functions with their domains, optima and declared constants.
//!
//! Constants are suprema over the stated square:
//!
//! | id              | domain     | L                           | M        |
//! |-----------------|------------|-----------------------------|----------|
//! | `quartic`       | [-3, 1]^2  | hypot(8, 108)               | 108      |
//! | `maxaffine`     | [-3, 1]^2  | 2                           | nonsmooth|
//! | `tilted-linear` | [0, 1]^2   | hypot(1, 0.001)             | 0        |
//! | `absdiff`       | [0, 1]^2   | hypot(1.9, 1)               | nonsmooth|
//! | `exp-sum`       | [-3, 1]^2  | hypot(3 + e, 2 + e^2)       | 2 + e^2  |
//! | `sphere`        | [-1, 1]^2  | 2 sqrt(2)                   | 2        |

use std::sync::Arc;

use super::{AffinePiece, FnOracle, MaxAffine, Objective, SubgradientSelection};
use crate::geometry::{AxisBox, Point2};
use crate::scalar::Scalar;

pub type SharedObjective<T> = Arc<dyn Objective<T> + Send + Sync>;

#[derive(Clone)]
pub struct CorpusEntry<T> {
    pub id: &'static str,
    pub description: &'static str,
    pub domain: AxisBox<T>,
    /// Minimum of the objective over `domain`.
    pub minimum: T,
    pub minimizer: Point2<T>,
    pub smooth: bool,
    pub oracle: SharedObjective<T>,
}

impl<T: Scalar> std::fmt::Debug for CorpusEntry<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CorpusEntry")
            .field("id", &self.id)
            .field("domain", &self.domain)
            .field("minimum", &self.minimum)
            .finish_non_exhaustive()
    }
}

fn square<T: Scalar>(lo: f64, hi: f64) -> AxisBox<T> {
    AxisBox::from_corners(
        Point2::new(T::lit(lo), T::lit(lo)),
        Point2::new(T::lit(hi), T::lit(hi)),
    )
    .expect("valid corpus square")
}

pub const IDS: [&str; 6] = [
    "quartic",
    "maxaffine",
    "tilted-linear",
    "absdiff",
    "exp-sum",
    "sphere",
];

/// `(x1 - 1)^2 + x2^4`; minimum 0 at `(1, 0)` on the square edge.
pub fn quartic<T: Scalar>() -> CorpusEntry<T> {
    let one = T::one();
    let oracle = FnOracle::new(
        move |x: Point2<T>| (x.x1 - one).powi(2) + x.x2.powi(4),
        move |x: Point2<T>| Point2::new(T::two() * (x.x1 - one), T::lit(4.0) * x.x2.powi(3)),
        T::lit(8.0).hypot(T::lit(108.0)),
        Some(T::lit(108.0)),
    )
    .with_axis_constants([T::two(), T::lit(108.0)]);
    CorpusEntry {
        id: "quartic",
        description: "(x1 - 1)^2 + x2^4 on [-3, 1]^2",
        domain: square(-3.0, 1.0),
        minimum: T::zero(),
        minimizer: Point2::new(one, T::zero()),
        smooth: true,
        oracle: Arc::new(oracle),
    }
}

/// `max{2 x1 + 6, -x1, x2 + 3, -2 x2}`; all four pieces equal 2 at `(-2, -1)`.
pub fn max_affine<T: Scalar>() -> CorpusEntry<T> {
    let l = T::lit;
    let f = MaxAffine::new(
        vec![
            AffinePiece::new(l(2.0), l(0.0), l(6.0)),
            AffinePiece::new(l(-1.0), l(0.0), l(0.0)),
            AffinePiece::new(l(0.0), l(1.0), l(3.0)),
            AffinePiece::new(l(0.0), l(-2.0), l(0.0)),
        ],
        SubgradientSelection::default(),
    );
    CorpusEntry {
        id: "maxaffine",
        description: "max{2 x1 + 6, -x1, x2 + 3, -2 x2} on [-3, 1]^2",
        domain: square(-3.0, 1.0),
        minimum: l(2.0),
        minimizer: Point2::new(l(-2.0), l(-1.0)),
        smooth: false,
        oracle: Arc::new(f),
    }
}

/// `x1 - 0.001 x2`; minimum -0.001 at `(0, 1)`. Linear in both variables, so
/// both axis constants are zero.
pub fn tilted_linear<T: Scalar>() -> CorpusEntry<T> {
    let tilt = T::lit(0.001);
    let oracle = FnOracle::new(
        move |x: Point2<T>| x.x1 - tilt * x.x2,
        move |_| Point2::new(T::one(), -tilt),
        T::one().hypot(tilt),
        Some(T::zero()),
    )
    .with_axis_constants([T::zero(), T::zero()]);
    CorpusEntry {
        id: "tilted-linear",
        description: "x1 - 0.001 x2 on [0, 1]^2",
        domain: square(0.0, 1.0),
        minimum: -tilt,
        minimizer: Point2::new(T::zero(), T::one()),
        smooth: true,
        oracle: Arc::new(oracle),
    }
}

/// `|x1 - x2| + 0.9 x1 = max{1.9 x1 - x2, x2 - 0.1 x1}`; minimum 0 at the
/// origin.
///
/// The `1.9 x1 - x2` piece is declared first and pieces within `1e-3` of the
/// max count as active, so on the kink `x1 = x2` (and anywhere a line search
/// lands near it) the subgradient is `(1.9, -1)`.
pub fn absdiff<T: Scalar>() -> CorpusEntry<T> {
    let l = T::lit;
    let f = MaxAffine::new(
        vec![
            AffinePiece::new(l(1.9), l(-1.0), l(0.0)),
            AffinePiece::new(l(-0.1), l(1.0), l(0.0)),
        ],
        SubgradientSelection::FirstActive { tol: l(1e-3) },
    );
    CorpusEntry {
        id: "absdiff",
        description: "|x1 - x2| + 0.9 x1 on [0, 1]^2",
        domain: square(0.0, 1.0),
        minimum: T::zero(),
        minimizer: Point2::zero(),
        smooth: false,
        oracle: Arc::new(f),
    }
}

/// Stationary point of `exp-sum`: roots of `2 x1 + 1 + e^x1 = 0` and
/// `2 x2 + e^(x2 + 1) = 0`.
pub const EXP_SUM_MINIMIZER: (f64, f64) = (-0.738_835_031_131_607_8, -0.685_076_942_154_593_9);
pub const EXP_SUM_MINIMUM: f64 = 3.124_196_535_339_928_4;

/// `(x1 + 1)^2 + x2^2 - x1 + e^x1 + e^(x2 + 1)`.
pub fn exp_sum<T: Scalar>() -> CorpusEntry<T> {
    let one = T::one();
    let two = T::two();
    let e = one.exp();
    let oracle = FnOracle::new(
        move |x: Point2<T>| {
            (x.x1 + one).powi(2) + x.x2 * x.x2 - x.x1 + x.x1.exp() + (x.x2 + one).exp()
        },
        move |x: Point2<T>| {
            Point2::new(
                two * x.x1 + one + x.x1.exp(),
                two * x.x2 + (x.x2 + one).exp(),
            )
        },
        // both partials are increasing; largest magnitudes at (1, 1)
        (T::lit(3.0) + e).hypot(two + e * e),
        Some(two + e * e),
    )
    .with_axis_constants([two + e, two + e * e]);
    CorpusEntry {
        id: "exp-sum",
        description: "(x1 + 1)^2 + x2^2 - x1 + e^x1 + e^(x2 + 1) on [-3, 1]^2",
        domain: square(-3.0, 1.0),
        minimum: T::lit(EXP_SUM_MINIMUM),
        minimizer: Point2::new(T::lit(EXP_SUM_MINIMIZER.0), T::lit(EXP_SUM_MINIMIZER.1)),
        smooth: true,
        oracle: Arc::new(oracle),
    }
}

/// `x1^2 + x2^2` on `[-1, 1]^2`.
pub fn sphere<T: Scalar>() -> CorpusEntry<T> {
    let oracle = FnOracle::new(
        |x: Point2<T>| x.x1 * x.x1 + x.x2 * x.x2,
        |x: Point2<T>| x * T::two(),
        T::two() * T::sqrt2(),
        Some(T::two()),
    )
    .with_axis_constants([T::two(), T::two()]);
    CorpusEntry {
        id: "sphere",
        description: "x1^2 + x2^2 on [-1, 1]^2",
        domain: square(-1.0, 1.0),
        minimum: T::zero(),
        minimizer: Point2::zero(),
        smooth: true,
        oracle: Arc::new(oracle),
    }
}

pub fn corpus<T: Scalar>() -> Vec<CorpusEntry<T>> {
    vec![
        quartic(),
        max_affine(),
        tilted_linear(),
        absdiff(),
        exp_sum(),
        sphere(),
    ]
}

pub fn lookup<T: Scalar>(id: &str) -> Option<CorpusEntry<T>> {
    corpus().into_iter().find(|e| e.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn grid_min(e: &CorpusEntry<f64>, n: usize) -> (f64, Point2<f64>) {
        let (lo, hi) = (e.domain.lo(), e.domain.hi());
        let mut best = (f64::INFINITY, Point2::zero());
        for i in 0..=n {
            for j in 0..=n {
                let x = Point2::new(
                    lo.x1 + (hi.x1 - lo.x1) * i as f64 / n as f64,
                    lo.x2 + (hi.x2 - lo.x2) * j as f64 / n as f64,
                );
                let v = e.oracle.value(x).unwrap();
                if v < best.0 {
                    best = (v, x);
                }
            }
        }
        best
    }

    /// Bisection on an increasing function.
    fn bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if f(m) > 0.0 {
                b = m;
            } else {
                a = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn ids_are_unique_and_resolvable() {
        for id in IDS {
            assert_eq!(lookup::<f64>(id).unwrap().id, id);
        }
        assert!(lookup::<f64>("nope").is_none());
    }

    #[test]
    fn max_affine_minimum_by_grid() {
        let e = max_affine::<f64>();
        // grid of step 1/100 hits (-2, -1) exactly
        let (v, x) = grid_min(&e, 400);
        assert!((v - 2.0).abs() < 1e-12);
        assert!((x.x1 + 2.0).abs() < 1e-12 && (x.x2 + 1.0).abs() < 1e-12);
        assert_eq!(e.oracle.value(e.minimizer).unwrap(), 2.0);
    }

    #[test]
    fn absdiff_minimum_at_origin() {
        let e = absdiff::<f64>();
        let (v, _) = grid_min(&e, 200);
        assert_eq!(v, 0.0);
        assert_eq!(e.oracle.value(Point2::new(0.5, 0.5)).unwrap(), 0.45);
    }

    #[test]
    fn exp_sum_minimizer_by_bisection() {
        let x1 = bisect(|t| 2.0 * t + 1.0 + t.exp(), -3.0, 1.0);
        let x2 = bisect(|t| 2.0 * t + (t + 1.0).exp(), -3.0, 1.0);
        assert!((x1 - EXP_SUM_MINIMIZER.0).abs() < 1e-14);
        assert!((x2 - EXP_SUM_MINIMIZER.1).abs() < 1e-14);
        let e = exp_sum::<f64>();
        let v = e.oracle.value(Point2::new(x1, x2)).unwrap();
        assert!((v - EXP_SUM_MINIMUM).abs() < 1e-14);
        let (g, _) = grid_min(&e, 400);
        assert!(g >= EXP_SUM_MINIMUM);
    }

    #[test]
    fn smooth_optima_match_grid() {
        for e in [quartic::<f64>(), tilted_linear(), sphere()] {
            let (g, _) = grid_min(&e, 400);
            assert!(g >= e.minimum - 1e-15, "{}", e.id);
            assert_eq!(e.oracle.value(e.minimizer).unwrap(), e.minimum, "{}", e.id);
        }
    }

    #[test]
    fn declared_constants_hold_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for e in corpus::<f64>() {
            let (lo, hi) = (e.domain.lo(), e.domain.hi());
            let mut draw =
                || Point2::new(rng.gen_range(lo.x1..=hi.x1), rng.gen_range(lo.x2..=hi.x2));
            let l = e.oracle.lipschitz();
            let m = e.oracle.grad_lipschitz();
            for _ in 0..10_000 {
                let (x, y) = (draw(), draw());
                let d = (x - y).norm();
                let df = (e.oracle.value(x).unwrap() - e.oracle.value(y).unwrap()).abs();
                assert!(df <= l * d * (1.0 + 1e-12) + 1e-14, "{} L", e.id);
                if let Some(m) = m {
                    let dg = (e.oracle.gradient(x).unwrap() - e.oracle.gradient(y).unwrap()).norm();
                    assert!(dg <= m * d * (1.0 + 1e-12) + 1e-14, "{} M", e.id);
                }
            }
        }
    }

    #[test]
    fn single_precision_corpus_evaluates() {
        let e = exp_sum::<f32>();
        let v = e.oracle.value(e.minimizer).unwrap();
        assert!((v - EXP_SUM_MINIMUM as f32).abs() < 1e-5);
    }
}
