//! Golden-section minimization along a cut segment.
//!
//! The search runs in the segment parameter `t ∈ [0, 1]` and stops once the
//! bracket is at most `2 * delta` long in physical units, returning the
//! bracket midpoint. The objective is assumed convex along the segment;
//! nothing checks it.

use crate::error::{Error, Result};
use crate::geometry::{Point2, Segment};
use crate::scalar::Scalar;

/// Hard cap on shrink steps; the bracket is below `1e-300` long well before.
const MAX_SHRINKS: u32 = 4096;

/// Search interval `[lo, lo + width)` whose width after `steps` shrinks is
/// `initial_width * rho^steps`, with `rho` the golden contraction factor.
///
/// The width is recomputed from the step count on every access instead of
/// being multiplied in place, so it never accumulates rounding drift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket<T> {
    pub lo: T,
    pub initial_width: T,
    pub steps: u32,
}

impl<T: Scalar> Bracket<T> {
    pub fn new(lo: T, hi: T) -> Self {
        Bracket {
            lo,
            initial_width: hi - lo,
            steps: 0,
        }
    }

    #[inline]
    pub fn width(&self) -> T {
        self.initial_width * T::golden_ratio_conj().powf(T::lit(f64::from(self.steps)))
    }

    #[inline]
    pub fn hi(&self) -> T {
        self.lo + self.width()
    }

    #[inline]
    pub fn midpoint(&self) -> T {
        self.lo + self.width() * T::half()
    }

    /// Interior probe points `(lower, upper)`.
    #[inline]
    pub fn probes(&self) -> (T, T) {
        let rho = T::golden_ratio_conj();
        let w = self.width();
        (self.lo + (T::one() - rho) * w, self.lo + rho * w)
    }

    fn keep_lower(self) -> Self {
        Bracket {
            steps: self.steps + 1,
            ..self
        }
    }

    fn keep_upper(self) -> Self {
        let (lower_probe, _) = self.probes();
        Bracket {
            lo: lower_probe,
            initial_width: self.initial_width,
            steps: self.steps + 1,
        }
    }
}

/// One golden-section step: given the values at the two interior probes,
/// drop the end beyond the worse probe. Ties keep the lower part.
pub fn bracket_shrink_step<T: Scalar>(b: Bracket<T>, f_lower: T, f_upper: T) -> Bracket<T> {
    if f_lower <= f_upper {
        b.keep_lower()
    } else {
        b.keep_upper()
    }
}

/// A convex function restricted to a segment, evaluated by parameter `t`.
pub struct LineProblem<'s, T, F> {
    pub seg: &'s Segment<T>,
    pub eval: F,
}

impl<'s, T: Scalar, F: FnMut(T) -> Result<T>> LineProblem<'s, T, F> {
    pub fn new(seg: &'s Segment<T>, eval: F) -> Self {
        LineProblem { seg, eval }
    }
}

/// Restricts a point function to `seg`.
pub fn restrict<'s, T: Scalar>(
    seg: &'s Segment<T>,
    mut f: impl FnMut(Point2<T>) -> Result<T> + 's,
) -> LineProblem<'s, T, impl FnMut(T) -> Result<T> + 's> {
    LineProblem::new(seg, move |t| f(seg.at(t)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineMinimum<T> {
    pub point: Point2<T>,
    pub t: T,
    pub evaluations: u32,
}

/// Upper bound on evaluations for a segment of length `len` at accuracy
/// `delta`: `ceil(ln(len / (2 delta)) / ln(1 / rho)) + 2`.
pub fn eval_bound<T: Scalar>(len: T, delta: T) -> u32 {
    if len <= T::two() * delta {
        return 0;
    }
    let rho = T::golden_ratio_conj();
    let k = ((len / (T::two() * delta)).ln() / (T::one() / rho).ln()).ceil();
    k.to_u32().unwrap_or(u32::MAX).saturating_add(2)
}

/// Minimizes along the segment to argument accuracy `delta_arg`.
///
/// The returned point lies within `delta_arg` of a minimizer on the segment.
/// When the segment is no longer than `2 * delta_arg` its midpoint is
/// returned without evaluating anything (this covers `delta_arg = +inf`).
pub fn golden_section<T: Scalar, F: FnMut(T) -> Result<T>>(
    p: LineProblem<'_, T, F>,
    delta_arg: T,
) -> Result<LineMinimum<T>> {
    let LineProblem { seg, mut eval } = p;
    if delta_arg.is_nan() || delta_arg <= T::zero() {
        return Err(Error::param("delta_arg", "must be positive"));
    }
    let len = seg.length();
    let half = T::half();
    if len <= T::two() * delta_arg {
        return Ok(LineMinimum {
            point: seg.at(half),
            t: half,
            evaluations: 0,
        });
    }
    let target = T::two() * delta_arg / len;

    let mut evals = 0u32;
    let mut f = |t: T| -> Result<T> {
        evals += 1;
        let v = eval(t)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFiniteLineValue)
        }
    };

    let mut br = Bracket::new(T::zero(), T::one());
    let (c, d) = br.probes();
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    loop {
        let kept_lower = fc <= fd;
        br = bracket_shrink_step(br, fc, fd);
        if br.width() <= target || br.steps >= MAX_SHRINKS {
            break;
        }
        let (c, d) = br.probes();
        if kept_lower {
            // old lower probe is the new upper probe
            fd = fc;
            fc = f(c)?;
        } else {
            fc = fd;
            fd = f(d)?;
        }
    }
    let t = br.midpoint();
    Ok(LineMinimum {
        point: seg.at(t),
        t,
        evaluations: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Axis;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use proptest::prelude::*;

    fn unit_segment() -> Segment<f64> {
        Segment::new(
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Axis::Horizontal,
        )
        .unwrap()
    }

    fn ulps_between(a: f64, b: f64) -> f64 {
        (a - b).abs() / f64::EPSILON / b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn quadratic_minimizer_found() {
        let seg = unit_segment();
        let r =
            golden_section(LineProblem::new(&seg, |t: f64| Ok((t - 0.3).powi(2))), 1e-6).unwrap();
        assert!((r.point.x1 - 0.3).abs() <= 1e-6);
        assert!(r.evaluations <= eval_bound(1.0, 1e-6));
    }

    #[test]
    fn monotone_function_goes_to_left_end() {
        let seg = unit_segment();
        let r = golden_section(LineProblem::new(&seg, |t: f64| Ok(t)), 1e-4).unwrap();
        assert!(r.point.x1 <= 1e-4);
    }

    #[test]
    fn quartic_restricted_to_experiment_cut() {
        // f = (x1 - 1)^2 + x2^4 on the cut x2 = -1 of [-3, 1]^2: minimum at the right end
        let seg = Segment::new(
            Point2::new(-3.0, -1.0),
            Point2::new(1.0, -1.0),
            Axis::Horizontal,
        )
        .unwrap();
        let r = golden_section(
            restrict(&seg, |x: Point2<f64>| {
                Ok((x.x1 - 1.0).powi(2) + x.x2.powi(4))
            }),
            1e-6,
        )
        .unwrap();
        assert!((r.point.x1 - 1.0).abs() <= 1e-6);
        assert_eq!(r.point.x2, -1.0);
    }

    #[test]
    fn short_segment_returns_midpoint_without_evaluations() {
        let seg = unit_segment();
        let r = golden_section(
            LineProblem::new(&seg, |_t: f64| -> Result<f64> { panic!("no eval") }),
            f64::INFINITY,
        )
        .unwrap();
        assert_eq!(r.point, Point2::new(0.5, 0.0));
        assert_eq!(r.evaluations, 0);
    }

    #[test]
    fn rejects_bad_delta_and_nonfinite_values() {
        let seg = unit_segment();
        assert!(golden_section(LineProblem::new(&seg, |t: f64| Ok(t)), 0.0).is_err());
        assert!(golden_section(LineProblem::new(&seg, |t: f64| Ok(t)), f64::NAN).is_err());
        let r = golden_section(LineProblem::new(&seg, |_t: f64| Ok(f64::NAN)), 1e-3);
        assert_eq!(r, Err(Error::NonFiniteLineValue));
    }

    #[test]
    fn shrink_step_lengths() {
        let rho = f64::golden_ratio_conj();
        let b = Bracket::new(0.0f64, 1.0);
        let b1 = bracket_shrink_step(b, 0.0, 1.0);
        assert!((b1.width() - 0.618_033_988_749_894_9).abs() < 1e-15);
        let b2 = bracket_shrink_step(b1, 1.0, 0.0);
        assert!((b2.width() - 0.381_966_011_250_105_1).abs() < 1e-15);
        assert!((b2.width() - rho * rho).abs() < 1e-16);
        // keep-upper moves the low end to the old lower probe
        assert_eq!(b2.lo, b1.probes().0);
    }

    #[test]
    fn works_in_single_precision() {
        let seg = Segment::new(
            Point2::new(0.0f32, 0.0),
            Point2::new(2.0, 0.0),
            Axis::Horizontal,
        )
        .unwrap();
        let r = golden_section(LineProblem::new(&seg, |t: f32| Ok((t - 0.7).abs())), 1e-3).unwrap();
        assert!((r.point.x1 - 1.4).abs() <= 1e-3 + 1e-6);
    }

    /// Exact `len * rho^k` with `rho` the rounded constant, as a rational.
    fn exact_width(len: f64, k: u32) -> f64 {
        let rho = BigRational::from_float(f64::golden_ratio_conj()).unwrap();
        let mut acc = BigRational::from_float(len).unwrap();
        for _ in 0..k {
            acc *= &rho;
        }
        // rational -> f64 via a scaled integer division
        let scale = BigInt::from(1u8) << 200usize;
        let q = (acc * BigRational::from_integer(scale.clone())).to_integer();
        let q: f64 = q.to_string().parse().unwrap();
        let s: f64 = scale.to_string().parse().unwrap();
        q / s
    }

    proptest! {
        #[test]
        fn bracket_width_follows_power_law(
            lo in -50.0f64..50.0,
            len in 1e-3f64..1e3,
            pattern in proptest::collection::vec(any::<bool>(), 1..60),
        ) {
            let mut b = Bracket::new(lo, lo + len);
            let len = b.initial_width;
            for &lower in &pattern {
                b = if lower { bracket_shrink_step(b, 0.0, 1.0) } else { bracket_shrink_step(b, 1.0, 0.0) };
            }
            let k = pattern.len() as u32;
            let exact = exact_width(len, k);
            prop_assert!(ulps_between(b.width(), exact) <= 4.0,
                "k={} width={} exact={}", k, b.width(), exact);
        }

        #[test]
        fn grid_referee_bounds_value(
            a in 0.1f64..5.0,
            t0 in -0.5f64..1.5,
            slope in -1.0f64..1.0,
            kink in 0.0f64..1.0,
            w in 0.0f64..2.0,
        ) {
            let f = move |t: f64| a * (t - t0).powi(2) + slope * t + w * (t - kink).abs();
            let seg = unit_segment();
            let delta = 1e-5;
            let r = golden_section(LineProblem::new(&seg, |t| Ok(f(t))), delta).unwrap();
            let spacing = 10.0 * delta;
            let n = (1.0 / spacing).round() as usize;
            let grid_min = (0..=n).map(|i| f(i as f64 * spacing)).fold(f64::INFINITY, f64::min);
            let lip = 2.0 * a * (1.0 + t0.abs() + 1.0) + slope.abs() + w;
            prop_assert!(f(r.t) <= grid_min + lip * delta + 1e-12);
        }
    }
}
