use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{AxisBox, Point2};
use crate::halving::{IterationRecord, RegionRecord, RunTrace, Solution, StopReason};
use crate::oracle::{CountingOracle, Objective};
use crate::scalar::Scalar;

use super::keep_record;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GradientOptions<T> {
    /// Stop once the value is within `eps` of this.
    pub known_minimum: Option<T>,
    /// Starting point, projected onto the square. Defaults to its center.
    pub start: Option<Point2<T>>,
    /// Hard cap on iterations, applied on top of the smooth-convex bound.
    pub max_iter: u64,
}

impl<T> Default for GradientOptions<T> {
    fn default() -> Self {
        GradientOptions {
            known_minimum: None,
            start: None,
            max_iter: 1_000_000,
        }
    }
}

/// `ceil(M D^2 / (2 eps))` with `D = 2 R sqrt 2` for a square of side `R`.
pub fn gradient_iteration_bound<T: Scalar>(grad_lipschitz: T, side: T, eps: T) -> u64 {
    let d = T::two() * side * T::sqrt2();
    let v = (grad_lipschitz * d * d / (T::two() * eps)).ceil();
    v.to_u64().unwrap_or(u64::MAX)
}

/// Projected gradient descent with step `1 / M`. One full gradient per
/// iteration; in known-minimum mode also one value call.
pub fn gradient_descent_solve<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    square: &AxisBox<T>,
    eps: T,
    opts: &GradientOptions<T>,
) -> Result<Solution<T>> {
    if !(eps > T::zero()) {
        return Err(Error::param("eps", "must be positive"));
    }
    let m = o
        .grad_lipschitz()
        .ok_or(Error::NonSmooth("gradient descent needs a step 1/M"))?;
    if !(m > T::zero() && m.is_finite()) {
        return Err(Error::param("grad_lipschitz", "step 1/M needs M > 0"));
    }
    let side = square.width().max(square.height());
    let cap = gradient_iteration_bound(m, side, eps).min(opts.max_iter);
    let counting = CountingOracle::new(o);
    let step = T::one() / m;
    let mut x = square.project(opts.start.unwrap_or(square.center));
    let mut records = Vec::new();
    let mut k = 0u64;
    let mut stop_reason = StopReason::IterationBudget;
    while k < cap {
        if let Some(fs) = opts.known_minimum {
            if counting.value(x)? - fs <= eps {
                stop_reason = StopReason::TargetGap;
                break;
            }
        }
        let g = counting.gradient(x)?;
        let next = square.project(x - g * step);
        if keep_record(k) {
            records.push(IterationRecord {
                index: k.min(u32::MAX as u64) as u32,
                region: RegionRecord::Point { at: x },
                cuts: Vec::new(),
                counters: counting.counters(),
            });
        }
        k += 1;
        if next == x {
            // fixed point of the projected step: optimal on the square
            stop_reason = StopReason::ZeroGradient;
            break;
        }
        x = next;
    }
    let value = o.value(x)?;
    Ok(Solution {
        point: x,
        value,
        trace: RunTrace {
            method: "gd".into(),
            epsilon: eps,
            iterations_budget: cap.min(u32::MAX as u64) as u32,
            iterations_run: k.min(u32::MAX as u64) as u32,
            inner_delta: T::zero(),
            grad_delta_cap: T::zero(),
            records,
            final_region: RegionRecord::Point { at: x },
            counters: counting.counters(),
            stop_reason,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::corpus;

    #[test]
    fn exact_quadratic_step() {
        let e = corpus::sphere::<f64>();
        let opts = GradientOptions {
            start: Some(Point2::new(1.0, 1.0)),
            ..Default::default()
        };
        let s = gradient_descent_solve(&e.oracle, &e.domain, 1e-6, &opts).unwrap();
        assert_eq!(s.point, Point2::new(0.0, 0.0));
        assert_eq!(s.trace.records.len(), 2);
        assert_eq!(
            s.trace.records[1].region,
            RegionRecord::Point { at: Point2::zero() }
        );
    }

    #[test]
    fn quartic_known_minimum() {
        let e = corpus::quartic::<f64>();
        let opts = GradientOptions {
            known_minimum: Some(0.0),
            ..Default::default()
        };
        let s = gradient_descent_solve(&e.oracle, &e.domain, 5e-3, &opts).unwrap();
        assert_eq!(s.trace.stop_reason, StopReason::TargetGap);
        assert!(s.value <= 5e-3);
        assert_eq!(
            s.trace.counters.full_grad_calls,
            s.trace.iterations() as u64
        );
    }

    #[test]
    fn values_never_increase() {
        for e in [corpus::quartic::<f64>(), corpus::exp_sum()] {
            let opts = GradientOptions {
                max_iter: 500,
                ..Default::default()
            };
            let s = gradient_descent_solve(&e.oracle, &e.domain, 1e-8, &opts).unwrap();
            let vals: Vec<f64> = s
                .trace
                .records
                .iter()
                .map(|r| match r.region {
                    RegionRecord::Point { at } => e.oracle.value(at).unwrap(),
                    _ => panic!(),
                })
                .collect();
            for w in vals.windows(2) {
                assert!(w[1] <= w[0] + 1e-15, "{} > {}", w[1], w[0]);
            }
        }
    }

    #[test]
    fn nonsmooth_is_rejected() {
        let e = corpus::max_affine::<f64>();
        let r = gradient_descent_solve(&e.oracle, &e.domain, 1e-3, &GradientOptions::default());
        assert!(matches!(r, Err(Error::NonSmooth(_))));
    }
}
