//! The square method: two center cuts per iteration, each resolved by a line
//! search on the cut and a single direction query at its result.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{horizontal_cut, split, vertical_cut, Axis, AxisBox, Point2, Segment};
use crate::oned::{golden_section, restrict};
use crate::oracle::{default_zero_tol, CountingOracle, Objective, Side};
use crate::scalar::Scalar;

mod budget;
pub mod trace;

pub use budget::{accuracy_budget, inexact_budget_ok, required_delta, required_iterations, Budget};
pub use trace::{CutRecord, Decision, IterationRecord, RegionRecord, RunTrace, StopReason};

/// Knobs for a halving run. Defaults follow the derived budget.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HalvingOptions<T> {
    /// Replaces the derived line-search accuracy.
    pub delta: Option<T>,
    /// Replaces the derived iteration count.
    pub iterations: Option<u32>,
    /// Stop at `x_delta` once the direction norm is at most `M delta + Delta`
    /// (only when `L >= eps / (1.6 R)` and the budget holds).
    pub small_gradient_stop: bool,
    /// Size each cut's line search from the per-axis constants.
    pub use_axis_constants: bool,
    /// Direction norms at or below this are treated as zero.
    pub zero_tol: T,
}

impl<T: Scalar> Default for HalvingOptions<T> {
    fn default() -> Self {
        HalvingOptions {
            delta: None,
            iterations: None,
            small_gradient_stop: true,
            use_axis_constants: false,
            zero_tol: default_zero_tol(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Solution<T> {
    pub point: Point2<T>,
    pub value: T,
    pub trace: RunTrace<T>,
}

/// Result of one iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepOutcome<T> {
    Continue(AxisBox<T>),
    Stopped {
        reason: StopReason,
        point: Point2<T>,
        region: AxisBox<T>,
    },
}

/// Line search plus direction query on one cut.
pub(crate) struct CutProbe<T> {
    pub x_delta: Point2<T>,
    pub side: Side,
    pub norm: T,
    pub evaluations: u32,
    pub stop: Option<StopReason>,
}

pub(crate) struct Runner<'r, 'a, T: Scalar, O: Objective<T> + ?Sized> {
    pub oracle: &'r CountingOracle<'a, T, O>,
    /// Line-search accuracy for horizontal and vertical cuts.
    pub deltas: [T; 2],
    pub zero_tol: T,
    pub small_gradient: Option<T>,
}

impl<T: Scalar, O: Objective<T> + ?Sized> Runner<'_, '_, T, O> {
    pub fn cut(&self, seg: &Segment<T>) -> Result<CutProbe<T>> {
        let delta = match seg.axis {
            Axis::Horizontal => self.deltas[0],
            Axis::Vertical => self.deltas[1],
        };
        let oracle = self.oracle;
        let lm = golden_section(restrict(seg, |x| oracle.value(x)), delta)?;
        let (side, v) = oracle.direction_side(lm.point, seg, self.zero_tol)?;
        let norm = v.norm();
        let stop = if side == Side::Zero {
            Some(StopReason::ZeroGradient)
        } else if self.small_gradient.is_some_and(|t| norm <= t) {
            Some(StopReason::SmallGradientNorm)
        } else if oracle.inner().stop_requested() {
            Some(StopReason::Certified)
        } else {
            None
        };
        Ok(CutProbe {
            x_delta: lm.point,
            side,
            norm,
            evaluations: lm.evaluations,
            stop,
        })
    }

    /// One full iteration on `region`, appending its record.
    pub fn iterate(
        &self,
        region: &AxisBox<T>,
        index: u32,
        records: &mut Vec<IterationRecord<T>>,
    ) -> Result<StepOutcome<T>> {
        let mut cuts = Vec::with_capacity(2);
        let mut current = *region;
        let mut outcome = None;
        for axis in [Axis::Horizontal, Axis::Vertical] {
            let seg = match axis {
                Axis::Horizontal => horizontal_cut(&current),
                Axis::Vertical => vertical_cut(&current),
            };
            let probe = self.cut(&seg)?;
            let (low, high) = split(&current, &seg)?;
            // along-cut directions discard the upper / right half
            let keep_low = matches!(probe.side, Side::Positive | Side::Along);
            let decision = match (probe.stop, axis, keep_low) {
                (Some(_), _, _) => Decision::Stop,
                (None, Axis::Horizontal, true) => Decision::DiscardUpper,
                (None, Axis::Horizontal, false) => Decision::DiscardLower,
                (None, Axis::Vertical, true) => Decision::DiscardRight,
                (None, Axis::Vertical, false) => Decision::DiscardLeft,
            };
            cuts.push(CutRecord {
                axis,
                segment: seg,
                x_delta: probe.x_delta,
                side: probe.side,
                decision,
                direction_norm: probe.norm,
                line_evaluations: probe.evaluations,
            });
            if let Some(reason) = probe.stop {
                outcome = Some(StepOutcome::Stopped {
                    reason,
                    point: probe.x_delta,
                    region: current,
                });
                break;
            }
            current = if keep_low { low } else { high };
        }
        records.push(IterationRecord {
            index,
            region: (*region).into(),
            cuts,
            counters: self.oracle.counters(),
        });
        Ok(outcome.unwrap_or(StepOutcome::Continue(current)))
    }

    /// Runs up to `iterations` iterations from `square`. Returns the answer
    /// point, the last region and why the loop ended.
    pub fn run_square(
        &self,
        square: AxisBox<T>,
        iterations: u32,
        first_index: u32,
        records: &mut Vec<IterationRecord<T>>,
    ) -> Result<(Point2<T>, AxisBox<T>, StopReason)> {
        let mut region = square;
        for k in 0..iterations {
            match self.iterate(&region, first_index + k, records)? {
                StepOutcome::Continue(next) => region = next,
                StepOutcome::Stopped {
                    reason,
                    point,
                    region,
                } => return Ok((point, region, reason)),
            }
        }
        Ok((region.center, region, StopReason::IterationBudget))
    }
}

/// One iteration with line-search accuracy `delta`, exact zero test and no
/// small-gradient stop.
pub fn step<T: Scalar, O: Objective<T> + ?Sized>(
    region: &AxisBox<T>,
    oracle: &CountingOracle<'_, T, O>,
    delta: T,
    records: &mut Vec<IterationRecord<T>>,
) -> Result<StepOutcome<T>> {
    if !region.is_square() {
        return Err(Error::param("region", "must be a square"));
    }
    let runner = Runner {
        oracle,
        deltas: [delta, delta],
        zero_tol: default_zero_tol(),
        small_gradient: None,
    };
    let index = records.len() as u32;
    runner.iterate(region, index, records)
}

/// Resolved per-run parameters.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Plan<T> {
    pub iterations: u32,
    pub delta: T,
    pub deltas: [T; 2],
    pub small_gradient: Option<T>,
}

pub(crate) fn plan<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    side: T,
    eps: T,
    opts: &HalvingOptions<T>,
) -> Result<Plan<T>> {
    let lipschitz = o.lipschitz();
    let m = o.grad_lipschitz();
    let grad_error = o.direction_error();
    let iterations = match opts.iterations {
        Some(n) => n,
        None => required_iterations(lipschitz, side, eps)?,
    };
    let delta = match opts.delta {
        Some(d) => d,
        None => Budget::new(lipschitz, m, side, eps, grad_error)?.inner_delta,
    };
    let deltas = match (opts.use_axis_constants, opts.delta, o.axis_grad_lipschitz()) {
        (true, None, Some([m1, m2])) => [
            Budget::new(lipschitz, Some(m1), side, eps, grad_error)?.inner_delta,
            Budget::new(lipschitz, Some(m2), side, eps, grad_error)?.inner_delta,
        ],
        _ => [delta, delta],
    };
    let small_gradient = match m {
        Some(m)
            if opts.small_gradient_stop
                && lipschitz >= eps / (T::lit(1.6) * side)
                && inexact_budget_ok(m, lipschitz, side, eps, delta, grad_error)? =>
        {
            let inner = if m == T::zero() { T::zero() } else { m * delta };
            Some(inner + grad_error).filter(|t| t.is_finite())
        }
        _ => None,
    };
    Ok(Plan {
        iterations,
        delta,
        deltas,
        small_gradient,
    })
}

/// Minimizes `o` over `square` to accuracy `eps` in function value.
pub fn solve<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    square: &AxisBox<T>,
    eps: T,
    opts: &HalvingOptions<T>,
) -> Result<Solution<T>> {
    if !square.is_square() {
        return Err(Error::param("square", "halving needs a square domain"));
    }
    let plan = plan(o, square.width(), eps, opts)?;
    let counting = CountingOracle::new(o);
    let runner = Runner {
        oracle: &counting,
        deltas: plan.deltas,
        zero_tol: opts.zero_tol,
        small_gradient: plan.small_gradient,
    };
    let mut records = Vec::new();
    let (point, region, stop_reason) =
        runner.run_square(*square, plan.iterations, 0, &mut records)?;
    let value = o.value(point)?;
    Ok(Solution {
        point,
        value,
        trace: RunTrace {
            method: "halving".into(),
            epsilon: eps,
            iterations_budget: plan.iterations,
            iterations_run: records.len() as u32,
            inner_delta: plan.delta,
            grad_delta_cap: o.direction_error(),
            records,
            final_region: region.into(),
            counters: counting.counters(),
            stop_reason,
        },
    })
}
