//! Midline cuts on a right isosceles triangle. A cut either keeps the
//! half-leg triangle or a piece that, after the second midline, yields a
//! half-leg triangle or a square. Squares are handed to the halving runner
//! with whatever iterations remain.

use crate::error::Result;
use crate::geometry::{trapezoid_split, triangle_midline_cuts, triangle_split, RightTriangle};
use crate::halving::{
    plan, CutRecord, Decision, HalvingOptions, IterationRecord, RegionRecord, RunTrace, Runner,
    Solution, StopReason,
};
use crate::oracle::{CountingOracle, Objective, Side};
use crate::scalar::Scalar;

/// Whether the direction at a cut points into the half whose offset from
/// the cut has sign `s`. Along-cut directions count as pointing to `+`.
fn points_toward<T: Scalar>(side: Side, s: T) -> bool {
    let positive = matches!(side, Side::Positive | Side::Along);
    positive == (s > T::zero())
}

/// Minimizes `o` over the triangle `t`. Constants are taken as valid on the
/// triangle's bounding square and the budget uses its leg as the side.
pub fn solve_triangle<T: Scalar, O: Objective<T> + ?Sized>(
    o: &O,
    t: &RightTriangle<T>,
    eps: T,
    opts: &HalvingOptions<T>,
) -> Result<Solution<T>> {
    let plan = plan(o, t.leg, eps, opts)?;
    let counting = CountingOracle::new(o);
    let runner = Runner {
        oracle: &counting,
        deltas: plan.deltas,
        zero_tol: opts.zero_tol,
        small_gradient: plan.small_gradient,
    };
    let mut records = Vec::new();
    let mut tri = *t;
    let mut i = 0;
    let mut finish = None;
    while i < plan.iterations {
        let (s1, s2) = tri.orientation.signs::<T>();
        let (first, second) = triangle_midline_cuts(&tri);
        let mut cuts = Vec::with_capacity(2);

        let probe = runner.cut(&first)?;
        let (far, trap) = triangle_split(&tri, &first)?;
        // the far triangle lies on the s1 side of the first cut
        let keep_far = !points_toward(probe.side, s1);
        let decision = match (probe.stop, keep_far) {
            (Some(_), _) => Decision::Stop,
            (None, true) => Decision::KeepTriangle,
            (None, false) => Decision::KeepTrapezoid,
        };
        cuts.push(record(&first, &probe, decision));
        let mut square = None;
        let mut next = far;
        if let Some(reason) = probe.stop {
            finish = Some((probe.x_delta, RegionRecord::from(tri), reason));
        } else if !keep_far {
            let probe = runner.cut(&second)?;
            let (upper, sq) = trapezoid_split(&trap, &second)?;
            let keep_upper = !points_toward(probe.side, s2);
            let decision = match (probe.stop, keep_upper) {
                (Some(_), _) => Decision::Stop,
                (None, true) => Decision::KeepTriangle,
                (None, false) => Decision::KeepSquare,
            };
            cuts.push(record(&second, &probe, decision));
            if let Some(reason) = probe.stop {
                finish = Some((probe.x_delta, RegionRecord::from(trap), reason));
            } else if keep_upper {
                next = upper;
            } else {
                square = Some(sq);
            }
        }
        records.push(IterationRecord {
            index: i,
            region: tri.into(),
            cuts,
            counters: counting.counters(),
        });
        i += 1;
        if finish.is_some() {
            break;
        }
        if let Some(sq) = square {
            let (p, region, reason) =
                runner.run_square(sq, plan.iterations - i, i, &mut records)?;
            finish = Some((p, region.into(), reason));
            break;
        }
        tri = next;
    }
    let (point, final_region, stop_reason) =
        finish.unwrap_or((tri.centroid(), tri.into(), StopReason::IterationBudget));
    let value = o.value(point)?;
    Ok(Solution {
        point,
        value,
        trace: RunTrace {
            method: "triangle".into(),
            epsilon: eps,
            iterations_budget: plan.iterations,
            iterations_run: records.len() as u32,
            inner_delta: plan.delta,
            grad_delta_cap: o.direction_error(),
            records,
            final_region,
            counters: counting.counters(),
            stop_reason,
        },
    })
}

fn record<T: Scalar>(
    seg: &crate::geometry::Segment<T>,
    probe: &crate::halving::CutProbe<T>,
    decision: Decision,
) -> CutRecord<T> {
    CutRecord {
        axis: seg.axis,
        segment: *seg,
        x_delta: probe.x_delta,
        side: probe.side,
        decision,
        direction_norm: probe.norm,
        line_evaluations: probe.evaluations,
    }
}
