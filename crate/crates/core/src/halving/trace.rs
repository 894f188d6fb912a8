use serde::{Deserialize, Serialize};

use crate::geometry::{Axis, AxisBox, Point2, RightTriangle, Segment, Trapezoid};
use crate::oracle::{CallCounters, Side};

/// Localization region as logged, tagged by shape.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RegionRecord<T> {
    Box {
        center: Point2<T>,
        half_width: T,
        half_height: T,
    },
    Triangle {
        right_angle_vertex: Point2<T>,
        leg: T,
        orientation: crate::geometry::Orientation,
    },
    Trapezoid {
        right_angle_vertex: Point2<T>,
        leg: T,
        orientation: crate::geometry::Orientation,
    },
    /// Ellipse `{x : (x - c)^T P^{-1} (x - c) <= 1}` with `P = [[a, b], [b, d]]`.
    Ellipse {
        center: Point2<T>,
        shape: [T; 3],
    },
    Point {
        at: Point2<T>,
    },
}

impl<T: Copy> From<AxisBox<T>> for RegionRecord<T> {
    fn from(b: AxisBox<T>) -> Self {
        RegionRecord::Box {
            center: b.center,
            half_width: b.half_width,
            half_height: b.half_height,
        }
    }
}

impl<T: Copy> From<RightTriangle<T>> for RegionRecord<T> {
    fn from(t: RightTriangle<T>) -> Self {
        RegionRecord::Triangle {
            right_angle_vertex: t.right_angle_vertex,
            leg: t.leg,
            orientation: t.orientation,
        }
    }
}

impl<T: Copy> From<Trapezoid<T>> for RegionRecord<T> {
    fn from(z: Trapezoid<T>) -> Self {
        RegionRecord::Trapezoid {
            right_angle_vertex: z.parent.right_angle_vertex,
            leg: z.parent.leg,
            orientation: z.parent.orientation,
        }
    }
}

/// What a cut did with the region.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Decision {
    DiscardLower,
    DiscardUpper,
    DiscardLeft,
    DiscardRight,
    KeepTriangle,
    KeepTrapezoid,
    KeepSquare,
    Stop,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CutRecord<T> {
    pub axis: Axis,
    pub segment: Segment<T>,
    pub x_delta: Point2<T>,
    pub side: Side,
    pub decision: Decision,
    /// Norm of the direction vector seen at `x_delta`.
    pub direction_norm: T,
    pub line_evaluations: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord<T> {
    pub index: u32,
    /// Region at the start of the iteration.
    pub region: RegionRecord<T>,
    pub cuts: Vec<CutRecord<T>>,
    /// Running totals after the iteration.
    pub counters: CallCounters,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    IterationBudget,
    ZeroGradient,
    SmallGradientNorm,
    /// The objective's own stopping rule fired.
    Certified,
    /// Known-optimum gap reached (baselines).
    TargetGap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunTrace<T> {
    pub method: String,
    pub epsilon: T,
    pub iterations_budget: u32,
    /// Iterations actually executed. Long baseline runs keep only a thinned
    /// subset of their records, so this can exceed `records.len()`.
    pub iterations_run: u32,
    pub inner_delta: T,
    pub grad_delta_cap: T,
    pub records: Vec<IterationRecord<T>>,
    pub final_region: RegionRecord<T>,
    pub counters: CallCounters,
    pub stop_reason: StopReason,
}

impl<T> RunTrace<T> {
    pub fn iterations(&self) -> u32 {
        self.iterations_run
    }
}
