//! Localization by gradient-direction halving for convex functions of two
//! variables.
//!
//! A square is cut through its center, the objective is minimized along the
//! cut with golden-section search, and only the *side* of the cut the
//! (sub)gradient points to is queried. That half is discarded. Two cuts per
//! iteration halve the side of the square.
//!
//! The crate also carries a right-triangle variant, ellipsoid and projected
//! gradient baselines, and a driver that solves convex programs with two
//! functional constraints through their two-dimensional Lagrange dual.
//!
//! All two-dimensional machinery is generic over [`Scalar`] (`f32` or `f64`);
//! the aliases at the bottom of this file fix it to `f64`.

// `!(x > 0)` is used on purpose so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod baselines;
pub mod dual;
pub mod error;
pub mod geometry;
pub mod halving;
pub mod oned;
pub mod oracle;
pub mod scalar;
pub mod triangle;

pub use error::{Error, Result};
pub use geometry::{Axis, AxisBox, Orientation, Point2, RightTriangle, Segment, Trapezoid};
pub use halving::{
    inexact_budget_ok, required_delta, required_iterations, solve, Budget, HalvingOptions,
    RunTrace, Solution, StopReason,
};
pub use oracle::{
    CallCounters, CountingOracle, FnOracle, NoiseMode, Objective, PerturbedOracle, Side,
};
pub use scalar::Scalar;

pub type Point2f = Point2<f64>;
pub type AxisBoxf = AxisBox<f64>;
pub type RightTrianglef = RightTriangle<f64>;
pub type Segmentf = Segment<f64>;
pub type Solutionf = Solution<f64>;
pub type RunTracef = RunTrace<f64>;
pub type FnOraclef = FnOracle<f64>;
