//! Comparison solvers: a two-dimensional ellipsoid method and projected
//! gradient descent. Both spend a full gradient per iteration.

mod ellipsoid;
mod gradient;

pub use ellipsoid::{ellipsoid_cut_bound, ellipsoid_solve, Ellipse, EllipsoidOptions};
pub use gradient::{gradient_descent_solve, gradient_iteration_bound, GradientOptions};

/// Records kept for a run of `n` iterations: every iteration up to this
/// many, then powers of two.
pub(crate) const DENSE_RECORDS: u64 = 4096;

pub(crate) fn keep_record(k: u64) -> bool {
    k < DENSE_RECORDS || k.is_power_of_two()
}
