use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Objective;
use crate::error::{Error, Result};
use crate::geometry::{Axis, Point2};
use crate::scalar::Scalar;

/// How the direction error is generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum NoiseMode {
    /// Shifts the component normal to the cut by the full cap, against its
    /// current sign. Flips every decision whose normal component is below
    /// the cap.
    Adversarial,
    /// Uniform in the disk of radius cap; a pure function of the seed, the
    /// query point and the cut axis.
    Random { seed: u64 },
}

/// Wraps an objective so that direction queries are off by at most `cap`.
/// Values and full gradients pass through untouched.
#[derive(Debug, Clone)]
pub struct PerturbedOracle<T, O> {
    inner: O,
    cap: T,
    mode: NoiseMode,
}

impl<T: Scalar, O: Objective<T>> PerturbedOracle<T, O> {
    pub fn new(inner: O, cap: T, mode: NoiseMode) -> Result<Self> {
        if !(cap >= T::zero() && cap.is_finite()) {
            return Err(Error::param("cap", "must be finite and non-negative"));
        }
        Ok(PerturbedOracle { inner, cap, mode })
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    /// The perturbation applied at `x` for a cut along `axis`, given the
    /// exact gradient `g`.
    pub fn noise(&self, x: Point2<T>, axis: Axis, g: Point2<T>) -> Point2<T> {
        match self.mode {
            NoiseMode::Adversarial => {
                let shift = if g.normal(axis) >= T::zero() {
                    -self.cap
                } else {
                    self.cap
                };
                match axis {
                    Axis::Horizontal => Point2::new(T::zero(), shift),
                    Axis::Vertical => Point2::new(shift, T::zero()),
                }
            }
            NoiseMode::Random { seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(query_seed(seed, x, axis));
                // rejection sample the unit disk, shrunk so rounding stays inside
                let (a, b) = loop {
                    let a: f64 = rng.gen_range(-1.0..=1.0);
                    let b: f64 = rng.gen_range(-1.0..=1.0);
                    if a * a + b * b <= 1.0 {
                        break (a, b);
                    }
                };
                let r = self.cap * T::lit(1.0 - 1e-6);
                Point2::new(T::lit(a) * r, T::lit(b) * r)
            }
        }
    }
}

fn query_seed<T: Scalar>(seed: u64, x: Point2<T>, axis: Axis) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for w in [
        x.x1.as_f64().to_bits(),
        x.x2.as_f64().to_bits(),
        axis as u64 + 1,
    ] {
        h = splitmix(h ^ w);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl<T: Scalar, O: Objective<T>> Objective<T> for PerturbedOracle<T, O> {
    fn value(&self, x: Point2<T>) -> Result<T> {
        self.inner.value(x)
    }

    fn gradient(&self, x: Point2<T>) -> Result<Point2<T>> {
        self.inner.gradient(x)
    }

    fn direction(&self, x: Point2<T>, cut: Axis) -> Result<Point2<T>> {
        let g = self.inner.direction(x, cut)?;
        Ok(g + self.noise(x, cut, g))
    }

    fn lipschitz(&self) -> T {
        self.inner.lipschitz()
    }

    fn grad_lipschitz(&self) -> Option<T> {
        self.inner.grad_lipschitz()
    }

    fn axis_grad_lipschitz(&self) -> Option<[T; 2]> {
        self.inner.axis_grad_lipschitz()
    }

    fn direction_error(&self) -> T {
        self.inner.direction_error() + self.cap
    }

    fn stop_requested(&self) -> bool {
        self.inner.stop_requested()
    }
}
