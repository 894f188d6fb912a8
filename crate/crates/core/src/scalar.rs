use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the two-dimensional solvers run on: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal; panics only for values the type cannot hold.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("literal representable in scalar type")
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }

    #[inline]
    fn sqrt2() -> Self {
        Self::two().sqrt()
    }

    #[inline]
    fn sqrt5() -> Self {
        Self::lit(5.0).sqrt()
    }

    /// Golden-section contraction factor `(sqrt(5) - 1) / 2`.
    #[inline]
    fn golden_ratio_conj() -> Self {
        (Self::sqrt5() - Self::one()) * Self::half()
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
