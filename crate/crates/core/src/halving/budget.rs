use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn positive<T: Scalar>(name: &'static str, v: T) -> Result<()> {
    if v > T::zero() && v.is_finite() {
        Ok(())
    } else {
        Err(Error::param(
            name,
            format!("must be positive and finite, got {v}"),
        ))
    }
}

/// Number of full iterations after which the surviving square has diagonal
/// at most `eps / (2 L)`: `ceil(log2(2 L R sqrt(2) / eps))`, or 0 when the
/// ratio is at most one.
///
/// Ratios within a few ulps of a power of two count as that power.
pub fn required_iterations<T: Scalar>(lipschitz: T, side: T, eps: T) -> Result<u32> {
    positive("lipschitz", lipschitz)?;
    positive("side", side)?;
    positive("eps", eps)?;
    let ratio = T::two() * lipschitz * side * T::sqrt2() / eps;
    if ratio <= T::one() {
        return Ok(0);
    }
    let l = ratio.log2();
    let r = l.round();
    let n = if (l - r).abs() <= T::lit(8.0) * T::epsilon() * l.max(T::one()) {
        r
    } else {
        l.ceil()
    };
    n.to_u32()
        .ok_or_else(|| Error::param("eps", "iteration count overflows"))
}

/// Right-hand side shared by the inner-accuracy and inexact-gradient
/// budgets: `eps / (2 R (sqrt 2 + sqrt 5) (1 - eps / (L R sqrt 2)))`.
pub fn accuracy_budget<T: Scalar>(lipschitz: T, side: T, eps: T) -> Result<T> {
    positive("lipschitz", lipschitz)?;
    positive("side", side)?;
    positive("eps", eps)?;
    let limit = lipschitz * side * T::sqrt2();
    if eps >= limit {
        return Err(Error::InfeasibleBudget {
            eps: eps.as_f64(),
            limit: limit.as_f64(),
        });
    }
    Ok(eps / (T::two() * side * (T::sqrt2() + T::sqrt5()) * (T::one() - eps / limit)))
}

/// Argument accuracy for the line searches. `M = 0` means any accuracy will
/// do and yields `+inf`.
pub fn required_delta<T: Scalar>(grad_lipschitz: T, lipschitz: T, side: T, eps: T) -> Result<T> {
    if !(grad_lipschitz >= T::zero() && grad_lipschitz.is_finite()) {
        return Err(Error::param(
            "grad_lipschitz",
            "must be finite and non-negative",
        ));
    }
    let rhs = accuracy_budget(lipschitz, side, eps)?;
    if grad_lipschitz == T::zero() {
        return Ok(T::infinity());
    }
    Ok(rhs / grad_lipschitz)
}

/// Whether `2 * grad_error + M * delta` fits the accuracy budget. The
/// comparison allows four ulps of the budget so that `delta =
/// required_delta(..)` with exact gradients is accepted.
pub fn inexact_budget_ok<T: Scalar>(
    grad_lipschitz: T,
    lipschitz: T,
    side: T,
    eps: T,
    delta: T,
    grad_error: T,
) -> Result<bool> {
    let rhs = accuracy_budget(lipschitz, side, eps)?;
    let inner = if grad_lipschitz == T::zero() {
        T::zero()
    } else {
        grad_lipschitz * delta
    };
    let lhs = T::two() * grad_error + inner;
    Ok(lhs <= rhs * (T::one() + T::lit(4.0) * T::epsilon()))
}

/// Derived run parameters for a square of side `side`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Budget<T> {
    pub epsilon: T,
    pub iterations: u32,
    /// Line-search argument accuracy (`+inf` when `M = 0`).
    pub inner_delta: T,
    /// Direction error the budget was sized for.
    pub grad_delta_cap: T,
}

impl<T: Scalar> Budget<T> {
    /// Iteration count and inner accuracy for the given constants.
    ///
    /// With `grad_lipschitz = None` (nonsmooth objective) the line searches
    /// use `eps / (4 L)`, keeping their value error below `eps / 4`.
    /// With a direction error `grad_delta_cap > 0` the inner accuracy is
    /// whatever remains of the budget after `2 * grad_delta_cap`.
    pub fn new(
        lipschitz: T,
        grad_lipschitz: Option<T>,
        side: T,
        eps: T,
        grad_delta_cap: T,
    ) -> Result<Self> {
        if !(grad_delta_cap >= T::zero() && grad_delta_cap.is_finite()) {
            return Err(Error::param(
                "grad_delta_cap",
                "must be finite and non-negative",
            ));
        }
        let iterations = required_iterations(lipschitz, side, eps)?;
        let rhs = accuracy_budget(lipschitz, side, eps)?;
        let inner_delta = match grad_lipschitz {
            None => eps / (T::lit(4.0) * lipschitz),
            Some(m) if m == T::zero() => T::infinity(),
            Some(m) if grad_delta_cap == T::zero() => required_delta(m, lipschitz, side, eps)?,
            Some(m) => {
                let left = rhs - T::two() * grad_delta_cap;
                if left <= T::zero() {
                    return Err(Error::param(
                        "grad_delta_cap",
                        format!("2 * {grad_delta_cap} leaves no room in budget {rhs}"),
                    ));
                }
                left / m
            }
        };
        Ok(Budget {
            epsilon: eps,
            iterations,
            inner_delta,
            grad_delta_cap,
        })
    }
}
