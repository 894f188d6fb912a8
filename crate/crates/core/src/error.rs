use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("epsilon {eps} is not below L*R*sqrt(2) = {limit}; budget is undefined")]
    InfeasibleBudget { eps: f64, limit: f64 },

    #[error("segment is not a center cut of the region")]
    NotACenterCut,

    #[error("segment is not a midline of the triangle")]
    NotAMidline,

    #[error("non-finite {what} at ({x1}, {x2})")]
    NonFinite {
        what: &'static str,
        x1: f64,
        x2: f64,
    },

    #[error("non-finite objective value during line search")]
    NonFiniteLineValue,

    #[error("oracle has no gradient Lipschitz constant; {0}")]
    NonSmooth(&'static str),

    #[error("ellipse shape lost positive definiteness")]
    NotPositiveDefinite,

    #[error("inner solve hit {iterations} iterations with certified gap {gap:e} > {target:e}")]
    InnerSolveStalled {
        iterations: usize,
        gap: f64,
        target: f64,
    },

    #[error("malformed problem: {0}")]
    MalformedProblem(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
