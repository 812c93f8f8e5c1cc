use thiserror::Error;

/// Errors raised by the estimator and its solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("physical error rate is above threshold (beta * p = {0} >= 1)")]
    AboveThreshold(f64),

    #[error("no code distance up to {max} meets target failure rate {target:e}")]
    UnsatisfiableDistance { target: f64, max: u32 },

    #[error("target fidelity {target} is unreachable from initial fidelity {initial}")]
    UnreachableFidelity { initial: f64, target: f64 },

    #[error("confidence {confidence} is unreachable at per-attempt success probability {probability}")]
    UnreachableConfidence { confidence: f64, probability: f64 },

    #[error("exact binomial tail is limited to k <= {max} attempts (got {k}); use the normal method")]
    TooManyAttempts { k: u64, max: u64 },

    #[error("post-selection probability {0:e} is below 1e-15")]
    NullEvent(f64),

    #[error("not a valid density matrix: {0}")]
    InvalidState(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("simulation needs {draws} elementary draws, budget is {budget} and the binomial sampler is disabled")]
    BudgetExceeded { draws: u128, budget: u128 },

    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for errors where the inputs are well formed but the requested
    /// target cannot be met (unsatisfiable distance, unreachable fidelity or
    /// confidence).
    pub fn is_unattainable(&self) -> bool {
        matches!(
            self,
            Error::UnsatisfiableDistance { .. }
                | Error::UnreachableFidelity { .. }
                | Error::UnreachableConfidence { .. }
                | Error::AboveThreshold(_)
                | Error::NullEvent(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects NaN and infinities.
pub(crate) fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("must be finite, got {value}")))
    }
}

/// Checks `lo < value < hi` (open interval).
pub(crate) fn open_unit(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value > 0.0 && value < 1.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("must lie in (0, 1), got {value}")))
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    finite(name, value)?;
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(name, format!("must be > 0, got {value}")))
    }
}
