use thiserror::Error;

/// Errors raised by the phase-space library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension must be an odd integer >= 3, got {0}")]
    InvalidDimension(i64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix of shape {rows}x{cols} cannot represent an operator of dimension {n}")]
    Shape { rows: usize, cols: usize, n: usize },

    /// A numerical check failed. `module` names where it happened.
    #[error("{module}: {check} deviates by {deviation:.3e} (tolerance {tolerance:.1e})")]
    Tolerance {
        module: &'static str,
        check: &'static str,
        deviation: f64,
        tolerance: f64,
    },

    #[error("theta: lattice parameter must be positive and finite, got {0}")]
    ThetaDomain(f64),

    #[error("theta: series did not converge within {cap} terms (a = {a}, z = {z})")]
    ThetaNotConverged { a: f64, z: f64, cap: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
