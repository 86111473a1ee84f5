use thiserror::Error;

/// Errors raised by the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("root isolation failed: {0}")]
    IterationFailure(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("quadrature construction failed: {0}")]
    Quadrature(String),
    #[error("recurrence did not converge: {0}")]
    NonConvergence(String),
    #[error("hypothesis mismatch: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! bail {
    ($kind:ident, $($arg:tt)*) => {
        return Err($crate::error::Error::$kind(format!($($arg)*)))
    };
}
pub(crate) use bail;
