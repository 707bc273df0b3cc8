use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectraError {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration value (precision, step, range) is unusable.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// The operation is not defined for this operator order.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// An iterative method failed to converge.
    #[error("numerical error: {message}")]
    Numerical {
        message: String,
        /// Bracket or diagnostic interval, when one is available.
        bracket: Option<(f64, f64)>,
    },

    /// A self-check failed; signals a construction bug rather than bad input.
    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    /// The exact computation would exceed the memory/time guard.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl SpectraError {
    pub(crate) fn numerical(message: impl Into<String>) -> Self {
        SpectraError::Numerical {
            message: message.into(),
            bracket: None,
        }
    }
}

impl From<std::io::Error> for SpectraError {
    fn from(e: std::io::Error) -> Self {
        SpectraError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, SpectraError>;
