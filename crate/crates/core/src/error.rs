use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),
    /// The request exceeds what the implemented algorithms support.
    #[error("capacity exceeded: {what} (supported bound: {bound})")]
    Capacity { what: String, bound: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    /// A quantity is not defined for the given input (e.g. a ratio with zero denominator).
    #[error("undefined value: {0}")]
    Undefined(String),
    #[error("non-finite input: {0}")]
    NonFinite(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }

    pub(crate) fn capacity(what: impl Into<String>, bound: impl Into<String>) -> Self {
        Error::Capacity {
            what: what.into(),
            bound: bound.into(),
        }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
