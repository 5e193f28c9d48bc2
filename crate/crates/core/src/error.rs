use alloc::string::String;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    Empty(&'static str),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("invalid threshold {0}")]
    InvalidDelta(f64),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("graph has a cycle through edge {from} -> {to}")]
    Cycle { from: usize, to: usize },
    #[error("enumeration needs {needed} candidates, cap is {cap}")]
    Capacity { needed: u64, cap: u64 },
    #[error("no edit script: cost is infinite")]
    NoScript,
    #[error("empty queue")]
    EmptyQueue,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_delta(delta: f64) -> Result<()> {
    if delta.is_finite() && delta >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidDelta(delta))
    }
}
