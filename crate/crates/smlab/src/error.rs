use thiserror::Error;

/// Errors shared by every module of the workbench.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed or inconsistent input (length/alphabet mismatch, out-of-range symbol, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A protocol or construction parameter violates its precondition.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// The requested instance exceeds the exhaustive-mode capacity of a brute-force routine.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// The construction is degenerate for these parameters (informative, not a failure).
    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
