use thiserror::Error;

/// Errors raised by the reconciliation library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("probability {0} is outside its valid range")]
    InvalidProbability(f64),

    #[error("entropy {0} is outside [0, 1]")]
    InvalidEntropy(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("code construction failed: {0}")]
    Construction(String),

    #[error("syndrome is not in the column space of the parity-check matrix")]
    InconsistentSyndrome,

    #[error("reconciliation produced no candidate")]
    NoCandidate,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
