use thiserror::Error;

/// Errors raised by the channel, Choi and CP-analysis layers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index {index} out of range {min}..={max}")]
    IndexOutOfRange {
        index: usize,
        min: usize,
        max: usize,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: String, found: String },

    #[error("matrix is not Hermitian (max deviation {0:e})")]
    NotHermitian(f64),

    #[error("trace {0} is not 1")]
    WrongTrace(f64),

    #[error("Lambda_{index} is zero; the image ellipsoid is degenerate")]
    SingularParameter { index: usize },

    #[error("channel is not completely positive (minimum Choi eigenvalue {min_eigenvalue:e})")]
    NotCompletelyPositive { min_eigenvalue: f64 },

    #[error("cubic has a complex-conjugate root pair (discriminant {0:e})")]
    ComplexRoots(f64),

    #[error("unsupported channel: {0}")]
    UnsupportedChannel(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
