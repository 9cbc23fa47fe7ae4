use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not an odd prime below 2^31")]
    InvalidPrime(u32),
    #[error("division by zero in prime field")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),
    #[error("invalid degree: {0}")]
    InvalidDegree(String),
    #[error("twist {0} is outside the range where sections of O_C are computed by ambient forms")]
    TwistOutOfRange(String),
    #[error("invalid node configuration: {0}")]
    Nodes(String),
    #[error("curve is degenerate: {0}")]
    Degenerate(String),
    #[error("not a pencil: {0}")]
    NotAPencil(String),
    #[error("resampling exhausted: {0}")]
    Resample(String),
    #[error("consistency check failed: {0}")]
    Inconsistent(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
