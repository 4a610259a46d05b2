use thiserror::Error;

/// Errors raised by the solver library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot resolve root-of-unity index for coordinate {coordinate}: value {value} is not near a {degree}-th root of unity")]
    IndexResolution {
        coordinate: usize,
        value: String,
        degree: u32,
    },

    #[error("singular direction matrix in binomial system")]
    SingularBinomial,

    #[error("compression failed: {0}")]
    Compression(String),

    #[error("archive format error: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
