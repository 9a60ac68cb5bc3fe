use thiserror::Error;

/// Errors produced by polynomial construction and the GCD pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("polynomial is zero where a nonzero polynomial is required")]
    ZeroPolynomial,

    #[error("leading coefficient is exactly zero; trim the sequence or supply the intended degree")]
    ZeroLeadingCoefficient,

    #[error("coefficient at index {0} is not finite")]
    NonFiniteCoefficient(usize),

    #[error("index {j} out of range; expected {min} <= j <= {max}")]
    IndexOutOfRange { j: usize, min: usize, max: usize },

    #[error("degenerate candidate: {0}")]
    DegenerateCandidate(&'static str),

    #[error("tolerance must be positive, got {0}")]
    InvalidEpsilon(f64),

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("unknown benchmark selection `{0}`")]
    UnknownSuite(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
