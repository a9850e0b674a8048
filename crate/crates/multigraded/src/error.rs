use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is too small (need p > 2^20)")]
    ModulusTooSmall(u64),

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("multi-index length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for factor {factor}")]
    VariableOutOfRange { factor: usize, index: usize },

    #[error("factor {0} has an all-zero coordinate vector (not a projective point)")]
    ZeroCoordinates(usize),

    #[error("unsupported twist: {0}")]
    UnsupportedTwist(String),

    #[error("unsupported scheme: {0}")]
    UnsupportedScheme(String),

    #[error("probe point lies on the scheme support")]
    InvalidProbe,

    #[error("hypothesis violation: {0}")]
    HypothesisViolation(String),

    #[error("invalid scheme description: {0}")]
    InvalidScheme(String),
}

pub type Result<T> = std::result::Result<T, Error>;
