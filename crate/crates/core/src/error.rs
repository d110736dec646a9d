use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix dimension must be at least 1")]
    ZeroDimension,
    #[error("off-diagonal value must be non-negative, got {0}")]
    NegativeOffDiagonal(f64),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("refusing to materialize a {n}x{n} matrix (limit {limit})")]
    TooLarge { n: usize, limit: usize },
    #[error("diagonal value must be non-negative here, got {0}")]
    NegativeDiagonal(f64),
    #[error("diagonal value must be strictly negative here, got {0}")]
    NonNegativeDiagonal(f64),
    #[error("first-row entry {index} is negative ({value})")]
    NegativeEntry { index: usize, value: f64 },
    #[error("invalid exponent {0}: need 1 <= p <= inf")]
    InvalidExponent(f64),
    #[error("exponent {0} is outside the supported range {1}")]
    ExponentOutOfRange(f64, &'static str),
    #[error("vector must be non-empty")]
    EmptyVector,
    #[error("invalid estimator options: {0}")]
    InvalidOptions(&'static str),
    #[error("brute-force search supports n <= 4, got {0}")]
    BruteForceTooLarge(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
