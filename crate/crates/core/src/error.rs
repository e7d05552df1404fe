use thiserror::Error;

/// Errors raised by the library. Variants tagged "internal" indicate a bug in
/// this crate rather than bad input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incomparable weights: |mu| = {left}, |lambda| = {right}")]
    IncomparableWeights { left: u32, right: u32 },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at t = {0}")]
    Pole(String),

    #[error("zero base raised to a negative exponent")]
    ZeroToNegativePower,

    #[error("word does not have partition content: {0}")]
    NonPartitionContent(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    #[error("bad split: {0}")]
    BadSplit(String),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("internal consistency error: {0}")]
    InternalConsistency(String),

    #[error("unknown place id: {0}")]
    UnknownPlace(String),

    #[error("{0} is not a prime power")]
    NotPrimePower(u64),

    #[error("eigenvalue must be nonzero")]
    ZeroEigenvalue,

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
