use thiserror::Error;

/// Errors raised across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial degree {0} exceeds the supported bound of 12")]
    DegreeTooLarge(usize),

    #[error("matrix is not primitive")]
    NotPrimitive,

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("permutation {0} is reducible")]
    NotIrreducible(String),

    #[error("unsupported size m = {m}: {reason}")]
    BadSize { m: usize, reason: String },

    #[error("comparison could not be decided at maximum precision: {0}")]
    AmbiguousComparison(String),

    #[error("point could not be located in a single interval: {0}")]
    AmbiguousInterval(String),

    #[error("point lies outside the domain of the map")]
    OutOfDomain,

    #[error("matrix has a non-positive entry at ({0}, {1})")]
    NonPositiveEntry(usize, usize),

    #[error("no k <= m makes sigma^k(seed) start with the seed")]
    NoFixedSeed,

    #[error("induction replay diverged at step {step}: expected {expected}, got {got}")]
    PathNotRealizable {
        step: usize,
        expected: char,
        got: char,
    },

    #[error("not found: {0}")]
    NotFound(String),

    #[error("search exhausted: {}", .0.join("; "))]
    SearchExhausted(Vec<String>),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
