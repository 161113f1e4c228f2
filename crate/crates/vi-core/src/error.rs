use thiserror::Error;

/// Errors produced while constructing problem data or driving a solver.
///
/// Solver iterations themselves do not fail on numerical grounds; divergence
/// shows up as a non-finite residual and a `MaxIterReached` status instead of
/// an error. Everything here is a contract violation caught up front.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector must contain at least one entry")]
    EmptyVector,

    #[error("non-finite entry {value} at index {index}")]
    NonFiniteEntry { index: usize, value: f64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lower bound {lower} exceeds upper bound {upper} at index {index}")]
    InvalidBounds {
        index: usize,
        lower: f64,
        upper: f64,
    },

    #[error("half-space normal must be nonzero")]
    ZeroNormal,

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("{name} must be nonnegative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("{name} must lie strictly inside (0, 1), got {value}")]
    NotInUnitInterval { name: &'static str, value: f64 },

    #[error("{name} must be at least 1")]
    ZeroCount { name: &'static str },

    #[error("line search did not reach its acceptance inequality within {max_backtracks} backtracks")]
    LinesearchExhausted { max_backtracks: u32 },

    #[error("trace indices must be strictly increasing: appended {attempted} after {last}")]
    NonMonotoneTrace { last: u64, attempted: u64 },

    #[error("trace elapsed times must be nondecreasing: appended {attempted} after {last}")]
    DecreasingElapsed { last: f64, attempted: f64 },

    #[error("unknown algorithm tag `{tag}`; valid tags are {valid}")]
    UnknownAlgorithm { tag: String, valid: String },
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
