use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid Cartan type {family}{rank}: {reason}")]
    InvalidRank {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("cannot parse Cartan type {0:?}")]
    ParseType(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("expected a vector of length {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    /// An internal invariant of the construction failed. Always a bug or a
    /// counterexample, never a user error.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("support values differ along the -w0 orbit of simple indices {orbit:?}")]
    NotW0Invariant { orbit: Vec<usize> },

    /// Some `sum_i a_ij F(-alpha_i)` is not strictly positive.
    #[error("support values fail sum_i a_ij F(-alpha_i) > 0 at simple indices {failing:?}")]
    NotRegular { failing: Vec<usize> },

    #[error("support function must be positive on -Pi; failing simple indices {failing:?}")]
    NonPositive { failing: Vec<usize> },

    #[error("expected {expected} orbit values, got {got}")]
    OrbitCount { expected: usize, got: usize },

    #[error("OFF export requires rank 3, got rank {0}")]
    OffRank(usize),
}

pub(crate) fn consistency(msg: impl Into<String>) -> Error {
    Error::Consistency(msg.into())
}
