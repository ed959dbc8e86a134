use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus {0} is smaller than 2")]
    InvalidModulus(u64),

    #[error("group mismatch: {0}")]
    GroupMismatch(String),

    #[error("enumerating {needed} tuples exceeds the enumeration cap of {cap}")]
    EnumerationCap { needed: u128, cap: u64 },

    #[error("malformed matrix: {0}")]
    Matrix(String),

    #[error("operation requires a group of the form F_p^n: {0}")]
    NotVectorMode(String),

    #[error("pivot forms are linearly dependent mod {p}")]
    DependentPivots { p: u64 },

    #[error("value {value} at index {index} lies outside the declared range [{lo}, {hi}]")]
    RangeViolation {
        index: usize,
        value: f64,
        lo: f64,
        hi: f64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no construction applicable: {0}")]
    NoConstruction(String),

    #[error("forms are not pairwise distinct: {0}")]
    IndistinctForms(String),

    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(String),
}

pub type Result<T> = std::result::Result<T, Error>;
