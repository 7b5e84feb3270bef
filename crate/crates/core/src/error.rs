use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("non-finite value {0}")]
    NonFinite(f64),

    #[error("dimension must be at least 1")]
    EmptyDimension,

    #[error("dimension {n} exceeds the enumeration cap of {cap}")]
    AboveCap { n: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("flavor mismatch: expected {expected}, got {got}")]
    FlavorMismatch {
        expected: crate::Flavor,
        got: crate::Flavor,
    },

    #[error("matrix is not square: {rows} rows, row {row} has {cols} columns")]
    NotSquare {
        rows: usize,
        row: usize,
        cols: usize,
    },

    #[error("invalid spin value {0}; entries must be -1 or +1")]
    InvalidSpin(f64),

    #[error("matrix is not {0}")]
    MatrixShape(&'static str),

    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("patterns {first} and {second} are not orthogonal (inner product {re}{im:+}j)")]
    NotOrthogonal {
        first: usize,
        second: usize,
        re: i64,
        im: i64,
    },

    #[error("pattern count {count} must satisfy 1 <= S < n = {n}")]
    PatternCount { count: usize, n: usize },

    #[error("clamped coordinate is {got}, expected {expected}")]
    ClampViolated { expected: String, got: String },

    #[error("budget must be at least 1")]
    ZeroBudget,

    #[error("invalid toeplitz spec: {0}")]
    Toeplitz(&'static str),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
