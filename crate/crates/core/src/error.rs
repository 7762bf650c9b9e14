use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order must be at least {min}, got {got}")]
    InvalidOrder { min: usize, got: usize },

    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("circulant row must be nonempty")]
    EmptyRow,

    #[error("index {index} out of range for order {n}")]
    IndexOutOfRange { index: i64, n: usize },

    #[error("series did not converge within {terms} terms")]
    NonConvergence { terms: usize },

    #[error("expected {expected} generators (gcd of n and m), got {got}")]
    GeneratorCount { expected: usize, got: usize },

    #[error("counterexample requires gcd(n, m) > 1, got gcd({n}, {m}) = 1")]
    CoprimeShift { n: usize, m: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
