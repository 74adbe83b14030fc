use thiserror::Error;

/// Errors raised by the algebra kernel and the invariant laboratory.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("invalid tableau: {0}")]
    InvalidTableau(String),

    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),

    #[error("index {0} lies outside the declared range")]
    OutOfRange(String),

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("resource cap exceeded: {what} would need {needed}, cap is {cap}")]
    CapExceeded { what: String, needed: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
