use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: {what} = {size} exceeds bound {bound}")]
    TooLarge {
        what: &'static str,
        size: String,
        bound: u64,
    },

    #[error("field mismatch: GF({left}) vs GF({right})")]
    FieldMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("element encoding {enc} out of range for GF({q})")]
    ElementOutOfRange { enc: u64, q: u64 },

    #[error("ragged matrix: row {row} has {found} entries, expected {expected}")]
    RaggedMatrix {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("malformed input: {0}")]
    Malformed(String),
}

pub type Result<T> = std::result::Result<T, Error>;
