use thiserror::Error;

/// Errors raised by the exact-algebra layer and everything built on it.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("mixed coefficient fields: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero polynomial has no initial exponent")]
    NoInitialExponent,
    #[error("{0}")]
    BadArgument(String),
    #[error("undetermined at precision {0}")]
    UndeterminedAtPrecision(u32),
    #[error("enumeration guard exceeded: {0} tuples")]
    GuardExceeded(u128),
    #[error("parse error at column {col}: {msg}")]
    Parse { col: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
