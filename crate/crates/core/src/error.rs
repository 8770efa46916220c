use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("field size {0} is out of range (must be at most 65536)")]
    FieldTooLarge(u64),
    #[error("modulus {0:?} is not a monic irreducible polynomial of the requested degree")]
    BadModulus(Vec<u32>),
    #[error("element index {index} is not in a field of size {q}")]
    ElementOutOfRange { index: u64, q: u32 },
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("parameter out of range: {0}")]
    Domain(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("search budget exceeded: {needed} subspaces needed, budget is {budget}")]
    BudgetExceeded { needed: String, budget: u64 },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
