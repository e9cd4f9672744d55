use thiserror::Error;

use crate::theorem_tables::NotApplicable;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NonPrime(u64),

    #[error("field of size {size} exceeds the cap {cap}")]
    FieldTooLarge { size: u128, cap: u64 },

    #[error("no primitive polynomial of degree {degree} over GF({p}) was found")]
    NoPrimitivePolynomialFound { p: u64, degree: u32 },

    #[error("invalid defining polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("discrete logarithm of zero")]
    LogOfZero,

    #[error("{modulus} does not divide the group order {group_order}")]
    BadModulus { modulus: u64, group_order: u64 },

    #[error("cyclotomic orders differ: {left} vs {right}")]
    OrderMismatch { left: u32, right: u32 },

    #[error("cannot embed order {from} into order {to}")]
    NotDivisible { from: u32, to: u32 },

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("work estimate {work} exceeds budget {budget}")]
    BudgetExceeded { work: u128, budget: u128 },

    #[error("not applicable: {0}")]
    NotApplicable(NotApplicable),

    #[error("not in the semiprimitive case: {0}")]
    NotSemiprimitive(String),

    #[error("expected an integer result: {0}")]
    NonIntegerResult(String),

    #[error("non-integer table frequency: {0}")]
    NonIntegerFrequency(String),

    #[error("output failed: {0}")]
    Io(String),
}

impl From<NotApplicable> for Error {
    fn from(value: NotApplicable) -> Self {
        Error::NotApplicable(value)
    }
}

impl From<std::io::Error> for Error {
    fn from(value: std::io::Error) -> Self {
        Error::Io(value.to_string())
    }
}
