use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p = {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{e} exceeds the word contract (q^2 must fit in 64 bits)")]
    WordOverflow { p: u64, e: u32 },
    #[error("inversion of zero")]
    InverseOfZero,
    #[error("{0} must be nonzero")]
    ZeroInput(&'static str),
    #[error("order {order} does not divide the group order {group}")]
    OrderDoesNotDivide { order: u64, group: u64 },
    #[error("element is not in the base field F_q")]
    NotInBaseField,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus must have degree at least 1")]
    ConstantModulus,
    #[error("expected a polynomial of degree at least 1")]
    ConstantPolynomial,
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("{0}")]
    Hypothesis(String),
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
