use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("sequence term at index {index} is not positive")]
    NonPositiveTerm { index: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a member: {0}")]
    NotMember(String),
    #[error("unbounded request: {0}")]
    Unbounded(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("inexact division")]
    InexactDivision,
    #[error("duplicate abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(String),
    #[error("invalid barring: {0}")]
    InvalidBarring(String),
    #[error("{size} objects exceed the enumeration budget of {budget}")]
    BudgetExceeded { size: u128, budget: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
