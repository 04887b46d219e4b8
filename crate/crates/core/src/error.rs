use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the evaluation point q = {0}")]
    Pole(String),
    #[error("ring parameter mismatch: {0}")]
    ParamsMismatch(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("level {ell} too small: {reason}")]
    LevelTooSmall { ell: u32, reason: String },
    #[error("enumeration budget exceeded: needs about {needed} operations, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("division is not exact")]
    NonExactDivision,
    #[error("polynomial is not symmetric")]
    NotSymmetric,
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("pole outside the known catalogue: {0}")]
    UncataloguedPole(String),
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
