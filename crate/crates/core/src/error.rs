//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CoreError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    PoleAtValue(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("variable slot out of range: {0}")]
    SlotOutOfRange(String),
    #[error("not divisible: remainder has leading term {0}")]
    NotDivisible(String),
    #[error("unmapped variable {0} in substitution")]
    UnmappedVariable(String),
    #[error("zero scale in substitution")]
    ZeroScale,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("invalid Cartan data: {0}")]
    InvalidCartanData(String),
    #[error("negative arrow count")]
    NegativeCount,
    #[error("sign mismatch between operands")]
    SignMismatch,
    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}
