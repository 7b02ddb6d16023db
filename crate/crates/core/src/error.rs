use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter a = {0} is out of range (a must be at least 7)")]
    ParameterRange(i64),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("matrix is not positive definite (pivot {index} is {pivot})")]
    NotPositiveDefinite { index: usize, pivot: String },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("elements belong to different orders")]
    OrderMismatch,

    #[error("precision limit of {0} bits reached without a decision")]
    PrecisionExhausted(u32),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
