use thiserror::Error;

/// Errors raised by the algebra, solver and module engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("generator index {index} is not valid here ({reason})")]
    InvalidIndex { index: usize, reason: String },

    #[error("division is not exact: {0}")]
    InexactDivision(String),

    #[error("operands carry different parameters")]
    ParamMismatch,

    #[error("window [{min}, {max}] exceeds the configured limit {limit}")]
    WindowTooLarge { min: i32, max: i32, limit: i32 },

    #[error("polynomial does not satisfy the star equation: {0}")]
    NotASolution(String),

    #[error("zero vector has no eigenvalues")]
    ZeroVector,

    #[error("formula pole: {0}")]
    FormulaPole(String),

    #[error("coefficient oracle could not make progress: {0}")]
    OracleStalled(String),

    #[error("inconsistent scalar tables: {0}")]
    InconsistentTables(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
