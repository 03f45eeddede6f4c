use thiserror::Error;

use crate::report::ValidationReport;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed table: {0}")]
    MalformedTable(String),

    #[error("malformed map: {0}")]
    MalformedMap(String),

    #[error("search budget of {limit} nodes exceeded ({context})")]
    BudgetExceeded { limit: u64, context: String },

    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("validation failed for {name}: {report}")]
    Validation { name: String, report: ValidationReport },

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("not unique: {0}")]
    NonUnique(String),

    #[error("PreconditionFailed: {tag}")]
    PreconditionFailed { tag: String, detail: String },

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("unknown name: {0}")]
    UnknownName(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn precondition(tag: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::PreconditionFailed { tag: tag.into(), detail: detail.into() }
    }
}
