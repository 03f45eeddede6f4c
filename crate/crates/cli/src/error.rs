use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] dblcat::Error),

    #[error("{0}: {1}")]
    Io(String, std::io::Error),

    #[error("{0}")]
    Usage(String),
}

/// Machine-readable form of an error.
#[derive(Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tag: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl CliError {
    pub fn info(&self) -> ErrorInfo {
        use dblcat::Error as E;
        let (kind, tag, detail) = match self {
            CliError::Core(e) => match e {
                E::MalformedTable(_) => ("MalformedTable", None, None),
                E::MalformedMap(_) => ("MalformedMap", None, None),
                E::BudgetExceeded { .. } => ("BudgetExceeded", None, None),
                E::Parse { .. } => ("ParseError", None, None),
                E::Validation { .. } => ("ValidationError", None, None),
                E::NotInvertible(_) => ("NotInvertible", None, None),
                E::NonUnique(_) => ("NonUnique", None, None),
                E::PreconditionFailed { tag, detail } => ("PreconditionFailed", Some(tag.clone()), Some(detail.clone())),
                E::InternalInconsistency(_) => ("InternalInconsistency", None, None),
                E::UnknownName(_) => ("UnknownName", None, None),
            },
            CliError::Io(..) => ("Io", None, None),
            CliError::Usage(_) => ("Usage", None, None),
        };
        ErrorInfo { kind, message: self.to_string(), tag, detail }
    }
}
