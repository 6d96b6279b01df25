use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, FfpError>;

#[derive(Debug, Error)]
pub enum FfpError {
    #[error("empty class{}", .label.as_ref().map(|l| format!(" '{l}'")).unwrap_or_default())]
    EmptyClass { label: Option<String> },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("value out of domain: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// `line` is 1-based; 0 means the error is not tied to a line.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid library file: {0}")]
    LibraryFormat(String),

    #[error("unknown label '{0}'")]
    UnknownLabel(String),

    #[error("id mismatch: {0}")]
    IdMismatch(String),

    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl FfpError {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        FfpError::Parse {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        FfpError::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error class: malformed or inconsistent
    /// input data 2, dimension 3, configuration 4, I/O 5.
    pub fn exit_code(&self) -> i32 {
        match self {
            FfpError::Parse { .. }
            | FfpError::LibraryFormat(_)
            | FfpError::UnknownLabel(_)
            | FfpError::IdMismatch(_)
            | FfpError::InvalidInput(_)
            | FfpError::EmptyClass { .. } => 2,
            FfpError::DimensionMismatch { .. } => 3,
            FfpError::InvalidParameter(_) | FfpError::Domain(_) => 4,
            FfpError::Io { .. } => 5,
        }
    }
}
