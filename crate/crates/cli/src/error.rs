use thiserror::Error;

use crate::document::DocError;

/// Exit status for a successful run.
pub const EXIT_OK: i32 = 0;
/// Unreadable input, malformed or invalid document, bad usage.
pub const EXIT_INPUT: i32 = 2;
/// A mathematical precondition failed, or `verify` found violations.
pub const EXIT_PRECONDITION: i32 = 3;
/// A decomposition did not converge.
pub const EXIT_NUMERICAL: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Document { path: String, source: DocError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] hjw::Error),
    #[error("{target} failed verification with {count} violation(s)")]
    Violations { target: &'static str, count: usize },
}

impl CliError {
    pub fn name(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "Io",
            CliError::Document { .. } => "InvalidDocument",
            CliError::Usage(_) => "Usage",
            CliError::Library(e) => e.name(),
            CliError::Violations { .. } => "VerificationFailed",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Document { .. } | CliError::Usage(_) => EXIT_INPUT,
            CliError::Library(e) if e.is_numerical() => EXIT_NUMERICAL,
            CliError::Library(_) | CliError::Violations { .. } => EXIT_PRECONDITION,
        }
    }

    /// One-line JSON object for stderr.
    pub fn to_json(&self) -> String {
        serde_json::json!({
            "error": self.name(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        })
        .to_string()
    }
}
