use std::fmt;

/// Failures surfaced by the front end, each tied to a process exit code.
#[derive(Debug)]
pub enum CliError {
    Io { path: String, source: std::io::Error },
    Parse(serde_json::Error),
    Schema(String),
    Domain(ordef_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } | CliError::Parse(_) | CliError::Schema(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io { path, source } => write!(f, "cannot read {path}: {source}"),
            CliError::Parse(e) => write!(f, "malformed input: {e}"),
            CliError::Schema(msg) => write!(f, "schema violation: {msg}"),
            CliError::Domain(e) => write!(f, "invalid data: {e}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Io { source, .. } => Some(source),
            CliError::Parse(e) => Some(e),
            CliError::Domain(e) => Some(e),
            CliError::Schema(_) => None,
        }
    }
}

impl From<ordef_core::Error> for CliError {
    fn from(e: ordef_core::Error) -> Self {
        CliError::Domain(e)
    }
}
