use std::fmt;

use fibertorque::Error as CoreError;

/// Failures of a CLI run, each mapped to a process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(ConfigDiagnostic),
    #[error("numerical error: {0}")]
    Numerical(String),
    #[error("I/O error: {0}")]
    Io(String),
}

/// Where a configuration problem was found.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfigDiagnostic {
    pub line: Option<usize>,
    pub key: String,
    pub message: String,
}

impl fmt::Display for ConfigDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.key, self.message),
            None => write!(f, "{}: {}", self.key, self.message),
        }
    }
}

impl CliError {
    pub fn config(line: Option<usize>, key: &str, message: impl Into<String>) -> Self {
        CliError::Config(ConfigDiagnostic {
            line,
            key: key.to_string(),
            message: message.into(),
        })
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::QuadratureNotConverged { .. }
            | CoreError::StepTooLarge(_)
            | CoreError::DegeneratePoint(_)
            | CoreError::UndefinedRatio => CliError::Numerical(e.to_string()),
            _ => CliError::config(None, "config", e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}
