use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed configuration text.
    #[error("{}", parse_message(.line, .key, .message))]
    Parse {
        line: usize,
        key: Option<String>,
        message: String,
    },

    /// Well-formed input that violates an invariant.
    #[error("{0}")]
    Validation(String),

    #[error("{}", numerical_message(.t, .source))]
    Numerical {
        t: Option<f64>,
        source: nlc_core::Error,
    },

    #[error("{path}: {source}", path = .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

fn parse_message(line: &usize, key: &Option<String>, message: &str) -> String {
    match key {
        Some(k) => format!("line {line}, key `{k}`: {message}"),
        None => format!("line {line}: {message}"),
    }
}

fn numerical_message(t: &Option<f64>, source: &nlc_core::Error) -> String {
    match t {
        Some(t) => format!("at t = {t}: {source}"),
        None => source.to_string(),
    }
}

/// Coarse failure class, mapped one-to-one onto process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Config,
    Numerical,
    Io,
}

impl ErrorKind {
    pub fn exit_code(self) -> i32 {
        match self {
            ErrorKind::Config => 2,
            ErrorKind::Numerical => 3,
            ErrorKind::Io => 4,
        }
    }
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Config => "config",
            ErrorKind::Numerical => "numerical",
            ErrorKind::Io => "io",
        })
    }
}

impl CliError {
    pub fn kind(&self) -> ErrorKind {
        match self {
            CliError::Parse { .. } | CliError::Validation(_) => ErrorKind::Config,
            CliError::Numerical { .. } => ErrorKind::Numerical,
            CliError::Io { .. } => ErrorKind::Io,
        }
    }

    pub fn exit_code(&self) -> i32 {
        self.kind().exit_code()
    }

    /// Single-line `error kind=<kind>: <message>` rendering for stderr.
    pub fn machine_line(&self) -> String {
        let message = self.to_string().replace(['\n', '\r'], " ");
        format!("error kind={}: {message}", self.kind())
    }

    pub(crate) fn numerical(source: nlc_core::Error) -> Self {
        CliError::Numerical { t: None, source }
    }
}
