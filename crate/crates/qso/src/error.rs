use std::path::PathBuf;

/// Errors from file handling, configuration and the analysis layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] qso_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Write(#[from] std::io::Error),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn config(message: impl Into<String>) -> Self {
        Error::Config(message.into())
    }

    /// True for errors caused by the invocation rather than by the analysis.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Config(_) | Error::Parse { .. } | Error::Io { .. } => true,
            Error::Core(e) => is_config_error(e),
            Error::Write(_) | Error::Json(_) => false,
        }
    }
}

fn is_config_error(e: &qso_core::Error) -> bool {
    use qso_core::Error as E;
    !matches!(
        e,
        E::NotAFixedPoint { .. } | E::NeverEntersRegion { .. } | E::EigenNoConvergence | E::DomainViolation { .. }
    )
}

pub type Result<T> = std::result::Result<T, Error>;
