use thiserror::Error;

/// Failure of a CLI run, classified by exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Numeric(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Data(_) | CliError::Io { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }

    /// Wraps a library error with a description of where it came from.
    pub fn from_core(context: &str, err: dcorr::Error) -> Self {
        let msg = format!("{context}: {err}");
        match err {
            dcorr::Error::Parameter(_) => CliError::Usage(msg),
            dcorr::Error::InvalidInput(_) | dcorr::Error::Size(_) => CliError::Data(msg),
            dcorr::Error::DegenerateVariance(_) | dcorr::Error::Numeric(_) => {
                CliError::Numeric(msg)
            }
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
