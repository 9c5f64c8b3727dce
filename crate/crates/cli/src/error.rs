use std::process::ExitCode;

/// Process exit status. The numeric values are part of the interface.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExitStatus {
    Ok = 0,
    Violated = 1,
    Usage = 2,
    Internal = 3,
}

impl From<ExitStatus> for ExitCode {
    fn from(s: ExitStatus) -> Self {
        ExitCode::from(s as u8)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn status(&self) -> ExitStatus {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => ExitStatus::Usage,
            CliError::Internal(_) => ExitStatus::Internal,
        }
    }

    pub(crate) fn io(path: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { path: path.into(), source }
    }
}

impl From<latticeset::Error> for CliError {
    fn from(e: latticeset::Error) -> Self {
        use latticeset::Error as E;
        match e {
            E::InvalidParameter(_)
            | E::OutOfRange { .. }
            | E::DimensionMismatch { .. }
            | E::WrongArity { .. }
            | E::DuplicatePoint => CliError::Usage(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}
