use etaq::{CongruenceError, FormError, SeriesError, SpecError};
use thiserror::Error;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_PRECISION: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Precision(String),
    #[error("output: {0}")]
    Output(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Precision(_) => EXIT_PRECISION,
            CliError::Usage(_) | CliError::Output(_) => EXIT_USAGE,
        }
    }
}

impl From<SeriesError> for CliError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::PrecisionShortfall { .. } | SeriesError::PrecisionTooSmall { .. } => {
                CliError::Precision(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<FormError> for CliError {
    fn from(e: FormError) -> Self {
        match e {
            FormError::Series(s) => s.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<CongruenceError> for CliError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::Series(s) => s.into(),
            CongruenceError::Form(f) => f.into(),
            CongruenceError::PrecisionShortfall { .. } | CongruenceError::HorizonTooSmall { .. } => {
                CliError::Precision(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
