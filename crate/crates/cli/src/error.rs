//! CLI error type with the exit-code contract:
//! 0 success, 1 usage error, 2 data/validation error, 3 network error.

use std::fmt;

use sutte_core::{
    EvaluationError, FetchError, IndicatorError, MarketDataError, SignalError,
};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Data(String),
    Network(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Data(_) => 2,
            CliError::Network(_) => 3,
        }
    }

    pub fn io(context: &str, err: std::io::Error) -> CliError {
        CliError::Data(format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Data(m) => write!(f, "{m}"),
            CliError::Network(m) => write!(f, "{m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<MarketDataError> for CliError {
    fn from(err: MarketDataError) -> Self {
        match err {
            // An inverted window comes straight from the flags.
            MarketDataError::InvalidWindow { .. } => CliError::Usage(err.to_string()),
            _ => CliError::Data(err.to_string()),
        }
    }
}

impl From<FetchError> for CliError {
    fn from(err: FetchError) -> Self {
        match err {
            FetchError::UnsupportedScheme(_) => CliError::Usage(err.to_string()),
            _ => CliError::Network(err.to_string()),
        }
    }
}

impl From<IndicatorError> for CliError {
    fn from(err: IndicatorError) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<SignalError> for CliError {
    fn from(err: SignalError) -> Self {
        CliError::Data(err.to_string())
    }
}

impl From<EvaluationError> for CliError {
    fn from(err: EvaluationError) -> Self {
        CliError::Data(err.to_string())
    }
}
