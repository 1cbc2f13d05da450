use std::process::ExitCode;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl CliError {
    /// 2 usage, 3 input data, 4 internal consistency.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Input(_) => 3,
            CliError::Consistency(_) => 4,
        }
    }

    pub fn exit(&self) -> ExitCode {
        ExitCode::from(self.exit_code())
    }
}

impl From<rotor_fidelity::Error> for CliError {
    fn from(e: rotor_fidelity::Error) -> Self {
        match e {
            rotor_fidelity::Error::Consistency(msg) => CliError::Consistency(msg),
            other => CliError::Input(other.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
