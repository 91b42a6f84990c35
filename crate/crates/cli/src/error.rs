use std::fmt;

use naivecov_core::Error;

/// A failure with its process exit code.
#[derive(Debug)]
pub enum CliError {
    /// I/O or numerical failure (exit 1).
    Runtime(String),
    /// Bad arguments or input files (exit 2).
    Invalid(String),
    /// Quadrature and Monte Carlo disagree (exit 3).
    Verification(String),
}

impl CliError {
    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Invalid(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Runtime(_) => 1,
            CliError::Invalid(_) => 2,
            CliError::Verification(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Runtime(m) | CliError::Invalid(m) | CliError::Verification(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::NotApplicable(name) => CliError::Invalid(format!(
                "the large-sample bound does not apply to {name}: it is a consistent selection procedure"
            )),
            Error::InvalidInput(_) | Error::SingularDesign(_) | Error::RhoOneRedirect => CliError::Invalid(e.to_string()),
            Error::Objective { ref source, .. } if matches!(**source, Error::InvalidInput(_)) => {
                CliError::Invalid(e.to_string())
            }
            other => CliError::Runtime(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Runtime(e.to_string())
    }
}
