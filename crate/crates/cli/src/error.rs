use std::fmt;
use std::path::Path;

use hopf_galois::group::GroupError;
use hopf_galois::Error;

/// Failure of a command, with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid input: exit 2.
    Input(String),
    /// A resource cap was hit: exit 3.
    Cap(String),
    /// Anything else: exit 1.
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
            CliError::Other(_) => 1,
        }
    }

    pub fn io(path: &Path, e: std::io::Error) -> Self {
        CliError::Input(format!("{}: {e}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Cap(m) | CliError::Other(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::CapExceeded { .. } | Error::Group(GroupError::TooLarge { .. }) => CliError::Cap(msg),
            Error::Internal(_) => CliError::Other(msg),
            _ => CliError::Input(msg),
        }
    }
}
