use std::fmt;

/// CLI failure classes, each with its own process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad spec file, bad override, bad flag value. Exit code 2.
    Config(String),
    /// Simulation or I/O failure after a valid configuration. Exit code 3.
    Runtime(String),
    /// The oracle comparison ran and exceeded its tolerance. Exit code 4.
    OracleFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Runtime(_) => 3,
            CliError::OracleFailed(_) => 4,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "configuration error: {msg}"),
            CliError::Runtime(msg) => write!(f, "runtime error: {msg}"),
            CliError::OracleFailed(msg) => write!(f, "oracle check failed: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}
