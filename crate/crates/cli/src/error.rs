//! CLI-level errors carrying their process exit code.

use std::fmt;

/// Exit codes: 0 ok, 2 input/format, 3 math precondition, 4 verification
/// failure, 5 I/O.
#[derive(Debug)]
pub enum CliError {
    /// Malformed files, unknown scenarios/flags, bad selectors.
    Input(String),
    /// Valid input that violates a mathematical precondition (dimension
    /// mismatch, non-unitary operator, coordinate out of range, …).
    Math(String),
    /// A verification suite found a failing instance.
    Verification(String),
    /// Filesystem trouble.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Math(_) => 3,
            CliError::Verification(_) => 4,
            CliError::Io(_) => 5,
        }
    }

    /// Wrap a library error raised while parsing or constructing objects
    /// from user-supplied text: the input itself is at fault.
    pub fn input_from(err: unibounds::Error) -> Self {
        CliError::Input(err.to_string())
    }

    /// Wrap a library error raised during evaluation of well-formed input:
    /// a mathematical precondition failed.
    pub fn math_from(err: unibounds::Error) -> Self {
        CliError::Math(err.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(msg) => write!(f, "input error: {msg}"),
            CliError::Math(msg) => write!(f, "precondition error: {msg}"),
            CliError::Verification(msg) => write!(f, "verification failed: {msg}"),
            CliError::Io(msg) => write!(f, "i/o error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
