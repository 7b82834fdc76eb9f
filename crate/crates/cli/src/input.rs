//! Reading input files and classifying failures into exit codes.

use std::fmt;
use std::path::Path;

use schur_horn::Error;

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation, unreadable file or malformed input.
    Usage(String),
    /// Inputs parse but violate what the verb requires.
    Precondition(String),
    /// The computation ran and could not certify its result.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Precondition(_) => 3,
        }
    }

    /// Wraps a library error raised while working on `what`.
    pub fn from_core(what: &str, e: Error) -> Self {
        let msg = format!("{what}: {e}");
        match e.root() {
            Error::Parse { .. } => CliError::Usage(msg),
            Error::InternalInvariantViolation(_)
            | Error::EigenFailure(_)
            | Error::FallbackExhausted(_)
            | Error::DecompositionFailed(_) => CliError::Failed(msg),
            _ => CliError::Precondition(msg),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Precondition(m) => write!(f, "precondition: {m}"),
            CliError::Failed(m) => write!(f, "failed: {m}"),
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Reads and parses `path`; parse errors come back as `path:line: message`.
pub fn load<X>(path: &Path, parse: impl Fn(&str) -> schur_horn::Result<X>) -> Result<X, CliError> {
    let text = read(path)?;
    parse(&text).map_err(|e| match e {
        Error::Parse { line, message } => CliError::Usage(format!("{}:{line}: {message}", path.display())),
        other => CliError::from_core(&path.display().to_string(), other),
    })
}

/// First token of the first non-comment line.
pub fn format_of(text: &str) -> Option<&str> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .and_then(|l| l.split_whitespace().next())
}

pub fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_follow_the_root_error() {
        assert_eq!(CliError::from_core("x", Error::NotMajorized).code(), 3);
        let staged = Error::Stage { stage: "matrix", source: Box::new(Error::EigenFailure(3)) };
        assert_eq!(CliError::from_core("x", staged).code(), 1);
        assert_eq!(CliError::from_core("x", Error::Parse { line: 2, message: "bad".into() }).code(), 2);
    }

    #[test]
    fn sniffs_the_header() {
        assert_eq!(format_of("# note\n\n  matrix v1 2 2\n1 0\n"), Some("matrix"));
        assert_eq!(format_of("# only a comment\n"), None);
    }
}
