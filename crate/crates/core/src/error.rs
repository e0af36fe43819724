use std::fmt;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("instance too large for exhaustive {operation}: n = {n}, limit is {limit}")]
    SizeGuard {
        operation: &'static str,
        n: usize,
        limit: usize,
    },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("vertex {vertex} is equidistant from component vertices {first} and {second}")]
    AssignmentAmbiguous {
        vertex: usize,
        first: usize,
        second: usize,
    },
    #[error("precondition not met: {0}")]
    PreconditionUnmet(String),
    #[error("profile graph is not a tree")]
    NotTree,
    #[error("profile is not a Nash equilibrium")]
    NotEquilibrium,
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    BadHeader,
    BadVertexIndex,
    DuplicateBuy,
    BadRational,
    Malformed,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::BadHeader => "bad header",
            ParseErrorKind::BadVertexIndex => "bad vertex index",
            ParseErrorKind::DuplicateBuy => "duplicate buy",
            ParseErrorKind::BadRational => "bad rational",
            ParseErrorKind::Malformed => "malformed line",
        };
        f.write_str(s)
    }
}

/// Profile text parse failure. `line` and `column` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind} at line {line}, column {column}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(
        kind: ParseErrorKind,
        line: usize,
        column: usize,
        message: impl Into<String>,
    ) -> Self {
        Self {
            kind,
            line,
            column,
            message: message.into(),
        }
    }
}

pub(crate) fn size_guard(operation: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::SizeGuard {
            operation,
            n,
            limit,
        })
    } else {
        Ok(())
    }
}
