use std::fmt;

use thiserror::Error;

/// Location of a parse failure inside a source string (byte offset, 1-based line/column).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Location {
    pub offset: usize,
    pub line: usize,
    pub column: usize,
}

impl Location {
    pub fn in_source(src: &str, offset: usize) -> Self {
        let offset = offset.min(src.len());
        let before = &src[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |s| s.chars().count()) + 1;
        Location { offset, line, column }
    }
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring signature: {0}")]
    Signature(String),

    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: Location, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("duplicate leading monomial {0}; merge elements with equal leading terms first")]
    DuplicateLeadingMonomial(String),

    #[error("invalid option: {0}")]
    InvalidOption(String),
}

impl Error {
    pub fn parse(src: &str, offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            location: Location::in_source(src, offset),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
