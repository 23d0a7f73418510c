use std::fmt;

use thiserror::Error;

use crate::mpoly::VarId;

/// Location and reason of a rejected line in a network description.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column of the offending token.
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Input lies outside the domain of the operation (zero concentration, non-positive rate).
    #[error("domain violation: {0}")]
    DomainViolation(String),

    #[error("no value assigned to variable {0}")]
    MissingAssignment(VarId),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),

    #[error("sampling budget exhausted after {0} samples")]
    BudgetExhausted(usize),

    /// A post-condition check failed; indicates a bug rather than bad input.
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
