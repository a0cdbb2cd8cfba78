use std::fmt;

use thiserror::Error;

/// Byte range into some input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }
}

/// A syntax error located at `line:col` (both 1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub span: SourceSpan,
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn at(text: &str, span: SourceSpan, message: impl Into<String>) -> Self {
        let (line, col) = line_col(text, span.start);
        Self {
            span,
            line,
            col,
            message: message.into(),
        }
    }

    /// Shift the error onto line `line` of a larger document.
    pub(crate) fn on_line(mut self, line: usize, line_offset: usize) -> Self {
        self.line = line;
        self.span = SourceSpan::new(self.span.start + line_offset, self.span.end + line_offset);
        self
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let col = match before.rfind('\n') {
        Some(nl) => before[nl + 1..].chars().count() + 1,
        None => before.chars().count() + 1,
    };
    (line, col)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0}")]
    Parse(#[from] ParseError),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invalid variable name {0:?}")]
    InvalidName(String),
    #[error("negation of an equality sentence is a disjunction and has no conjunctive standard form")]
    NegatedEquality,
    #[error("goal must standardize to a single sentence (equality goals are not supported)")]
    CompoundGoal,
    #[error("invalid resolution step: {0}")]
    InvalidResolution(String),
    #[error("invalid weakening step: {0}")]
    InvalidWeakening(String),
    #[error("dimacs: {0}")]
    Dimacs(String),
    #[error("{0} variables exceed the enumeration cap of {1}")]
    VariableCap(usize, usize),
    #[error("cardinality constraint: {0}")]
    Cardinality(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
