use std::fmt;

use thiserror::Error;

/// A single diagnostic produced while reading a SLIR document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, column, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax { expected: Vec<String>, found: String },
    UnexpectedChar(char),
    UnterminatedString,
    BadEscape(char),
    IntegerOverflow(String),
    ReservedWord(String),
    QualifiedName(String),
    UndefinedLabel(String),
    DuplicateLabel(String),
    DuplicateClass(String),
    DuplicateMethod { class: String, method: String },
    DuplicateParam(String),
    UseBeforeDefinition(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax { expected, found } => {
                write!(f, "expected {}, found {found}", expected.join(" or "))
            }
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnterminatedString => f.write_str("unterminated string literal"),
            ParseErrorKind::BadEscape(c) => write!(f, "unknown escape `\\{c}`"),
            ParseErrorKind::IntegerOverflow(s) => write!(f, "integer literal `{s}` out of range"),
            ParseErrorKind::ReservedWord(w) => write!(f, "`{w}` is a reserved word"),
            ParseErrorKind::QualifiedName(n) => {
                write!(f, "`{n}` must be a simple identifier, not a dotted name")
            }
            ParseErrorKind::UndefinedLabel(l) => write!(f, "undefined label `{l}`"),
            ParseErrorKind::DuplicateLabel(l) => write!(f, "duplicate label `{l}`"),
            ParseErrorKind::DuplicateClass(c) => write!(f, "duplicate class `{c}`"),
            ParseErrorKind::DuplicateMethod { class, method } => {
                write!(f, "duplicate method `{method}` in class `{class}`")
            }
            ParseErrorKind::DuplicateParam(p) => write!(f, "duplicate parameter `{p}`"),
            ParseErrorKind::UseBeforeDefinition(l) => {
                write!(f, "local `{l}` is read before any definition")
            }
        }
    }
}
