//! Feature analysis for a Haskell exam subset.
//!
//! [`parse_subset`] lexes and parses a source file (top-level type
//! signatures, function and constant bindings with guards, `where`,
//! `let`/`in`, `if`, `case`, lambdas, list comprehensions, sections and the
//! usual literals, lists and tuples; `data`/`type`/`newtype` declarations and
//! `import` lines are skipped). [`analyze`] then reports, per top-level
//! binding, which language features it uses and which functions it calls or
//! declares locally.
//!
//! Layout follows the Haskell layout algorithm; implicit blocks are closed
//! early by `in`, closing brackets, commas, `then`/`else` and `where` in the
//! situations exam code produces, instead of by parser backtracking.

mod analyze;
pub mod ast;
mod layout;
mod lexer;
mod parser;

use alloc::string::String;
use core::fmt;

use thiserror::Error;

pub use analyze::{analyze, AnalysisReport, Feature, FunctionReport};
pub use parser::parse_subset;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct HsError {
    pub kind: HsErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HsErrorKind {
    UnexpectedChar(char),
    UnterminatedString,
    UnterminatedChar,
    UnterminatedComment,
    Unexpected {
        found: String,
        expected: &'static str,
    },
    UnexpectedEof {
        expected: &'static str,
    },
    /// A construct the exam subset does not cover (do-notation, classes,
    /// records, ...).
    OutsideSubset(&'static str),
    ArityMismatch {
        name: String,
    },
    DuplicateDefinition {
        name: String,
    },
    DuplicateVariable {
        name: String,
    },
    UnbalancedBraces,
}

impl HsErrorKind {
    pub fn is_outside_subset(&self) -> bool {
        matches!(self, HsErrorKind::OutsideSubset(_))
    }
}

impl fmt::Display for HsErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HsErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            HsErrorKind::UnterminatedString => f.write_str("unterminated string literal"),
            HsErrorKind::UnterminatedChar => f.write_str("unterminated character literal"),
            HsErrorKind::UnterminatedComment => f.write_str("unterminated block comment"),
            HsErrorKind::Unexpected { found, expected } => {
                write!(f, "unexpected {found}, expected {expected}")
            }
            HsErrorKind::UnexpectedEof { expected } => {
                write!(f, "unexpected end of input, expected {expected}")
            }
            HsErrorKind::OutsideSubset(what) => write!(f, "outside subset: {what}"),
            HsErrorKind::ArityMismatch { name } => {
                write!(f, "clauses of `{name}` have different numbers of arguments")
            }
            HsErrorKind::DuplicateDefinition { name } => {
                write!(f, "`{name}` is defined more than once")
            }
            HsErrorKind::DuplicateVariable { name } => {
                write!(f, "variable `{name}` is bound more than once in one pattern")
            }
            HsErrorKind::UnbalancedBraces => f.write_str("unbalanced explicit braces"),
        }
    }
}
