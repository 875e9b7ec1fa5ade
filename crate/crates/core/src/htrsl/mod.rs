//! HTRSL: a small description language for Haskell-shaped answers that
//! compiles to ECMAScript regexes.
//!
//! A file is a `;`-separated list of descriptions. Each description is a
//! sequence of items:
//!
//! * `"text"` matches the text literally,
//! * `name` matches any identifier; later uses of the same name must repeat
//!   the identifier bound at its first use,
//! * `\\` requires at least one whitespace character,
//! * `[ items | items ]` matches one of the alternatives,
//! * `( items )` matches the items with both surrounding parentheses or
//!   neither (cannot be nested).
//!
//! Adjacent items may be separated by any amount of whitespace, and a
//! compiled pattern matches the entire answer.

mod check;
mod compile;
mod lexer;
mod parser;
mod pretty;

use alloc::string::String;
use alloc::vec::Vec;

pub use check::{check_examples, CheckReport};
pub use compile::{compile_file, compile_spec, CompileError, CompiledRegex, FileCompileError};
pub use parser::{parse_htrsl, ParseError, ParseErrorKind};
pub use pretty::pretty_print;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HtrslFile {
    pub specs: Vec<Desc>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Desc {
    pub items: Vec<DescItem>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescItem {
    Lit(String),
    Name(String),
    Space,
    /// Non-empty list of non-empty alternatives. Alternatives never contain
    /// `OptParens`.
    Alt(Vec<Vec<DescItem>>),
    /// Body without nested `OptParens`.
    OptParens(Vec<DescItem>),
}

/// Whether `s` is a valid HTRSL identifier (`[_a-z][_a-zA-Z0-9']*`).
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c == '_' || c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}
