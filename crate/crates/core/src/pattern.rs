//! Thin wrapper over an ECMAScript regex engine.
//!
//! Grading patterns are ECMAScript 2018 regexes (named groups,
//! backreferences, lookahead and unbounded lookbehind). Matching is a plain
//! search; patterns that must match the whole answer carry their own `^`/`$`
//! anchors.

use alloc::string::{String, ToString};
use core::fmt;

use thiserror::Error;

pub const DIALECT: &str = "ecmascript-2018";

#[derive(Clone)]
pub struct Pattern {
    source: String,
    regex: regress::Regex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("pattern {pattern:?} does not compile: {message}")]
pub struct PatternError {
    pub pattern: String,
    pub message: String,
}

impl Pattern {
    pub fn new(source: &str) -> Result<Self, PatternError> {
        let regex = regress::Regex::new(source).map_err(|e| PatternError {
            pattern: source.to_string(),
            message: e.to_string(),
        })?;
        Ok(Pattern {
            source: source.to_string(),
            regex,
        })
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn is_match(&self, text: &str) -> bool {
        self.regex.find(text).is_some()
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Pattern").field(&self.source).finish()
    }
}

impl PartialEq for Pattern {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
    }
}

impl Eq for Pattern {}
