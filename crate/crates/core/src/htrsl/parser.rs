use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::lexer::{tokenize, Spanned, Tok};
use super::{Desc, DescItem, HtrslFile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    UnexpectedToken { found: String, expected: &'static str },
    #[error("unexpected end of input, expected {expected}")]
    UnexpectedEof { expected: &'static str },
    #[error("unexpected character {0:?}")]
    UnexpectedChar(char),
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("unterminated block comment")]
    UnterminatedComment,
    #[error("invalid escape sequence \\{0}")]
    InvalidEscape(char),
    #[error("invalid identifier `{0}` (identifiers start with a lowercase letter or `_`)")]
    InvalidIdentifier(String),
    #[error("optional parentheses cannot be nested")]
    NestedOptParens,
    #[error("optional parentheses are not allowed inside alternatives")]
    OptParensInAlternative,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Nesting {
    Top,
    Parens,
    Alt,
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

pub fn parse_htrsl(source: &str) -> Result<HtrslFile, ParseError> {
    let toks = tokenize(source)?;
    let end = end_position(source);
    let mut p = Parser { toks, pos: 0, end };
    p.file()
}

fn end_position(source: &str) -> (usize, usize) {
    let line = source.matches('\n').count() + 1;
    let last = source.rsplit('\n').next().unwrap_or("");
    (line, last.chars().count() + 1)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn error_here(&self, expected: &'static str) -> ParseError {
        match self.toks.get(self.pos) {
            Some(s) => ParseError {
                kind: ParseErrorKind::UnexpectedToken {
                    found: s.tok.describe(),
                    expected,
                },
                line: s.line,
                column: s.column,
            },
            None => ParseError {
                kind: ParseErrorKind::UnexpectedEof { expected },
                line: self.end.0,
                column: self.end.1,
            },
        }
    }

    fn error_kind(&self, kind: ParseErrorKind) -> ParseError {
        let s = &self.toks[self.pos];
        ParseError {
            kind,
            line: s.line,
            column: s.column,
        }
    }

    fn file(&mut self) -> Result<HtrslFile, ParseError> {
        let mut specs = Vec::new();
        if self.peek().is_none() {
            return Ok(HtrslFile { specs });
        }
        loop {
            specs.push(self.desc()?);
            match self.peek() {
                None => break,
                Some(Tok::Semi) => {
                    self.pos += 1;
                    // a trailing separator is accepted
                    if self.peek().is_none() {
                        break;
                    }
                }
                Some(_) => return Err(self.error_here("`;` or end of input")),
            }
        }
        Ok(HtrslFile { specs })
    }

    fn desc(&mut self) -> Result<Desc, ParseError> {
        let items = self.items(Nesting::Top)?;
        Ok(Desc { items })
    }

    fn starts_item(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Str(_) | Tok::Ident(_) | Tok::Space | Tok::LBracket | Tok::LParen)
        )
    }

    fn items(&mut self, nesting: Nesting) -> Result<Vec<DescItem>, ParseError> {
        let mut items = Vec::new();
        while self.starts_item() {
            items.push(self.item(nesting)?);
        }
        if items.is_empty() {
            return Err(self.error_here("a description item"));
        }
        Ok(items)
    }

    fn item(&mut self, nesting: Nesting) -> Result<DescItem, ParseError> {
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Str(s)) => {
                self.pos += 1;
                Ok(DescItem::Lit(s))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(DescItem::Name(s))
            }
            Some(Tok::Space) => {
                self.pos += 1;
                Ok(DescItem::Space)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let mut alts = Vec::new();
                loop {
                    alts.push(self.items(Nesting::Alt)?);
                    match self.peek() {
                        Some(Tok::Bar) => self.pos += 1,
                        Some(Tok::RBracket) => {
                            self.pos += 1;
                            break;
                        }
                        _ => return Err(self.error_here("`|` or `]`")),
                    }
                }
                Ok(DescItem::Alt(alts))
            }
            Some(Tok::LParen) => match nesting {
                Nesting::Parens => Err(self.error_kind(ParseErrorKind::NestedOptParens)),
                Nesting::Alt => Err(self.error_kind(ParseErrorKind::OptParensInAlternative)),
                Nesting::Top => {
                    self.pos += 1;
                    let body = self.items(Nesting::Parens)?;
                    if self.peek() != Some(&Tok::RParen) {
                        return Err(self.error_here("`)`"));
                    }
                    self.pos += 1;
                    Ok(DescItem::OptParens(body))
                }
            },
            _ => Err(self.error_here("a description item")),
        }
    }
}
