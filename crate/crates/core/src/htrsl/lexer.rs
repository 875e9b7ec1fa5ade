use alloc::string::String;
use alloc::vec::Vec;

use super::parser::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Str(String),
    Ident(String),
    Space,
    LBracket,
    RBracket,
    Bar,
    LParen,
    RParen,
    Semi,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        use alloc::format;
        match self {
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Space => "`\\\\`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Semi => "`;`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

struct Cursor<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn starts_with(&self, s: &str) -> bool {
        let mut it = self.chars.clone();
        s.chars().all(|c| it.next() == Some(c))
    }
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut cur = Cursor {
        chars: source.chars().peekable(),
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    loop {
        let (line, column) = (cur.line, cur.column);
        let err = |kind| ParseError { kind, line, column };
        let Some(c) = cur.peek() else { break };
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if cur.starts_with("--") {
            while let Some(c) = cur.bump() {
                if c == '\n' {
                    break;
                }
            }
            continue;
        }
        if cur.starts_with("{-") {
            cur.bump();
            cur.bump();
            loop {
                if cur.starts_with("-}") {
                    cur.bump();
                    cur.bump();
                    break;
                }
                if cur.bump().is_none() {
                    return Err(err(ParseErrorKind::UnterminatedComment));
                }
            }
            continue;
        }
        let tok = match c {
            '"' => {
                cur.bump();
                let mut text = String::new();
                loop {
                    match cur.bump() {
                        None | Some('\n') => return Err(err(ParseErrorKind::UnterminatedString)),
                        Some('"') => break,
                        Some('\\') => match cur.bump() {
                            Some(e @ ('"' | '\\')) => text.push(e),
                            Some(e) => {
                                return Err(ParseError {
                                    kind: ParseErrorKind::InvalidEscape(e),
                                    line: cur.line,
                                    column: cur.column - 1,
                                })
                            }
                            None => return Err(err(ParseErrorKind::UnterminatedString)),
                        },
                        Some(ch) => text.push(ch),
                    }
                }
                Tok::Str(text)
            }
            '\\' => {
                cur.bump();
                if cur.peek() != Some('\\') {
                    return Err(err(ParseErrorKind::UnexpectedChar('\\')));
                }
                cur.bump();
                Tok::Space
            }
            '[' | ']' | '|' | '(' | ')' | ';' => {
                cur.bump();
                match c {
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    '|' => Tok::Bar,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Semi,
                }
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(c) = cur.peek() {
                    if c.is_alphanumeric() || c == '_' || c == '\'' {
                        ident.push(c);
                        cur.bump();
                    } else {
                        break;
                    }
                }
                if !super::is_identifier(&ident) {
                    return Err(err(ParseErrorKind::InvalidIdentifier(ident)));
                }
                Tok::Ident(ident)
            }
            other => return Err(err(ParseErrorKind::UnexpectedChar(other))),
        };
        out.push(Spanned { tok, line, column });
    }
    Ok(out)
}
