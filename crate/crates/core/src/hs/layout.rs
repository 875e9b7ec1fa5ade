//! Layout resolution: turns indentation into explicit block structure by
//! inserting virtual `{`, `;` and `}` tokens.

use alloc::vec::Vec;

use super::lexer::{Kw, Tok, Token};
use super::{HsError, HsErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Top,
    Where,
    Let,
    Of,
    Do,
}

#[derive(Debug, Clone, Copy)]
struct Block {
    /// Indentation column; 0 for an explicitly braced block.
    indent: usize,
    kind: BlockKind,
    /// Open brackets when the block started.
    brackets: usize,
    /// Pending `if`s when the block started.
    ifs: usize,
}

struct Resolver {
    out: Vec<Token>,
    stack: Vec<Block>,
    brackets: usize,
    ifs: usize,
}

impl Resolver {
    fn virtual_token(&mut self, tok: Tok, at: &Token) {
        self.out.push(Token {
            tok,
            line: at.line,
            column: at.column,
        });
    }

    fn close_while(&mut self, at: &Token, pred: impl Fn(&Block) -> bool) {
        while let Some(top) = self.stack.last() {
            if top.indent == 0 || !pred(top) {
                break;
            }
            self.stack.pop();
            self.virtual_token(Tok::VRBrace, at);
        }
    }

    /// Opens an implicit block at `next`'s column. Returns false when the
    /// block is empty because `next` is not indented past the current block.
    fn open(&mut self, kind: BlockKind, next: &Token) -> bool {
        let current = self.stack.last().map_or(0, |b| b.indent);
        self.virtual_token(Tok::VLBrace, next);
        if next.column > current {
            self.stack.push(Block {
                indent: next.column,
                kind,
                brackets: self.brackets,
                ifs: self.ifs,
            });
            true
        } else {
            self.virtual_token(Tok::VRBrace, next);
            false
        }
    }

    fn new_line(&mut self, t: &Token) {
        while let Some(top) = self.stack.last().copied() {
            if top.indent == 0 {
                break;
            }
            if t.column == top.indent {
                self.virtual_token(Tok::VSemi, t);
                break;
            } else if t.column < top.indent {
                self.stack.pop();
                self.virtual_token(Tok::VRBrace, t);
            } else {
                break;
            }
        }
    }

    /// Closes implicit blocks that a Haskell parser would close on a parse
    /// error at `t`.
    fn implicit_closes(&mut self, t: &Token) -> Result<(), HsError> {
        match &t.tok {
            Tok::Kw(Kw::In) => {
                self.close_while(t, |b| matches!(b.kind, BlockKind::Of | BlockKind::Do));
                if self
                    .stack
                    .last()
                    .is_some_and(|b| b.indent > 0 && b.kind == BlockKind::Let)
                {
                    self.stack.pop();
                    self.virtual_token(Tok::VRBrace, t);
                }
            }
            Tok::RParen | Tok::RBracket => {
                let depth = self.brackets;
                self.close_while(t, |b| depth > 0 && b.brackets >= depth);
            }
            Tok::Comma => {
                let depth = self.brackets;
                self.close_while(t, |b| depth > 0 && b.brackets >= depth);
            }
            Tok::Kw(Kw::Then | Kw::Else) => {
                let ifs = self.ifs;
                self.close_while(t, |b| {
                    ifs > 0 && b.ifs >= ifs && matches!(b.kind, BlockKind::Let | BlockKind::Of | BlockKind::Do)
                });
            }
            Tok::Kw(Kw::Where) => {
                self.close_while(t, |b| matches!(b.kind, BlockKind::Of | BlockKind::Do));
            }
            Tok::RBrace => {
                self.close_while(t, |_| true);
                match self.stack.pop() {
                    Some(b) if b.indent == 0 => {}
                    _ => {
                        return Err(HsError {
                            kind: HsErrorKind::UnbalancedBraces,
                            line: t.line,
                            column: t.column,
                        })
                    }
                }
            }
            _ => {}
        }
        Ok(())
    }
}

fn opener(tok: &Tok) -> Option<BlockKind> {
    match tok {
        Tok::Kw(Kw::Where) => Some(BlockKind::Where),
        Tok::Kw(Kw::Let) => Some(BlockKind::Let),
        Tok::Kw(Kw::Of) => Some(BlockKind::Of),
        Tok::Kw(Kw::Do) => Some(BlockKind::Do),
        _ => None,
    }
}

pub(crate) fn resolve(tokens: Vec<Token>) -> Result<Vec<Token>, HsError> {
    let mut r = Resolver {
        out: Vec::with_capacity(tokens.len() * 2),
        stack: Vec::new(),
        brackets: 0,
        ifs: 0,
    };
    let mut pending = match tokens.first().map(|t| &t.tok) {
        Some(Tok::Kw(Kw::Module) | Tok::LBrace) | None => None,
        Some(_) => Some(BlockKind::Top),
    };
    let mut prev_line = 0;
    for t in &tokens {
        let mut starts_line = t.line != prev_line;
        prev_line = t.line;
        if let Some(kind) = pending.take() {
            if t.tok == Tok::LBrace {
                r.stack.push(Block {
                    indent: 0,
                    kind,
                    brackets: r.brackets,
                    ifs: r.ifs,
                });
                r.out.push(t.clone());
                continue;
            }
            if r.open(kind, t) {
                // the first token of a block never starts a new item
                starts_line = false;
            }
        }
        if starts_line {
            r.new_line(t);
        }
        r.implicit_closes(t)?;
        r.out.push(t.clone());
        match &t.tok {
            Tok::LParen | Tok::LBracket => r.brackets += 1,
            Tok::RParen | Tok::RBracket => r.brackets = r.brackets.saturating_sub(1),
            Tok::Kw(Kw::If) => r.ifs += 1,
            Tok::Kw(Kw::Else) => r.ifs = r.ifs.saturating_sub(1),
            Tok::LBrace => r.stack.push(Block {
                indent: 0,
                kind: BlockKind::Let,
                brackets: r.brackets,
                ifs: r.ifs,
            }),
            _ => {}
        }
        pending = opener(&t.tok);
    }
    if let Some(last) = tokens.last() {
        let end = Token {
            tok: Tok::VRBrace,
            line: last.line + 1,
            column: 0,
        };
        if pending.is_some() {
            r.virtual_token(Tok::VLBrace, &end);
            r.virtual_token(Tok::VRBrace, &end);
        }
        while let Some(b) = r.stack.pop() {
            if b.indent == 0 {
                return Err(HsError {
                    kind: HsErrorKind::UnbalancedBraces,
                    line: end.line,
                    column: 1,
                });
            }
            r.virtual_token(Tok::VRBrace, &end);
        }
    }
    Ok(r.out)
}
