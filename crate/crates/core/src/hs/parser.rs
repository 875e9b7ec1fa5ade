use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::ast::*;
use super::layout::resolve;
use super::lexer::{tokenize, Kw, ReservedOp, Tok, Token};
use super::{HsError, HsErrorKind};

/// Parses a source file of the exam subset into a layout-resolved module.
pub fn parse_subset(source: &str) -> Result<SourceModule, HsError> {
    let toks = resolve(tokenize(source)?)?;
    let mut p = Parser { toks, pos: 0 };
    p.module()
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

/// A binding before clauses of the same function are merged.
struct RawBinding {
    binding: Binding,
    line: usize,
    column: usize,
}

enum RawDecl {
    Top(TopDecl),
    Binding(RawBinding),
}

type PResult<T> = Result<T, HsError>;

fn is_open(t: &Tok) -> bool {
    matches!(t, Tok::LBrace | Tok::VLBrace)
}

fn is_close(t: &Tok) -> bool {
    matches!(t, Tok::RBrace | Tok::VRBrace)
}

fn is_semi(t: &Tok) -> bool {
    matches!(t, Tok::Semi | Tok::VSemi)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|t| &t.tok)
    }

    fn position(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or_else(|| self.toks.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        }
    }

    fn error(&self, kind: HsErrorKind) -> HsError {
        let (line, column) = self.position();
        HsError { kind, line, column }
    }

    fn unexpected(&self, expected: &'static str) -> HsError {
        match self.toks.get(self.pos) {
            Some(t) => HsError {
                kind: HsErrorKind::Unexpected {
                    found: t.tok.describe(),
                    expected,
                },
                line: t.line,
                column: t.column,
            },
            None => self.error(HsErrorKind::UnexpectedEof { expected }),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn expect_open(&mut self) -> PResult<()> {
        if self.peek().is_some_and(is_open) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected("start of a block"))
        }
    }

    fn expect_close(&mut self) -> PResult<()> {
        if self.peek().is_some_and(is_close) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected("end of the block"))
        }
    }

    fn skip_virtual_semis(&mut self) {
        while self.peek() == Some(&Tok::VSemi) {
            self.pos += 1;
        }
    }

    // ---- declarations ----

    fn module(&mut self) -> PResult<SourceModule> {
        if self.toks.is_empty() {
            return Ok(SourceModule::default());
        }
        if self.eat(&Tok::Kw(Kw::Module)) {
            while !matches!(self.peek(), Some(Tok::Kw(Kw::Where)) | None) {
                self.pos += 1;
            }
            self.expect(Tok::Kw(Kw::Where), "`where` after the module header")?;
        }
        self.expect_open()?;
        let raw = self.decl_list(true)?;
        self.expect_close()?;
        if self.peek().is_some() {
            return Err(self.unexpected("end of input"));
        }
        let decls = group(raw, |d| d)?;
        Ok(SourceModule { decls })
    }

    fn decl_list(&mut self, top: bool) -> PResult<Vec<RawDecl>> {
        let mut out = Vec::new();
        loop {
            while self.peek().is_some_and(is_semi) {
                self.pos += 1;
            }
            match self.peek() {
                None => break,
                Some(t) if is_close(t) => break,
                _ => {}
            }
            out.push(if top { self.top_decl()? } else { self.local_decl()? });
            match self.peek() {
                Some(t) if is_semi(t) || is_close(t) => {}
                None => {}
                _ => return Err(self.unexpected("end of declaration")),
            }
        }
        Ok(out)
    }

    fn top_decl(&mut self) -> PResult<RawDecl> {
        match self.peek() {
            Some(Tok::Kw(Kw::Import)) => {
                self.pos += 1;
                let module = match self.peek() {
                    Some(Tok::ConId(m)) => m.clone(),
                    _ => String::new(),
                };
                self.skip_decl()?;
                Ok(RawDecl::Top(TopDecl::Import(module)))
            }
            Some(Tok::Kw(Kw::Data | Kw::Type | Kw::Newtype)) => {
                self.pos += 1;
                let name = match self.peek() {
                    Some(Tok::ConId(n)) => n.clone(),
                    _ => return Err(self.unexpected("type name")),
                };
                self.skip_decl()?;
                Ok(RawDecl::Top(TopDecl::TypeDecl(name)))
            }
            Some(Tok::Kw(Kw::Class)) => Err(self.error(HsErrorKind::OutsideSubset("type class declarations"))),
            Some(Tok::Kw(Kw::Instance)) => Err(self.error(HsErrorKind::OutsideSubset("instance declarations"))),
            Some(Tok::Kw(Kw::Default)) => Err(self.error(HsErrorKind::OutsideSubset("default declarations"))),
            _ => Ok(match self.local_decl()? {
                RawDecl::Top(TopDecl::Signature(names)) => RawDecl::Top(TopDecl::Signature(names)),
                other => other,
            }),
        }
    }

    fn local_decl(&mut self) -> PResult<RawDecl> {
        if matches!(self.peek(), Some(Tok::Kw(Kw::Infix | Kw::Infixl | Kw::Infixr))) {
            self.skip_decl()?;
            return Ok(RawDecl::Top(TopDecl::Fixity));
        }
        if let Some(names) = self.signature_names() {
            self.skip_decl()?;
            return Ok(RawDecl::Top(TopDecl::Signature(names)));
        }
        Ok(RawDecl::Binding(self.binding()?))
    }

    /// Names declared by a type signature starting at the cursor, if any.
    fn signature_names(&self) -> Option<Vec<String>> {
        let mut i = self.pos;
        let mut names = Vec::new();
        loop {
            match self.toks.get(i).map(|t| &t.tok) {
                Some(Tok::VarId(v)) => {
                    names.push(v.clone());
                    i += 1;
                }
                Some(Tok::LParen) => match (
                    self.toks.get(i + 1).map(|t| &t.tok),
                    self.toks.get(i + 2).map(|t| &t.tok),
                ) {
                    (Some(Tok::VarSym(s) | Tok::ConSym(s)), Some(Tok::RParen)) => {
                        names.push(s.clone());
                        i += 3;
                    }
                    _ => return None,
                },
                _ => return None,
            }
            match self.toks.get(i).map(|t| &t.tok) {
                Some(Tok::Comma) => i += 1,
                Some(Tok::Op(ReservedOp::DoubleColon)) => return Some(names),
                _ => return None,
            }
        }
    }

    /// Skips to the end of the current declaration.
    fn skip_decl(&mut self) -> PResult<()> {
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t {
                Tok::LParen | Tok::LBracket | Tok::LBrace | Tok::VLBrace => depth += 1,
                Tok::RParen | Tok::RBracket => depth = depth.saturating_sub(1),
                t if is_close(t) => {
                    if depth == 0 {
                        break;
                    }
                    depth -= 1;
                }
                t if is_semi(t) && depth == 0 => break,
                Tok::Kw(Kw::Where) => {
                    return Err(self.error(HsErrorKind::OutsideSubset("`where` in a type declaration")))
                }
                _ => {}
            }
            self.pos += 1;
        }
        Ok(())
    }

    fn binding(&mut self) -> PResult<RawBinding> {
        let (line, column) = self.position();
        let at = |kind| HsError { kind, line, column };
        enum Lhs {
            Function(String, Vec<Pattern>),
            Pattern(Pattern),
        }
        let lhs = match (self.peek().cloned(), self.peek_at(1).cloned(), self.peek_at(2).cloned()) {
            (Some(Tok::LParen), Some(Tok::VarSym(op)), Some(Tok::RParen)) => {
                self.pos += 3;
                Lhs::Function(op, self.apats()?)
            }
            (Some(Tok::VarId(name)), next, _)
                if !matches!(
                    next,
                    Some(Tok::VarSym(_) | Tok::Backtick | Tok::Op(ReservedOp::At) | Tok::ConSym(_))
                ) =>
            {
                self.pos += 1;
                Lhs::Function(name, self.apats()?)
            }
            _ => {
                let left = self.pattern()?;
                match self.infix_var_operator() {
                    Some((name, len)) => {
                        self.pos += len;
                        let right = self.pattern()?;
                        Lhs::Function(name, vec![left, right])
                    }
                    None => Lhs::Pattern(left),
                }
            }
        };
        let patterns: &[Pattern] = match &lhs {
            Lhs::Function(_, pats) => pats,
            Lhs::Pattern(p) => core::slice::from_ref(p),
        };
        check_distinct(patterns).map_err(|name| at(HsErrorKind::DuplicateVariable { name }))?;
        let rhs = self.rhs(ReservedOp::Equals)?;
        let locals = self.where_block()?;
        let binding = match lhs {
            Lhs::Function(name, patterns) => Binding::Function {
                name,
                clauses: vec![Clause { patterns, rhs, locals }],
            },
            Lhs::Pattern(pattern) => Binding::Pattern {
                pattern,
                clause: Clause {
                    patterns: Vec::new(),
                    rhs,
                    locals,
                },
            },
        };
        Ok(RawBinding { binding, line, column })
    }

    /// A non-constructor infix operator at the cursor: `+++` or `` `f` ``.
    fn infix_var_operator(&self) -> Option<(String, usize)> {
        match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::VarSym(op)), _, _) => Some((op.clone(), 1)),
            (Some(Tok::Backtick), Some(Tok::VarId(f)), Some(Tok::Backtick)) => Some((f.clone(), 3)),
            _ => None,
        }
    }

    fn where_block(&mut self) -> PResult<Vec<Decl>> {
        if self.eat(&Tok::Kw(Kw::Where)) {
            self.block_decls()
        } else {
            Ok(Vec::new())
        }
    }

    fn block_decls(&mut self) -> PResult<Vec<Decl>> {
        self.expect_open()?;
        let raw = self.decl_list(false)?;
        self.expect_close()?;
        group(raw, |d| match d {
            TopDecl::Signature(n) => Decl::Signature(n),
            TopDecl::Binding(b) => Decl::Binding(b),
            _ => Decl::Fixity,
        })
    }

    fn rhs(&mut self, sep: ReservedOp) -> PResult<Rhs> {
        let expected = if sep == ReservedOp::Equals {
            "`=` or a guard"
        } else {
            "`->` or a guard"
        };
        if self.peek() != Some(&Tok::Op(ReservedOp::Bar)) {
            self.expect(Tok::Op(sep), expected)?;
            return Ok(Rhs::Plain(self.exp()?));
        }
        let mut alts = Vec::new();
        while self.eat(&Tok::Op(ReservedOp::Bar)) {
            let guards = self.quals()?;
            self.expect(Tok::Op(sep), expected)?;
            let body = self.exp()?;
            alts.push(GuardedExpr { guards, body });
        }
        Ok(Rhs::Guarded(alts))
    }

    // ---- patterns ----

    fn starts_apat(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::VarId(_)
                    | Tok::ConId(_)
                    | Tok::Kw(Kw::Underscore)
                    | Tok::Integer(_)
                    | Tok::Float(_)
                    | Tok::Char(_)
                    | Tok::Str(_)
                    | Tok::LParen
                    | Tok::LBracket
                    | Tok::Op(ReservedOp::Tilde)
            )
        ) || self.peek() == Some(&Tok::VarSym("!".into()))
    }

    fn apats(&mut self) -> PResult<Vec<Pattern>> {
        let mut pats = Vec::new();
        while self.starts_apat() {
            pats.push(self.apat()?);
        }
        Ok(pats)
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        let left = self.lpat()?;
        let op = match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::ConSym(op)), _, _) => Some((op.clone(), 1)),
            (Some(Tok::Backtick), Some(Tok::ConId(c)), Some(Tok::Backtick)) => Some((c.clone(), 3)),
            _ => None,
        };
        let Some((op, len)) = op else { return Ok(left) };
        self.pos += len;
        let right = self.pattern()?;
        Ok(if op == ":" {
            Pattern::Cons(Box::new(left), Box::new(right))
        } else {
            Pattern::Constructor(op, vec![left, right])
        })
    }

    fn lpat(&mut self) -> PResult<Pattern> {
        match (self.peek().cloned(), self.peek_at(1).cloned()) {
            (Some(Tok::VarSym(m)), Some(Tok::Integer(n) | Tok::Float(n))) if m == "-" => {
                self.pos += 2;
                Ok(Pattern::Literal(alloc::format!("-{n}")))
            }
            (Some(Tok::ConId(c)), _) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LBrace) {
                    return Err(self.error(HsErrorKind::OutsideSubset("record patterns")));
                }
                Ok(Pattern::Constructor(c, self.apats()?))
            }
            _ => self.apat(),
        }
    }

    fn apat(&mut self) -> PResult<Pattern> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("pattern"));
        };
        match tok {
            Tok::VarId(v) => {
                self.pos += 1;
                if self.eat(&Tok::Op(ReservedOp::At)) {
                    Ok(Pattern::As(v, Box::new(self.apat()?)))
                } else {
                    Ok(Pattern::Var(v))
                }
            }
            Tok::ConId(c) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LBrace) {
                    return Err(self.error(HsErrorKind::OutsideSubset("record patterns")));
                }
                Ok(Pattern::Constructor(c, Vec::new()))
            }
            Tok::Kw(Kw::Underscore) => {
                self.pos += 1;
                Ok(Pattern::Wildcard)
            }
            Tok::Integer(s) | Tok::Float(s) => {
                self.pos += 1;
                Ok(Pattern::Literal(s))
            }
            Tok::Char(s) => {
                self.pos += 1;
                Ok(Pattern::Literal(alloc::format!("'{s}'")))
            }
            Tok::Str(s) => {
                self.pos += 1;
                Ok(Pattern::Literal(alloc::format!("\"{s}\"")))
            }
            Tok::Op(ReservedOp::Tilde) => {
                self.pos += 1;
                self.apat()
            }
            Tok::VarSym(s) if s == "!" => {
                self.pos += 1;
                self.apat()
            }
            Tok::LParen => {
                self.pos += 1;
                if self.eat(&Tok::RParen) {
                    return Ok(Pattern::Constructor("()".into(), Vec::new()));
                }
                let first = self.pattern()?;
                if self.peek() == Some(&Tok::Comma) {
                    let mut elems = vec![first];
                    while self.eat(&Tok::Comma) {
                        elems.push(self.pattern()?);
                    }
                    self.expect(Tok::RParen, "`)`")?;
                    return Ok(Pattern::Tuple(elems));
                }
                self.expect(Tok::RParen, "`)` or `,`")?;
                Ok(Pattern::Paren(Box::new(first)))
            }
            Tok::LBracket => {
                self.pos += 1;
                if self.eat(&Tok::RBracket) {
                    return Ok(Pattern::Constructor("[]".into(), Vec::new()));
                }
                let mut elems = vec![self.pattern()?];
                while self.eat(&Tok::Comma) {
                    elems.push(self.pattern()?);
                }
                self.expect(Tok::RBracket, "`]` or `,`")?;
                Ok(Pattern::List(elems))
            }
            _ => Err(self.unexpected("pattern")),
        }
    }

    // ---- expressions ----

    fn exp(&mut self) -> PResult<Expr> {
        let (e, _) = self.infix_exp(false)?;
        self.typed(e)
    }

    fn typed(&mut self, e: Expr) -> PResult<Expr> {
        if !self.eat(&Tok::Op(ReservedOp::DoubleColon)) {
            return Ok(e);
        }
        let mut depth = 0usize;
        while let Some(t) = self.peek() {
            match t {
                Tok::LParen | Tok::LBracket => depth += 1,
                Tok::RParen | Tok::RBracket | Tok::Comma if depth == 0 => break,
                Tok::RParen | Tok::RBracket => depth -= 1,
                Tok::Op(ReservedOp::Equals | ReservedOp::Bar | ReservedOp::LArrow | ReservedOp::DotDot)
                    if depth == 0 =>
                {
                    break
                }
                Tok::Kw(Kw::Then | Kw::Else | Kw::Of | Kw::In | Kw::Where) => break,
                t if is_semi(t) || is_close(t) => break,
                _ => {}
            }
            self.pos += 1;
        }
        Ok(Expr::Typed(Box::new(e)))
    }

    /// The operator at the cursor and its token length.
    fn operator(&self) -> Option<(Operator, usize)> {
        match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Some(Tok::VarSym(s)), _, _) => Some((
                Operator {
                    name: s.clone(),
                    constructor: false,
                },
                1,
            )),
            (Some(Tok::ConSym(s)), _, _) => Some((
                Operator {
                    name: s.clone(),
                    constructor: true,
                },
                1,
            )),
            (Some(Tok::Backtick), Some(Tok::VarId(f)), Some(Tok::Backtick)) => Some((
                Operator {
                    name: f.clone(),
                    constructor: false,
                },
                3,
            )),
            (Some(Tok::Backtick), Some(Tok::ConId(c)), Some(Tok::Backtick)) => Some((
                Operator {
                    name: c.clone(),
                    constructor: true,
                },
                3,
            )),
            _ => None,
        }
    }

    /// Parses `operand (op operand)*`. With `allow_section`, a trailing
    /// operator directly before `)` is returned instead of failing.
    fn infix_exp(&mut self, allow_section: bool) -> PResult<(Expr, Option<Operator>)> {
        let mut operands = Vec::new();
        let mut ops = Vec::new();
        let mut trailing = None;
        loop {
            let operand = if self.peek() == Some(&Tok::VarSym("-".into())) {
                self.pos += 1;
                Expr::Neg(Box::new(self.lexp()?))
            } else {
                self.lexp()?
            };
            operands.push(operand);
            let Some((op, len)) = self.operator() else { break };
            if allow_section && self.peek_at(len) == Some(&Tok::RParen) {
                self.pos += len;
                trailing = Some(op);
                break;
            }
            self.pos += len;
            ops.push(op);
        }
        let e = if ops.is_empty() {
            operands.pop().unwrap()
        } else {
            Expr::Infix { operands, ops }
        };
        Ok((e, trailing))
    }

    fn lexp(&mut self) -> PResult<Expr> {
        match self.peek() {
            Some(Tok::Op(ReservedOp::Backslash)) => {
                self.pos += 1;
                let pats = self.apats()?;
                if pats.is_empty() {
                    return Err(self.unexpected("lambda parameter"));
                }
                check_distinct(&pats).map_err(|name| self.error(HsErrorKind::DuplicateVariable { name }))?;
                self.expect(Tok::Op(ReservedOp::RArrow), "`->`")?;
                Ok(Expr::Lambda(pats, Box::new(self.exp()?)))
            }
            Some(Tok::Kw(Kw::Let)) => {
                self.pos += 1;
                let decls = self.block_decls()?;
                self.expect(Tok::Kw(Kw::In), "`in`")?;
                Ok(Expr::Let(decls, Box::new(self.exp()?)))
            }
            Some(Tok::Kw(Kw::If)) => {
                self.pos += 1;
                let cond = self.exp()?;
                self.skip_virtual_semis();
                self.expect(Tok::Kw(Kw::Then), "`then`")?;
                let then = self.exp()?;
                self.skip_virtual_semis();
                self.expect(Tok::Kw(Kw::Else), "`else`")?;
                let other = self.exp()?;
                Ok(Expr::If(Box::new(cond), Box::new(then), Box::new(other)))
            }
            Some(Tok::Kw(Kw::Case)) => {
                self.pos += 1;
                let scrutinee = self.exp()?;
                self.expect(Tok::Kw(Kw::Of), "`of`")?;
                let alts = self.alts()?;
                Ok(Expr::Case(Box::new(scrutinee), alts))
            }
            Some(Tok::Kw(Kw::Do)) => Err(self.error(HsErrorKind::OutsideSubset("do-notation"))),
            _ => self.fexp(),
        }
    }

    fn alts(&mut self) -> PResult<Vec<Alt>> {
        self.expect_open()?;
        let mut alts = Vec::new();
        loop {
            while self.peek().is_some_and(is_semi) {
                self.pos += 1;
            }
            if self.peek().is_none_or(is_close) {
                break;
            }
            let pattern = self.pattern()?;
            check_distinct(core::slice::from_ref(&pattern))
                .map_err(|name| self.error(HsErrorKind::DuplicateVariable { name }))?;
            let rhs = self.rhs(ReservedOp::RArrow)?;
            let locals = self.where_block()?;
            alts.push(Alt { pattern, rhs, locals });
            if !self.peek().is_some_and(|t| is_semi(t) || is_close(t)) {
                return Err(self.unexpected("next case alternative"));
            }
        }
        self.expect_close()?;
        Ok(alts)
    }

    fn starts_aexp(&self) -> bool {
        matches!(
            self.peek(),
            Some(
                Tok::VarId(_)
                    | Tok::ConId(_)
                    | Tok::Integer(_)
                    | Tok::Float(_)
                    | Tok::Char(_)
                    | Tok::Str(_)
                    | Tok::LParen
                    | Tok::LBracket
            )
        )
    }

    fn fexp(&mut self) -> PResult<Expr> {
        let head = self.aexp()?;
        let mut args = Vec::new();
        while self.starts_aexp() {
            args.push(self.aexp()?);
        }
        if self.peek() == Some(&Tok::LBrace) {
            return Err(self.error(HsErrorKind::OutsideSubset("record syntax")));
        }
        Ok(if args.is_empty() {
            head
        } else {
            Expr::App(Box::new(head), args)
        })
    }

    fn aexp(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek().cloned() else {
            return Err(self.unexpected("expression"));
        };
        let e = match tok {
            Tok::VarId(v) => Expr::Var(v),
            Tok::ConId(c) => Expr::Con(c),
            Tok::Integer(s) | Tok::Float(s) => Expr::Literal(s),
            Tok::Char(s) => Expr::Literal(alloc::format!("'{s}'")),
            Tok::Str(s) => Expr::Literal(alloc::format!("\"{s}\"")),
            Tok::LParen => {
                self.pos += 1;
                return self.paren_exp();
            }
            Tok::LBracket => {
                self.pos += 1;
                return self.bracket_exp();
            }
            _ => return Err(self.unexpected("expression")),
        };
        self.pos += 1;
        Ok(e)
    }

    fn paren_exp(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::RParen) {
            return Ok(Expr::Con("()".into()));
        }
        if self.peek() == Some(&Tok::Comma) {
            let mut name = String::from("(");
            while self.eat(&Tok::Comma) {
                name.push(',');
            }
            name.push(')');
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Expr::Con(name));
        }
        if let Some((op, len)) = self.operator() {
            if self.peek_at(len) == Some(&Tok::RParen) {
                self.pos += len + 1;
                return Ok(Expr::OpRef(op));
            }
            // `(- e)` is negation, not a section
            if op.name != "-" {
                self.pos += len;
                let e = self.exp()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(Expr::RightSection(op, Box::new(e)));
            }
        }
        let (e, trailing) = self.infix_exp(true)?;
        if let Some(op) = trailing {
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Expr::LeftSection(Box::new(e), op));
        }
        let e = self.typed(e)?;
        if self.peek() == Some(&Tok::Comma) {
            let mut elems = vec![e];
            while self.eat(&Tok::Comma) {
                elems.push(self.exp()?);
            }
            self.expect(Tok::RParen, "`)`")?;
            return Ok(Expr::Tuple(elems));
        }
        self.expect(Tok::RParen, "`)` or `,`")?;
        Ok(Expr::Paren(Box::new(e)))
    }

    fn bracket_exp(&mut self) -> PResult<Expr> {
        if self.eat(&Tok::RBracket) {
            return Ok(Expr::Con("[]".into()));
        }
        let first = self.exp()?;
        if self.eat(&Tok::Op(ReservedOp::DotDot)) {
            let to = self.range_end()?;
            return Ok(Expr::Range {
                from: Box::new(first),
                then: None,
                to,
            });
        }
        if self.eat(&Tok::Op(ReservedOp::Bar)) {
            let quals = self.quals()?;
            self.expect(Tok::RBracket, "`]`")?;
            return Ok(Expr::Comprehension(Box::new(first), quals));
        }
        let mut elems = vec![first];
        while self.eat(&Tok::Comma) {
            elems.push(self.exp()?);
            if elems.len() == 2 && self.eat(&Tok::Op(ReservedOp::DotDot)) {
                let to = self.range_end()?;
                let then = elems.pop().map(Box::new);
                return Ok(Expr::Range {
                    from: Box::new(elems.pop().unwrap()),
                    then,
                    to,
                });
            }
        }
        self.expect(Tok::RBracket, "`]` or `,`")?;
        Ok(Expr::List(elems))
    }

    fn range_end(&mut self) -> PResult<Option<Box<Expr>>> {
        if self.eat(&Tok::RBracket) {
            return Ok(None);
        }
        let to = self.exp()?;
        self.expect(Tok::RBracket, "`]`")?;
        Ok(Some(Box::new(to)))
    }

    fn quals(&mut self) -> PResult<Vec<Qual>> {
        let mut quals = vec![self.qual()?];
        while self.eat(&Tok::Comma) {
            quals.push(self.qual()?);
        }
        Ok(quals)
    }

    fn qual(&mut self) -> PResult<Qual> {
        if self.eat(&Tok::Kw(Kw::Let)) {
            let decls = self.block_decls()?;
            if self.eat(&Tok::Kw(Kw::In)) {
                let body = self.exp()?;
                return Ok(Qual::Guard(Expr::Let(decls, Box::new(body))));
            }
            return Ok(Qual::Let(decls));
        }
        let start = self.pos;
        if let Ok(p) = self.pattern() {
            if self.eat(&Tok::Op(ReservedOp::LArrow)) {
                check_distinct(core::slice::from_ref(&p))
                    .map_err(|name| self.error(HsErrorKind::DuplicateVariable { name }))?;
                return Ok(Qual::Generator(p, self.exp()?));
            }
        }
        self.pos = start;
        Ok(Qual::Guard(self.exp()?))
    }
}

fn check_distinct(patterns: &[Pattern]) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for p in patterns {
        for v in p.variables() {
            if !seen.insert(v.clone()) {
                return Err(v);
            }
        }
    }
    Ok(())
}

/// Merges consecutive clauses of the same function and rejects repeated or
/// inconsistent definitions.
fn group<T>(raw: Vec<RawDecl>, wrap: impl Fn(TopDecl) -> T) -> PResult<Vec<T>> {
    let mut out: Vec<TopDecl> = Vec::new();
    let mut defined = BTreeSet::new();
    for decl in raw {
        let rb = match decl {
            RawDecl::Top(t) => {
                out.push(t);
                continue;
            }
            RawDecl::Binding(rb) => rb,
        };
        let err = |kind| HsError {
            kind,
            line: rb.line,
            column: rb.column,
        };
        if let Binding::Function { name, clauses } = &rb.binding {
            if let Some(TopDecl::Binding(Binding::Function {
                name: prev,
                clauses: prev_clauses,
            })) = out.last_mut()
            {
                if prev == name {
                    if prev_clauses[0].patterns.len() != clauses[0].patterns.len() {
                        return Err(err(HsErrorKind::ArityMismatch { name: name.clone() }));
                    }
                    prev_clauses.extend(clauses.iter().cloned());
                    continue;
                }
            }
        }
        for name in rb.binding.bound_names() {
            if !defined.insert(name.clone()) {
                return Err(err(HsErrorKind::DuplicateDefinition { name }));
            }
        }
        out.push(TopDecl::Binding(rb.binding));
    }
    Ok(out.into_iter().map(wrap).collect())
}
