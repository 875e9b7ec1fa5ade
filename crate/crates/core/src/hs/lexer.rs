use alloc::string::String;
use alloc::vec::Vec;

use super::{HsError, HsErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    VarId(String),
    ConId(String),
    VarSym(String),
    /// Operator starting with `:` (constructor operator), including `:`.
    ConSym(String),
    Integer(String),
    Float(String),
    Char(String),
    Str(String),
    Kw(Kw),
    Op(ReservedOp),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Backtick,
    LBrace,
    RBrace,
    // inserted by layout resolution
    VLBrace,
    VSemi,
    VRBrace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Kw {
    Case,
    Class,
    Data,
    Default,
    Deriving,
    Do,
    Else,
    If,
    Import,
    In,
    Infix,
    Infixl,
    Infixr,
    Instance,
    Let,
    Module,
    Newtype,
    Of,
    Then,
    Type,
    Where,
    Underscore,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum ReservedOp {
    DotDot,
    DoubleColon,
    Equals,
    Backslash,
    Bar,
    LArrow,
    RArrow,
    At,
    Tilde,
    FatArrow,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        use alloc::format;
        match self {
            Tok::VarId(s) | Tok::ConId(s) => format!("`{s}`"),
            Tok::VarSym(s) | Tok::ConSym(s) => format!("operator `{s}`"),
            Tok::Integer(s) | Tok::Float(s) => format!("number {s}"),
            Tok::Char(_) => "character literal".into(),
            Tok::Str(_) => "string literal".into(),
            Tok::Kw(k) => format!("keyword `{}`", kw_text(*k)),
            Tok::Op(op) => format!("`{}`", op_text(*op)),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Backtick => "`` ` ``".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::VLBrace => "start of block".into(),
            Tok::VSemi => "new declaration".into(),
            Tok::VRBrace => "end of block".into(),
        }
    }
}

fn kw_text(k: Kw) -> &'static str {
    match k {
        Kw::Case => "case",
        Kw::Class => "class",
        Kw::Data => "data",
        Kw::Default => "default",
        Kw::Deriving => "deriving",
        Kw::Do => "do",
        Kw::Else => "else",
        Kw::If => "if",
        Kw::Import => "import",
        Kw::In => "in",
        Kw::Infix => "infix",
        Kw::Infixl => "infixl",
        Kw::Infixr => "infixr",
        Kw::Instance => "instance",
        Kw::Let => "let",
        Kw::Module => "module",
        Kw::Newtype => "newtype",
        Kw::Of => "of",
        Kw::Then => "then",
        Kw::Type => "type",
        Kw::Where => "where",
        Kw::Underscore => "_",
    }
}

fn op_text(op: ReservedOp) -> &'static str {
    match op {
        ReservedOp::DotDot => "..",
        ReservedOp::DoubleColon => "::",
        ReservedOp::Equals => "=",
        ReservedOp::Backslash => "\\",
        ReservedOp::Bar => "|",
        ReservedOp::LArrow => "<-",
        ReservedOp::RArrow => "->",
        ReservedOp::At => "@",
        ReservedOp::Tilde => "~",
        ReservedOp::FatArrow => "=>",
    }
}

fn keyword(s: &str) -> Option<Kw> {
    Some(match s {
        "case" => Kw::Case,
        "class" => Kw::Class,
        "data" => Kw::Data,
        "default" => Kw::Default,
        "deriving" => Kw::Deriving,
        "do" => Kw::Do,
        "else" => Kw::Else,
        "if" => Kw::If,
        "import" => Kw::Import,
        "in" => Kw::In,
        "infix" => Kw::Infix,
        "infixl" => Kw::Infixl,
        "infixr" => Kw::Infixr,
        "instance" => Kw::Instance,
        "let" => Kw::Let,
        "module" => Kw::Module,
        "newtype" => Kw::Newtype,
        "of" => Kw::Of,
        "then" => Kw::Then,
        "type" => Kw::Type,
        "where" => Kw::Where,
        "_" => Kw::Underscore,
        _ => return None,
    })
}

fn reserved_op(s: &str) -> Option<ReservedOp> {
    Some(match s {
        ".." => ReservedOp::DotDot,
        "::" => ReservedOp::DoubleColon,
        "=" => ReservedOp::Equals,
        "\\" => ReservedOp::Backslash,
        "|" => ReservedOp::Bar,
        "<-" => ReservedOp::LArrow,
        "->" => ReservedOp::RArrow,
        "@" => ReservedOp::At,
        "~" => ReservedOp::Tilde,
        "=>" => ReservedOp::FatArrow,
        _ => return None,
    })
}

fn is_symbol(c: char) -> bool {
    "!#$%&*+./<=>?@\\^|-~:".contains(c)
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
}

impl Lexer {
    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = *self.chars.get(self.pos)?;
        self.pos += 1;
        match c {
            '\n' => {
                self.line += 1;
                self.column = 1;
            }
            '\t' => self.column += 8 - (self.column - 1) % 8,
            _ => self.column += 1,
        }
        Some(c)
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek_at(0) {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    fn error(&self, kind: HsErrorKind, line: usize, column: usize) -> HsError {
        HsError { kind, line, column }
    }

    fn block_comment(&mut self, line: usize, column: usize) -> Result<(), HsError> {
        self.bump();
        self.bump();
        let mut depth = 1;
        while depth > 0 {
            match (self.peek_at(0), self.peek_at(1)) {
                (Some('{'), Some('-')) => {
                    self.bump();
                    self.bump();
                    depth += 1;
                }
                (Some('-'), Some('}')) => {
                    self.bump();
                    self.bump();
                    depth -= 1;
                }
                (Some(_), _) => {
                    self.bump();
                }
                (None, _) => return Err(self.error(HsErrorKind::UnterminatedComment, line, column)),
            }
        }
        Ok(())
    }

    /// Consumes one escape sequence body (after the backslash) into `out`.
    fn escape(&mut self, out: &mut String) {
        match self.peek_at(0) {
            Some(c) if c.is_ascii_digit() => out.push_str(&self.take_while(|c| c.is_ascii_digit())),
            Some(c) if c.is_ascii_uppercase() => out.push_str(&self.take_while(|c| c.is_ascii_uppercase())),
            Some(_) => {
                let c = self.bump().unwrap();
                out.push(c);
            }
            None => {}
        }
    }

    fn string(&mut self, line: usize, column: usize) -> Result<Tok, HsError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(self.error(HsErrorKind::UnterminatedString, line, column)),
                Some('"') => return Ok(Tok::Str(s)),
                Some('\\') => {
                    // string gap: backslash, whitespace, backslash
                    if self.peek_at(0).is_some_and(char::is_whitespace) {
                        self.take_while(char::is_whitespace);
                        if self.bump() != Some('\\') {
                            return Err(self.error(HsErrorKind::UnterminatedString, line, column));
                        }
                        continue;
                    }
                    s.push('\\');
                    self.escape(&mut s);
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn char_literal(&mut self, line: usize, column: usize) -> Result<Tok, HsError> {
        self.bump();
        let mut s = String::new();
        match self.bump() {
            None | Some('\n') | Some('\'') => return Err(self.error(HsErrorKind::UnterminatedChar, line, column)),
            Some('\\') => {
                s.push('\\');
                self.escape(&mut s);
            }
            Some(c) => s.push(c),
        }
        if self.bump() != Some('\'') {
            return Err(self.error(HsErrorKind::UnterminatedChar, line, column));
        }
        Ok(Tok::Char(s))
    }

    fn number(&mut self) -> Tok {
        if self.peek_at(0) == Some('0')
            && matches!(self.peek_at(1), Some('x' | 'X' | 'o' | 'O' | 'b' | 'B'))
            && self.peek_at(2).is_some_and(|c| c.is_ascii_hexdigit())
        {
            let mut s = String::new();
            s.push(self.bump().unwrap());
            s.push(self.bump().unwrap());
            s.push_str(&self.take_while(|c| c.is_ascii_hexdigit() || c == '_'));
            return Tok::Integer(s);
        }
        let mut s = self.take_while(|c| c.is_ascii_digit() || c == '_');
        let mut float = false;
        if self.peek_at(0) == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            float = true;
            s.push(self.bump().unwrap());
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if matches!(self.peek_at(0), Some('e' | 'E')) {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                float = true;
                s.push(self.bump().unwrap());
                if sign {
                    s.push(self.bump().unwrap());
                }
                s.push_str(&self.take_while(|c| c.is_ascii_digit()));
            }
        }
        if float {
            Tok::Float(s)
        } else {
            Tok::Integer(s)
        }
    }

    fn identifier(&mut self) -> Tok {
        let mut name = self.take_while(is_ident_char);
        // qualified names: Data.List.sortBy, Map.Map
        while name.chars().next().is_some_and(char::is_uppercase)
            && self.peek_at(0) == Some('.')
            && self.peek_at(1).is_some_and(|c| c.is_alphabetic() || c == '_')
        {
            self.bump();
            name.push('.');
            let part = self.take_while(is_ident_char);
            let upper = part.chars().next().is_some_and(char::is_uppercase);
            name.push_str(&part);
            if !upper {
                return Tok::VarId(name);
            }
        }
        if let Some(kw) = keyword(&name) {
            return Tok::Kw(kw);
        }
        if name.chars().next().is_some_and(char::is_uppercase) {
            Tok::ConId(name)
        } else {
            Tok::VarId(name)
        }
    }

    fn symbol(&mut self) -> Option<Tok> {
        let sym = self.take_while(is_symbol);
        // `--`, `---`, ... start a line comment; `-->` is an operator
        if sym.len() >= 2 && sym.chars().all(|c| c == '-') {
            self.take_while(|c| c != '\n');
            return None;
        }
        Some(if let Some(op) = reserved_op(&sym) {
            Tok::Op(op)
        } else if sym.starts_with(':') {
            Tok::ConSym(sym)
        } else {
            Tok::VarSym(sym)
        })
    }
}

pub(crate) fn tokenize(source: &str) -> Result<Vec<Token>, HsError> {
    let mut lx = Lexer {
        chars: source.chars().collect(),
        pos: 0,
        line: 1,
        column: 1,
    };
    let mut out = Vec::new();
    while let Some(c) = lx.peek_at(0) {
        let (line, column) = (lx.line, lx.column);
        let tok = match c {
            c if c.is_whitespace() => {
                lx.bump();
                continue;
            }
            '{' if lx.peek_at(1) == Some('-') => {
                lx.block_comment(line, column)?;
                continue;
            }
            '"' => lx.string(line, column)?,
            '\'' => lx.char_literal(line, column)?,
            '(' | ')' | '[' | ']' | ',' | ';' | '`' | '{' | '}' => {
                lx.bump();
                match c {
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    '`' => Tok::Backtick,
                    '{' => Tok::LBrace,
                    _ => Tok::RBrace,
                }
            }
            c if c.is_ascii_digit() => lx.number(),
            c if c.is_alphabetic() || c == '_' => lx.identifier(),
            c if is_symbol(c) => match lx.symbol() {
                Some(t) => t,
                None => continue,
            },
            other => return Err(lx.error(HsErrorKind::UnexpectedChar(other), line, column)),
        };
        out.push(Token { tok, line, column });
    }
    Ok(out)
}
