//! Syntax tree for the exam subset.
//!
//! Infix expressions are kept as flat operand/operator sequences: feature
//! analysis needs source order, not fixity resolution.

use alloc::boxed::Box;
use alloc::string::String;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceModule {
    pub decls: Vec<TopDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TopDecl {
    Import(String),
    Signature(Vec<String>),
    /// `data`, `type` or `newtype` declaration, by declared type name.
    TypeDecl(String),
    Fixity,
    Binding(Binding),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decl {
    Signature(Vec<String>),
    Fixity,
    Binding(Binding),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    /// A function or constant: all clauses share the name and arity. A
    /// constant has one clause with no argument patterns.
    Function { name: String, clauses: Vec<Clause> },
    /// A destructuring binding such as `(a, b) = ...`.
    Pattern { pattern: Pattern, clause: Clause },
}

impl Binding {
    pub fn bound_names(&self) -> Vec<String> {
        match self {
            Binding::Function { name, .. } => alloc::vec![name.clone()],
            Binding::Pattern { pattern, .. } => pattern.variables(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Clause {
    pub patterns: Vec<Pattern>,
    pub rhs: Rhs,
    pub locals: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rhs {
    Plain(Expr),
    Guarded(Vec<GuardedExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuardedExpr {
    pub guards: Vec<Qual>,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Qual {
    Generator(Pattern, Expr),
    Let(Vec<Decl>),
    Guard(Expr),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alt {
    pub pattern: Pattern,
    pub rhs: Rhs,
    pub locals: Vec<Decl>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pattern {
    Var(String),
    Wildcard,
    Literal(String),
    Constructor(String, Vec<Pattern>),
    Cons(Box<Pattern>, Box<Pattern>),
    Tuple(Vec<Pattern>),
    List(Vec<Pattern>),
    As(String, Box<Pattern>),
    Paren(Box<Pattern>),
}

impl Pattern {
    pub fn is_var(&self) -> bool {
        matches!(self, Pattern::Var(_))
    }

    /// Bound variable names, left to right.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            Pattern::Var(v) => out.push(v.clone()),
            Pattern::Wildcard | Pattern::Literal(_) => {}
            Pattern::Constructor(_, args) | Pattern::Tuple(args) | Pattern::List(args) => {
                args.iter().for_each(|p| p.collect_vars(out))
            }
            Pattern::Cons(h, t) => {
                h.collect_vars(out);
                t.collect_vars(out);
            }
            Pattern::As(v, p) => {
                out.push(v.clone());
                p.collect_vars(out);
            }
            Pattern::Paren(p) => p.collect_vars(out),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Var(String),
    Con(String),
    Literal(String),
    /// Head applied to one or more arguments.
    App(Box<Expr>, Vec<Expr>),
    /// `operands[0] ops[0] operands[1] ops[1] ...`, unresolved fixity.
    Infix {
        operands: Vec<Expr>,
        ops: Vec<Operator>,
    },
    Neg(Box<Expr>),
    Lambda(Vec<Pattern>, Box<Expr>),
    Let(Vec<Decl>, Box<Expr>),
    If(Box<Expr>, Box<Expr>, Box<Expr>),
    Case(Box<Expr>, Vec<Alt>),
    List(Vec<Expr>),
    Tuple(Vec<Expr>),
    Range {
        from: Box<Expr>,
        then: Option<Box<Expr>>,
        to: Option<Box<Expr>>,
    },
    Comprehension(Box<Expr>, Vec<Qual>),
    /// `(e op)`
    LeftSection(Box<Expr>, Operator),
    /// `(op e)`
    RightSection(Operator, Box<Expr>),
    /// `(op)`
    OpRef(Operator),
    Paren(Box<Expr>),
    /// `e :: type`; the type is not retained.
    Typed(Box<Expr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Operator {
    pub name: String,
    /// Constructor operator (`:`, `:+`, `` `Cons` ``).
    pub constructor: bool,
}
