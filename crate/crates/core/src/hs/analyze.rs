use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::ast::*;

/// A language feature tracked per function.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    PatMatch,
    Guards,
    ListComprehension,
    HasIf,
    HasCase,
}

impl Feature {
    pub const ALL: [Feature; 5] = [
        Feature::PatMatch,
        Feature::Guards,
        Feature::ListComprehension,
        Feature::HasIf,
        Feature::HasCase,
    ];

    /// The report key for this feature.
    pub fn key(self) -> &'static str {
        match self {
            Feature::PatMatch => "patMatch",
            Feature::Guards => "guards",
            Feature::ListComprehension => "listComprehension",
            Feature::HasIf => "hasIf",
            Feature::HasCase => "hasCase",
        }
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFeature(pub String);

impl fmt::Display for UnknownFeature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown feature `{}`", self.0)
    }
}

impl FromStr for Feature {
    type Err = UnknownFeature;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Feature::ALL
            .into_iter()
            .find(|f| f.key() == s)
            .ok_or_else(|| UnknownFeature(s.into()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FunctionReport {
    pub name: String,
    pub pat_match: bool,
    pub guards: bool,
    pub list_comprehension: bool,
    pub has_if: bool,
    pub has_case: bool,
    pub args: Vec<String>,
    pub called_fns: Vec<String>,
    pub declared_fns: Vec<String>,
}

impl FunctionReport {
    pub fn has(&self, feature: Feature) -> bool {
        match feature {
            Feature::PatMatch => self.pat_match,
            Feature::Guards => self.guards,
            Feature::ListComprehension => self.list_comprehension,
            Feature::HasIf => self.has_if,
            Feature::HasCase => self.has_case,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AnalysisReport {
    pub functions: Vec<FunctionReport>,
}

impl AnalysisReport {
    pub fn function(&self, name: &str) -> Option<&FunctionReport> {
        self.functions.iter().find(|f| f.name == name)
    }
}

/// Builds one report per top-level function or constant, in source order.
/// A destructuring top-level binding yields one report per bound variable.
pub fn analyze(module: &SourceModule) -> AnalysisReport {
    let mut functions = Vec::new();
    for decl in &module.decls {
        let TopDecl::Binding(binding) = decl else { continue };
        match binding {
            Binding::Function { name, clauses } => {
                let mut w = Walker::default();
                for clause in clauses {
                    for p in &clause.patterns {
                        w.pat_match |= !p.is_var();
                        for v in p.variables() {
                            push_unique(&mut w.args, v);
                        }
                    }
                    w.clause(clause);
                }
                functions.push(w.finish(name.clone()));
            }
            Binding::Pattern { pattern, clause } => {
                let mut w = Walker {
                    pat_match: !pattern.is_var(),
                    ..Walker::default()
                };
                w.clause(clause);
                for name in pattern.variables() {
                    functions.push(w.clone().finish(name));
                }
            }
        }
    }
    AnalysisReport { functions }
}

fn push_unique(list: &mut Vec<String>, name: String) {
    if !list.contains(&name) {
        list.push(name);
    }
}

#[derive(Clone, Default)]
struct Walker {
    pat_match: bool,
    guards: bool,
    list_comprehension: bool,
    has_if: bool,
    has_case: bool,
    args: Vec<String>,
    /// Every variable or operator reference, in traversal order.
    referenced: Vec<String>,
    declared: Vec<String>,
    /// Every name bound anywhere inside the binding.
    local: BTreeSet<String>,
}

impl Walker {
    fn finish(mut self, name: String) -> FunctionReport {
        self.local.extend(self.args.iter().cloned());
        let mut called = Vec::new();
        for r in self.referenced {
            if !self.local.contains(&r) {
                push_unique(&mut called, r);
            }
        }
        FunctionReport {
            name,
            pat_match: self.pat_match,
            guards: self.guards,
            list_comprehension: self.list_comprehension,
            has_if: self.has_if,
            has_case: self.has_case,
            args: self.args,
            called_fns: called,
            declared_fns: self.declared,
        }
    }

    fn bind(&mut self, p: &Pattern) {
        self.local.extend(p.variables());
    }

    fn clause(&mut self, clause: &Clause) {
        self.rhs(&clause.rhs);
        self.decls(&clause.locals);
    }

    fn rhs(&mut self, rhs: &Rhs) {
        match rhs {
            Rhs::Plain(e) => self.expr(e),
            Rhs::Guarded(alts) => {
                self.guards = true;
                for alt in alts {
                    self.quals(&alt.guards);
                    self.expr(&alt.body);
                }
            }
        }
    }

    fn decls(&mut self, decls: &[Decl]) {
        for decl in decls {
            let Decl::Binding(b) = decl else { continue };
            match b {
                Binding::Function { name, clauses } => {
                    self.local.insert(name.clone());
                    if clauses[0].patterns.is_empty() {
                        self.clause(&clauses[0]);
                        continue;
                    }
                    push_unique(&mut self.declared, name.clone());
                    for clause in clauses {
                        for p in &clause.patterns {
                            self.pat_match |= !p.is_var();
                            self.bind(p);
                        }
                        self.clause(clause);
                    }
                }
                Binding::Pattern { pattern, clause } => {
                    self.pat_match |= !pattern.is_var();
                    self.bind(pattern);
                    self.clause(clause);
                }
            }
        }
    }

    fn quals(&mut self, quals: &[Qual]) {
        for q in quals {
            match q {
                Qual::Generator(p, e) => {
                    self.pat_match |= !p.is_var();
                    self.bind(p);
                    self.expr(e);
                }
                Qual::Let(decls) => self.decls(decls),
                Qual::Guard(e) => self.expr(e),
            }
        }
    }

    fn operator(&mut self, op: &Operator) {
        if !op.constructor {
            self.referenced.push(op.name.clone());
        }
    }

    fn expr(&mut self, e: &Expr) {
        match e {
            Expr::Var(v) => self.referenced.push(v.clone()),
            Expr::Con(_) | Expr::Literal(_) => {}
            Expr::App(head, args) => {
                self.expr(head);
                args.iter().for_each(|a| self.expr(a));
            }
            Expr::Infix { operands, ops } => {
                for (i, operand) in operands.iter().enumerate() {
                    self.expr(operand);
                    if let Some(op) = ops.get(i) {
                        self.operator(op);
                    }
                }
            }
            Expr::Neg(e) | Expr::Paren(e) | Expr::Typed(e) => self.expr(e),
            Expr::Lambda(pats, body) => {
                for p in pats {
                    self.pat_match |= !p.is_var();
                    self.bind(p);
                }
                self.expr(body);
            }
            Expr::Let(decls, body) => {
                self.decls(decls);
                self.expr(body);
            }
            Expr::If(c, t, f) => {
                self.has_if = true;
                self.expr(c);
                self.expr(t);
                self.expr(f);
            }
            Expr::Case(scrutinee, alts) => {
                self.has_case = true;
                self.expr(scrutinee);
                for alt in alts {
                    self.bind(&alt.pattern);
                    self.rhs(&alt.rhs);
                    self.decls(&alt.locals);
                }
            }
            Expr::List(items) | Expr::Tuple(items) => items.iter().for_each(|i| self.expr(i)),
            Expr::Range { from, then, to } => {
                self.expr(from);
                if let Some(t) = then {
                    self.expr(t);
                }
                if let Some(t) = to {
                    self.expr(t);
                }
            }
            Expr::Comprehension(body, quals) => {
                self.list_comprehension = true;
                self.expr(body);
                self.quals(quals);
            }
            Expr::LeftSection(e, op) => {
                self.expr(e);
                self.operator(op);
            }
            Expr::RightSection(op, e) => {
                self.operator(op);
                self.expr(e);
            }
            Expr::OpRef(op) => self.operator(op),
        }
    }
}
