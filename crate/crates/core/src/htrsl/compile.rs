use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use super::{Desc, DescItem, HtrslFile};
use crate::pattern::{Pattern, PatternError, DIALECT};

const IDENT: &str = "[_a-z][_a-zA-Z0-9']*";
/// Keeps an identifier match from stopping inside a longer identifier.
const IDENT_END: &str = "(?![_a-zA-Z0-9'])";
const SEP: &str = r"\s*";
const SPACE: &str = r"\s+";
const OPEN_PAREN: &str = r"(?:\((?=[^()]*\)))?";
const CLOSE_PAREN: &str = r"(?:(?<=\([^()]*)\))?";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledRegex {
    /// Regex source without delimiters or flags.
    pub pattern: String,
    /// Identifier to generated group name (`g1`, `g2`, ... in binding order).
    pub group_map: BTreeMap<String, String>,
    pub dialect: &'static str,
}

impl CompiledRegex {
    pub fn to_pattern(&self) -> Result<Pattern, PatternError> {
        Pattern::new(&self.pattern)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompileError {
    #[error("identifier `{0}` is first bound inside an alternative; bind it before the alternative")]
    BindingInAlternative(String),
    #[error("literal {0:?} inside optional parentheses contains a parenthesis")]
    ParenInOptParens(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileCompileError {
    /// `(spec index, error)` for every description that failed.
    pub errors: Vec<(usize, CompileError)>,
}

impl fmt::Display for FileCompileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (index, err)) in self.errors.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "spec {index}: {err}")?;
        }
        Ok(())
    }
}

impl core::error::Error for FileCompileError {}

#[derive(Default)]
struct Compiler {
    groups: BTreeMap<String, String>,
}

#[derive(Clone, Copy)]
struct Scope {
    in_alt: bool,
    in_parens: bool,
}

impl Compiler {
    fn sequence(&mut self, items: &[DescItem], scope: Scope) -> Result<String, CompileError> {
        let mut out = String::new();
        let mut prev_space = None;
        for item in items {
            let is_space = matches!(item, DescItem::Space);
            match prev_space {
                // consecutive mandatory spaces need only one whitespace run
                Some(true) if is_space => continue,
                Some(false) if !is_space => out.push_str(SEP),
                _ => {}
            }
            out.push_str(&self.item(item, scope)?);
            prev_space = Some(is_space);
        }
        Ok(out)
    }

    fn item(&mut self, item: &DescItem, scope: Scope) -> Result<String, CompileError> {
        Ok(match item {
            DescItem::Lit(text) => {
                if scope.in_parens && text.contains(['(', ')']) {
                    return Err(CompileError::ParenInOptParens(text.clone()));
                }
                escape_literal(text)
            }
            DescItem::Name(name) => {
                if let Some(group) = self.groups.get(name) {
                    format!(r"\k<{group}>{IDENT_END}")
                } else if scope.in_alt {
                    return Err(CompileError::BindingInAlternative(name.clone()));
                } else {
                    let group = format!("g{}", self.groups.len() + 1);
                    let out = format!("(?<{group}>{IDENT}){IDENT_END}");
                    self.groups.insert(name.clone(), group);
                    out
                }
            }
            DescItem::Space => SPACE.into(),
            DescItem::Alt(alts) => {
                let inner = Scope { in_alt: true, ..scope };
                let mut out = String::from("(?:");
                for (i, alt) in alts.iter().enumerate() {
                    if i > 0 {
                        out.push('|');
                    }
                    out.push_str(&self.sequence(alt, inner)?);
                }
                out.push(')');
                out
            }
            DescItem::OptParens(body) => {
                let inner = Scope {
                    in_parens: true,
                    ..scope
                };
                let mut out = String::from(OPEN_PAREN);
                if !matches!(body.first(), Some(DescItem::Space)) {
                    out.push_str(SEP);
                }
                out.push_str(&self.sequence(body, inner)?);
                if !matches!(body.last(), Some(DescItem::Space)) {
                    out.push_str(SEP);
                }
                out.push_str(CLOSE_PAREN);
                out
            }
        })
    }
}

fn escape_literal(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        if matches!(
            c,
            '\\' | '^' | '$' | '.' | '|' | '?' | '*' | '+' | '(' | ')' | '[' | ']' | '{' | '}'
        ) {
            out.push('\\');
        }
        out.push(c);
    }
    out
}

/// Compiles one description to an anchored pattern.
pub fn compile_spec(desc: &Desc) -> Result<CompiledRegex, CompileError> {
    let mut compiler = Compiler::default();
    let body = compiler.sequence(
        &desc.items,
        Scope {
            in_alt: false,
            in_parens: false,
        },
    )?;
    let mut pattern = String::from("^");
    if !matches!(desc.items.first(), Some(DescItem::Space)) {
        pattern.push_str(SEP);
    }
    pattern.push_str(&body);
    if !matches!(desc.items.last(), Some(DescItem::Space)) {
        pattern.push_str(SEP);
    }
    pattern.push('$');
    Ok(CompiledRegex {
        pattern,
        group_map: compiler.groups,
        dialect: DIALECT,
    })
}

/// Compiles every description in file order. Identifier namespaces are per
/// description. All failures are collected before returning.
pub fn compile_file(file: &HtrslFile) -> Result<Vec<CompiledRegex>, FileCompileError> {
    let mut compiled = Vec::with_capacity(file.specs.len());
    let mut errors = Vec::new();
    for (index, spec) in file.specs.iter().enumerate() {
        match compile_spec(spec) {
            Ok(c) => compiled.push(c),
            Err(e) => errors.push((index, e)),
        }
    }
    if errors.is_empty() {
        Ok(compiled)
    } else {
        Err(FileCompileError { errors })
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_htrsl;
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn compile(src: &str) -> CompiledRegex {
        let f = parse_htrsl(src).unwrap();
        compile_spec(&f.specs[0]).unwrap()
    }

    fn matches(src: &str, text: &str) -> bool {
        compile(src).to_pattern().unwrap().is_match(text)
    }

    const EXAMPLE: &str = r#"("Num" \\ a) "=>" "[" a "]" "->" ["String" | "[" "Char" "]"]"#;

    #[test]
    fn arrow_literal() {
        let c = compile(r#""->""#);
        assert_eq!(c.pattern, r"^\s*->\s*$");
        assert!(c.group_map.is_empty());
        assert_eq!(c.dialect, "ecmascript-2018");
    }

    #[test]
    fn metacharacters_escaped() {
        assert_eq!(compile(r#""a.b*(c)""#).pattern, r"^\s*a\.b\*\(c\)\s*$");
        assert!(matches(r#""[a]""#, "[a]"));
        assert!(!matches(r#""a.b""#, "axb"));
    }

    #[test]
    fn example_accepts_variants() {
        for ok in [
            "(Num a) => [a] -> String",
            "Num a => [a] -> [Char]",
            "Num foo => [foo] -> String",
            "  ( Num  b )=>[ b ]->[Char]  ",
        ] {
            assert!(matches(EXAMPLE, ok), "{ok}");
        }
    }

    #[test]
    fn example_rejects_broken_variants() {
        for bad in [
            "(Num a => [a] -> String",
            "Num a) => [a] -> String",
            "Num a => [b] -> String",
            "[a] -> Int",
            "Numa => [a] -> String",
        ] {
            assert!(!matches(EXAMPLE, bad), "{bad}");
        }
    }

    #[test]
    fn example_group_map() {
        let c = compile(EXAMPLE);
        assert_eq!(c.group_map.get("a").map(String::as_str), Some("g1"));
        assert!(c.pattern.starts_with(r"^\s*(?:\((?=[^()]*\)))?\s*Num\s+(?<g1>"));
        assert!(c.pattern.ends_with(r"\s*$"));
    }

    #[test]
    fn repeated_identifier_is_backreference() {
        let src = r#"x "+" x"#;
        assert!(matches(src, "n + n"));
        assert!(!matches(src, "n + m"));
        assert!(!matches(src, "n + nn"));
        assert!(!matches(src, "nn + n"));
    }

    #[test]
    fn identifiers_with_primes_get_safe_group_names() {
        let c = compile(r#"x' "=" y x'"#);
        assert_eq!(c.group_map.get("x'").map(String::as_str), Some("g1"));
        assert_eq!(c.group_map.get("y").map(String::as_str), Some("g2"));
        assert!(c.to_pattern().unwrap().is_match("f' = g f'"));
    }

    #[test]
    fn mandatory_space() {
        assert_eq!(compile(r#""a" \\ "b""#).pattern, r"^\s*a\s+b\s*$");
        assert!(matches(r#""a" \\ "b""#, "a  b"));
        assert!(!matches(r#""a" \\ "b""#, "ab"));
        assert!(matches(r#""a" "b""#, "ab"));
        assert_eq!(compile(r#""a" \\ \\ "b""#).pattern, r"^\s*a\s+b\s*$");
    }

    #[test]
    fn binding_inside_alternative_rejected() {
        let f = parse_htrsl(r#"["a" | x]"#).unwrap();
        assert_eq!(
            compile_spec(&f.specs[0]),
            Err(CompileError::BindingInAlternative("x".to_string()))
        );
        // already bound names are fine inside alternatives
        assert!(matches(r#"x "=" [x | "0"]"#, "k = k"));
        assert!(matches(r#"x "=" [x | "0"]"#, "k = 0"));
        assert!(!matches(r#"x "=" [x | "0"]"#, "k = j"));
    }

    #[test]
    fn paren_literal_inside_optional_parens_rejected() {
        let f = parse_htrsl(r#"("f" "(")"#).unwrap();
        assert_eq!(
            compile_spec(&f.specs[0]),
            Err(CompileError::ParenInOptParens("(".to_string()))
        );
    }

    #[test]
    fn file_compilation() {
        assert_eq!(compile_file(&HtrslFile::default()).unwrap(), vec![]);
        let f = parse_htrsl(r#"a "->" a ; a "," b"#).unwrap();
        let out = compile_file(&f).unwrap();
        assert_eq!(out.len(), 2);
        assert_eq!(out[1].group_map.len(), 2);
        for c in &out {
            c.to_pattern().unwrap();
        }
        assert!(out[0].to_pattern().unwrap().is_match("t -> t"));
        assert!(out[1].to_pattern().unwrap().is_match("t , u"));
    }

    #[test]
    fn file_errors_are_aggregated() {
        let f = parse_htrsl(r#"["a" | x] ; "ok" ; ("(")"#).unwrap();
        let err = compile_file(&f).unwrap_err();
        assert_eq!(err.errors.iter().map(|(i, _)| *i).collect::<Vec<_>>(), vec![0, 2]);
        assert!(err.to_string().starts_with("spec 0: "));
    }
}
