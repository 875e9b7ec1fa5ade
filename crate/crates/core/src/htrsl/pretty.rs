use alloc::string::String;

use super::{DescItem, HtrslFile};

/// Renders a file back to HTRSL source; parsing the output yields the same
/// AST.
pub fn pretty_print(file: &HtrslFile) -> String {
    let mut out = String::new();
    for (i, spec) in file.specs.iter().enumerate() {
        if i > 0 {
            out.push_str(" ;\n");
        }
        write_items(&mut out, &spec.items);
    }
    out
}

fn write_items(out: &mut String, items: &[DescItem]) {
    for (i, item) in items.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        match item {
            DescItem::Lit(text) => {
                out.push('"');
                for c in text.chars() {
                    if c == '"' || c == '\\' {
                        out.push('\\');
                    }
                    out.push(c);
                }
                out.push('"');
            }
            DescItem::Name(name) => out.push_str(name),
            DescItem::Space => out.push_str("\\\\"),
            DescItem::Alt(alts) => {
                out.push('[');
                for (j, alt) in alts.iter().enumerate() {
                    if j > 0 {
                        out.push_str(" | ");
                    }
                    write_items(out, alt);
                }
                out.push(']');
            }
            DescItem::OptParens(body) => {
                out.push('(');
                write_items(out, body);
                out.push(')');
            }
        }
    }
}
