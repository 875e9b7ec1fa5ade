use examforge_core::hs::{AnalysisReport, FunctionReport};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisJson {
    pub functions: Vec<FunctionJson>,
}

/// Field order is part of the format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FunctionJson {
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

impl From<&FunctionReport> for FunctionJson {
    fn from(f: &FunctionReport) -> Self {
        FunctionJson {
            name: f.name.clone(),
            pat_match: f.pat_match,
            guards: f.guards,
            list_comprehension: f.list_comprehension,
            has_if: f.has_if,
            has_case: f.has_case,
            args: f.args.clone(),
            called_fns: f.called_fns.clone(),
            declared_fns: f.declared_fns.clone(),
        }
    }
}

impl From<&AnalysisReport> for AnalysisJson {
    fn from(r: &AnalysisReport) -> Self {
        AnalysisJson {
            functions: r.functions.iter().map(FunctionJson::from).collect(),
        }
    }
}

pub fn emit_json(report: &AnalysisReport) -> String {
    super::to_pretty(&AnalysisJson::from(report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_module() {
        assert_eq!(emit_json(&AnalysisReport::default()), "{\n  \"functions\": []\n}\n");
    }

    #[test]
    fn key_order() {
        let json = emit_json(&AnalysisReport {
            functions: vec![FunctionReport {
                name: "x".into(),
                ..Default::default()
            }],
        });
        let keys: Vec<usize> = [
            "name",
            "patMatch",
            "guards",
            "listComprehension",
            "hasIf",
            "hasCase",
            "args",
            "calledFns",
            "declaredFns",
        ]
        .iter()
        .map(|k| json.find(&format!("\"{k}\"")).unwrap())
        .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
