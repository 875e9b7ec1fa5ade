use std::collections::BTreeMap;

use examforge_core::htrsl::{CheckReport, CompiledRegex};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompiledJson {
    pub spec_index: usize,
    pub pattern: String,
    /// Identifier to named capture group.
    pub groups: BTreeMap<String, String>,
    pub dialect: String,
}

pub fn compiled_json(compiled: &[CompiledRegex]) -> Vec<CompiledJson> {
    compiled
        .iter()
        .enumerate()
        .map(|(spec_index, c)| CompiledJson {
            spec_index,
            pattern: c.pattern.clone(),
            groups: c.group_map.clone(),
            dialect: c.dialect.into(),
        })
        .collect()
}

/// Example answers for one description.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleSet {
    #[serde(default)]
    pub positives: Vec<String>,
    #[serde(default)]
    pub negatives: Vec<String>,
}

/// Examples file: one set per description, in file order.
pub type ExamplesJson = Vec<ExampleSet>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckJson {
    pub passed: bool,
    pub results: Vec<SpecCheckJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecCheckJson {
    pub spec_index: usize,
    pub pattern: String,
    pub passed: bool,
    pub failed_positives: Vec<String>,
    pub matched_negatives: Vec<String>,
}

pub fn check_json(results: &[(&CompiledRegex, CheckReport)]) -> CheckJson {
    let results: Vec<SpecCheckJson> = results
        .iter()
        .enumerate()
        .map(|(spec_index, (regex, report))| SpecCheckJson {
            spec_index,
            pattern: regex.pattern.clone(),
            passed: report.passed(),
            failed_positives: report.failed_positives.clone(),
            matched_negatives: report.matched_negatives.clone(),
        })
        .collect();
    CheckJson {
        passed: results.iter().all(|r| r.passed),
        results,
    }
}
