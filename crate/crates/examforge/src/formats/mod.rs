//! JSON and CSV file formats.
//!
//! Point values are written as decimal strings (`"1.5"`) so they survive
//! a round trip exactly; on input, JSON numbers are accepted as well.

mod analysis;
mod decimal;
mod exam;
mod htrsl;
mod proof;
mod report;
mod restrict;

pub use analysis::{emit_json, AnalysisJson, FunctionJson};
pub use decimal::Decimal;
pub use exam::{
    load_manifest, load_submissions, AnswerJson, KindJson, ManifestJson, OutcomeJson, PatternJson, RuleJson,
    SubmissionJson, TaskJson, TestResultsJson, WhenJson,
};
pub use htrsl::{check_json, compiled_json, CheckJson, CompiledJson, ExampleSet, ExamplesJson, SpecCheckJson};
pub use proof::{grade_json, AttemptJson, GradeJson, ItemJson, PuzzleJson, SolutionJson, SolutionScoreJson};
pub use report::{report_json, write_csv, ReportJson};
pub use restrict::{violations_json, RestrictionJson, RestrictionsJson, ViolationJson, ViolationsJson};

/// Pretty JSON with two-space indentation and a trailing newline.
pub fn to_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}
