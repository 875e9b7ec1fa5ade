use alloc::string::String;
use alloc::vec::Vec;

use super::CompiledRegex;
use crate::pattern::PatternError;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CheckReport {
    /// Positive examples the pattern failed to match.
    pub failed_positives: Vec<String>,
    /// Negative examples the pattern matched.
    pub matched_negatives: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failed_positives.is_empty() && self.matched_negatives.is_empty()
    }
}

pub fn check_examples<P, N>(
    regex: &CompiledRegex,
    positives: &[P],
    negatives: &[N],
) -> Result<CheckReport, PatternError>
where
    P: AsRef<str>,
    N: AsRef<str>,
{
    let pattern = regex.to_pattern()?;
    Ok(CheckReport {
        failed_positives: positives
            .iter()
            .map(AsRef::as_ref)
            .filter(|s| !pattern.is_match(s))
            .map(String::from)
            .collect(),
        matched_negatives: negatives
            .iter()
            .map(AsRef::as_ref)
            .filter(|s| pattern.is_match(s))
            .map(String::from)
            .collect(),
    })
}
