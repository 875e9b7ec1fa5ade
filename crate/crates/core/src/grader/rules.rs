use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::{Status, TaskGrade};
use crate::Points;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

/// Results of an external test run for one programming answer.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TestResults {
    pub compiled: bool,
    pub outcomes: BTreeMap<String, Outcome>,
}

impl TestResults {
    pub fn passed(&self, test: &str) -> bool {
        self.outcomes.get(test) == Some(&Outcome::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Predicate {
    /// Every recorded test passed.
    AllPass,
    Passes(String),
    /// At least `k` of the listed tests passed.
    AtLeast {
        k: usize,
        tests: Vec<String>,
    },
    Otherwise,
}

impl Predicate {
    pub fn holds(&self, results: &TestResults) -> bool {
        match self {
            Predicate::AllPass => results.outcomes.values().all(|o| *o == Outcome::Pass),
            Predicate::Passes(t) => results.passed(t),
            Predicate::AtLeast { k, tests } => tests.iter().filter(|t| results.passed(t)).count() >= *k,
            Predicate::Otherwise => true,
        }
    }

    fn describe(&self) -> String {
        match self {
            Predicate::AllPass => "all_pass".into(),
            Predicate::Passes(t) => format!("passes {t}"),
            Predicate::AtLeast { k, tests } => format!("at_least {k} of [{}]", tests.join(", ")),
            Predicate::Otherwise => "otherwise".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingRule {
    pub when: Predicate,
    pub points: Points,
}

/// Maps test results to points: the first rule whose predicate holds fires.
/// Anything short of full points is left for review.
pub fn map_test_results(rules: &[MappingRule], max_points: Points, results: &TestResults) -> TaskGrade {
    if !results.compiled {
        return TaskGrade::new(Points::ZERO, Status::NeedsReview).with("no-compile: manual grading required");
    }
    let Some((i, rule)) = rules.iter().enumerate().find(|(_, r)| r.when.holds(results)) else {
        return TaskGrade::new(Points::ZERO, Status::NeedsReview).with("no mapping rule matched");
    };
    let status = if rule.points == max_points {
        Status::AutoFull
    } else {
        Status::NeedsReview
    };
    TaskGrade::new(rule.points, status).with(format!("rule {i} fired: {}", rule.when.describe()))
}
