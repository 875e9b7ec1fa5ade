//! Exam grading.
//!
//! An [`Exam`] is a validated list of task definitions. [`grade_exam`] grades
//! one [`Submission`] against it and returns a [`GradeReport`] with a
//! [`TaskGrade`] per task. Each grade carries an automation [`Status`]: tasks
//! the grader can settle on its own are `auto_full` or `auto_partial`, answers
//! that need an examiner's eye are `needs_review`.

mod exam;
mod ops;
mod restrict;
mod rules;
mod task;

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::Points;

pub use exam::{grade_exam, Answer, GradeReport, ReviewItem, StatusCounts, Submission, TaskAnswer, TaskRecord};
pub use ops::{
    grade_multiple_choice, grade_programming, grade_proof, grade_regex, grade_single_choice, grade_text, AnswerError,
    Dependency,
};
pub use restrict::{check_restrictions, RestrictionError, RestrictionSpec, Restrictions, Violation, ViolationKind};
pub use rules::{map_test_results, MappingRule, Outcome, Predicate, TestResults};
pub use task::{
    ConfigError, Exam, MultipleChoice, ProgrammingTask, ProofTask, RegexRule, RegexTask, SingleChoice, Task, TaskKind,
};

/// How a task grade came about.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    AutoFull,
    AutoPartial,
    NeedsReview,
    Unanswered,
}

impl Status {
    pub const ALL: [Status; 4] = [
        Status::AutoFull,
        Status::AutoPartial,
        Status::NeedsReview,
        Status::Unanswered,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Status::AutoFull => "auto_full",
            Status::AutoPartial => "auto_partial",
            Status::NeedsReview => "needs_review",
            Status::Unanswered => "unanswered",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Status::ALL
            .into_iter()
            .find(|st| st.name() == s)
            .ok_or_else(|| alloc::format!("unknown status {s:?}"))
    }
}

/// Points and status for one task. Points of a `needs_review` grade are
/// provisional.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskGrade {
    pub points: Points,
    pub status: Status,
    pub evidence: Vec<String>,
}

impl TaskGrade {
    pub fn new(points: Points, status: Status) -> Self {
        TaskGrade {
            points,
            status,
            evidence: Vec::new(),
        }
    }

    pub fn unanswered() -> Self {
        TaskGrade::new(Points::ZERO, Status::Unanswered)
    }

    pub fn with(mut self, evidence: impl Into<String>) -> Self {
        self.evidence.push(evidence.into());
        self
    }
}
