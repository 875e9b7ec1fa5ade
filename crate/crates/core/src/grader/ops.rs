use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;

use thiserror::Error;

use super::restrict::check_restrictions;
use super::rules::{map_test_results, TestResults};
use super::task::{MultipleChoice, ProgrammingTask, ProofTask, RegexTask, SingleChoice};
use super::{Status, TaskGrade};
use crate::hs::{analyze, parse_subset};
use crate::proof::{self, PuzzleAttempt, PuzzleError};
use crate::Points;

/// An answer that does not fit its task.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnswerError {
    #[error("option index {index} out of range ({options} options)")]
    IndexOutOfRange { index: usize, options: usize },
    #[error("option index {0} selected more than once")]
    DuplicateIndex(usize),
    #[error("expected a {expected} answer")]
    WrongKind { expected: &'static str },
    #[error("{0}")]
    Malformed(String),
    #[error("test results report outcomes although the code did not compile")]
    OutcomesWithoutCompile,
    #[error(transparent)]
    Puzzle(#[from] PuzzleError),
}

/// The single-choice task a regex task depends on, with the student's answer
/// to it.
#[derive(Debug, Clone, Copy)]
pub struct Dependency<'a> {
    pub task: &'a SingleChoice,
    pub answer: Option<usize>,
}

/// Choice tasks are settled automatically; only a strictly partial score is
/// `auto_partial`.
fn choice_status(points: Points, max: Points) -> Status {
    if points.is_zero() || points == max {
        Status::AutoFull
    } else {
        Status::AutoPartial
    }
}

fn check_index(index: usize, options: usize) -> Result<(), AnswerError> {
    if index < options {
        Ok(())
    } else {
        Err(AnswerError::IndexOutOfRange { index, options })
    }
}

pub fn grade_single_choice(def: &SingleChoice, max: Points, answer: Option<usize>) -> Result<TaskGrade, AnswerError> {
    let Some(index) = answer else {
        return Ok(TaskGrade::unanswered());
    };
    check_index(index, def.options.len())?;
    let points = if index == def.correct_index { max } else { Points::ZERO };
    Ok(TaskGrade::new(points, Status::AutoFull).with(format!("selected option {index}")))
}

pub fn grade_multiple_choice(
    def: &MultipleChoice,
    max: Points,
    answer: Option<&[usize]>,
) -> Result<TaskGrade, AnswerError> {
    let Some(answer) = answer else {
        return Ok(TaskGrade::unanswered());
    };
    let mut chosen = BTreeSet::new();
    for &i in answer {
        check_index(i, def.options.len())?;
        if !chosen.insert(i) {
            return Err(AnswerError::DuplicateIndex(i));
        }
    }
    let points = if def.per_option {
        let n = def.options.len();
        let right = (0..n).filter(|i| chosen.contains(i) == def.correct.contains(i)).count();
        max * Points::from_ratio(right as i64, n as i64)
    } else if chosen == def.correct {
        max
    } else {
        Points::ZERO
    };
    Ok(TaskGrade::new(points, choice_status(points, max)))
}

/// Grades a free-text answer against the task's patterns; the first pattern
/// that matches decides the points.
pub fn grade_regex(def: &RegexTask, max: Points, text: Option<&str>, dependency: Option<Dependency<'_>>) -> TaskGrade {
    let text = text.filter(|t| !t.trim().is_empty());
    if let Some(dep) = dependency {
        let Some(choice) = dep.answer else {
            return TaskGrade::unanswered().with("dependency unanswered");
        };
        if Some(choice) == dep.task.negative_index {
            // The text field is hidden once the negative option is chosen,
            // so leaving it empty is the expected answer.
            let points = if dep.task.correct_index == choice {
                max
            } else {
                Points::ZERO
            };
            return TaskGrade::new(points, Status::AutoFull).with("negative option selected");
        }
        if text.is_none() {
            return TaskGrade::new(Points::ZERO, Status::NeedsReview).with("empty answer after positive dependency");
        }
    }
    let Some(text) = text else {
        return TaskGrade::unanswered();
    };
    for (i, rule) in def.patterns.iter().enumerate() {
        if rule.pattern.is_match(text) {
            let points = rule.points.unwrap_or(max);
            let status = if points == max {
                Status::AutoFull
            } else {
                Status::NeedsReview
            };
            return TaskGrade::new(points, status).with(format!("matched pattern {i}"));
        }
    }
    TaskGrade::new(Points::ZERO, Status::NeedsReview).with("no pattern matched")
}

pub fn grade_proof(def: &ProofTask, max: Points, attempt: Option<&PuzzleAttempt>) -> Result<TaskGrade, AnswerError> {
    let Some(attempt) = attempt else {
        return Ok(TaskGrade::unanswered());
    };
    let result = proof::grade(&def.puzzle, attempt, def.algorithm)?;
    let status = if result.points == max {
        Status::AutoFull
    } else {
        Status::AutoPartial
    };
    let mut grade = TaskGrade::new(result.points, status).with(format!("algorithm {}", def.algorithm));
    for (i, p) in &result.per_solution {
        grade = grade.with(format!("solution {i}: {p}"));
    }
    Ok(grade)
}

/// Maps test results to points, then checks the submitted source against
/// the task's restrictions. Violations do not change the points but send
/// the answer to review.
pub fn grade_programming(
    def: &ProgrammingTask,
    max: Points,
    results: Option<&TestResults>,
    source: Option<&str>,
) -> Result<TaskGrade, AnswerError> {
    let mut grade = match results {
        Some(r) if !r.compiled && !r.outcomes.is_empty() => return Err(AnswerError::OutcomesWithoutCompile),
        Some(r) => map_test_results(&def.rules, max, r),
        None if source.is_none() => return Ok(TaskGrade::unanswered()),
        None => TaskGrade::new(Points::ZERO, Status::NeedsReview).with("no test results"),
    };
    let Some(spec) = def.restrictions.as_ref().filter(|s| !s.is_empty()) else {
        return Ok(grade);
    };
    let flag = |grade: &mut TaskGrade, evidence: String| {
        grade.status = Status::NeedsReview;
        grade.evidence.push(evidence);
    };
    match source.map(parse_subset) {
        None => flag(&mut grade, "restrictions: no source to analyze".into()),
        Some(Err(e)) => flag(&mut grade, format!("restrictions: source does not parse: {e}")),
        Some(Ok(module)) => {
            for v in check_restrictions(&analyze(&module), spec) {
                flag(&mut grade, format!("violation: {v}"));
            }
        }
    }
    Ok(grade)
}

/// Free-text answers are never graded automatically.
pub fn grade_text(text: Option<&str>) -> TaskGrade {
    match text.filter(|t| !t.trim().is_empty()) {
        Some(_) => TaskGrade::new(Points::ZERO, Status::NeedsReview).with("free text: manual grading required"),
        None => TaskGrade::unanswered(),
    }
}
