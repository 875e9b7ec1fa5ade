use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::ops::*;
use super::rules::TestResults;
use super::task::{Exam, Task, TaskKind};
use super::{Status, TaskGrade};
use crate::proof::PuzzleAttempt;
use crate::Points;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Answer {
    Choice(usize),
    Choices(Vec<usize>),
    Text(String),
    Sequence(PuzzleAttempt),
    Program {
        results: Option<TestResults>,
        source: Option<String>,
    },
    /// An answer that could not be read; graded as a bad answer.
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TaskAnswer {
    pub answer: Option<Answer>,
    /// The student's remark on the task. Shown to the examiner, never scored.
    pub comment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Submission {
    pub student: String,
    pub answers: BTreeMap<String, TaskAnswer>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskRecord {
    pub id: String,
    pub kind: &'static str,
    pub max_points: Points,
    pub grade: TaskGrade,
    pub comment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReviewItem {
    pub id: String,
    pub evidence: Vec<String>,
    pub comment: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct StatusCounts {
    pub auto_full: usize,
    pub auto_partial: usize,
    pub needs_review: usize,
    pub unanswered: usize,
}

impl StatusCounts {
    pub fn get(&self, status: Status) -> usize {
        match status {
            Status::AutoFull => self.auto_full,
            Status::AutoPartial => self.auto_partial,
            Status::NeedsReview => self.needs_review,
            Status::Unanswered => self.unanswered,
        }
    }

    fn bump(&mut self, status: Status) {
        match status {
            Status::AutoFull => self.auto_full += 1,
            Status::AutoPartial => self.auto_partial += 1,
            Status::NeedsReview => self.needs_review += 1,
            Status::Unanswered => self.unanswered += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeReport {
    pub student: String,
    /// One record per task, in exam order.
    pub tasks: Vec<TaskRecord>,
    /// Points from automatically settled grades.
    pub auto_total: Points,
    /// All awarded points, provisional ones included.
    pub total: Points,
    pub max_total: Points,
    pub counts: StatusCounts,
    pub review: Vec<ReviewItem>,
    /// Problems with the submission that are not tied to a task, such as
    /// answers to unknown task ids.
    pub errors: Vec<String>,
}

impl GradeReport {
    pub fn task(&self, id: &str) -> Option<&TaskRecord> {
        self.tasks.iter().find(|t| t.id == id)
    }
}

/// Grades every task of `exam`. Bad answers are reported on their task and
/// never stop the rest of the exam from being graded.
pub fn grade_exam(exam: &Exam, submission: &Submission) -> GradeReport {
    let mut tasks = Vec::with_capacity(exam.tasks().len());
    let mut counts = StatusCounts::default();
    let mut review = Vec::new();
    let mut total = Points::ZERO;
    let mut auto_total = Points::ZERO;
    for task in exam.tasks() {
        let entry = submission.answers.get(&task.id);
        let answer = entry.and_then(|e| e.answer.as_ref());
        let comment = entry.and_then(|e| e.comment.clone());
        let grade = grade_task(exam, task, answer, submission)
            .unwrap_or_else(|e| TaskGrade::new(Points::ZERO, Status::NeedsReview).with(format!("invalid answer: {e}")));
        counts.bump(grade.status);
        total += grade.points;
        match grade.status {
            Status::NeedsReview => review.push(ReviewItem {
                id: task.id.clone(),
                evidence: grade.evidence.clone(),
                comment: comment.clone(),
            }),
            Status::AutoFull | Status::AutoPartial => auto_total += grade.points,
            Status::Unanswered => {}
        }
        tasks.push(TaskRecord {
            id: task.id.clone(),
            kind: task.kind.name(),
            max_points: task.max_points,
            grade,
            comment,
        });
    }
    let errors = submission
        .answers
        .keys()
        .filter(|id| exam.task(id).is_none())
        .map(|id| format!("answer for unknown task {id:?}"))
        .collect();
    GradeReport {
        student: submission.student.clone(),
        tasks,
        auto_total,
        total,
        max_total: exam.max_points(),
        counts,
        review,
        errors,
    }
}

fn grade_task(
    exam: &Exam,
    task: &Task,
    answer: Option<&Answer>,
    submission: &Submission,
) -> Result<TaskGrade, AnswerError> {
    if let Some(Answer::Invalid(reason)) = answer {
        return Err(AnswerError::Malformed(reason.clone()));
    }
    let max = task.max_points;
    let wrong = |expected| Err(AnswerError::WrongKind { expected });
    match &task.kind {
        TaskKind::SingleChoice(def) => match answer {
            None => grade_single_choice(def, max, None),
            Some(Answer::Choice(i)) => grade_single_choice(def, max, Some(*i)),
            Some(_) => wrong("single-choice"),
        },
        TaskKind::MultipleChoice(def) => match answer {
            None => grade_multiple_choice(def, max, None),
            Some(Answer::Choices(c)) => grade_multiple_choice(def, max, Some(c)),
            Some(_) => wrong("multiple-choice"),
        },
        TaskKind::Regex(def) => {
            let text = match answer {
                None => None,
                Some(Answer::Text(t)) => Some(t.as_str()),
                Some(_) => return wrong("text"),
            };
            let dependency = def.depends_on.as_deref().and_then(|dep| {
                let Some(Task {
                    kind: TaskKind::SingleChoice(sc),
                    ..
                }) = exam.task(dep)
                else {
                    return None;
                };
                // An invalid dependency answer counts as no answer.
                let answer = match submission.answers.get(dep).and_then(|a| a.answer.as_ref()) {
                    Some(Answer::Choice(i)) if *i < sc.options.len() => Some(*i),
                    _ => None,
                };
                Some(Dependency { task: sc, answer })
            });
            Ok(grade_regex(def, max, text, dependency))
        }
        TaskKind::Proof(def) => match answer {
            None => grade_proof(def, max, None),
            Some(Answer::Sequence(a)) => grade_proof(def, max, Some(a)),
            Some(_) => wrong("proof sequence"),
        },
        TaskKind::Programming(def) => match answer {
            None => grade_programming(def, max, None, None),
            Some(Answer::Program { results, source }) => {
                grade_programming(def, max, results.as_ref(), source.as_deref())
            }
            Some(_) => wrong("programming"),
        },
        TaskKind::Text => match answer {
            None => Ok(grade_text(None)),
            Some(Answer::Text(t)) => Ok(grade_text(Some(t))),
            Some(_) => wrong("text"),
        },
    }
}
