//! Grading many submissions at once.

use examforge_core::grader::{grade_exam, Exam, GradeReport, Submission};
use rayon::prelude::*;

/// Grades every submission in parallel. Reports are sorted by student id,
/// whatever order the submissions came in.
pub fn grade_all(exam: &Exam, submissions: &[Submission]) -> Vec<GradeReport> {
    let mut reports: Vec<GradeReport> = submissions.par_iter().map(|s| grade_exam(exam, s)).collect();
    reports.sort_by(|a, b| a.student.cmp(&b.student));
    reports
}
