use examforge_core::grader::{GradeReport, Status};
use serde::Serialize;

use super::Decimal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportJson {
    pub student: String,
    pub total: Decimal,
    pub auto_total: Decimal,
    pub max_total: Decimal,
    pub counts: CountsJson,
    pub tasks: Vec<TaskJson>,
    pub review: Vec<ReviewJson>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountsJson {
    pub auto_full: usize,
    pub auto_partial: usize,
    pub needs_review: usize,
    pub unanswered: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TaskJson {
    pub id: String,
    pub kind: &'static str,
    pub max_points: Decimal,
    pub points: Decimal,
    pub status: &'static str,
    pub evidence: Vec<String>,
    pub comment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReviewJson {
    pub id: String,
    pub evidence: Vec<String>,
    pub comment: Option<String>,
}

pub fn report_json(r: &GradeReport) -> ReportJson {
    ReportJson {
        student: r.student.clone(),
        total: r.total.into(),
        auto_total: r.auto_total.into(),
        max_total: r.max_total.into(),
        counts: CountsJson {
            auto_full: r.counts.get(Status::AutoFull),
            auto_partial: r.counts.get(Status::AutoPartial),
            needs_review: r.counts.get(Status::NeedsReview),
            unanswered: r.counts.get(Status::Unanswered),
        },
        tasks: r
            .tasks
            .iter()
            .map(|t| TaskJson {
                id: t.id.clone(),
                kind: t.kind,
                max_points: t.max_points.into(),
                points: t.grade.points.into(),
                status: t.grade.status.name(),
                evidence: t.grade.evidence.clone(),
                comment: t.comment.clone(),
            })
            .collect(),
        review: r
            .review
            .iter()
            .map(|i| ReviewJson {
                id: i.id.clone(),
                evidence: i.evidence.clone(),
                comment: i.comment.clone(),
            })
            .collect(),
        errors: r.errors.clone(),
    }
}

/// One row per student: id, points per task, total and the number of
/// answers awaiting review. Task columns follow the first report's order.
pub fn write_csv<W: std::io::Write>(reports: &[GradeReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let ids: Vec<&str> = reports
        .first()
        .map(|r| r.tasks.iter().map(|t| t.id.as_str()).collect())
        .unwrap_or_default();
    let mut header = vec!["student"];
    header.extend(&ids);
    header.extend(["total", "review_count"]);
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![r.student.clone()];
        row.extend(r.tasks.iter().map(|t| t.grade.points.to_string()));
        row.push(r.total.to_string());
        row.push(r.counts.needs_review.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
