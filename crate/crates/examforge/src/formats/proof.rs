use examforge_core::proof::{GradeResult, PuzzleAttempt, PuzzleError, PuzzleItem, PuzzleTask, SolutionSpec};
use serde::{Deserialize, Serialize};

use super::Decimal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PuzzleJson {
    pub pool: Vec<ItemJson>,
    pub solutions: Vec<SolutionJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemJson {
    pub text: String,
    pub weight: Decimal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionJson {
    pub items: Vec<String>,
    pub points: Decimal,
    /// Entry-point positions; position 0 is implied.
    #[serde(default)]
    pub entries: Vec<usize>,
}

impl PuzzleJson {
    pub fn to_task(&self) -> Result<PuzzleTask, PuzzleError> {
        PuzzleTask::new(
            self.pool
                .iter()
                .map(|i| PuzzleItem::new(i.text.clone(), i.weight.0))
                .collect(),
            self.solutions
                .iter()
                .map(|s| SolutionSpec {
                    items: s.items.clone(),
                    points: s.points.0,
                    entries: s.entries.clone(),
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AttemptJson {
    pub sequence: Vec<String>,
}

impl AttemptJson {
    pub fn to_attempt(&self) -> PuzzleAttempt {
        PuzzleAttempt::new(self.sequence.iter().cloned())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradeJson {
    pub points: Decimal,
    pub algorithm: String,
    pub per_solution: Vec<SolutionScoreJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionScoreJson {
    pub solution: usize,
    pub points: Decimal,
}

pub fn grade_json(result: &GradeResult) -> GradeJson {
    GradeJson {
        points: result.points.into(),
        algorithm: result.algorithm.name().into(),
        per_solution: result
            .per_solution
            .iter()
            .map(|&(solution, p)| SolutionScoreJson {
                solution,
                points: p.into(),
            })
            .collect(),
    }
}
