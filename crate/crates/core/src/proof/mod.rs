//! Proof-puzzle grading.
//!
//! A puzzle is a pool of draggable proof lines (items), each carrying a
//! weight, plus one or more solutions: ordered item sequences worth a fixed
//! number of points. An attempt is the sequence of items a student placed.
//!
//! Two scoring schemes are provided: [`grade_legacy`] subtracts the weighted
//! insert/remove edit distance from each solution's points, and
//! [`grade_sequence`] awards the weight of every item matched in lockstep
//! with a solution, resynchronising only at the solution's entry points.
//!
//! Item identity is the item text, so pool texts must be pairwise distinct.

mod distance;
mod sequence;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::Points;

pub use distance::weighted_edit_distance;
pub use sequence::{find_next_sequence_start, sequence_score};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleItem {
    pub text: String,
    pub weight: Points,
}

impl PuzzleItem {
    pub fn new(text: impl Into<String>, weight: Points) -> Self {
        PuzzleItem {
            text: text.into(),
            weight,
        }
    }
}

/// Author-facing description of one solution, before it is resolved against
/// the pool.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSpec {
    pub items: Vec<String>,
    pub points: Points,
    /// Solution positions that act as entry points. Position 0 is always an
    /// entry point whether or not it is listed.
    pub entries: Vec<usize>,
}

/// A solution resolved to pool indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleSolution {
    items: Vec<usize>,
    points: Points,
    entries: Vec<bool>,
}

impl PuzzleSolution {
    /// Pool indices of the solution items, in order.
    pub fn items(&self) -> &[usize] {
        &self.items
    }

    pub fn points(&self) -> Points {
        self.points
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn is_entry(&self, position: usize) -> bool {
        self.entries.get(position).copied().unwrap_or(false)
    }

    pub fn entry_positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().enumerate().filter_map(|(i, &e)| e.then_some(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuzzleTask {
    pool: Vec<PuzzleItem>,
    by_text: BTreeMap<String, usize>,
    solutions: Vec<PuzzleSolution>,
}

/// The sequence of item texts a student submitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PuzzleAttempt {
    pub sequence: Vec<String>,
}

impl PuzzleAttempt {
    pub fn new<I, S>(sequence: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        PuzzleAttempt {
            sequence: sequence.into_iter().map(Into::into).collect(),
        }
    }
}

/// An attempt validated against a pool: pool indices, each used at most once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvedAttempt(Vec<usize>);

impl ResolvedAttempt {
    pub fn items(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Legacy,
    Sequence,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Legacy => "legacy",
            Algorithm::Sequence => "sequence",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = PuzzleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "legacy" => Ok(Algorithm::Legacy),
            "sequence" => Ok(Algorithm::Sequence),
            other => Err(PuzzleError::UnknownAlgorithm(other.into())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradeResult {
    pub points: Points,
    pub algorithm: Algorithm,
    /// Score of the attempt against each solution, in solution order.
    pub per_solution: Vec<(usize, Points)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PuzzleError {
    #[error("pool item {index} has empty text")]
    EmptyText { index: usize },
    #[error("item {text:?} has negative weight {weight}")]
    NegativeWeight { text: String, weight: Points },
    #[error("pool text {0:?} appears more than once")]
    DuplicatePoolText(String),
    #[error("puzzle has no solutions")]
    NoSolutions,
    #[error("solution {solution} is empty")]
    EmptySolution { solution: usize },
    #[error("solution {solution} references {text:?}, which is not in the pool")]
    UnknownSolutionItem { solution: usize, text: String },
    #[error("solution {solution} marks entry point {position}, but has only {len} items")]
    EntryOutOfRange {
        solution: usize,
        position: usize,
        len: usize,
    },
    #[error("solution {solution} has negative points {points}")]
    NegativePoints { solution: usize, points: Points },
    #[error("solution {solution}: item weights sum to {weights}, exceeding its {points} points")]
    WeightsExceedPoints {
        solution: usize,
        weights: Points,
        points: Points,
    },
    #[error("attempt uses {0:?}, which is not in the pool")]
    UnknownAttemptItem(String),
    #[error("attempt uses {0:?} more than once")]
    DuplicateAttemptItem(String),
    #[error("unknown grading algorithm {0:?} (expected legacy or sequence)")]
    UnknownAlgorithm(String),
}

impl PuzzleTask {
    pub fn new(pool: Vec<PuzzleItem>, solutions: Vec<SolutionSpec>) -> Result<Self, PuzzleError> {
        let mut by_text = BTreeMap::new();
        for (index, item) in pool.iter().enumerate() {
            if item.text.is_empty() {
                return Err(PuzzleError::EmptyText { index });
            }
            if item.weight.is_negative() {
                return Err(PuzzleError::NegativeWeight {
                    text: item.text.clone(),
                    weight: item.weight,
                });
            }
            if by_text.insert(item.text.clone(), index).is_some() {
                return Err(PuzzleError::DuplicatePoolText(item.text.clone()));
            }
        }
        if solutions.is_empty() {
            return Err(PuzzleError::NoSolutions);
        }

        let mut resolved = Vec::with_capacity(solutions.len());
        for (solution, spec) in solutions.into_iter().enumerate() {
            if spec.items.is_empty() {
                return Err(PuzzleError::EmptySolution { solution });
            }
            if spec.points.is_negative() {
                return Err(PuzzleError::NegativePoints {
                    solution,
                    points: spec.points,
                });
            }
            let items = spec
                .items
                .iter()
                .map(|text| {
                    by_text
                        .get(text)
                        .copied()
                        .ok_or_else(|| PuzzleError::UnknownSolutionItem {
                            solution,
                            text: text.clone(),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?;
            let mut entries = vec![false; items.len()];
            entries[0] = true;
            for &position in &spec.entries {
                match entries.get_mut(position) {
                    Some(flag) => *flag = true,
                    None => {
                        return Err(PuzzleError::EntryOutOfRange {
                            solution,
                            position,
                            len: items.len(),
                        })
                    }
                }
            }
            let weights: Points = items.iter().map(|&i| pool[i].weight).sum();
            if weights > spec.points {
                return Err(PuzzleError::WeightsExceedPoints {
                    solution,
                    weights,
                    points: spec.points,
                });
            }
            resolved.push(PuzzleSolution {
                items,
                points: spec.points,
                entries,
            });
        }

        Ok(PuzzleTask {
            pool,
            by_text,
            solutions: resolved,
        })
    }

    pub fn pool(&self) -> &[PuzzleItem] {
        &self.pool
    }

    pub fn solutions(&self) -> &[PuzzleSolution] {
        &self.solutions
    }

    pub fn item(&self, index: usize) -> &PuzzleItem {
        &self.pool[index]
    }

    pub fn weight(&self, index: usize) -> Points {
        self.pool[index].weight
    }

    pub fn index_of(&self, text: &str) -> Option<usize> {
        self.by_text.get(text).copied()
    }

    /// Largest point value among the solutions.
    pub fn max_points(&self) -> Points {
        self.solutions
            .iter()
            .map(PuzzleSolution::points)
            .fold(Points::ZERO, Points::max)
    }

    pub fn resolve(&self, attempt: &PuzzleAttempt) -> Result<ResolvedAttempt, PuzzleError> {
        let mut seen = vec![false; self.pool.len()];
        let mut items = Vec::with_capacity(attempt.sequence.len());
        for text in &attempt.sequence {
            let index = self
                .index_of(text)
                .ok_or_else(|| PuzzleError::UnknownAttemptItem(text.clone()))?;
            if core::mem::replace(&mut seen[index], true) {
                return Err(PuzzleError::DuplicateAttemptItem(text.clone()));
            }
            items.push(index);
        }
        Ok(ResolvedAttempt(items))
    }
}

/// Points for `attempt` under the edit-distance scheme: for each solution
/// `max(0, points - distance)`, then the best solution.
pub fn grade_legacy(task: &PuzzleTask, attempt: &PuzzleAttempt) -> Result<GradeResult, PuzzleError> {
    let attempt = task.resolve(attempt)?;
    Ok(grade_resolved(task, &attempt, Algorithm::Legacy))
}

/// Points for `attempt` under the entry-point sequence scheme.
pub fn grade_sequence(task: &PuzzleTask, attempt: &PuzzleAttempt) -> Result<GradeResult, PuzzleError> {
    let attempt = task.resolve(attempt)?;
    Ok(grade_resolved(task, &attempt, Algorithm::Sequence))
}

pub fn grade(task: &PuzzleTask, attempt: &PuzzleAttempt, algorithm: Algorithm) -> Result<GradeResult, PuzzleError> {
    let attempt = task.resolve(attempt)?;
    Ok(grade_resolved(task, &attempt, algorithm))
}

pub fn grade_resolved(task: &PuzzleTask, attempt: &ResolvedAttempt, algorithm: Algorithm) -> GradeResult {
    let weight = |&i: &usize| task.weight(i);
    let per_solution: Vec<(usize, Points)> = task
        .solutions
        .iter()
        .enumerate()
        .map(|(index, solution)| {
            let score = match algorithm {
                Algorithm::Legacy => {
                    let d = weighted_edit_distance(solution.items(), attempt.items(), weight);
                    (solution.points - d).max(Points::ZERO)
                }
                Algorithm::Sequence => sequence_score(task, solution, attempt).min(solution.points),
            };
            (index, score)
        })
        .collect();
    let points = per_solution.iter().map(|&(_, r)| r).fold(Points::ZERO, Points::max);
    GradeResult {
        points,
        algorithm,
        per_solution,
    }
}
