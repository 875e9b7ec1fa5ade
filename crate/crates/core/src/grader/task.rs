use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use super::restrict::{RestrictionError, RestrictionSpec};
use super::rules::{MappingRule, Predicate};
use crate::pattern::Pattern;
use crate::proof::{Algorithm, PuzzleTask};
use crate::Points;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingleChoice {
    pub options: Vec<String>,
    pub correct_index: usize,
    /// Option meaning "none of these apply". Selecting it hides dependent
    /// regex tasks.
    pub negative_index: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultipleChoice {
    pub options: Vec<String>,
    pub correct: BTreeSet<usize>,
    /// Award a share of the points per correctly decided option instead of
    /// all or nothing.
    pub per_option: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegexRule {
    pub pattern: Pattern,
    /// Points for a match; the task maximum when absent.
    pub points: Option<Points>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegexTask {
    pub patterns: Vec<RegexRule>,
    pub depends_on: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTask {
    pub puzzle: PuzzleTask,
    pub algorithm: Algorithm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgrammingTask {
    pub rules: Vec<MappingRule>,
    pub restrictions: Option<RestrictionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TaskKind {
    SingleChoice(SingleChoice),
    MultipleChoice(MultipleChoice),
    Regex(RegexTask),
    Proof(ProofTask),
    Programming(ProgrammingTask),
    Text,
}

impl TaskKind {
    pub fn name(&self) -> &'static str {
        match self {
            TaskKind::SingleChoice(_) => "single_choice",
            TaskKind::MultipleChoice(_) => "multiple_choice",
            TaskKind::Regex(_) => "regex",
            TaskKind::Proof(_) => "proof",
            TaskKind::Programming(_) => "programming",
            TaskKind::Text => "text",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Task {
    pub id: String,
    pub max_points: Points,
    pub kind: TaskKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("task id {0:?} is used more than once")]
    DuplicateId(String),
    #[error("task {0:?} has negative max points")]
    NegativeMaxPoints(String),
    #[error("task {0:?} has no options")]
    NoOptions(String),
    #[error("task {task:?}: option index {index} out of range")]
    IndexOutOfRange { task: String, index: usize },
    #[error("task {task:?} depends on {depends_on:?}, which does not exist")]
    UnknownDependency { task: String, depends_on: String },
    #[error("task {task:?} depends on {depends_on:?}, which is not a single-choice task")]
    DependencyNotSingleChoice { task: String, depends_on: String },
    #[error("task {0:?} has no patterns")]
    NoPatterns(String),
    #[error("task {task:?}: points of pattern {index} are outside 0..=max")]
    PatternPointsOutOfRange { task: String, index: usize },
    #[error("task {0:?}: the last mapping rule must be `otherwise`")]
    MissingCatchAll(String),
    #[error("task {task:?}: points of rule {index} are outside 0..=max")]
    RulePointsOutOfRange { task: String, index: usize },
    #[error("task {task:?}: max points {found} differ from the puzzle's {expected}")]
    ProofMaxMismatch {
        task: String,
        expected: Points,
        found: Points,
    },
    #[error("task {task:?}: {source}")]
    Restrictions { task: String, source: RestrictionError },
}

/// A validated list of tasks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Exam {
    tasks: Vec<Task>,
    index: BTreeMap<String, usize>,
}

impl Exam {
    pub fn new(tasks: Vec<Task>) -> Result<Self, ConfigError> {
        let mut index = BTreeMap::new();
        for (i, t) in tasks.iter().enumerate() {
            if index.insert(t.id.clone(), i).is_some() {
                return Err(ConfigError::DuplicateId(t.id.clone()));
            }
        }
        for t in &tasks {
            validate(t, &tasks, &index)?;
        }
        Ok(Exam { tasks, index })
    }

    pub fn tasks(&self) -> &[Task] {
        &self.tasks
    }

    pub fn task(&self, id: &str) -> Option<&Task> {
        self.index.get(id).map(|&i| &self.tasks[i])
    }

    /// Sum of all task maxima.
    pub fn max_points(&self) -> Points {
        self.tasks.iter().map(|t| t.max_points).sum()
    }
}

fn in_range(p: Points, max: Points) -> bool {
    !p.is_negative() && p <= max
}

fn validate(t: &Task, tasks: &[Task], index: &BTreeMap<String, usize>) -> Result<(), ConfigError> {
    let id = || t.id.clone();
    if t.max_points.is_negative() {
        return Err(ConfigError::NegativeMaxPoints(id()));
    }
    match &t.kind {
        TaskKind::SingleChoice(sc) => {
            if sc.options.is_empty() {
                return Err(ConfigError::NoOptions(id()));
            }
            for index in [Some(sc.correct_index), sc.negative_index].into_iter().flatten() {
                if index >= sc.options.len() {
                    return Err(ConfigError::IndexOutOfRange { task: id(), index });
                }
            }
        }
        TaskKind::MultipleChoice(mc) => {
            if mc.options.is_empty() {
                return Err(ConfigError::NoOptions(id()));
            }
            if let Some(&index) = mc.correct.iter().find(|&&i| i >= mc.options.len()) {
                return Err(ConfigError::IndexOutOfRange { task: id(), index });
            }
        }
        TaskKind::Regex(rt) => {
            if rt.patterns.is_empty() {
                return Err(ConfigError::NoPatterns(id()));
            }
            for (index, rule) in rt.patterns.iter().enumerate() {
                if rule.points.is_some_and(|p| !in_range(p, t.max_points)) {
                    return Err(ConfigError::PatternPointsOutOfRange { task: id(), index });
                }
            }
            if let Some(dep) = &rt.depends_on {
                match index.get(dep).map(|&i| &tasks[i].kind) {
                    None => {
                        return Err(ConfigError::UnknownDependency {
                            task: id(),
                            depends_on: dep.clone(),
                        })
                    }
                    Some(TaskKind::SingleChoice(_)) => {}
                    Some(_) => {
                        return Err(ConfigError::DependencyNotSingleChoice {
                            task: id(),
                            depends_on: dep.clone(),
                        })
                    }
                }
            }
        }
        TaskKind::Proof(pt) => {
            if pt.puzzle.max_points() != t.max_points {
                return Err(ConfigError::ProofMaxMismatch {
                    task: id(),
                    expected: pt.puzzle.max_points(),
                    found: t.max_points,
                });
            }
        }
        TaskKind::Programming(pt) => {
            if !matches!(
                pt.rules.last(),
                Some(MappingRule {
                    when: Predicate::Otherwise,
                    ..
                })
            ) {
                return Err(ConfigError::MissingCatchAll(id()));
            }
            for (index, rule) in pt.rules.iter().enumerate() {
                if !in_range(rule.points, t.max_points) {
                    return Err(ConfigError::RulePointsOutOfRange { task: id(), index });
                }
            }
            if let Some(spec) = &pt.restrictions {
                spec.validate()
                    .map_err(|source| ConfigError::Restrictions { task: id(), source })?;
            }
        }
        TaskKind::Text => {}
    }
    Ok(())
}
