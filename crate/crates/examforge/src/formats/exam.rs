use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use examforge_core::grader::{
    Answer, Exam, MappingRule, MultipleChoice, Outcome, Predicate, ProgrammingTask, ProofTask, RegexRule, RegexTask,
    SingleChoice, Submission, Task, TaskAnswer, TaskKind, TestResults,
};
use examforge_core::htrsl::{compile_spec, parse_htrsl};
use examforge_core::pattern::Pattern;
use examforge_core::proof::{Algorithm, PuzzleAttempt};
use serde::{Deserialize, Serialize};

use super::{Decimal, PuzzleJson, RestrictionJson};
use crate::error::{self, Error, Result};

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ManifestJson {
    pub tasks: Vec<TaskJson>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
pub struct TaskJson {
    pub id: String,
    /// Required except for proof tasks, whose maximum comes from the puzzle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_points: Option<Decimal>,
    #[serde(flatten)]
    pub kind: KindJson,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum KindJson {
    SingleChoice {
        options: Vec<String>,
        correct_index: usize,
        #[serde(default)]
        negative_index: Option<usize>,
    },
    MultipleChoice {
        options: Vec<String>,
        correct: Vec<usize>,
        #[serde(default)]
        per_option: bool,
    },
    Regex {
        patterns: Vec<PatternJson>,
        #[serde(default)]
        depends_on: Option<String>,
    },
    Proof {
        puzzle: PuzzleJson,
        #[serde(default)]
        algorithm: Option<String>,
    },
    Programming {
        rules: Vec<RuleJson>,
        #[serde(default)]
        restrictions: Option<RestrictionJson>,
    },
    Text,
}

/// A regex given directly, or as a one-description HTRSL source.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum PatternJson {
    Regex(String),
    Rule {
        #[serde(default)]
        pattern: Option<String>,
        #[serde(default)]
        htrsl: Option<String>,
        #[serde(default)]
        points: Option<Decimal>,
    },
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RuleJson {
    pub when: WhenJson,
    pub points: Decimal,
}

/// `"all_pass"`, `"otherwise"`, `{"passes": "t"}` or
/// `{"at_least": 2, "of": ["a", "b", "c"]}`.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum WhenJson {
    Keyword(String),
    Passes { passes: String },
    AtLeast { at_least: usize, of: Vec<String> },
}

fn compile_pattern(task: &str, p: &PatternJson) -> Result<RegexRule, String> {
    let (pattern, htrsl, points) = match p {
        PatternJson::Regex(s) => (Some(s), None, None),
        PatternJson::Rule { pattern, htrsl, points } => (pattern.as_ref(), htrsl.as_ref(), *points),
    };
    let source = match (pattern, htrsl) {
        (Some(p), None) => p.clone(),
        (None, Some(h)) => {
            let file = parse_htrsl(h).map_err(|e| format!("task {task:?}: htrsl {e}"))?;
            let [desc] = file.specs.as_slice() else {
                return Err(format!(
                    "task {task:?}: an htrsl pattern must hold exactly one description"
                ));
            };
            compile_spec(desc).map_err(|e| format!("task {task:?}: {e}"))?.pattern
        }
        _ => return Err(format!("task {task:?}: give exactly one of `pattern` and `htrsl`")),
    };
    Ok(RegexRule {
        pattern: Pattern::new(&source).map_err(|e| format!("task {task:?}: {e}"))?,
        points: points.map(|d| d.0),
    })
}

fn predicate(task: &str, when: &WhenJson) -> Result<Predicate, String> {
    Ok(match when {
        WhenJson::Keyword(k) if k == "all_pass" => Predicate::AllPass,
        WhenJson::Keyword(k) if k == "otherwise" => Predicate::Otherwise,
        WhenJson::Keyword(k) => return Err(format!("task {task:?}: unknown rule condition {k:?}")),
        WhenJson::Passes { passes } => Predicate::Passes(passes.clone()),
        WhenJson::AtLeast { at_least, of } => Predicate::AtLeast {
            k: *at_least,
            tests: of.clone(),
        },
    })
}

impl TaskJson {
    fn to_task(&self) -> Result<Task, String> {
        let id = self.id.as_str();
        let kind = match &self.kind {
            KindJson::SingleChoice {
                options,
                correct_index,
                negative_index,
            } => TaskKind::SingleChoice(SingleChoice {
                options: options.clone(),
                correct_index: *correct_index,
                negative_index: *negative_index,
            }),
            KindJson::MultipleChoice {
                options,
                correct,
                per_option,
            } => {
                let set: BTreeSet<usize> = correct.iter().copied().collect();
                if set.len() != correct.len() {
                    return Err(format!("task {id:?}: duplicate index in `correct`"));
                }
                TaskKind::MultipleChoice(MultipleChoice {
                    options: options.clone(),
                    correct: set,
                    per_option: *per_option,
                })
            }
            KindJson::Regex { patterns, depends_on } => TaskKind::Regex(RegexTask {
                patterns: patterns
                    .iter()
                    .map(|p| compile_pattern(id, p))
                    .collect::<Result<_, _>>()?,
                depends_on: depends_on.clone(),
            }),
            KindJson::Proof { puzzle, algorithm } => TaskKind::Proof(ProofTask {
                puzzle: puzzle.to_task().map_err(|e| format!("task {id:?}: {e}"))?,
                algorithm: match algorithm {
                    None => Algorithm::Sequence,
                    Some(a) => a.parse().map_err(|e| format!("task {id:?}: {e}"))?,
                },
            }),
            KindJson::Programming { rules, restrictions } => TaskKind::Programming(ProgrammingTask {
                rules: rules
                    .iter()
                    .map(|r| {
                        Ok(MappingRule {
                            when: predicate(id, &r.when)?,
                            points: r.points.0,
                        })
                    })
                    .collect::<Result<_, String>>()?,
                restrictions: restrictions
                    .as_ref()
                    .map(|r| r.to_spec().map_err(|e| format!("task {id:?}: {e}")))
                    .transpose()?,
            }),
            KindJson::Text => TaskKind::Text,
        };
        let max_points = match (&kind, self.max_points) {
            (_, Some(m)) => m.0,
            (TaskKind::Proof(p), None) => p.puzzle.max_points(),
            (_, None) => return Err(format!("task {id:?}: missing max_points")),
        };
        Ok(Task {
            id: self.id.clone(),
            max_points,
            kind,
        })
    }
}

impl ManifestJson {
    pub fn to_exam(&self) -> Result<Exam, String> {
        let tasks = self.tasks.iter().map(TaskJson::to_task).collect::<Result<_, _>>()?;
        Exam::new(tasks).map_err(|e| e.to_string())
    }
}

/// Reads a manifest. Unreadable or malformed JSON is an input error; a
/// well-formed but inconsistent exam is a configuration error.
pub fn load_manifest(path: &Path) -> Result<Exam> {
    let json: ManifestJson = error::read_json(path)?;
    json.to_exam().map_err(|e| Error::config(path, e))
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SubmissionJson {
    pub student: String,
    #[serde(default)]
    pub answers: BTreeMap<String, AnswerJson>,
}

/// One task's answer. Exactly one kind of answer should be present, plus
/// an optional comment.
#[derive(Debug, Clone, PartialEq, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AnswerJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choice: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub choices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_results: Option<TestResultsJson>,
    /// Path of a test-results JSON file, relative to the submission file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub test_results_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    /// Path of the submitted source file, relative to the submission file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_file: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub comment: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TestResultsJson {
    pub compiled: bool,
    #[serde(default)]
    pub outcomes: BTreeMap<String, OutcomeJson>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeJson {
    Pass,
    Fail,
    Error,
}

impl From<&TestResultsJson> for TestResults {
    fn from(j: &TestResultsJson) -> Self {
        TestResults {
            compiled: j.compiled,
            outcomes: j
                .outcomes
                .iter()
                .map(|(k, o)| {
                    let o = match o {
                        OutcomeJson::Pass => Outcome::Pass,
                        OutcomeJson::Fail => Outcome::Fail,
                        OutcomeJson::Error => Outcome::Error,
                    };
                    (k.clone(), o)
                })
                .collect(),
        }
    }
}

impl AnswerJson {
    fn to_answer(&self, base: &Path) -> Result<Option<Answer>, String> {
        let program = self.test_results.is_some()
            || self.test_results_file.is_some()
            || self.source.is_some()
            || self.source_file.is_some();
        let given = [
            self.choice.is_some(),
            self.choices.is_some(),
            self.text.is_some(),
            self.sequence.is_some(),
            program,
        ]
        .into_iter()
        .filter(|g| *g)
        .count();
        if given > 1 {
            return Err("answer mixes several answer kinds".into());
        }
        if let Some(c) = self.choice {
            return Ok(Some(Answer::Choice(c)));
        }
        if let Some(c) = &self.choices {
            return Ok(Some(Answer::Choices(c.clone())));
        }
        if let Some(t) = &self.text {
            return Ok(Some(Answer::Text(t.clone())));
        }
        if let Some(s) = &self.sequence {
            return Ok(Some(Answer::Sequence(PuzzleAttempt::new(s.iter().cloned()))));
        }
        if !program {
            return Ok(None);
        }
        let results = match (&self.test_results, &self.test_results_file) {
            (Some(_), Some(_)) => return Err("give either `test_results` or `test_results_file`".into()),
            (Some(r), None) => Some(TestResults::from(r)),
            (None, Some(f)) => {
                let r: TestResultsJson = error::read_json(&base.join(f)).map_err(|e| e.to_string())?;
                Some(TestResults::from(&r))
            }
            (None, None) => None,
        };
        let source = match (&self.source, &self.source_file) {
            (Some(_), Some(_)) => return Err("give either `source` or `source_file`".into()),
            (Some(s), None) => Some(s.clone()),
            (None, Some(f)) => Some(error::read_to_string(&base.join(f)).map_err(|e| e.to_string())?),
            (None, None) => None,
        };
        Ok(Some(Answer::Program { results, source }))
    }
}

impl SubmissionJson {
    /// Converts to a submission, resolving referenced files against `base`.
    /// Problems with a single answer stay attached to that answer.
    pub fn to_submission(&self, base: &Path) -> Submission {
        Submission {
            student: self.student.clone(),
            answers: self
                .answers
                .iter()
                .map(|(id, a)| {
                    let answer = a.to_answer(base).unwrap_or_else(|e| Some(Answer::Invalid(e)));
                    (
                        id.clone(),
                        TaskAnswer {
                            answer,
                            comment: a.comment.clone(),
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Loads submissions from a `.json` file (one submission), a `.jsonl` file
/// (one submission per line) or a directory of such files.
pub fn load_submissions(path: &Path) -> Result<Vec<Submission>> {
    let mut out = Vec::new();
    if path.is_dir() {
        let entries = std::fs::read_dir(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut files: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "jsonl")))
            .collect();
        files.sort();
        for f in files {
            load_file(&f, &mut out)?;
        }
    } else {
        load_file(path, &mut out)?;
    }
    let mut seen = BTreeSet::new();
    for s in &out {
        if !seen.insert(s.student.as_str()) {
            return Err(Error::input(
                path,
                format!("student {:?} has more than one submission", s.student),
            ));
        }
    }
    Ok(out)
}

fn load_file(path: &Path, out: &mut Vec<Submission>) -> Result<()> {
    let base = path.parent().unwrap_or(Path::new("."));
    if path.extension().and_then(|e| e.to_str()) == Some("jsonl") {
        let text = error::read_to_string(path)?;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let json: SubmissionJson =
                serde_json::from_str(line).map_err(|e| Error::input(path, format!("line {}: {e}", i + 1)))?;
            out.push(json.to_submission(base));
        }
    } else {
        let json: SubmissionJson = error::read_json(path)?;
        out.push(json.to_submission(base));
    }
    Ok(())
}
