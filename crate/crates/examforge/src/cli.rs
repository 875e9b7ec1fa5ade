//! The `examforge` command line.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use examforge_core::grader::check_restrictions;
use examforge_core::hs::{analyze, parse_subset};
use examforge_core::htrsl::{check_examples, compile_file, parse_htrsl};
use examforge_core::proof::{self, Algorithm};
use serde::Serialize;

use crate::batch::grade_all;
use crate::error::{read_json, read_to_string, Error, Result};
use crate::formats::{self, to_pretty, AttemptJson, ExamplesJson, PuzzleJson, RestrictionJson};

#[derive(Debug, Parser)]
#[command(name = "examforge", version, about = "Grading tools for electronic exams")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile an HTRSL file to one regex per description
    HtrslCompile {
        file: PathBuf,
        /// Print bare patterns, one per line, instead of JSON
        #[arg(long)]
        plain: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Compile an HTRSL file and test each pattern against example answers
    HtrslCheck {
        file: PathBuf,
        /// JSON list of {"positives": [...], "negatives": [...]}, one per description
        #[arg(long, value_name = "FILE")]
        examples: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Report language features and calls of each top-level Haskell binding
    Analyze {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Check a Haskell file against feature and call restrictions
    Restrict {
        file: PathBuf,
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Grade one proof-puzzle attempt
    GradeProof {
        #[arg(long, value_name = "FILE")]
        task: PathBuf,
        #[arg(long, value_name = "FILE")]
        attempt: PathBuf,
        #[arg(long, value_enum, default_value_t = AlgorithmArg::Sequence)]
        algorithm: AlgorithmArg,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Grade submissions against an exam manifest
    GradeExam {
        #[arg(long, value_name = "FILE")]
        manifest: PathBuf,
        /// A submission .json file, a .jsonl batch, or a directory of them
        #[arg(long, value_name = "PATH")]
        submissions: PathBuf,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
        /// Also write a CSV summary
        #[arg(long, value_name = "FILE")]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Legacy,
    Sequence,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Legacy => Algorithm::Legacy,
            AlgorithmArg::Sequence => Algorithm::Sequence,
        }
    }
}

/// What a command produced: its standard output and exit code.
struct Output {
    stdout: String,
    code: u8,
    /// Summary line for stderr, if any.
    note: Option<String>,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            code: 0,
            note: None,
        }
    }
}

/// Runs the tool and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return e.exit_code() as u8;
        }
    };
    let color = match std::env::var("EXAMFORGE_COLOR").as_deref() {
        Err(_) | Ok("auto") => std::io::stderr().is_terminal(),
        Ok("never") => false,
        Ok(other) => {
            let _ = writeln!(
                stderr,
                "examforge: error: EXAMFORGE_COLOR must be auto or never, not {other:?}"
            );
            return 3;
        }
    };
    let (result, out) = dispatch(cli.command);
    let result = result.and_then(|o| {
        match &out {
            Some(path) => std::fs::write(path, &o.stdout).map_err(|source| Error::Io {
                path: path.clone(),
                source,
            })?,
            None => stdout.write_all(o.stdout.as_bytes()).map_err(|source| Error::Io {
                path: "<stdout>".into(),
                source,
            })?,
        }
        Ok(o)
    });
    match result {
        Ok(o) => {
            if let Some(note) = o.note {
                let _ = writeln!(stderr, "examforge: {note}");
            }
            o.code
        }
        Err(e) => {
            let label = if color { "\x1b[31merror\x1b[0m" } else { "error" };
            let _ = writeln!(stderr, "examforge: {label}: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command) -> (Result<Output>, Option<PathBuf>) {
    match command {
        Command::HtrslCompile { file, plain, out } => (htrsl_compile(&file, plain), out),
        Command::HtrslCheck { file, examples, out } => (htrsl_check(&file, &examples), out),
        Command::Analyze { file, out } => (analyze_file(&file), out),
        Command::Restrict { file, spec, out } => (restrict(&file, &spec), out),
        Command::GradeProof {
            task,
            attempt,
            algorithm,
            out,
        } => (grade_proof(&task, &attempt, algorithm.into()), out),
        Command::GradeExam {
            manifest,
            submissions,
            out,
            csv,
        } => (grade_exam(&manifest, &submissions, csv.as_deref()), out),
    }
}

fn compile(path: &Path) -> Result<Vec<examforge_core::htrsl::CompiledRegex>> {
    let source = read_to_string(path)?;
    let file = parse_htrsl(&source).map_err(|e| Error::input(path, e))?;
    compile_file(&file).map_err(|e| Error::input(path, e))
}

fn htrsl_compile(path: &Path, plain: bool) -> Result<Output> {
    let compiled = compile(path)?;
    let stdout = if plain {
        compiled.iter().map(|c| format!("{}\n", c.pattern)).collect()
    } else {
        to_pretty(&formats::compiled_json(&compiled))
    };
    Ok(Output::ok(stdout))
}

fn htrsl_check(path: &Path, examples: &Path) -> Result<Output> {
    let compiled = compile(path)?;
    let sets: ExamplesJson = read_json(examples)?;
    if sets.len() != compiled.len() {
        return Err(Error::input(
            examples,
            format!("{} example sets for {} descriptions", sets.len(), compiled.len()),
        ));
    }
    let mut results = Vec::with_capacity(compiled.len());
    for (regex, set) in compiled.iter().zip(&sets) {
        let report = check_examples(regex, &set.positives, &set.negatives).map_err(|e| Error::input(path, e))?;
        results.push((regex, report));
    }
    let json = formats::check_json(&results);
    let failed = json.results.iter().filter(|r| !r.passed).count();
    Ok(Output {
        stdout: to_pretty(&json),
        code: if json.passed { 0 } else { 1 },
        note: (failed > 0).then(|| format!("{failed} of {} descriptions failed their examples", results.len())),
    })
}

fn analyze_source(path: &Path) -> Result<examforge_core::hs::AnalysisReport> {
    let source = read_to_string(path)?;
    let module = parse_subset(&source).map_err(|e| Error::input(path, e))?;
    Ok(analyze(&module))
}

fn analyze_file(path: &Path) -> Result<Output> {
    Ok(Output::ok(formats::emit_json(&analyze_source(path)?)))
}

fn restrict(path: &Path, spec_path: &Path) -> Result<Output> {
    let json: RestrictionJson = read_json(spec_path)?;
    let spec = json.to_spec().map_err(|e| Error::config(spec_path, e))?;
    let violations = check_restrictions(&analyze_source(path)?, &spec);
    Ok(Output {
        stdout: to_pretty(&formats::violations_json(&violations)),
        code: if violations.is_empty() { 0 } else { 1 },
        note: (!violations.is_empty()).then(|| format!("{} violation(s)", violations.len())),
    })
}

fn grade_proof(task: &Path, attempt: &Path, algorithm: Algorithm) -> Result<Output> {
    let puzzle: PuzzleJson = read_json(task)?;
    let puzzle = puzzle.to_task().map_err(|e| Error::config(task, e))?;
    let a: AttemptJson = read_json(attempt)?;
    let result = proof::grade(&puzzle, &a.to_attempt(), algorithm).map_err(|e| Error::input(attempt, e))?;
    Ok(Output::ok(to_pretty(&formats::grade_json(&result))))
}

#[derive(Serialize)]
struct Reports {
    reports: Vec<formats::ReportJson>,
}

fn grade_exam(manifest: &Path, submissions: &Path, csv: Option<&Path>) -> Result<Output> {
    let exam = formats::load_manifest(manifest)?;
    let subs = formats::load_submissions(submissions)?;
    let reports = grade_all(&exam, &subs);
    if let Some(path) = csv {
        let file = std::fs::File::create(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        formats::write_csv(&reports, file).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    }
    let review: usize = reports.iter().map(|r| r.counts.needs_review).sum();
    Ok(Output {
        stdout: to_pretty(&Reports {
            reports: reports.iter().map(formats::report_json).collect(),
        }),
        code: 0,
        note: Some(format!(
            "graded {} submission(s), {review} answer(s) need review",
            reports.len()
        )),
    })
}
