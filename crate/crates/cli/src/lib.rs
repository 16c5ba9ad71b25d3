//! Command-line front end: parses problem files and literals, calls the
//! library, and renders results as text, JSON and CSV.
//!
//! [`run`] is the whole program minus process plumbing, so tests can drive
//! it in-process with a byte buffer for standard output.

pub mod config;
pub mod problem;
pub mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;
use delsarte::classes::{containment_chain_check, in_class, ClassViolation};
use delsarte::format::sig12;
use delsarte::group::FiniteAbelianGroup;
use delsarte::harmonic::GroupFunction;
use delsarte::reduction::reduce_and_compare;
use delsarte::solver::{solve_with, sweep, Formulation, MinusSpec, Status, SweepConfig};
use delsarte::topology::RealSet1D;
use thiserror::Error;

pub use config::{Command, RunConfig};
pub use problem::{ProblemFile, ProblemInput};
pub use report::{emit_figure_data, figure_csv};

use config::{CheckSetArgs, ClassesArgs, ReduceArgs, SolveArgs, SweepArgs};
use problem::field;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
/// Class empty for `solve` and `reduce`; not a member for `classes`.
pub const EXIT_NEGATIVE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: line {line}, column {column}: {message}")]
    ProblemFile {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {message}")]
    Field { field: &'static str, message: String },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    FunctionFile {
        path: String,
        #[source]
        source: delsarte::harmonic::HarmonicError,
    },
    #[error("no extremal function to write: the class is empty")]
    NoFunction,
    #[error(transparent)]
    Solver(#[from] delsarte::solver::SolverError),
    #[error(transparent)]
    Reduction(#[from] delsarte::reduction::ReductionError),
    #[error(transparent)]
    Class(#[from] delsarte::classes::ClassError),
    #[error("cannot write to standard output: {0}")]
    Stdout(std::io::Error),
}

/// Parse `args` (program name first), run, and report errors on `stderr`.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
            } else {
                let _ = stdout.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match run(&config, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Execute one command. Returns the exit code for a completed run; input
/// problems come back as `Err` and map to exit code 1.
pub fn run(config: &RunConfig, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32, CliError> {
    let out = config.out.as_deref();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.display().to_string(),
            source,
        })?;
    }
    let mut lines = Vec::new();
    let code = match &config.command {
        Command::Solve(a) => cmd_solve(a, out, &mut lines)?,
        Command::Sweep(a) => cmd_sweep(a, out, &mut lines, stderr)?,
        Command::CheckSet(a) => cmd_check_set(a, &mut lines)?,
        Command::Classes(a) => cmd_classes(a, out, &mut lines)?,
        Command::Reduce(a) => cmd_reduce(a, out, &mut lines)?,
    };
    for line in lines {
        writeln!(stdout, "{line}").map_err(CliError::Stdout)?;
    }
    Ok(code)
}

fn artifact(dir: &Path, name: &str) -> PathBuf {
    dir.join(name)
}

fn parse_formulation(s: &str) -> Result<Formulation, CliError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "primal" => Ok(Formulation::Primal),
        "fourier" => Ok(Formulation::Fourier),
        other => Err(field("formulation", format!("unknown formulation {other:?}; expected primal or fourier"))),
    }
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Optimal => EXIT_OK,
        Status::ClassEmpty => EXIT_NEGATIVE,
    }
}

fn cmd_solve(args: &SolveArgs, out: Option<&Path>, lines: &mut Vec<String>) -> Result<i32, CliError> {
    let input = ProblemInput::gather(&args.problem)?;
    let formulation = parse_formulation(&args.formulation)?;
    let resolved = input.resolve()?;
    let spec = &resolved.spec;
    let torus = resolved.torus.as_ref().map(|t| &t.torus);
    let sol = solve_with(spec, formulation)?;
    lines.push(sig12(sol.value));

    if let Some(dir) = out {
        let summary = report::Summary::new(spec, &sol, torus);
        report::write_file(&artifact(dir, "summary.json"), &report::to_json(&summary))?;
        if let Some(f) = &sol.extremal_function {
            report::write_file(&artifact(dir, "function.csv"), &f.to_csv())?;
            report::write_file(&artifact(dir, "spectrum.csv"), &f.spectrum().to_csv())?;
            emit_figure_data(Some(f), torus, &artifact(dir, "figure.csv"))?;
        }
        if let Some(csv) = report::exact_function_csv(&sol) {
            report::write_file(&artifact(dir, "function_exact.csv"), &csv)?;
        }
        if let Some(csv) = report::certificate_csv(&sol) {
            report::write_file(&artifact(dir, "certificate.csv"), &csv)?;
        }
    }
    Ok(status_code(sol.status))
}

fn cmd_sweep(
    args: &SweepArgs,
    out: Option<&Path>,
    lines: &mut Vec<String>,
    stderr: &mut dyn Write,
) -> Result<i32, CliError> {
    let input = ProblemInput::gather(&args.problem)?;
    if input.group.is_some() {
        return Err(field("group", "sweep works on real sets; use --torus"));
    }
    if args.figures && out.is_none() {
        return Err(CliError::Missing("output directory (--out) for --figures"));
    }
    let plus = input.real_plus()?;
    let minus = input.real_minus()?;
    let grids = if !args.grid_list.is_empty() {
        args.grid_list.clone()
    } else if !input.grids.is_empty() {
        input.grids.clone()
    } else {
        input.grid.into_iter().collect()
    };
    if grids.is_empty() {
        return Err(CliError::Missing("grids (--grid-list or --grid)"));
    }
    let config = SweepConfig {
        circumference: input.circumference(&plus)?,
        grids,
        mode: input.mode()?,
        arithmetic: input.arithmetic()?,
        tolerance: input.tolerance()?,
    };
    let table = sweep(&plus, &minus, &config)?;
    if let Some(w) = &table.warning {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let csv = table.to_csv(args.runtime);
    lines.extend(csv.lines().map(str::to_string));

    if let Some(dir) = out {
        report::write_file(&artifact(dir, "sweep.csv"), &csv)?;
        let summary = report::SweepSummary::new(&plus, &config.circumference, &table, config.mode, config.arithmetic);
        report::write_file(&artifact(dir, "summary.json"), &report::to_json(&summary))?;
        if args.figures {
            for row in &table.rows {
                let torus = delsarte::discretize::TorusSpec::new(config.circumference.clone(), row.grid)
                    .map_err(|e| field("grid", e))?;
                if let Some(f) = &row.solution.extremal_function {
                    emit_figure_data(Some(f), Some(&torus), &artifact(dir, &format!("figure_N{}.csv", row.grid)))?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_check_set(args: &CheckSetArgs, lines: &mut Vec<String>) -> Result<i32, CliError> {
    let s: RealSet1D = args.set.parse().map_err(|e| field("set", e))?;
    let verdict = s.is_boundary_coherent();
    let join = |xs: &[num_rational::BigRational]| {
        xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    };
    match &verdict.witness {
        Some(w) => lines.push(format!("boundary_coherent: false, witness: {w}")),
        None => lines.push("boundary_coherent: true".to_string()),
    }
    lines.push(format!("boundary: {}", join(&s.boundary())));
    if !verdict.violations.is_empty() {
        lines.push(format!("violations: {}", join(&verdict.violations)));
    }
    lines.push(format!("symmetric: {}", s.is_symmetric()));
    match s.is_strictly_star_shaped() {
        Ok(b) => lines.push(format!("strictly_star_shaped: {b}")),
        Err(e) => lines.push(format!("strictly_star_shaped: undefined ({e})")),
    }
    lines.push(format!("interior: {}", s.interior()));
    lines.push(format!("closure: {}", s.closure()));
    Ok(EXIT_OK)
}

fn describe_violation(g: &FiniteAbelianGroup, v: &ClassViolation) -> String {
    match v {
        ClassViolation::NotPositiveDefinite { character, value } => format!(
            "(a) not positive definite: spectrum at character {} is {}{}{}i",
            g.element_label(*character),
            sig12(value.re),
            if value.im < 0.0 { "-" } else { "+" },
            sig12(value.im.abs())
        ),
        ClassViolation::Normalization { value } => format!("(b) f(0) = {}, expected 1", sig12(*value)),
        ClassViolation::PositiveOutside { element, value } => format!(
            "(c) f({}) = {} > 0 outside omega_plus",
            g.element_label(*element),
            sig12(*value)
        ),
        ClassViolation::NegativeOutside { element, value } => format!(
            "(c) f({}) = {} < 0 outside omega_minus",
            g.element_label(*element),
            sig12(*value)
        ),
        ClassViolation::GroupMismatch => v.to_string(),
    }
}

fn cmd_classes(args: &ClassesArgs, out: Option<&Path>, lines: &mut Vec<String>) -> Result<i32, CliError> {
    let input = ProblemInput::gather(&args.problem)?;
    let resolved = input.resolve()?;
    let spec = &resolved.spec;
    let g = spec.group().clone();
    let path = args.check.display().to_string();
    let text = std::fs::read_to_string(&args.check).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    let f = GroupFunction::from_csv(g.clone(), &text).map_err(|source| CliError::FunctionFile { path, source })?;
    let verdict = in_class(&f, &spec.class_spec(), spec.tolerance());

    lines.push(format!("member: {}", verdict.member));
    lines.push(format!("variant: {:?}", verdict.variant));
    lines.push(format!("variants_coincide: {}", verdict.variants_coincide));
    for cond in ['a', 'b', 'c'] {
        let first = verdict.violations.iter().find(|v| v.condition() == cond);
        match first {
            None => lines.push(format!("({cond}) ok")),
            Some(v) => lines.push(describe_violation(&g, v)),
        }
    }

    if args.chain {
        let t = resolved
            .torus
            .as_ref()
            .ok_or_else(|| field("chain", "the containment chain needs the torus path (--torus)"))?;
        let minus = match &t.minus {
            MinusSpec::Set(s) => s.clone(),
            MinusSpec::Same => t.plus.clone(),
            MinusSpec::Full => "(-inf,inf)".parse().expect("the real line parses"),
        };
        let chain = containment_chain_check(&t.plus, &minus, &t.torus, std::slice::from_ref(&f), spec.tolerance())?;
        lines.push(format!("chain_monotone: {}", chain.is_monotone()));
        lines.extend(chain.to_lines());
    }

    if let Some(dir) = out {
        let mut text = lines.join("\n");
        text.push('\n');
        report::write_file(&artifact(dir, "classes.txt"), &text)?;
    }
    Ok(if verdict.member { EXIT_OK } else { EXIT_NEGATIVE })
}

fn cmd_reduce(args: &ReduceArgs, out: Option<&Path>, lines: &mut Vec<String>) -> Result<i32, CliError> {
    let input = ProblemInput::gather(&args.problem)?;
    let spec = input.resolve()?.spec;
    if spec.is_class_empty() {
        lines.push("value_G: 0".to_string());
        return Ok(EXIT_NEGATIVE);
    }
    let report = reduce_and_compare(&spec)?;
    let all = report.to_lines();
    if args.compare {
        lines.extend(all);
    } else {
        lines.extend(
            all.into_iter()
                .filter(|l| l.starts_with("value_G") || l.ends_with("value_H") || l.contains(".value_H:")),
        );
    }
    if let Some(dir) = out {
        let json = report::ReductionJson::from(&report);
        report::write_file(&artifact(dir, "reduction.json"), &report::to_json(&json))?;
    }
    Ok(EXIT_OK)
}
