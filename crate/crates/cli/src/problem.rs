//! Problem files and their merge with command-line flags.

use std::path::Path;
use std::sync::Arc;

use delsarte::classes::SymmetricSet;
use delsarte::discretize::TorusSpec;
use delsarte::group::FiniteAbelianGroup;
use delsarte::rational::parse_rational;
use delsarte::solver::{discrete_problem, Arithmetic, MinusSpec, Mode, ProblemSpec, DEFAULT_TOLERANCE};
use delsarte::topology::RealSet1D;
use num_rational::BigRational;
use serde::Deserialize;

use crate::config::ProblemArgs;
use crate::CliError;

/// A number or a string holding one; lets `"torus": 8` and `"torus": "17/2"` both work.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Number(serde_json::Number),
    Text(String),
}

impl Literal {
    fn into_string(self) -> String {
        match self {
            Literal::Number(n) => n.to_string(),
            Literal::Text(s) => s,
        }
    }
}

/// JSON problem file.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: Option<String>,
    pub torus: Option<Literal>,
    pub grid: Option<u64>,
    pub grids: Option<Vec<u64>>,
    pub omega_plus: Option<String>,
    pub omega_minus: Option<String>,
    pub mode: Option<String>,
    pub arithmetic: Option<String>,
    pub tolerance: Option<f64>,
}

impl ProblemFile {
    pub fn parse(path: &Path, text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::ProblemFile {
            path: path.display().to_string(),
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Flags layered over an optional problem file.
#[derive(Debug, Clone, Default)]
pub struct ProblemInput {
    pub group: Option<String>,
    pub torus: Option<String>,
    pub grid: Option<u64>,
    pub grids: Vec<u64>,
    pub omega_plus: Option<String>,
    pub omega_minus: Option<String>,
    pub mode: Option<String>,
    pub arithmetic: Option<String>,
    pub tolerance: Option<f64>,
}

impl ProblemInput {
    pub fn gather(args: &ProblemArgs) -> Result<Self, CliError> {
        let file = match &args.problem {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                ProblemFile::parse(path, &text)?
            }
            None => ProblemFile::default(),
        };
        let group = args.group.clone().or(file.group);
        let torus = args.torus.clone().or(file.torus.map(Literal::into_string));
        if group.is_some() && torus.is_some() {
            return Err(CliError::Field {
                field: "group",
                message: "give either a group or a torus, not both".into(),
            });
        }
        Ok(Self {
            group,
            torus,
            grid: args.grid.or(file.grid),
            grids: file.grids.unwrap_or_default(),
            omega_plus: args.omega_plus.clone().or(file.omega_plus),
            omega_minus: args.omega_minus.clone().or(file.omega_minus),
            mode: args.mode.clone().or(file.mode),
            arithmetic: args.arithmetic.clone().or(file.arithmetic),
            tolerance: args.tol.or(file.tolerance),
        })
    }

    pub fn mode(&self) -> Result<Mode, CliError> {
        self.mode
            .as_deref()
            .map_or(Ok(Mode::General), |s| s.parse().map_err(|e| field("mode", e)))
    }

    pub fn arithmetic(&self) -> Result<Arithmetic, CliError> {
        self.arithmetic
            .as_deref()
            .map_or(Ok(Arithmetic::Float), |s| s.parse().map_err(|e| field("arithmetic", e)))
    }

    pub fn tolerance(&self) -> Result<f64, CliError> {
        match self.tolerance {
            None => Ok(DEFAULT_TOLERANCE),
            Some(t) if t.is_finite() && t >= 0.0 => Ok(t),
            Some(t) => Err(field("tolerance", format!("must be a nonnegative number, got {t}"))),
        }
    }

    pub fn is_torus(&self) -> bool {
        self.torus.is_some()
    }

    pub fn omega_plus(&self) -> Result<&str, CliError> {
        self.omega_plus.as_deref().ok_or(CliError::Missing("omega_plus (--omega-plus)"))
    }

    pub fn real_plus(&self) -> Result<RealSet1D, CliError> {
        self.omega_plus()?.parse().map_err(|e| field("omega_plus", e))
    }

    pub fn real_minus(&self) -> Result<MinusSpec, CliError> {
        self.omega_minus
            .as_deref()
            .map_or(Ok(MinusSpec::Same), |s| s.parse().map_err(|e| field("omega_minus", e)))
    }

    /// Circumference from `torus`, or `4 sup |x|` over `Ω₊` when it is `auto`.
    pub fn circumference(&self, plus: &RealSet1D) -> Result<BigRational, CliError> {
        match self.torus.as_deref().map(str::trim) {
            None | Some("auto") => {
                TorusSpec::default_circumference(plus).map_err(|e| field("torus", e))
            }
            Some(l) => parse_rational(l).map_err(|e| field("torus", e)),
        }
    }

    pub fn torus_spec(&self, plus: &RealSet1D) -> Result<TorusSpec, CliError> {
        let n = self.grid.ok_or(CliError::Missing("grid (--grid)"))?;
        TorusSpec::new(self.circumference(plus)?, n).map_err(|e| field("grid", e))
    }

    pub fn group(&self) -> Result<Arc<FiniteAbelianGroup>, CliError> {
        let g = self.group.as_deref().ok_or(CliError::Missing("group (--group) or torus (--torus)"))?;
        Ok(Arc::new(g.parse().map_err(|e| field("group", e))?))
    }

    /// The problem on its finite group, plus the torus when the real-line path is used.
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        let mode = self.mode()?;
        let (spec, torus) = if self.is_torus() {
            let plus = self.real_plus()?;
            let minus = self.real_minus()?;
            let torus = self.torus_spec(&plus)?;
            let spec = discrete_problem(&plus, &minus, &torus, mode)?;
            (spec, Some(TorusProblem { torus, plus, minus }))
        } else {
            let g = self.group()?;
            let plus = discrete_set(&g, self.omega_plus()?, "omega_plus")?;
            let minus = match self.omega_minus.as_deref().map(str::trim) {
                None | Some("SAME") => plus.clone(),
                Some("FULL") => SymmetricSet::full(g.clone()),
                Some(lit) => discrete_set(&g, lit, "omega_minus")?,
            };
            (ProblemSpec::new(plus, minus, mode)?, None)
        };
        let spec = spec
            .with_arithmetic(self.arithmetic()?)
            .with_tolerance(self.tolerance()?);
        Ok(Resolved { spec, torus })
    }
}

pub struct TorusProblem {
    pub torus: TorusSpec,
    pub plus: RealSet1D,
    pub minus: MinusSpec,
}

pub struct Resolved {
    pub spec: ProblemSpec,
    pub torus: Option<TorusProblem>,
}

fn discrete_set(
    g: &Arc<FiniteAbelianGroup>,
    literal: &str,
    name: &'static str,
) -> Result<SymmetricSet, CliError> {
    let members = g.parse_element_set(literal).map_err(|e| field(name, e))?;
    SymmetricSet::new(g.clone(), &members).map_err(|e| field(name, e))
}

pub(crate) fn field(name: &'static str, e: impl std::fmt::Display) -> CliError {
    CliError::Field {
        field: name,
        message: e.to_string(),
    }
}
