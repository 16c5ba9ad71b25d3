//! Text, JSON and CSV renderings of library results.

use std::fmt::Write as _;
use std::path::Path;

use delsarte::discretize::TorusSpec;
use delsarte::format::sig12;
use delsarte::harmonic::GroupFunction;
use delsarte::rational::rational_to_f64;
use delsarte::reduction::{Comparison, ReductionReport};
use delsarte::solver::{ProblemSpec, Solution, SweepTable};
use serde::Serialize;

use crate::CliError;

/// Round to the 12 significant digits used everywhere else, so JSON numbers
/// match the CSV dumps.
fn r12(x: f64) -> f64 {
    sig12(x).parse().unwrap_or(x)
}

#[derive(Debug, Serialize)]
pub struct Summary {
    pub status: String,
    pub value: f64,
    pub gap: f64,
    pub iterations: usize,
    pub pivots: usize,
    pub variables: usize,
    pub rows: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<String>,
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub torus: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid: Option<u64>,
    pub mode: String,
    pub arithmetic: String,
    pub formulation: String,
    pub omega_plus: Vec<String>,
    pub omega_minus: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub in_class: Option<bool>,
    pub certificate_passed: bool,
}

impl Summary {
    pub fn new(spec: &ProblemSpec, sol: &Solution, torus: Option<&TorusSpec>) -> Self {
        let g = spec.group();
        let labels = |s: &delsarte::classes::SymmetricSet| -> Vec<String> {
            let mut members = s.members();
            members.sort_by_key(|&i| g.signed_coords(i));
            members.into_iter().map(|i| g.element_label(i)).collect()
        };
        Summary {
            status: sol.status.to_string(),
            value: r12(sol.value),
            gap: r12(sol.gap),
            iterations: sol.stats.iterations,
            pivots: sol.stats.pivots,
            variables: sol.stats.variables,
            rows: sol.stats.rows,
            exact_value: sol.exact_value.as_ref().map(ToString::to_string),
            group: g.to_string(),
            torus: torus.map(|t| t.circumference().to_string()),
            grid: torus.map(TorusSpec::grid),
            mode: spec.mode().to_string(),
            arithmetic: spec.arithmetic().to_string(),
            formulation: sol.formulation.to_string(),
            omega_plus: labels(spec.omega_plus()),
            omega_minus: labels(spec.omega_minus()),
            in_class: sol.class_check.as_ref().map(|v| v.member),
            certificate_passed: sol.certificate_check.passed,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct SweepSummaryRow {
    pub grid: u64,
    pub step: String,
    pub size: usize,
    pub status: String,
    pub value: f64,
    pub gap: f64,
    pub iterations: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value: Option<String>,
}

#[derive(Debug, Serialize)]
pub struct SweepSummary {
    pub omega_plus: String,
    pub circumference: String,
    pub mode: String,
    pub arithmetic: String,
    pub boundary_coherent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
    pub rows: Vec<SweepSummaryRow>,
}

impl SweepSummary {
    pub fn new(
        plus: &delsarte::topology::RealSet1D,
        circumference: &num_rational::BigRational,
        table: &SweepTable,
        mode: delsarte::solver::Mode,
        arithmetic: delsarte::solver::Arithmetic,
    ) -> Self {
        SweepSummary {
            omega_plus: plus.to_string(),
            circumference: circumference.to_string(),
            mode: mode.to_string(),
            arithmetic: arithmetic.to_string(),
            boundary_coherent: table.boundary_coherent,
            warning: table.warning.clone(),
            rows: table
                .rows
                .iter()
                .map(|r| SweepSummaryRow {
                    grid: r.grid,
                    step: r.step.to_string(),
                    size: r.plus_size,
                    status: r.status.to_string(),
                    value: r12(r.value),
                    gap: r12(r.gap),
                    iterations: r.solution.stats.iterations,
                    exact_value: r.exact_value.as_ref().map(ToString::to_string),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ComparisonJson {
    pub variant: String,
    pub subgroup: String,
    pub subgroup_order: usize,
    pub value_h: f64,
    pub difference: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value_h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exactly_equal: Option<bool>,
}

impl From<&Comparison> for ComparisonJson {
    fn from(c: &Comparison) -> Self {
        ComparisonJson {
            variant: c.variant.name().to_string(),
            subgroup: c.subgroup.to_string(),
            subgroup_order: c.subgroup_order,
            value_h: r12(c.value_h),
            difference: r12(c.difference),
            exact_value_h: c.exact_value_h.as_ref().map(ToString::to_string),
            exactly_equal: c.exactly_equal(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReductionJson {
    pub group: String,
    pub value_g: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_value_g: Option<String>,
    pub reductions: Vec<ComparisonJson>,
}

impl From<&ReductionReport> for ReductionJson {
    fn from(r: &ReductionReport) -> Self {
        ReductionJson {
            group: r.solution_g.group().to_string(),
            value_g: r12(r.solution_g.value),
            exact_value_g: r.solution_g.exact_value.as_ref().map(ToString::to_string),
            reductions: vec![(&r.plus_only).into(), (&r.plus_and_minus).into()],
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Plot data: one row per element, ordered by signed coordinates.
///
/// On a torus the coordinate is the real point `j h`; on a cyclic group it is
/// the signed index; product groups get one column per factor.
pub fn figure_csv(f: &GroupFunction, torus: Option<&TorusSpec>) -> String {
    let g = f.group();
    let mut order: Vec<usize> = (0..g.order()).collect();
    order.sort_by_key(|&i| g.signed_coords(i));
    let mut out = String::new();
    if g.rank() == 1 {
        out.push_str("x,value\n");
    } else {
        for k in 0..g.rank() {
            let _ = write!(out, "x{k},");
        }
        out.push_str("value\n");
    }
    for i in order {
        match torus {
            Some(t) => {
                let _ = write!(out, "{},", sig12(rational_to_f64(&t.point(i))));
            }
            None => {
                for c in g.signed_coords(i) {
                    let _ = write!(out, "{c},");
                }
            }
        }
        let _ = writeln!(out, "{}", sig12(f.value(i)));
    }
    out
}

/// Write [`figure_csv`] to `path`; an empty class has no function to plot.
pub fn emit_figure_data(
    function: Option<&GroupFunction>,
    torus: Option<&TorusSpec>,
    path: &Path,
) -> Result<(), CliError> {
    let f = function.ok_or(CliError::NoFunction)?;
    write_file(path, &figure_csv(f, torus))
}

/// Row multipliers with a readable constraint name.
pub fn certificate_csv(sol: &Solution) -> Option<String> {
    let cert = sol.certificate.as_ref()?;
    let g = sol.group();
    let mut out = String::from("row,constraint,multiplier");
    if cert.exact_duals.is_some() {
        out.push_str(",exact_multiplier");
    }
    out.push('\n');
    for (k, (label, y)) in cert.labels.iter().zip(&cert.duals).enumerate() {
        let _ = write!(out, "{k},\"{}\",{}", label.describe(g), sig12(*y));
        if let Some(exact) = &cert.exact_duals {
            let _ = write!(out, ",{}", exact[k]);
        }
        out.push('\n');
    }
    Some(out)
}

/// Exact function values, when the solve was exact.
pub fn exact_function_csv(sol: &Solution) -> Option<String> {
    let values = sol.exact_function.as_ref()?;
    let g = sol.group();
    let mut out = String::from("index");
    for k in 0..g.rank() {
        let _ = write!(out, ",x{k}");
    }
    out.push_str(",value\n");
    for (i, v) in values.iter().enumerate() {
        let _ = write!(out, "{i}");
        for c in g.coords(i) {
            let _ = write!(out, ",{c}");
        }
        let _ = writeln!(out, ",{v}");
    }
    Some(out)
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}
