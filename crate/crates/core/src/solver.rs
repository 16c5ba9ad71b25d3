//! Extremal problems for positive definite functions on finite groups.
//!
//! For symmetric `Ω₊ ∋ 0` and `Ω₋` the extremal constant is the largest
//! integral `h Σ f` of a positive definite `f` with `f(0) = 1`, `f ≤ 0` off
//! `Ω₊` and `f ≥ 0` off `Ω₋`. The Turán problem takes `Ω₋ = Ω₊`, the Delsarte
//! problem `Ω₋ = G`.
//!
//! Averaging `f` with `f(-·)` keeps every constraint and the objective, so
//! the programs range over even functions: one variable per negation orbit
//! `{g, -g}`, and one spectral row per character orbit. The spectrum of an
//! even function is real, so positive definiteness is the linear system
//! `f^(χ) ≥ 0`.
//!
//! Two independent programs are available. The primal form has the values of
//! `f` as variables; the Fourier form has the spectrum as variables and
//! rebuilds `f` through the inversion formula. Both solve with the same
//! simplex engine in either `f64` or exact rational arithmetic. In exact mode
//! each cosine `cos(2π t)` enters as an exact rational: the true value when it
//! is rational, otherwise a continued-fraction convergent with 32-bit
//! numerator and denominator. Equal phases always receive the same
//! coefficient, so programs built on a group and on a subgroup share their
//! coefficients exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rayon::prelude::*;
use thiserror::Error;

use crate::classes::{in_class, ClassError, ClassSpec, ClassVariant, ClassVerdict, SymmetricSet};
use crate::discretize::{sample_set, DiscretizeError, TorusSpec};
use crate::group::{FiniteAbelianGroup, GroupError};
use crate::harmonic::{GroupFunction, HarmonicError};
use crate::lp::{Constraint, LinearProgram, LpError, Scalar, Sense};
use crate::topology::RealSet1D;

/// Default tolerance for class membership, duality gap and certificate checks.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Lp(#[from] LpError),
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("omega_plus and omega_minus live on different groups")]
    GroupMismatch,
    #[error("unknown mode {0:?}; expected general, turan or delsarte")]
    UnknownMode(String),
    #[error("unknown arithmetic {0:?}; expected float or exact")]
    UnknownArithmetic(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    General,
    Turan,
    Delsarte,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::Turan => "turan",
            Mode::Delsarte => "delsarte",
        })
    }
}

impl FromStr for Mode {
    type Err = SolverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "general" => Ok(Mode::General),
            "turan" => Ok(Mode::Turan),
            "delsarte" => Ok(Mode::Delsarte),
            _ => Err(SolverError::UnknownMode(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Arithmetic {
    Float,
    ExactRational,
}

impl fmt::Display for Arithmetic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arithmetic::Float => "float",
            Arithmetic::ExactRational => "exact",
        })
    }
}

impl FromStr for Arithmetic {
    type Err = SolverError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "float" => Ok(Arithmetic::Float),
            "exact" | "exact-rational" | "rational" => Ok(Arithmetic::ExactRational),
            _ => Err(SolverError::UnknownArithmetic(s.to_string())),
        }
    }
}

/// An extremal problem instance.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    group: Arc<FiniteAbelianGroup>,
    omega_plus: SymmetricSet,
    omega_minus: SymmetricSet,
    mode: Mode,
    arithmetic: Arithmetic,
    tolerance: f64,
}

impl ProblemSpec {
    /// Turán mode replaces `Ω₋` by `Ω₊`; Delsarte mode replaces it by the
    /// whole group.
    pub fn new(
        omega_plus: SymmetricSet,
        omega_minus: SymmetricSet,
        mode: Mode,
    ) -> Result<Self, SolverError> {
        if omega_plus.group() != omega_minus.group() {
            return Err(SolverError::GroupMismatch);
        }
        let group = omega_plus.group().clone();
        let omega_minus = match mode {
            Mode::General => omega_minus,
            Mode::Turan => omega_plus.clone(),
            Mode::Delsarte => SymmetricSet::full(group.clone()),
        };
        Ok(Self {
            group,
            omega_plus,
            omega_minus,
            mode,
            arithmetic: Arithmetic::Float,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn turan(omega: SymmetricSet) -> Self {
        Self::new(omega.clone(), omega, Mode::Turan).expect("same group")
    }

    pub fn delsarte(omega_plus: SymmetricSet) -> Self {
        let full = SymmetricSet::full(omega_plus.group().clone());
        Self::new(omega_plus, full, Mode::Delsarte).expect("same group")
    }

    pub fn with_arithmetic(mut self, arithmetic: Arithmetic) -> Self {
        self.arithmetic = arithmetic;
        self
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Self {
        self.tolerance = tolerance;
        self
    }

    /// The same problem on the same group with another Haar weight.
    pub fn with_weight(&self, weight: BigRational) -> Result<Self, SolverError> {
        let group = Arc::new(self.group.with_weight(weight)?);
        let plus = SymmetricSet::from_mask(group.clone(), self.omega_plus.mask().to_vec())?;
        let minus = SymmetricSet::from_mask(group, self.omega_minus.mask().to_vec())?;
        Ok(Self::new(plus, minus, self.mode)?
            .with_arithmetic(self.arithmetic)
            .with_tolerance(self.tolerance))
    }

    /// The image problem under an element permutation commuting with negation.
    pub fn map_by(&self, perm: &[usize]) -> Result<Self, SolverError> {
        Ok(Self::new(
            self.omega_plus.map_by(perm)?,
            self.omega_minus.map_by(perm)?,
            self.mode,
        )?
        .with_arithmetic(self.arithmetic)
        .with_tolerance(self.tolerance))
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn omega_plus(&self) -> &SymmetricSet {
        &self.omega_plus
    }

    pub fn omega_minus(&self) -> &SymmetricSet {
        &self.omega_minus
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn arithmetic(&self) -> Arithmetic {
        self.arithmetic
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn class_spec(&self) -> ClassSpec {
        ClassSpec::new(self.omega_plus.clone(), self.omega_minus.clone(), ClassVariant::F)
            .expect("sets share the group")
    }

    /// `0 ∉ Ω₊` leaves no admissible function.
    pub fn is_class_empty(&self) -> bool {
        !self.omega_plus.contains(0)
    }
}

/// Partition of a group into negation orbits `{g, -g}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegationOrbits {
    /// Smallest index in each orbit, increasing.
    pub reps: Vec<usize>,
    /// Orbit number of each element.
    pub orbit_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

pub fn negation_orbits(group: &FiniteAbelianGroup) -> NegationOrbits {
    let n = group.order();
    let mut orbit_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let j = group.neg_idx(i);
        orbit_of[i] = reps.len();
        orbit_of[j] = reps.len();
        reps.push(i);
        sizes.push(if i == j { 1 } else { 2 });
    }
    NegationOrbits {
        reps,
        orbit_of,
        sizes,
    }
}

/// What a constraint row expresses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RowLabel {
    /// `f(0) = 1`, or its Fourier-side equivalent `Σ f^ = h |G|`.
    Normalization,
    /// `f(g) ≤ 0` for `g ∉ Ω₊`.
    NonPositive { element: usize },
    /// `f(g) ≥ 0` for `g ∉ Ω₋`.
    NonNegative { element: usize },
    /// `f(g) = 0` for `g ∉ Ω₊ ∪ Ω₋` (Fourier form only; the primal form
    /// removes these variables).
    Vanishing { element: usize },
    /// `f^(χ) ≥ 0`.
    Spectral { character: usize },
}

impl RowLabel {
    pub fn describe(&self, group: &FiniteAbelianGroup) -> String {
        match *self {
            RowLabel::Normalization => "normalization".to_string(),
            RowLabel::NonPositive { element } => {
                format!("sign f({}) <= 0", group.element_label(element))
            }
            RowLabel::NonNegative { element } => {
                format!("sign f({}) >= 0", group.element_label(element))
            }
            RowLabel::Vanishing { element } => {
                format!("sign f({}) = 0", group.element_label(element))
            }
            RowLabel::Spectral { character } => {
                format!("spectral chi{}", group.element_label(character))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Variables are the values of `f` on negation orbits.
    Primal,
    /// Variables are the values of `f^` on character orbits.
    Fourier,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::Primal => "primal",
            Formulation::Fourier => "fourier",
        })
    }
}

/// A linear program together with the meaning of its rows and variables.
#[derive(Debug, Clone, PartialEq)]
pub struct BuiltProgram<T> {
    pub formulation: Formulation,
    pub lp: LinearProgram<T>,
    pub labels: Vec<RowLabel>,
    /// Orbit number behind each variable (element orbits for the primal
    /// form, character orbits for the Fourier form).
    pub var_orbits: Vec<usize>,
    pub orbits: NegationOrbits,
}

/// Cosine table over orbit representatives: `cos(2π <χ_c, g_o>)`.
struct CosTable<T> {
    values: Vec<T>,
    n: usize,
}

impl<T: Scalar> CosTable<T> {
    fn new(group: &FiniteAbelianGroup, orbits: &NegationOrbits) -> Self {
        let n = orbits.reps.len();
        let mut cache: std::collections::HashMap<crate::group::Turns, T> =
            std::collections::HashMap::new();
        let mut values = Vec::with_capacity(n * n);
        for &c in &orbits.reps {
            for &g in &orbits.reps {
                let t = group.pairing(c, g);
                let v = cache.entry(t).or_insert_with(|| T::cos_turns(t)).clone();
                values.push(v);
            }
        }
        Self { values, n }
    }

    fn get(&self, char_orbit: usize, elem_orbit: usize) -> &T {
        &self.values[char_orbit * self.n + elem_orbit]
    }
}

fn scalar_weight<T: Scalar>(group: &FiniteAbelianGroup) -> T {
    T::from_rational(group.weight())
}

/// The primal program, or `None` when `0 ∉ Ω₊`.
///
/// Variables are `f` on the negation orbits inside `Ω₊ ∪ Ω₋`, boxed in
/// `[-1, 1]`, except `f(0)` whose box is `[1, 1]`; `f` vanishes elsewhere.
/// Rows: `f(0) = 1` (kept so the certificate names it), the sign rows, and
/// `h Σ_o |o| cos(2π <χ, o>) f(o) ≥ 0` for each character orbit. The
/// objective is `h Σ_o |o| f(o)`.
pub fn build_primal<T: Scalar>(spec: &ProblemSpec) -> Option<BuiltProgram<T>> {
    if spec.is_class_empty() {
        return None;
    }
    let group = spec.group();
    let orbits = negation_orbits(group);
    let table = CosTable::<T>::new(group, &orbits);
    let h = scalar_weight::<T>(group);
    let plus = spec.omega_plus();
    let minus = spec.omega_minus();

    let var_orbits: Vec<usize> = (0..orbits.reps.len())
        .filter(|&o| plus.contains(orbits.reps[o]) || minus.contains(orbits.reps[o]))
        .collect();
    let nv = var_orbits.len();
    let mut lp = LinearProgram::new(nv, true);
    let mut labels = Vec::new();
    for (v, &o) in var_orbits.iter().enumerate() {
        lp.objective[v] = h.mul(&T::from_i64(orbits.sizes[o] as i64));
        lp.lower[v] = T::one().neg();
        lp.upper[v] = T::one();
    }
    // orbit 0 is {0}, and 0 ∈ Ω₊ puts it first among the variables; the
    // pinned box makes f(0) exactly 1 in floating point too
    lp.lower[0] = T::one();
    lp.constraints.push(Constraint {
        coeffs: vec![(0, T::one())],
        sense: Sense::Eq,
        rhs: T::one(),
    });
    labels.push(RowLabel::Normalization);
    for (v, &o) in var_orbits.iter().enumerate() {
        let rep = orbits.reps[o];
        if !plus.contains(rep) {
            lp.constraints.push(Constraint {
                coeffs: vec![(v, T::one())],
                sense: Sense::Le,
                rhs: T::zero(),
            });
            labels.push(RowLabel::NonPositive { element: rep });
        } else if !minus.contains(rep) {
            lp.constraints.push(Constraint {
                coeffs: vec![(v, T::one())],
                sense: Sense::Ge,
                rhs: T::zero(),
            });
            labels.push(RowLabel::NonNegative { element: rep });
        }
    }
    for c in 0..orbits.reps.len() {
        let coeffs = var_orbits
            .iter()
            .enumerate()
            .map(|(v, &o)| {
                let k = h.mul(&T::from_i64(orbits.sizes[o] as i64));
                (v, k.mul(table.get(c, o)))
            })
            .filter(|(_, a)| !a.is_exact_zero())
            .collect();
        lp.constraints.push(Constraint {
            coeffs,
            sense: Sense::Ge,
            rhs: T::zero(),
        });
        labels.push(RowLabel::Spectral {
            character: orbits.reps[c],
        });
    }
    Some(BuiltProgram {
        formulation: Formulation::Primal,
        lp,
        labels,
        var_orbits,
        orbits,
    })
}

/// The Fourier-side program, or `None` when `0 ∉ Ω₊`.
///
/// Variables are `f^` on the character orbits, in `[0, h|G| / |orbit|]`.
/// Rows: `Σ_c |c| f^(c) = h |G|` (which is `f(0) = 1`), and sign rows on
/// `f(g) = (1 / (h|G|)) Σ_c |c| cos(2π <c, g>) f^(c)`. The objective is
/// `f^(0)`.
pub fn build_fourier_form<T: Scalar>(spec: &ProblemSpec) -> Option<BuiltProgram<T>> {
    if spec.is_class_empty() {
        return None;
    }
    let group = spec.group();
    let orbits = negation_orbits(group);
    let table = CosTable::<T>::new(group, &orbits);
    let h = scalar_weight::<T>(group);
    let total = h.mul(&T::from_i64(group.order() as i64));
    let plus = spec.omega_plus();
    let minus = spec.omega_minus();
    let nv = orbits.reps.len();

    let mut lp = LinearProgram::new(nv, true);
    lp.objective[0] = T::one();
    for c in 0..nv {
        lp.upper[c] = total.div(&T::from_i64(orbits.sizes[c] as i64));
    }
    let mut labels = vec![RowLabel::Normalization];
    lp.constraints.push(Constraint {
        coeffs: (0..nv)
            .map(|c| (c, T::from_i64(orbits.sizes[c] as i64)))
            .collect(),
        sense: Sense::Eq,
        rhs: total.clone(),
    });
    for (o, &rep) in orbits.reps.iter().enumerate() {
        let (sense, label) = match (plus.contains(rep), minus.contains(rep)) {
            (true, true) => continue,
            (false, true) => (Sense::Le, RowLabel::NonPositive { element: rep }),
            (true, false) => (Sense::Ge, RowLabel::NonNegative { element: rep }),
            (false, false) => (Sense::Eq, RowLabel::Vanishing { element: rep }),
        };
        let coeffs = (0..nv)
            .map(|c| {
                let k = T::from_i64(orbits.sizes[c] as i64).div(&total);
                (c, k.mul(table.get(c, o)))
            })
            .filter(|(_, a)| !a.is_exact_zero())
            .collect();
        lp.constraints.push(Constraint {
            coeffs,
            sense,
            rhs: T::zero(),
        });
        labels.push(label);
    }
    Some(BuiltProgram {
        formulation: Formulation::Fourier,
        lp,
        labels,
        var_orbits: (0..nv).collect(),
        orbits,
    })
}

impl<T: Scalar> BuiltProgram<T> {
    /// The even function on the whole group described by a point of this program.
    pub fn function_values(&self, group: &FiniteAbelianGroup, x: &[T]) -> Vec<T> {
        match self.formulation {
            Formulation::Primal => {
                let mut per_orbit = vec![T::zero(); self.orbits.reps.len()];
                for (v, &o) in self.var_orbits.iter().enumerate() {
                    per_orbit[o] = x[v].clone();
                }
                self.orbits
                    .orbit_of
                    .iter()
                    .map(|&o| per_orbit[o].clone())
                    .collect()
            }
            Formulation::Fourier => {
                let table = CosTable::<T>::new(group, &self.orbits);
                let total =
                    scalar_weight::<T>(group).mul(&T::from_i64(group.order() as i64));
                let per_orbit: Vec<T> = (0..self.orbits.reps.len())
                    .map(|o| {
                        let mut acc = T::zero();
                        for (c, y) in x.iter().enumerate() {
                            if y.is_exact_zero() {
                                continue;
                            }
                            let k = T::from_i64(self.orbits.sizes[c] as i64);
                            acc = acc.add(&k.mul(table.get(c, o)).mul(y));
                        }
                        acc.div(&total)
                    })
                    .collect();
                self.orbits
                    .orbit_of
                    .iter()
                    .map(|&o| per_orbit[o].clone())
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Optimal,
    ClassEmpty,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Optimal => "optimal",
            Status::ClassEmpty => "class_empty",
        })
    }
}

/// Row multipliers of the solved program, maximization sign convention.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub labels: Vec<RowLabel>,
    pub duals: Vec<f64>,
    pub exact_duals: Option<Vec<BigRational>>,
}

impl Certificate {
    /// Multiply one multiplier by `factor` (in both arithmetics).
    pub fn scale_dual(&mut self, row: usize, factor: f64) {
        self.duals[row] *= factor;
        if let Some(exact) = &mut self.exact_duals {
            exact[row] = &exact[row] * crate::rational::rational_from_f64(factor);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub iterations: usize,
    pub pivots: usize,
    pub variables: usize,
    pub rows: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum ProgramRecord {
    Float(BuiltProgram<f64>, Vec<f64>),
    Exact(BuiltProgram<BigRational>, Vec<BigRational>),
}

/// A solved extremal problem.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub status: Status,
    pub formulation: Formulation,
    pub arithmetic: Arithmetic,
    pub tolerance: f64,
    /// The extremal constant in Haar units; 0 for an empty class.
    pub value: f64,
    pub exact_value: Option<BigRational>,
    pub extremal_function: Option<GroupFunction>,
    pub exact_function: Option<Vec<BigRational>>,
    pub certificate: Option<Certificate>,
    /// `|primal objective - dual objective|`.
    pub gap: f64,
    pub class_check: Option<ClassVerdict>,
    pub certificate_check: CertificateVerdict,
    pub stats: SolveStats,
    group: Arc<FiniteAbelianGroup>,
    record: Option<ProgramRecord>,
}

impl Solution {
    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    fn class_empty(spec: &ProblemSpec, formulation: Formulation) -> Self {
        Solution {
            status: Status::ClassEmpty,
            formulation,
            arithmetic: spec.arithmetic(),
            tolerance: spec.tolerance(),
            value: 0.0,
            exact_value: match spec.arithmetic() {
                Arithmetic::ExactRational => Some(crate::rational::integer(0)),
                Arithmetic::Float => None,
            },
            extremal_function: None,
            exact_function: None,
            certificate: None,
            gap: 0.0,
            class_check: None,
            certificate_check: CertificateVerdict::vacuous(),
            stats: SolveStats::default(),
            group: spec.group().clone(),
            record: None,
        }
    }

    /// Re-run the certificate check against the current multipliers.
    pub fn recheck_certificate(&self) -> CertificateVerdict {
        verify_certificate(self)
    }
}

/// Solve with the primal program.
pub fn solve(spec: &ProblemSpec) -> Result<Solution, SolverError> {
    solve_with(spec, Formulation::Primal)
}

pub fn solve_with(spec: &ProblemSpec, formulation: Formulation) -> Result<Solution, SolverError> {
    match spec.arithmetic() {
        Arithmetic::Float => solve_in::<f64>(spec, formulation),
        Arithmetic::ExactRational => solve_in::<BigRational>(spec, formulation),
    }
}

trait Record: Scalar {
    fn record(built: BuiltProgram<Self>, x: Vec<Self>) -> ProgramRecord;
}

impl Record for f64 {
    fn record(built: BuiltProgram<Self>, x: Vec<Self>) -> ProgramRecord {
        ProgramRecord::Float(built, x)
    }
}

impl Record for BigRational {
    fn record(built: BuiltProgram<Self>, x: Vec<Self>) -> ProgramRecord {
        ProgramRecord::Exact(built, x)
    }
}

fn solve_in<T: Record>(spec: &ProblemSpec, formulation: Formulation) -> Result<Solution, SolverError> {
    let built = match formulation {
        Formulation::Primal => build_primal::<T>(spec),
        Formulation::Fourier => build_fourier_form::<T>(spec),
    };
    let Some(built) = built else {
        return Ok(Solution::class_empty(spec, formulation));
    };
    let group = spec.group().clone();
    let out = built.lp.solve()?;
    let exact_values = built.function_values(&group, &out.x);
    let values: Vec<f64> = exact_values.iter().map(Scalar::to_f64).collect();
    let function = GroupFunction::new(group.clone(), values)?;
    let value = out.objective.to_f64();
    let dual_objective = built.lp.dual_objective(&out.row_duals).to_f64();
    let certificate = Certificate {
        labels: built.labels.clone(),
        duals: out.row_duals.iter().map(Scalar::to_f64).collect(),
        exact_duals: T::EXACT.then(|| out.row_duals.iter().map(Scalar::to_rational).collect()),
    };
    let stats = SolveStats {
        iterations: out.iterations,
        pivots: out.pivots,
        variables: built.lp.num_vars(),
        rows: built.lp.constraints.len(),
    };
    let class_check = in_class(&function, &spec.class_spec(), spec.tolerance());
    let mut sol = Solution {
        status: Status::Optimal,
        formulation,
        arithmetic: spec.arithmetic(),
        tolerance: spec.tolerance(),
        value,
        exact_value: T::EXACT.then(|| out.objective.to_rational()),
        extremal_function: Some(function),
        exact_function: T::EXACT.then(|| exact_values.iter().map(Scalar::to_rational).collect()),
        certificate: Some(certificate),
        gap: (value - dual_objective).abs(),
        class_check: Some(class_check),
        certificate_check: CertificateVerdict::vacuous(),
        stats,
        group,
        record: Some(T::record(built, out.x)),
    };
    sol.certificate_check = verify_certificate(&sol);
    Ok(sol)
}

/// A failed optimality condition.
#[derive(Debug, Clone, PartialEq)]
pub enum CertificateViolation {
    /// Multiplier has the wrong sign for its row.
    DualSign { row: usize, label: RowLabel, dual: f64 },
    /// The primal point violates a row.
    PrimalRow { row: usize, label: RowLabel, residual: f64 },
    /// Reduced cost pushes a variable away from where it sits; `row` is the
    /// row contributing most to that reduced cost.
    Stationarity {
        variable: usize,
        reduced_cost: f64,
        row: usize,
        label: RowLabel,
    },
    /// Nonzero multiplier on an inactive row.
    ComplementarySlackness { row: usize, label: RowLabel, slack: f64, dual: f64 },
    /// Primal and dual objectives differ.
    Gap { primal: f64, dual: f64 },
}

impl CertificateViolation {
    pub fn row(&self) -> Option<(usize, RowLabel)> {
        match *self {
            Self::DualSign { row, label, .. }
            | Self::PrimalRow { row, label, .. }
            | Self::Stationarity { row, label, .. }
            | Self::ComplementarySlackness { row, label, .. } => Some((row, label)),
            Self::Gap { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertificateVerdict {
    pub passed: bool,
    pub gap: f64,
    pub dual_objective: f64,
    pub violations: Vec<CertificateViolation>,
}

impl CertificateVerdict {
    fn vacuous() -> Self {
        Self {
            passed: true,
            gap: 0.0,
            dual_objective: 0.0,
            violations: Vec::new(),
        }
    }
}

/// Check dual sign feasibility, primal feasibility, stationarity against the
/// variable boxes, complementary slackness and the duality gap. Exact
/// solutions are checked exactly; float solutions at the solution's
/// tolerance scaled by `max(1, |value|)`.
pub fn verify_certificate(sol: &Solution) -> CertificateVerdict {
    let (Some(record), Some(cert)) = (&sol.record, &sol.certificate) else {
        return CertificateVerdict::vacuous();
    };
    let tol = sol.tolerance * sol.value.abs().max(1.0);
    match record {
        ProgramRecord::Float(built, x) => verify_lp(&built.lp, &built.labels, x, &cert.duals, tol),
        ProgramRecord::Exact(built, x) => {
            let y = cert
                .exact_duals
                .clone()
                .unwrap_or_else(|| cert.duals.iter().map(|d| crate::rational::rational_from_f64(*d)).collect());
            verify_lp(&built.lp, &built.labels, x, &y, tol)
        }
    }
}

fn verify_lp<T: Scalar>(
    lp: &LinearProgram<T>,
    labels: &[RowLabel],
    x: &[T],
    y: &[T],
    tol: f64,
) -> CertificateVerdict {
    let pos = |v: &T| if T::EXACT { v.is_pos() } else { v.to_f64() > tol };
    let neg = |v: &T| if T::EXACT { v.is_neg() } else { v.to_f64() < -tol };
    let nonzero = |v: &T| pos(v) || neg(v);
    let mut violations = Vec::new();

    for (i, (c, yi)) in lp.constraints.iter().zip(y).enumerate() {
        let bad_sign = match c.sense {
            Sense::Le => neg(yi),
            Sense::Ge => pos(yi),
            Sense::Eq => false,
        };
        if bad_sign {
            violations.push(CertificateViolation::DualSign {
                row: i,
                label: labels[i],
                dual: yi.to_f64(),
            });
        }
        let slack = c.rhs.sub(&c.activity(x));
        let infeasible = match c.sense {
            Sense::Le => neg(&slack),
            Sense::Ge => pos(&slack),
            Sense::Eq => nonzero(&slack),
        };
        if infeasible {
            violations.push(CertificateViolation::PrimalRow {
                row: i,
                label: labels[i],
                residual: slack.to_f64(),
            });
        }
        if nonzero(yi) && nonzero(&slack) {
            violations.push(CertificateViolation::ComplementarySlackness {
                row: i,
                label: labels[i],
                slack: slack.to_f64(),
                dual: yi.to_f64(),
            });
        }
    }

    let d = lp.reduced_costs(y);
    for (j, dj) in d.iter().enumerate() {
        let at_upper = !nonzero(&lp.upper[j].sub(&x[j]));
        let at_lower = !nonzero(&x[j].sub(&lp.lower[j]));
        let wrong = (pos(dj) && !at_upper) || (neg(dj) && !at_lower);
        if wrong {
            let (row, _) = lp
                .constraints
                .iter()
                .enumerate()
                .filter_map(|(i, c)| {
                    c.coeffs
                        .iter()
                        .find(|(k, _)| *k == j)
                        .map(|(_, a)| (i, a.mul(&y[i]).abs().to_f64()))
                })
                .fold((0, -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            violations.push(CertificateViolation::Stationarity {
                variable: j,
                reduced_cost: dj.to_f64(),
                row,
                label: labels[row],
            });
        }
    }

    let mut primal = lp.objective_value(x);
    if !lp.maximize {
        primal = primal.neg();
    }
    let dual = lp.dual_objective(y);
    let gap_t = primal.sub(&dual);
    if nonzero(&gap_t) {
        violations.push(CertificateViolation::Gap {
            primal: primal.to_f64(),
            dual: dual.to_f64(),
        });
    }
    CertificateVerdict {
        passed: violations.is_empty(),
        gap: gap_t.to_f64().abs(),
        dual_objective: dual.to_f64(),
        violations,
    }
}

/// `Ω₋` for a sweep: an explicit set, the whole torus, or `Ω₊` itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinusSpec {
    Set(RealSet1D),
    Full,
    Same,
}

impl FromStr for MinusSpec {
    type Err = crate::topology::TopologyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "FULL" => Ok(MinusSpec::Full),
            "SAME" => Ok(MinusSpec::Same),
            other => Ok(MinusSpec::Set(other.parse()?)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub circumference: BigRational,
    pub grids: Vec<u64>,
    pub mode: Mode,
    pub arithmetic: Arithmetic,
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub grid: u64,
    pub step: BigRational,
    pub plus_size: usize,
    pub status: Status,
    pub value: f64,
    pub exact_value: Option<BigRational>,
    pub gap: f64,
    pub runtime: Duration,
    pub solution: Solution,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub boundary_coherent: bool,
    /// Set when `Ω₊` is not boundary-coherent: the grid values then model the
    /// integrally positive definite relaxation.
    pub warning: Option<String>,
}

impl SweepTable {
    /// Columns `N,h,size,value,gap[,runtime_s],warning`, one row per grid in
    /// input order. Runtime is opt-in so that the default output is
    /// reproducible byte for byte.
    pub fn to_csv(&self, with_runtime: bool) -> String {
        let mut out = String::from("N,h,size,value,gap");
        if with_runtime {
            out.push_str(",runtime_s");
        }
        out.push_str(",warning\n");
        let flag = if self.boundary_coherent { "" } else { "not_boundary_coherent" };
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{}",
                r.grid,
                crate::format::sig12(crate::rational::rational_to_f64(&r.step)),
                r.plus_size,
                crate::format::sig12(r.value),
                crate::format::sig12(r.gap)
            ));
            if with_runtime {
                out.push_str(&format!(",{:.6}", r.runtime.as_secs_f64()));
            }
            out.push_str(&format!(",{flag}\n"));
        }
        out
    }
}

/// The discrete problem for real sets on one grid.
pub fn discrete_problem(
    plus: &RealSet1D,
    minus: &MinusSpec,
    torus: &TorusSpec,
    mode: Mode,
) -> Result<ProblemSpec, SolverError> {
    let p = sample_set(plus, torus)?.to_symmetric_set();
    let m = match minus {
        MinusSpec::Set(s) => sample_set(s, torus)?.to_symmetric_set(),
        MinusSpec::Full => SymmetricSet::full(p.group().clone()),
        MinusSpec::Same => p.clone(),
    };
    ProblemSpec::new(p, m, mode)
}

/// Solve the discretization on every grid, in parallel; rows keep the order
/// of `config.grids`.
pub fn sweep(
    plus: &RealSet1D,
    minus: &MinusSpec,
    config: &SweepConfig,
) -> Result<SweepTable, SolverError> {
    let boundary_coherent = plus.is_boundary_coherent().coherent;
    let rows = config
        .grids
        .par_iter()
        .map(|&n| {
            let torus = TorusSpec::new(config.circumference.clone(), n)?;
            let spec = discrete_problem(plus, minus, &torus, config.mode)?
                .with_arithmetic(config.arithmetic)
                .with_tolerance(config.tolerance);
            let start = Instant::now();
            let solution = solve(&spec)?;
            Ok(SweepRow {
                grid: n,
                step: torus.step(),
                plus_size: spec.omega_plus().len(),
                status: solution.status,
                value: solution.value,
                exact_value: solution.exact_value.clone(),
                gap: solution.gap,
                runtime: start.elapsed(),
                solution,
            })
        })
        .collect::<Result<Vec<_>, SolverError>>()?;
    let warning = (!boundary_coherent).then(|| {
        format!(
            "omega_plus {plus} is not boundary-coherent; grid values model the integrally positive definite relaxation"
        )
    });
    Ok(SweepTable {
        rows,
        boundary_coherent,
        warning,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn cyc(n: u64) -> Arc<FiniteAbelianGroup> {
        Arc::new(FiniteAbelianGroup::cyclic(n).unwrap())
    }

    fn set(g: &Arc<FiniteAbelianGroup>, m: &[usize]) -> SymmetricSet {
        SymmetricSet::new(g.clone(), m).unwrap()
    }

    #[test]
    fn orbit_counts() {
        let o = negation_orbits(&cyc(8));
        assert_eq!(o.reps, vec![0, 1, 2, 3, 4]);
        assert_eq!(o.sizes, vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn primal_shape_for_interval_on_z8() {
        let g = cyc(8);
        let spec = ProblemSpec::turan(set(&g, &[0, 1, 7]));
        let b = build_primal::<f64>(&spec).unwrap();
        assert_eq!(b.lp.num_vars(), 2);
        let spectral = b
            .labels
            .iter()
            .filter(|l| matches!(l, RowLabel::Spectral { .. }))
            .count();
        assert_eq!(spectral, 5);
    }

    #[test]
    fn turan_interval_on_z8_is_the_triangle() {
        let g = cyc(8);
        for arithmetic in [Arithmetic::Float, Arithmetic::ExactRational] {
            let spec = ProblemSpec::turan(set(&g, &[0, 1, 7])).with_arithmetic(arithmetic);
            let sol = solve(&spec).unwrap();
            assert_eq!(sol.status, Status::Optimal);
            assert!((sol.value - 2.0).abs() < 1e-12);
            let f = sol.extremal_function.as_ref().unwrap();
            let tri = [1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5];
            for (a, b) in f.values().iter().zip(tri) {
                assert!((a - b).abs() < 1e-12);
            }
            assert!(sol.certificate_check.passed, "{:?}", sol.certificate_check);
            assert!(sol.class_check.as_ref().unwrap().member);
            let fourier = solve_with(&spec, Formulation::Fourier).unwrap();
            assert!((fourier.value - 2.0).abs() < 1e-12);
            assert!(fourier.certificate_check.passed, "{:?}", fourier.certificate_check);
        }
        let exact = solve(
            &ProblemSpec::turan(set(&g, &[0, 1, 7])).with_arithmetic(Arithmetic::ExactRational),
        )
        .unwrap();
        assert_eq!(exact.exact_value, Some(integer(2)));
    }

    #[test]
    fn forced_delta() {
        let g = cyc(6);
        let spec = ProblemSpec::new(set(&g, &[0]), SymmetricSet::empty(g.clone()), Mode::General)
            .unwrap();
        let sol = solve(&spec).unwrap();
        assert!((sol.value - 1.0).abs() < 1e-12);
        assert_eq!(sol.extremal_function.unwrap(), GroupFunction::delta(g));
    }

    #[test]
    fn whole_group_gives_constant_one() {
        let g = cyc(6);
        let spec = ProblemSpec::turan(SymmetricSet::full(g));
        for form in [Formulation::Primal, Formulation::Fourier] {
            let sol = solve_with(&spec, form).unwrap();
            assert!((sol.value - 6.0).abs() < 1e-12);
        }
    }

    #[test]
    fn class_empty_convention() {
        let g = cyc(8);
        let spec = ProblemSpec::turan(set(&g, &[1, 7]));
        let sol = solve(&spec).unwrap();
        assert_eq!(sol.status, Status::ClassEmpty);
        assert_eq!(sol.value, 0.0);
        assert!(sol.certificate_check.passed);
    }

    #[test]
    fn delsarte_dominates_turan() {
        let g = cyc(8);
        let t = solve(&ProblemSpec::turan(set(&g, &[0, 1, 7]))).unwrap();
        let d = solve(&ProblemSpec::delsarte(set(&g, &[0, 1, 7]))).unwrap();
        assert!(d.value >= 2.0 - 1e-12);
        assert!(d.value >= t.value - 1e-12);
    }

    #[test]
    fn doubled_multiplier_is_caught() {
        let g = cyc(8);
        let mut sol = solve(&ProblemSpec::turan(set(&g, &[0, 1, 7]))).unwrap();
        let cert = sol.certificate.as_mut().unwrap();
        let row = (0..cert.duals.len())
            .max_by(|&a, &b| cert.duals[a].abs().total_cmp(&cert.duals[b].abs()))
            .unwrap();
        assert!(cert.duals[row] != 0.0);
        cert.scale_dual(row, 2.0);
        let verdict = sol.recheck_certificate();
        assert!(!verdict.passed);
        assert!(verdict.violations.iter().any(|v| v.row().is_some()));
    }

    #[test]
    fn z12_cross_formulation() {
        let g = cyc(12);
        let spec = ProblemSpec::turan(set(&g, &[0, 1, 2, 10, 11]));
        let p = solve(&spec).unwrap();
        let f = solve_with(&spec, Formulation::Fourier).unwrap();
        assert!((p.value - f.value).abs() <= 1e-8 * p.value);
    }

    #[test]
    fn sweep_orders_rows_by_input() {
        let plus: RealSet1D = "[-1,1]".parse().unwrap();
        let cfg = SweepConfig {
            circumference: integer(8),
            grids: vec![64, 32],
            mode: Mode::Turan,
            arithmetic: Arithmetic::Float,
            tolerance: DEFAULT_TOLERANCE,
        };
        let table = sweep(&plus, &MinusSpec::Same, &cfg).unwrap();
        assert_eq!(table.rows[0].grid, 64);
        assert_eq!(table.rows[1].grid, 32);
        assert!(table.warning.is_none());
        assert!(table.to_csv(false).starts_with("N,h,size,value,gap,warning\n64,0.125,17,"));
    }
}
