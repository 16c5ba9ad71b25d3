//! Passing between a finite group and a subgroup.
//!
//! A subgroup `H ≤ G` is presented as a product of cyclic groups of its own,
//! carrying the Haar weight of `G`. Functions move between the two by
//! restriction and by extension with zero. Both operations keep positive
//! definiteness, which is what makes the extremal constant computable on
//! the subgroup generated by the support constraints.
//!
//! On a finite group every subset is open and closed and has empty boundary,
//! so boundary-coherence of `Ω ∩ H` inside `H` holds trivially.

use std::sync::Arc;

use num_rational::BigRational;
use thiserror::Error;

use crate::classes::{ClassError, SymmetricSet};
use crate::group::{subgroup_generated_idx, FiniteAbelianGroup, Subgroup};
use crate::harmonic::{GroupFunction, HarmonicError};
use crate::solver::{solve, Mode, ProblemSpec, Solution, SolverError, Status};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReductionError {
    #[error("function lives on a different group than the embedding expects")]
    EmbeddingMismatch,
    #[error("omega_plus must contain 0")]
    MissingIdentity,
    #[error(transparent)]
    Harmonic(#[from] HarmonicError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A subgroup together with its own coordinates and the maps both ways.
#[derive(Debug, Clone, PartialEq)]
pub struct SubgroupEmbedding {
    parent: Arc<FiniteAbelianGroup>,
    subgroup: Subgroup,
    sub: Arc<FiniteAbelianGroup>,
    to_parent: Vec<usize>,
    from_parent: Vec<Option<usize>>,
    coset_reps: Vec<usize>,
}

impl SubgroupEmbedding {
    pub fn new(parent: Arc<FiniteAbelianGroup>, subgroup: Subgroup) -> Self {
        let (sub, to_parent) = subgroup.decompose();
        let mut from_parent = vec![None; parent.order()];
        for (k, &p) in to_parent.iter().enumerate() {
            from_parent[p] = Some(k);
        }
        let mut covered = vec![false; parent.order()];
        let mut coset_reps = Vec::new();
        for g in 0..parent.order() {
            if covered[g] {
                continue;
            }
            coset_reps.push(g);
            for &m in subgroup.members() {
                covered[parent.add_idx(g, m)] = true;
            }
        }
        Self {
            parent,
            subgroup,
            sub: Arc::new(sub),
            to_parent,
            from_parent,
            coset_reps,
        }
    }

    /// The subgroup generated by `generators`.
    pub fn generated(parent: Arc<FiniteAbelianGroup>, generators: &[usize]) -> Self {
        let subgroup = subgroup_generated_idx(&parent, generators);
        Self::new(parent, subgroup)
    }

    pub fn parent(&self) -> &Arc<FiniteAbelianGroup> {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// `H` as a group in its own right, with the parent's weight.
    pub fn sub_group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.sub
    }

    /// Parent index of each element of `H`.
    pub fn to_parent(&self) -> &[usize] {
        &self.to_parent
    }

    /// Index in `H` of a parent element, if it lies in `H`.
    pub fn from_parent(&self, g: usize) -> Option<usize> {
        self.from_parent.get(g).copied().flatten()
    }

    /// Smallest element of each coset `g + H`.
    pub fn coset_reps(&self) -> &[usize] {
        &self.coset_reps
    }

    /// `Ω ∩ H`, in the coordinates of `H`.
    pub fn restrict_set(&self, s: &SymmetricSet) -> Result<SymmetricSet, ReductionError> {
        if **s.group() != *self.parent {
            return Err(ReductionError::EmbeddingMismatch);
        }
        let mask = self.to_parent.iter().map(|&p| s.contains(p)).collect();
        Ok(SymmetricSet::from_mask(self.sub.clone(), mask)?)
    }

    /// A subset of `H` viewed inside the parent.
    pub fn extend_set(&self, s: &SymmetricSet) -> Result<SymmetricSet, ReductionError> {
        if **s.group() != *self.sub {
            return Err(ReductionError::EmbeddingMismatch);
        }
        let members: Vec<usize> = s.members().iter().map(|&k| self.to_parent[k]).collect();
        Ok(SymmetricSet::new(self.parent.clone(), &members)?)
    }
}

/// `f` on `H`, extended by 0 to the parent group.
pub fn trivial_extension(
    f: &GroupFunction,
    embedding: &SubgroupEmbedding,
) -> Result<GroupFunction, ReductionError> {
    if **f.group() != *embedding.sub {
        return Err(ReductionError::EmbeddingMismatch);
    }
    let mut values = vec![0.0; embedding.parent.order()];
    for (k, &p) in embedding.to_parent.iter().enumerate() {
        values[p] = f.value(k);
    }
    Ok(GroupFunction::new(embedding.parent.clone(), values)?)
}

/// `f` restricted to `H`, in the coordinates of `H`.
pub fn restrict(
    f: &GroupFunction,
    embedding: &SubgroupEmbedding,
) -> Result<GroupFunction, ReductionError> {
    if **f.group() != *embedding.parent {
        return Err(ReductionError::EmbeddingMismatch);
    }
    let values = embedding.to_parent.iter().map(|&p| f.value(p)).collect();
    Ok(GroupFunction::new(embedding.sub.clone(), values)?)
}

/// Which subgroup the reduction passes to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ReductionVariant {
    /// `H = <Ω₊>`, compared against the problem `(Ω₊, Ω₋ ∩ H)` on `H`.
    PlusOnly,
    /// `H = <Ω₊ ∪ Ω₋>`, compared against `(Ω₊, Ω₋)` on `H`.
    PlusAndMinus,
}

impl ReductionVariant {
    pub fn name(self) -> &'static str {
        match self {
            ReductionVariant::PlusOnly => "generated_by_plus",
            ReductionVariant::PlusAndMinus => "generated_by_plus_and_minus",
        }
    }
}

/// Extremal constants on `G` and on the reduced subgroup.
#[derive(Debug, Clone, PartialEq)]
pub struct Comparison {
    pub variant: ReductionVariant,
    pub subgroup_order: usize,
    pub subgroup: Arc<FiniteAbelianGroup>,
    pub value_g: f64,
    pub value_h: f64,
    pub difference: f64,
    pub exact_value_g: Option<BigRational>,
    pub exact_value_h: Option<BigRational>,
    pub solution_h: Solution,
}

impl Comparison {
    /// Exact agreement when both values are exact, otherwise `None`.
    pub fn exactly_equal(&self) -> Option<bool> {
        match (&self.exact_value_g, &self.exact_value_h) {
            (Some(a), Some(b)) => Some(a == b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionReport {
    pub solution_g: Solution,
    pub plus_only: Comparison,
    pub plus_and_minus: Comparison,
}

impl ReductionReport {
    /// `label: value` lines for both variants.
    pub fn to_lines(&self) -> Vec<String> {
        let fmt = crate::format::sig12;
        let mut out = vec![format!("value_G: {}", fmt(self.solution_g.value))];
        for c in [&self.plus_only, &self.plus_and_minus] {
            out.push(format!("{}.subgroup: {} (order {})", c.variant.name(), c.subgroup, c.subgroup_order));
            out.push(format!("{}.value_H: {}", c.variant.name(), fmt(c.value_h)));
            out.push(format!("{}.difference: {}", c.variant.name(), fmt(c.difference)));
            if let Some(eq) = c.exactly_equal() {
                out.push(format!("{}.exact_equal: {eq}", c.variant.name()));
            }
        }
        out
    }
}

/// The problem `(Ω₊ ∩ H, Ω₋ ∩ H)` on `H`, solved in general mode.
fn reduced_spec(
    spec: &ProblemSpec,
    embedding: &SubgroupEmbedding,
) -> Result<ProblemSpec, ReductionError> {
    let plus = embedding.restrict_set(spec.omega_plus())?;
    let minus = embedding.restrict_set(spec.omega_minus())?;
    Ok(ProblemSpec::new(plus, minus, Mode::General)?
        .with_arithmetic(spec.arithmetic())
        .with_tolerance(spec.tolerance()))
}

struct Reduced {
    variant: ReductionVariant,
    embedding: SubgroupEmbedding,
    solution: Solution,
}

fn solve_reduced(spec: &ProblemSpec, variant: ReductionVariant) -> Result<Reduced, ReductionError> {
    let mut generators = spec.omega_plus().members();
    if variant == ReductionVariant::PlusAndMinus {
        generators.extend(spec.omega_minus().members());
    }
    let embedding = SubgroupEmbedding::generated(spec.group().clone(), &generators);
    let solution = solve(&reduced_spec(spec, &embedding)?)?;
    debug_assert_eq!(solution.status, Status::Optimal);
    Ok(Reduced {
        variant,
        embedding,
        solution,
    })
}

fn comparison(solution_g: &Solution, reduced: Reduced) -> Comparison {
    Comparison {
        variant: reduced.variant,
        subgroup_order: reduced.embedding.subgroup().order(),
        subgroup: reduced.embedding.sub_group().clone(),
        value_g: solution_g.value,
        value_h: reduced.solution.value,
        difference: solution_g.value - reduced.solution.value,
        exact_value_g: solution_g.exact_value.clone(),
        exact_value_h: reduced.solution.exact_value.clone(),
        solution_h: reduced.solution,
    }
}

/// Solve on `G` and on both reduced subgroups. The three solves run
/// concurrently.
pub fn reduce_and_compare(spec: &ProblemSpec) -> Result<ReductionReport, ReductionError> {
    if spec.is_class_empty() {
        return Err(ReductionError::MissingIdentity);
    }
    let ((solution_g, plus_only), plus_and_minus) = rayon::join(
        || {
            rayon::join(
                || solve(spec),
                || solve_reduced(spec, ReductionVariant::PlusOnly),
            )
        },
        || solve_reduced(spec, ReductionVariant::PlusAndMinus),
    );
    let solution_g = solution_g?;
    Ok(ReductionReport {
        plus_only: comparison(&solution_g, plus_only?),
        plus_and_minus: comparison(&solution_g, plus_and_minus?),
        solution_g,
    })
}
