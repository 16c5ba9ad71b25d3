//! Sign-constrained classes of positive definite functions.
//!
//! A function belongs to the class for `(Ω₊, Ω₋)` when it is positive
//! definite, takes the value 1 at the identity, is positive only inside `Ω₊`
//! and negative only inside `Ω₋`. The two variants of the class differ in
//! whether the sign conditions are imposed on the closed supports of `f₊`,
//! `f₋` (`FStar`) or on the open sets where `f > 0`, `f < 0` (`F`). On a
//! finite group every set is open and closed, so the variants coincide and
//! [`in_class`] records that fact in its verdict. For the same reason the
//! compactly supported variant is not modeled separately: every function on
//! a finite group has compact support.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::discretize::{sample_set, DiscretizeError, TorusSpec};
use crate::group::FiniteAbelianGroup;
use crate::harmonic::{is_positive_definite, GroupFunction};
use crate::topology::RealSet1D;

/// Default threshold below which a value counts as zero for sign tests.
pub const DEFAULT_SUPPORT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ClassError {
    #[error("set is not symmetric: contains {element} but not its negative")]
    Asymmetric { element: usize },
    #[error("index {0} is outside the group")]
    IndexOutOfRange(usize),
    #[error("sets or functions live on different groups")]
    GroupMismatch,
    #[error(transparent)]
    Discretize(#[from] DiscretizeError),
}

/// Subset of a finite group closed under negation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricSet {
    group: Arc<FiniteAbelianGroup>,
    mask: Vec<bool>,
}

impl SymmetricSet {
    pub fn new(group: Arc<FiniteAbelianGroup>, members: &[usize]) -> Result<Self, ClassError> {
        let mut mask = vec![false; group.order()];
        for &m in members {
            *mask.get_mut(m).ok_or(ClassError::IndexOutOfRange(m))? = true;
        }
        Self::from_mask(group, mask)
    }

    pub fn from_mask(group: Arc<FiniteAbelianGroup>, mask: Vec<bool>) -> Result<Self, ClassError> {
        if mask.len() != group.order() {
            return Err(ClassError::GroupMismatch);
        }
        if let Some(element) = (0..mask.len()).find(|&i| mask[i] && !mask[group.neg_idx(i)]) {
            return Err(ClassError::Asymmetric { element });
        }
        Ok(Self { group, mask })
    }

    /// The smallest symmetric set containing `members`.
    pub fn symmetrized(group: Arc<FiniteAbelianGroup>, members: &[usize]) -> Result<Self, ClassError> {
        let mut all = Vec::with_capacity(2 * members.len());
        for &m in members {
            if m >= group.order() {
                return Err(ClassError::IndexOutOfRange(m));
            }
            all.push(m);
            all.push(group.neg_idx(m));
        }
        Self::new(group, &all)
    }

    pub fn full(group: Arc<FiniteAbelianGroup>) -> Self {
        let mask = vec![true; group.order()];
        Self { group, mask }
    }

    pub fn empty(group: Arc<FiniteAbelianGroup>) -> Self {
        let mask = vec![false; group.order()];
        Self { group, mask }
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn contains(&self, index: usize) -> bool {
        self.mask.get(index).copied().unwrap_or(false)
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| self.mask[i]).collect()
    }

    pub fn len(&self) -> usize {
        self.mask.iter().filter(|&&b| b).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask.iter().all(|&b| b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.mask.len() == other.mask.len()
            && self.mask.iter().zip(&other.mask).all(|(&a, &b)| !a || b)
    }

    pub fn union(&self, other: &Self) -> Result<Self, ClassError> {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, ClassError> {
        self.combine(other, |a, b| a && b)
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Result<Self, ClassError> {
        if self.group != other.group {
            return Err(ClassError::GroupMismatch);
        }
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| op(a, b)).collect();
        Ok(Self {
            group: self.group.clone(),
            mask,
        })
    }

    /// Image under an element permutation that commutes with negation,
    /// such as a scaling automorphism.
    pub fn map_by(&self, perm: &[usize]) -> Result<Self, ClassError> {
        if perm.len() != self.mask.len() {
            return Err(ClassError::GroupMismatch);
        }
        let mut mask = vec![false; self.mask.len()];
        for (i, &p) in perm.iter().enumerate() {
            if self.mask[i] {
                mask[p] = true;
            }
        }
        Self::from_mask(self.group.clone(), mask)
    }
}

/// Which sign convention the class uses; on finite groups both agree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassVariant {
    /// `f⁻¹(0, ∞) ⊂ Ω₊` and `f⁻¹(−∞, 0) ⊂ Ω₋`.
    F,
    /// `supp f₊ ⊂ Ω₊` and `supp f₋ ⊂ Ω₋`.
    FStar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSpec {
    pub omega_plus: SymmetricSet,
    pub omega_minus: SymmetricSet,
    pub variant: ClassVariant,
}

impl ClassSpec {
    pub fn new(
        omega_plus: SymmetricSet,
        omega_minus: SymmetricSet,
        variant: ClassVariant,
    ) -> Result<Self, ClassError> {
        if omega_plus.group != omega_minus.group {
            return Err(ClassError::GroupMismatch);
        }
        Ok(Self {
            omega_plus,
            omega_minus,
            variant,
        })
    }
}

/// Elements where `f > tol`.
pub fn positive_support(f: &GroupFunction, tol: f64) -> Vec<usize> {
    (0..f.values().len()).filter(|&i| f.value(i) > tol).collect()
}

/// Elements where `f < -tol`.
pub fn negative_support(f: &GroupFunction, tol: f64) -> Vec<usize> {
    (0..f.values().len()).filter(|&i| f.value(i) < -tol).collect()
}

/// A failed membership condition.
#[derive(Debug, Clone, PartialEq)]
pub enum ClassViolation {
    /// (a) some spectrum value is negative or non-real.
    NotPositiveDefinite { character: usize, value: Complex64 },
    /// (b) `f(0) != 1`.
    Normalization { value: f64 },
    /// (c) positive outside `Ω₊`.
    PositiveOutside { element: usize, value: f64 },
    /// (c) negative outside `Ω₋`.
    NegativeOutside { element: usize, value: f64 },
    /// The function is defined on a different group than the sets.
    GroupMismatch,
}

impl ClassViolation {
    /// Condition label `a`, `b` or `c`.
    pub fn condition(&self) -> char {
        match self {
            Self::NotPositiveDefinite { .. } | Self::GroupMismatch => 'a',
            Self::Normalization { .. } => 'b',
            Self::PositiveOutside { .. } | Self::NegativeOutside { .. } => 'c',
        }
    }
}

impl fmt::Display for ClassViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::NotPositiveDefinite { character, value } => write!(
                f,
                "(a) not positive definite: spectrum at character {character} is {}{:+}i",
                value.re, value.im
            ),
            Self::Normalization { value } => write!(f, "(b) f(0) = {value}, expected 1"),
            Self::PositiveOutside { element, value } => {
                write!(f, "(c) f({element}) = {value} > 0 outside omega_plus")
            }
            Self::NegativeOutside { element, value } => {
                write!(f, "(c) f({element}) = {value} < 0 outside omega_minus")
            }
            Self::GroupMismatch => write!(f, "(a) function and sets live on different groups"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassVerdict {
    pub member: bool,
    pub variant: ClassVariant,
    /// Always true on finite groups: `F` and `F*` give the same verdict.
    pub variants_coincide: bool,
    pub violations: Vec<ClassViolation>,
}

/// Check (a) positive definiteness, (b) `f(0) = 1`, and (c) the sign
/// conditions, each at tolerance `tol`.
pub fn in_class(f: &GroupFunction, spec: &ClassSpec, tol: f64) -> ClassVerdict {
    let mut violations = Vec::new();
    if **f.group() != *spec.omega_plus.group {
        violations.push(ClassViolation::GroupMismatch);
    } else {
        let pd = is_positive_definite(f, tol);
        if let Some((character, value)) = pd.witness {
            violations.push(ClassViolation::NotPositiveDefinite { character, value });
        }
        if (f.at_zero() - 1.0).abs() > tol {
            violations.push(ClassViolation::Normalization { value: f.at_zero() });
        }
        // With every subset clopen, {f > 0} and supp f₊ are the same set, so
        // one loop serves both variants.
        for element in positive_support(f, tol) {
            if !spec.omega_plus.contains(element) {
                violations.push(ClassViolation::PositiveOutside {
                    element,
                    value: f.value(element),
                });
            }
        }
        for element in negative_support(f, tol) {
            if !spec.omega_minus.contains(element) {
                violations.push(ClassViolation::NegativeOutside {
                    element,
                    value: f.value(element),
                });
            }
        }
    }
    ClassVerdict {
        member: violations.is_empty(),
        variant: spec.variant,
        variants_coincide: true,
        violations,
    }
}

/// Levels of the containment chain, from smallest class to largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ChainLevel {
    Interior,
    Original,
    ClosureOfInterior,
    Closure,
}

impl ChainLevel {
    pub const ALL: [ChainLevel; 4] = [
        ChainLevel::Interior,
        ChainLevel::Original,
        ChainLevel::ClosureOfInterior,
        ChainLevel::Closure,
    ];

    pub fn apply(self, s: &RealSet1D) -> RealSet1D {
        match self {
            ChainLevel::Interior => s.interior(),
            ChainLevel::Original => s.clone(),
            ChainLevel::ClosureOfInterior => s.interior().closure(),
            ChainLevel::Closure => s.closure(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ChainLevel::Interior => "interior",
            ChainLevel::Original => "original",
            ChainLevel::ClosureOfInterior => "closure_of_interior",
            ChainLevel::Closure => "closure",
        }
    }
}

/// Membership of one sample function at every chain level.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRow {
    pub sample: usize,
    pub verdicts: Vec<(ChainLevel, ClassVerdict)>,
}

/// A sample that is a member at `member_at` but not at the larger `missing_at`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainViolation {
    pub sample: usize,
    pub member_at: ChainLevel,
    pub missing_at: ChainLevel,
    pub witness: Option<ClassViolation>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ChainReport {
    pub rows: Vec<ChainRow>,
    pub violations: Vec<ChainViolation>,
}

impl ChainReport {
    pub fn is_monotone(&self) -> bool {
        self.violations.is_empty()
    }

    /// One line per sample and level, then one line per violation.
    pub fn to_lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for row in &self.rows {
            for (level, v) in &row.verdicts {
                let reason = v
                    .violations
                    .first()
                    .map(|x| format!(" {x}"))
                    .unwrap_or_default();
                out.push(format!(
                    "sample {} level {}: {}{}",
                    row.sample,
                    level.name(),
                    if v.member { "member" } else { "non-member" },
                    reason
                ));
            }
        }
        for v in &self.violations {
            out.push(format!(
                "violation: sample {} is a member at {} but not at {}",
                v.sample,
                v.member_at.name(),
                v.missing_at.name()
            ));
        }
        out
    }
}

/// Discretize `(Ω₊, Ω₋)` at each chain level and test every sample against
/// each; membership must be monotone along the chain.
///
/// On the grid, functions carry no continuity, so the equality between the
/// classes of `Ω` and `int Ω` becomes the inclusion of the interior class in
/// the class of `Ω`. The discretizations are nested because the sets are
/// nested: `int Ω ⊆ Ω ⊆ cl(int Ω) ⊆ cl Ω` holds for finite unions of
/// nondegenerate intervals.
pub fn containment_chain_check(
    omega_plus: &RealSet1D,
    omega_minus: &RealSet1D,
    torus: &TorusSpec,
    samples: &[GroupFunction],
    tol: f64,
) -> Result<ChainReport, ClassError> {
    let group = Arc::new(torus.group());
    let mut specs = Vec::with_capacity(ChainLevel::ALL.len());
    for level in ChainLevel::ALL {
        let plus = sample_set(&level.apply(omega_plus), torus)?;
        let minus = sample_set(&level.apply(omega_minus), torus)?;
        specs.push((
            level,
            ClassSpec::new(
                SymmetricSet::new(group.clone(), plus.members())?,
                SymmetricSet::new(group.clone(), minus.members())?,
                ClassVariant::F,
            )?,
        ));
    }
    let mut report = ChainReport::default();
    for (sample, f) in samples.iter().enumerate() {
        let verdicts: Vec<(ChainLevel, ClassVerdict)> = specs
            .iter()
            .map(|(level, spec)| (*level, in_class(f, spec, tol)))
            .collect();
        for (i, (lo, v_lo)) in verdicts.iter().enumerate() {
            if !v_lo.member {
                continue;
            }
            for (hi, v_hi) in &verdicts[i + 1..] {
                if !v_hi.member {
                    report.violations.push(ChainViolation {
                        sample,
                        member_at: *lo,
                        missing_at: *hi,
                        witness: v_hi.violations.first().cloned(),
                    });
                }
            }
        }
        report.rows.push(ChainRow { sample, verdicts });
    }
    Ok(report)
}
