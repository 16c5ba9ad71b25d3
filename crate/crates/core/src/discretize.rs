//! Sampling symmetric subsets of the real line onto a torus grid.
//!
//! The torus `R / L Z` is replaced by `Z_N` with Haar weight `h = L / N`.
//! Index `j` in `(-N/2, N/2]` stands for the point `j h`, so 0 is always a
//! grid point. Membership of `j h` in a set is decided in exact rational
//! arithmetic, so open and closed endpoints that land on the grid are honored.
//!
//! The discrete problem has no continuity constraint. For sets that are not
//! boundary-coherent it therefore models the integrally positive definite
//! relaxation of the continuous problem, not the continuous problem itself.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::classes::SymmetricSet;
use crate::group::{FiniteAbelianGroup, GroupError};
use crate::topology::RealSet1D;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiscretizeError {
    #[error("grid count must be at least 2, got {0}")]
    GridTooSmall(u64),
    #[error("circumference must be positive, got {0}")]
    NonPositiveCircumference(BigRational),
    #[error("set is unbounded and cannot be placed on a torus")]
    Unbounded,
    #[error("set is empty, so no default circumference exists")]
    EmptySet,
    #[error("closure of the set reaches {sup}, which wraps around a torus of half-length {half}")]
    Wraparound { sup: String, half: String },
    #[error("set is not symmetric about 0")]
    Asymmetric,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Circle of circumference `L` sampled at `N` equally spaced points.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusSpec {
    circumference: BigRational,
    grid: u64,
}

impl TorusSpec {
    pub fn new(circumference: BigRational, grid: u64) -> Result<Self, DiscretizeError> {
        if grid < 2 {
            return Err(DiscretizeError::GridTooSmall(grid));
        }
        if !circumference.is_positive() {
            return Err(DiscretizeError::NonPositiveCircumference(circumference));
        }
        Ok(Self { circumference, grid })
    }

    pub fn circumference(&self) -> &BigRational {
        &self.circumference
    }

    pub fn grid(&self) -> u64 {
        self.grid
    }

    pub fn step(&self) -> BigRational {
        &self.circumference / BigInt::from(self.grid)
    }

    /// `Z_N` with weight `h`.
    pub fn group(&self) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(vec![self.grid], self.step()).expect("N >= 2 and h > 0")
    }

    /// Signed grid index in `(-N/2, N/2]` of the element with index `i`.
    pub fn signed_index(&self, i: usize) -> i64 {
        let n = self.grid as i64;
        let j = i as i64;
        if 2 * j > n {
            j - n
        } else {
            j
        }
    }

    /// Real coordinate `j h` of element `i`.
    pub fn point(&self, i: usize) -> BigRational {
        self.step() * BigInt::from(self.signed_index(i))
    }

    /// Default circumference `4 sup |x|` over the closure of `s`.
    pub fn default_circumference(s: &RealSet1D) -> Result<BigRational, DiscretizeError> {
        if !s.is_bounded() {
            return Err(DiscretizeError::Unbounded);
        }
        let sup = s.sup_abs().ok_or(DiscretizeError::EmptySet)?;
        if sup.is_zero() {
            return Err(DiscretizeError::EmptySet);
        }
        Ok(sup * BigInt::from(4))
    }
}

/// Symmetric set of grid indices on `Z_N` with weight `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteProblemSet {
    torus: TorusSpec,
    group: Arc<FiniteAbelianGroup>,
    members: Vec<usize>,
}

impl DiscreteProblemSet {
    pub fn torus(&self) -> &TorusSpec {
        &self.torus
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    /// Element indices in increasing order.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    /// Members as signed grid indices, increasing.
    pub fn signed_members(&self) -> Vec<i64> {
        let mut out: Vec<i64> = self.members.iter().map(|&i| self.torus.signed_index(i)).collect();
        out.sort_unstable();
        out
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn to_symmetric_set(&self) -> SymmetricSet {
        SymmetricSet::new(self.group.clone(), &self.members).expect("sampled sets are symmetric")
    }
}

/// Grid points `j h` (with `j` in `(-N/2, N/2]`) that lie in `s`.
pub fn sample_set(s: &RealSet1D, torus: &TorusSpec) -> Result<DiscreteProblemSet, DiscretizeError> {
    if !s.is_bounded() {
        return Err(DiscretizeError::Unbounded);
    }
    if !s.is_symmetric() {
        return Err(DiscretizeError::Asymmetric);
    }
    let half = torus.circumference() / BigInt::from(2);
    if let Some(sup) = s.sup_abs() {
        if sup >= half {
            return Err(DiscretizeError::Wraparound { sup: sup.to_string(), half: half.to_string() });
        }
    }
    let group = Arc::new(torus.group());
    let members = (0..torus.grid() as usize)
        .filter(|&i| s.contains(&torus.point(i)))
        .collect();
    Ok(DiscreteProblemSet {
        torus: torus.clone(),
        group,
        members,
    })
}

/// One discretization per grid count, all on circumference `l`.
pub fn sweep_plan(
    s: &RealSet1D,
    circumference: &BigRational,
    grids: &[u64],
) -> Result<Vec<DiscreteProblemSet>, DiscretizeError> {
    grids
        .iter()
        .map(|&n| sample_set(s, &TorusSpec::new(circumference.clone(), n)?))
        .collect()
}
