//! Extremal positive definite functions on finite abelian groups.
//!
//! The central operation is [`solver::solve`]: given symmetric sets `Ω₊` and
//! `Ω₋` in a group `G` with Haar weight `h`, it maximizes `h Σ f` over positive
//! definite `f` with `f(0) = 1`, `f ≤ 0` off `Ω₊` and `f ≥ 0` off `Ω₋`, and
//! returns the maximizer with a checkable dual certificate.
//!
//! ```
//! use std::sync::Arc;
//! use delsarte::classes::SymmetricSet;
//! use delsarte::group::FiniteAbelianGroup;
//! use delsarte::solver::{solve, ProblemSpec};
//!
//! let g = Arc::new(FiniteAbelianGroup::cyclic(8).unwrap());
//! let omega = SymmetricSet::new(g.clone(), &g.parse_element_set("{-1,0,1}").unwrap()).unwrap();
//! let sol = solve(&ProblemSpec::turan(omega)).unwrap();
//! assert!((sol.value - 2.0).abs() < 1e-12);
//! assert!(sol.certificate_check.passed);
//! ```
//!
//! Module map: [`group`] and [`harmonic`] provide groups, characters and the
//! transform; [`classes`] the admissible sets and membership tests; [`lp`]
//! the simplex engine in both arithmetics; [`topology`] and [`discretize`]
//! carry real-line sets onto torus grids; [`reduction`] compares a problem
//! with its restriction to a subgroup.

pub mod classes;
pub mod discretize;
pub mod format;
pub mod group;
pub mod harmonic;
pub mod lp;
pub mod rational;
pub mod reduction;
pub mod solver;
pub mod topology;
