//! The guide in `book/`, compiled as documentation tests so that every code
//! listing keeps building and its assertions keep holding.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/groups.md")]
pub mod groups {}

#[doc = include_str!("../../../book/src/positive-definite.md")]
pub mod positive_definite {}

#[doc = include_str!("../../../book/src/extremal-problems.md")]
pub mod extremal_problems {}

#[doc = include_str!("../../../book/src/exact-arithmetic.md")]
pub mod exact_arithmetic {}

#[doc = include_str!("../../../book/src/real-sets.md")]
pub mod real_sets {}

#[doc = include_str!("../../../book/src/discretization.md")]
pub mod discretization {}

#[doc = include_str!("../../../book/src/reduction.md")]
pub mod reduction {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
