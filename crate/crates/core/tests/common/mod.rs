#![allow(dead_code)]

use std::sync::Arc;

use delsarte::classes::SymmetricSet;
use delsarte::group::FiniteAbelianGroup;
use delsarte::solver::{Mode, ProblemSpec};
use num_rational::BigRational;
use proptest::prelude::*;

/// Invariant factor lists of every product of cyclic groups up to `max_order`
/// that we care to test, including non-canonical orderings.
pub fn shapes(max_order: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for n in 2..=max_order as u64 {
        out.push(vec![n]);
    }
    for a in 2..=12u64 {
        for b in 2..=12u64 {
            if (a * b) as usize <= max_order {
                out.push(vec![a, b]);
            }
        }
    }
    for t in [[2u64, 2, 2], [2, 2, 3], [2, 3, 4], [3, 3, 2], [2, 2, 4], [4, 4, 4], [2, 4, 8]] {
        if t.iter().product::<u64>() as usize <= max_order {
            out.push(t.to_vec());
        }
    }
    out
}

pub fn weights() -> Vec<BigRational> {
    [(1, 1), (1, 2), (1, 4), (3, 1), (2, 3)]
        .iter()
        .map(|&(n, d)| BigRational::new(n.into(), d.into()))
        .collect()
}

pub fn arb_group(max_order: usize) -> impl Strategy<Value = Arc<FiniteAbelianGroup>> {
    (prop::sample::select(shapes(max_order)), prop::sample::select(weights())).prop_map(
        |(orders, h)| Arc::new(FiniteAbelianGroup::new(orders, h).expect("valid shape")),
    )
}

/// Symmetric set obtained by closing a random mask under negation.
pub fn symmetric_from_mask(g: &Arc<FiniteAbelianGroup>, mask: &[bool], with_zero: bool) -> SymmetricSet {
    let mut members: Vec<usize> = (0..g.order()).filter(|&i| mask[i]).collect();
    if with_zero {
        members.push(0);
    } else {
        members.retain(|&i| i != 0);
    }
    SymmetricSet::symmetrized(g.clone(), &members).expect("indices in range")
}

pub fn arb_mode() -> impl Strategy<Value = Mode> {
    prop::sample::select(vec![Mode::General, Mode::Turan, Mode::Delsarte])
}

/// Random problem with `0 ∈ Ω₊`; `density` is the chance a given element
/// joins `Ω₊` before symmetrization.
pub fn arb_problem(max_order: usize, density: f64) -> impl Strategy<Value = ProblemSpec> {
    arb_group(max_order).prop_flat_map(move |g| {
        let n = g.order();
        (
            Just(g),
            prop::collection::vec(prop::bool::weighted(density), n),
            prop::collection::vec(prop::bool::weighted(0.5), n),
            arb_mode(),
        )
            .prop_map(|(g, plus, minus, mode)| {
                let plus = symmetric_from_mask(&g, &plus, true);
                let minus = symmetric_from_mask(&g, &minus, false);
                ProblemSpec::new(plus, minus, mode).expect("same group")
            })
    })
}

/// A problem together with random symmetric supersets of both of its sets.
pub fn arb_nested_problems(max_order: usize) -> impl Strategy<Value = (ProblemSpec, ProblemSpec)> {
    arb_group(max_order).prop_flat_map(|g| {
        let n = g.order();
        (
            Just(g),
            prop::collection::vec(prop::bool::weighted(0.3), n),
            prop::collection::vec(prop::bool::weighted(0.3), n),
            prop::collection::vec(prop::bool::weighted(0.3), n),
            prop::collection::vec(prop::bool::weighted(0.3), n),
        )
            .prop_map(|(g, p, m, p_extra, m_extra)| {
                let or = |a: &[bool], b: &[bool]| a.iter().zip(b).map(|(x, y)| *x || *y).collect::<Vec<_>>();
                let small = ProblemSpec::new(
                    symmetric_from_mask(&g, &p, true),
                    symmetric_from_mask(&g, &m, false),
                    Mode::General,
                )
                .expect("same group");
                let large = ProblemSpec::new(
                    symmetric_from_mask(&g, &or(&p, &p_extra), true),
                    symmetric_from_mask(&g, &or(&m, &m_extra), false),
                    Mode::General,
                )
                .expect("same group");
                (small, large)
            })
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integers coprime to the exponent, i.e. the scalings that are automorphisms.
pub fn unit_scalings(g: &FiniteAbelianGroup) -> Vec<i64> {
    let e = g.exponent();
    (1..e.max(2)).filter(|&r| gcd(r, e) == 1).map(|r| r as i64).collect()
}
