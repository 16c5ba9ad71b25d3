//! Finite abelian groups presented as products of cyclic groups.
//!
//! A group `Z_{N_1} x ... x Z_{N_d}` carries a positive rational Haar weight
//! `h`, the measure of a single point. Elements and characters share the same
//! mixed-radix indexing (last coordinate varies fastest), so every function on
//! the group is a dense array of length `|G|`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::rational::parse_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factor orders must be at least 1")]
    ZeroOrder,
    #[error("Haar weight must be positive, got {0}")]
    NonPositiveWeight(String),
    #[error("elements belong to different groups")]
    Mismatch,
    #[error("coordinate {coord} out of range for factor of order {order}")]
    CoordinateOutOfRange { coord: u64, order: u64 },
    #[error("scaling by {factor} is not an automorphism: gcd with order {order} is {gcd}")]
    NotAutomorphism { factor: i64, order: u64, gcd: u64 },
    #[error("cannot parse group literal {0:?}")]
    Parse(String),
    #[error("cannot parse element literal {0:?}")]
    ElementParse(String),
}

/// `Z_{N_1} x ... x Z_{N_d}` with Haar weight `h` per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    orders: Arc<[u64]>,
    weight: BigRational,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
}

impl FiniteAbelianGroup {
    pub fn new(orders: Vec<u64>, weight: BigRational) -> Result<Self, GroupError> {
        if orders.contains(&0) {
            return Err(GroupError::ZeroOrder);
        }
        if !weight.is_positive() {
            return Err(GroupError::NonPositiveWeight(weight.to_string()));
        }
        let orders = if orders.is_empty() { vec![1] } else { orders };
        let mut strides = vec![1usize; orders.len()];
        for i in (0..orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * orders[i + 1] as usize;
        }
        let order = orders.iter().map(|&n| n as usize).product();
        let exponent = orders.iter().fold(1u64, |acc, &n| acc.lcm(&n));
        Ok(Self {
            orders: orders.into(),
            weight,
            strides,
            order,
            exponent,
        })
    }

    /// `Z_n` with unit weight.
    pub fn cyclic(n: u64) -> Result<Self, GroupError> {
        Self::new(vec![n], BigRational::one())
    }

    /// Product of cyclic groups with unit weight.
    pub fn product(orders: &[u64]) -> Result<Self, GroupError> {
        Self::new(orders.to_vec(), BigRational::one())
    }

    pub fn with_weight(&self, weight: BigRational) -> Result<Self, GroupError> {
        Self::new(self.orders.to_vec(), weight)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// `|G|`.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn weight(&self) -> &BigRational {
        &self.weight
    }

    pub fn weight_f64(&self) -> f64 {
        self.weight.to_f64().unwrap_or(f64::NAN)
    }

    /// Total Haar measure `h |G|`.
    pub fn measure(&self) -> BigRational {
        &self.weight * BigRational::from_integer(BigInt::from(self.order))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.rank()],
            orders: self.orders.clone(),
        }
    }

    pub fn coords(&self, index: usize) -> Vec<u64> {
        self.orders
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| ((index / s) as u64) % n)
            .collect()
    }

    pub fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c as usize * s)
            .sum()
    }

    pub fn element(&self, index: usize) -> GroupElement {
        GroupElement {
            coords: self.coords(index),
            orders: self.orders.clone(),
        }
    }

    pub fn index_of(&self, g: &GroupElement) -> Result<usize, GroupError> {
        if g.orders != self.orders {
            return Err(GroupError::Mismatch);
        }
        Ok(self.index_of_coords(&g.coords))
    }

    /// Build an element from signed coordinates, reducing each modulo its order.
    pub fn element_from_signed(&self, coords: &[i64]) -> Result<GroupElement, GroupError> {
        if coords.len() != self.rank() {
            return Err(GroupError::Mismatch);
        }
        let coords = coords
            .iter()
            .zip(self.orders.iter())
            .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
            .collect();
        Ok(GroupElement {
            coords,
            orders: self.orders.clone(),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |i| self.element(i))
    }

    pub fn add_idx(&self, a: usize, b: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let x = (a / s) as u64 % n;
            let y = (b / s) as u64 % n;
            out += ((x + y) % n) as usize * s;
        }
        out
    }

    pub fn neg_idx(&self, a: usize) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let x = (a / s) as u64 % n;
            out += ((n - x) % n) as usize * s;
        }
        out
    }

    pub fn sub_idx(&self, a: usize, b: usize) -> usize {
        self.add_idx(a, self.neg_idx(b))
    }

    /// Index of `r * g`.
    pub fn scale_idx(&self, a: usize, r: i64) -> usize {
        let mut out = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let x = (a / s) as u64 % n;
            let rr = r.rem_euclid(n as i64) as u128;
            out += ((x as u128 * rr) % n as u128) as usize * s;
        }
        out
    }

    /// Additive order of the element at `index`.
    pub fn element_order(&self, index: usize) -> u64 {
        self.coords(index)
            .iter()
            .zip(self.orders.iter())
            .fold(1u64, |acc, (&c, &n)| acc.lcm(&(n / c.gcd(&n))))
    }

    pub fn character(&self, index: usize) -> Character {
        Character {
            coords: self.coords(index),
            orders: self.orders.clone(),
        }
    }

    /// Phase of `chi(g)` in turns, from character and element indices.
    pub fn pairing(&self, chi: usize, g: usize) -> Turns {
        let l = self.exponent as u128;
        let mut acc: u128 = 0;
        for (&n, &s) in self.orders.iter().zip(&self.strides) {
            let x = ((chi / s) as u64 % n) as u128;
            let y = ((g / s) as u64 % n) as u128;
            acc = (acc + (x * y % n as u128) * (l / n as u128)) % l;
        }
        Turns::new(acc as u64, self.exponent)
    }

    /// Whether `g -> r g` is an automorphism (`gcd(r, N_i) = 1` for every factor).
    pub fn check_automorphism(&self, r: i64) -> Result<(), GroupError> {
        for &n in self.orders.iter() {
            let g = (r.unsigned_abs()).gcd(&n);
            if n > 1 && g != 1 {
                return Err(GroupError::NotAutomorphism {
                    factor: r,
                    order: n,
                    gcd: g,
                });
            }
        }
        Ok(())
    }

    /// Parse a single element: `-1` for a cyclic group, `(1,0)` in general.
    pub fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .unwrap_or(t);
        let coords = inner
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| GroupError::ElementParse(s.to_string()))?;
        self.element_from_signed(&coords)
            .map_err(|_| GroupError::ElementParse(s.to_string()))
    }

    /// Parse a set literal such as `{-1,0,1}` or `{(0,0),(1,0)}` into sorted indices.
    pub fn parse_element_set(&self, s: &str) -> Result<Vec<usize>, GroupError> {
        let t = s.trim();
        let inner = t
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| GroupError::ElementParse(s.to_string()))?;
        let mut out = BTreeSet::new();
        let mut depth = 0usize;
        let mut start = 0usize;
        let bytes = inner.as_bytes();
        for (i, &b) in bytes.iter().enumerate() {
            match b {
                b'(' => depth += 1,
                b')' => depth = depth.saturating_sub(1),
                b',' if depth == 0 => {
                    let item = &inner[start..i];
                    out.insert(self.index_of(&self.parse_element(item)?)?);
                    start = i + 1;
                }
                _ => {}
            }
        }
        let last = inner[start..].trim();
        if !last.is_empty() {
            out.insert(self.index_of(&self.parse_element(last)?)?);
        } else if start > 0 {
            return Err(GroupError::ElementParse(s.to_string()));
        }
        Ok(out.into_iter().collect())
    }

    /// Signed representative of each coordinate, in `(-N/2, N/2]`.
    pub fn signed_coords(&self, index: usize) -> Vec<i64> {
        self.coords(index)
            .iter()
            .zip(self.orders.iter())
            .map(|(&c, &n)| {
                if 2 * c > n {
                    c as i64 - n as i64
                } else {
                    c as i64
                }
            })
            .collect()
    }

    /// Signed coordinates as text: `-1` on a cyclic group, `(1,-2)` otherwise.
    pub fn element_label(&self, index: usize) -> String {
        let c = self.signed_coords(index);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.orders.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))?;
        if !self.weight.is_one() {
            write!(f, " weight={}", self.weight)?;
        }
        Ok(())
    }
}

impl FromStr for FiniteAbelianGroup {
    type Err = GroupError;

    /// Accepts `Z8`, `Z4xZ3`, optionally followed by `weight=1/4`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || GroupError::Parse(s.to_string());
        let mut orders = Vec::new();
        let mut weight = BigRational::one();
        for token in s.split(|c: char| c.is_whitespace() || c == ';' || c == ',') {
            if token.is_empty() {
                continue;
            }
            if let Some(w) = token.strip_prefix("weight=") {
                weight = parse_rational(w).map_err(|_| err())?;
                continue;
            }
            for factor in token.split(['x', '×']) {
                let factor = factor.trim();
                if factor.is_empty() {
                    continue;
                }
                let n = factor
                    .strip_prefix('Z')
                    .ok_or_else(err)?
                    .parse::<u64>()
                    .map_err(|_| err())?;
                orders.push(n);
            }
        }
        if orders.is_empty() {
            return Err(err());
        }
        Self::new(orders, weight)
    }
}

/// Element of a product of cyclic groups, coordinates stored as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    coords: Vec<u64>,
    orders: Arc<[u64]>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.orders != other.orders {
            return Err(GroupError::Mismatch);
        }
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .zip(self.orders.iter())
            .map(|((&a, &b), &n)| (a + b) % n)
            .collect();
        Ok(GroupElement {
            coords,
            orders: self.orders.clone(),
        })
    }

    pub fn negate(&self) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.orders.iter())
            .map(|(&a, &n)| (n - a) % n)
            .collect();
        GroupElement {
            coords,
            orders: self.orders.clone(),
        }
    }

    pub fn scale(&self, r: i64) -> GroupElement {
        let coords = self
            .coords
            .iter()
            .zip(self.orders.iter())
            .map(|(&a, &n)| ((a as u128 * r.rem_euclid(n as i64) as u128) % n as u128) as u64)
            .collect();
        GroupElement {
            coords,
            orders: self.orders.clone(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.len() == 1 {
            write!(f, "{}", self.coords[0])
        } else {
            let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// An exact phase `num / den` turns, reduced, in `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Turns {
    num: u64,
    den: u64,
}

impl Turns {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let num = num % den;
        let g = num.gcd(&den);
        if num == 0 {
            return Turns { num: 0, den: 1 };
        }
        Turns {
            num: num / g,
            den: den / g,
        }
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn neg(&self) -> Turns {
        Turns::new(self.den - self.num, self.den)
    }

    /// Reflect into `[0, 1/2]`; cosine is invariant under this.
    fn folded(&self) -> Turns {
        if 2 * self.num > self.den {
            self.neg()
        } else {
            *self
        }
    }

    /// `cos(2 pi turns)` as an exact rational when it is rational
    /// (denominators 1, 2, 3, 4 and 6 only).
    pub fn cos_exact(&self) -> Option<BigRational> {
        let t = self.folded();
        let r = |n: i64, d: i64| Some(BigRational::new(n.into(), d.into()));
        match (t.num, t.den) {
            (0, 1) => r(1, 1),
            (1, 2) => r(-1, 1),
            (1, 4) => r(0, 1),
            (1, 3) => r(-1, 2),
            (1, 6) => r(1, 2),
            _ => None,
        }
    }

    /// `cos(2 pi turns)`; a pure function of the reduced fraction.
    pub fn cos(&self) -> f64 {
        if let Some(c) = self.cos_exact() {
            return c.to_f64().unwrap_or(f64::NAN);
        }
        let t = self.folded();
        (std::f64::consts::TAU * (t.num as f64 / t.den as f64)).cos()
    }

    /// `sin(2 pi turns)`; odd under negation exactly.
    pub fn sin(&self) -> f64 {
        let (t, sign) = if 2 * self.num > self.den {
            (self.neg(), -1.0)
        } else {
            (*self, 1.0)
        };
        let s = match (t.num, t.den) {
            (0, 1) | (1, 2) => 0.0,
            (1, 4) => 1.0,
            _ => {
                // sin(2 pi t) = cos(2 pi (1/4 - t)), reuse the exact table
                let shifted = Turns::new(
                    (t.den + 4 * t.den - 4 * t.num) % (4 * t.den),
                    4 * t.den,
                );
                shifted.cos()
            }
        };
        sign * s
    }
}

impl fmt::Display for Turns {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Character `chi(g) = exp(2 pi i sum g_i chi_i / N_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Character {
    coords: Vec<u64>,
    orders: Arc<[u64]>,
}

impl Character {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn phase(&self, g: &GroupElement) -> Result<Turns, GroupError> {
        if g.orders != self.orders {
            return Err(GroupError::Mismatch);
        }
        let l = self.orders.iter().fold(1u64, |acc, &n| acc.lcm(&n)) as u128;
        let mut acc = 0u128;
        for ((&x, &y), &n) in self.coords.iter().zip(&g.coords).zip(self.orders.iter()) {
            acc = (acc + (x as u128 * y as u128 % n as u128) * (l / n as u128)) % l;
        }
        Ok(Turns::new(acc as u64, l as u64))
    }
}

/// A subgroup, stored as the sorted list of member indices of its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteAbelianGroup,
    members: Vec<usize>,
    generators: Vec<usize>,
}

impl Subgroup {
    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    pub fn is_whole_group(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    /// Present the subgroup as a product of cyclic groups.
    ///
    /// Returns the abstract group (inheriting the parent's Haar weight) and
    /// the map from its element indices to parent indices. The basis is built
    /// greedily from elements of maximal order whose cyclic span meets the
    /// span so far only in zero, backtracking if a choice cannot be completed.
    pub fn decompose(&self) -> (FiniteAbelianGroup, Vec<usize>) {
        let g = &self.parent;
        let mut span = vec![false; g.order()];
        span[0] = true;
        let mut basis = Vec::new();
        let found = basis_search(g, &self.members, &mut span, 1, &mut basis);
        debug_assert!(found, "every finite abelian group has a cyclic basis");
        let orders: Vec<u64> = if basis.is_empty() {
            vec![1]
        } else {
            basis.iter().map(|&(_, o)| o).collect()
        };
        let abstract_group = FiniteAbelianGroup::new(orders, g.weight().clone())
            .expect("orders are positive and weight inherited");
        let to_parent = (0..abstract_group.order())
            .map(|i| {
                let c = abstract_group.coords(i);
                basis
                    .iter()
                    .zip(&c)
                    .fold(0, |acc, (&(b, _), &k)| g.add_idx(acc, g.scale_idx(b, k as i64)))
            })
            .collect();
        (abstract_group, to_parent)
    }
}

fn cyclic_span(g: &FiniteAbelianGroup, x: usize) -> Vec<usize> {
    let mut out = vec![0];
    let mut cur = x;
    while cur != 0 {
        out.push(cur);
        cur = g.add_idx(cur, x);
    }
    out
}

fn basis_search(
    g: &FiniteAbelianGroup,
    members: &[usize],
    span: &mut Vec<bool>,
    span_size: usize,
    basis: &mut Vec<(usize, u64)>,
) -> bool {
    if span_size == members.len() {
        return true;
    }
    let mut candidates: Vec<(u64, usize)> = members
        .iter()
        .filter(|&&m| !span[m])
        .filter(|&&m| cyclic_span(g, m).iter().skip(1).all(|&y| !span[y]))
        .map(|&m| (g.element_order(m), m))
        .collect();
    candidates.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for (ord, m) in candidates {
        if span_size * ord as usize > members.len() {
            continue;
        }
        let old_members: Vec<usize> = (0..span.len()).filter(|&i| span[i]).collect();
        let cyc = cyclic_span(g, m);
        let mut next = vec![false; span.len()];
        for &a in &old_members {
            for &c in &cyc {
                next[g.add_idx(a, c)] = true;
            }
        }
        let mut next_span = next;
        basis.push((m, ord));
        if basis_search(g, members, &mut next_span, span_size * ord as usize, basis) {
            *span = next_span;
            return true;
        }
        basis.pop();
    }
    false
}

/// Smallest subgroup containing `generators`, by breadth-first closure.
pub fn subgroup_generated(
    group: &FiniteAbelianGroup,
    generators: &[GroupElement],
) -> Result<Subgroup, GroupError> {
    let idx = generators
        .iter()
        .map(|g| group.index_of(g))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(subgroup_generated_idx(group, &idx))
}

pub fn subgroup_generated_idx(group: &FiniteAbelianGroup, generators: &[usize]) -> Subgroup {
    let mut seen = vec![false; group.order()];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let gens: Vec<usize> = generators
        .iter()
        .flat_map(|&g| [g, group.neg_idx(g)])
        .collect();
    while let Some(x) = queue.pop_front() {
        for &s in &gens {
            let y = group.add_idx(x, s);
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    let mut generators = generators.to_vec();
    generators.sort_unstable();
    generators.dedup();
    Subgroup {
        parent: group.clone(),
        members: (0..group.order()).filter(|&i| seen[i]).collect(),
        generators,
    }
}

/// The permutation `g -> R g` on element indices; `perm[i]` is the index of `R * element(i)`.
pub fn scaling_map(group: &FiniteAbelianGroup, r: i64) -> Result<Vec<usize>, GroupError> {
    group.check_automorphism(r)?;
    Ok((0..group.order()).map(|i| group.scale_idx(i, r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteAbelianGroup {
        FiniteAbelianGroup::cyclic(n).unwrap()
    }

    #[test]
    fn addition_examples() {
        let g = z(5);
        let a = g.element_from_signed(&[2]).unwrap();
        let b = g.element_from_signed(&[4]).unwrap();
        assert_eq!(a.add(&b).unwrap().coords(), &[1]);

        let g = FiniteAbelianGroup::product(&[4, 3]).unwrap();
        let a = g.element_from_signed(&[3, 2]).unwrap();
        let b = g.element_from_signed(&[1, 1]).unwrap();
        assert!(a.add(&b).unwrap().is_zero());
        assert_eq!(a.add(&g.zero()).unwrap(), a);
    }

    #[test]
    fn mismatched_parents_rejected() {
        let a = z(5).element(1);
        let b = z(6).element(1);
        assert_eq!(a.add(&b), Err(GroupError::Mismatch));
    }

    #[test]
    fn negation_examples() {
        assert_eq!(z(5).element(2).negate().coords(), &[3]);
        let g = FiniteAbelianGroup::product(&[4, 3]).unwrap();
        let x = g.element_from_signed(&[1, 2]).unwrap();
        assert_eq!(x.negate().coords(), &[3, 1]);
        assert!(g.zero().negate().is_zero());
    }

    #[test]
    fn index_arithmetic_matches_element_arithmetic() {
        let g = FiniteAbelianGroup::product(&[4, 3, 2]).unwrap();
        for a in 0..g.order() {
            assert_eq!(g.element(g.neg_idx(a)), g.element(a).negate());
            for b in 0..g.order() {
                let via_el = g.element(a).add(&g.element(b)).unwrap();
                assert_eq!(g.element(g.add_idx(a, b)), via_el);
            }
        }
    }

    #[test]
    fn generated_subgroups() {
        let g = z(12);
        let h = subgroup_generated(&g, &[g.element(4)]).unwrap();
        assert_eq!(h.members(), &[0, 4, 8]);

        let g = FiniteAbelianGroup::product(&[4, 3]).unwrap();
        let h = subgroup_generated(&g, &[g.element_from_signed(&[1, 0]).unwrap()]).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.members().iter().all(|&i| g.coords(i)[1] == 0));

        let h = subgroup_generated(&g, &[]).unwrap();
        assert_eq!(h.members(), &[0]);
    }

    #[test]
    fn scaling_examples() {
        let g = z(8);
        let perm = scaling_map(&g, 3).unwrap();
        assert_eq!(perm[2], 6);
        assert!(matches!(
            scaling_map(&g, 2),
            Err(GroupError::NotAutomorphism { gcd: 2, .. })
        ));
        let id = scaling_map(&FiniteAbelianGroup::product(&[4, 3]).unwrap(), 1).unwrap();
        assert_eq!(id, (0..12).collect::<Vec<_>>());
        // negative factors are fine as long as they are units
        let perm = scaling_map(&g, -1).unwrap();
        assert_eq!(perm[3], 5);
    }

    #[test]
    fn literals() {
        let g: FiniteAbelianGroup = "Z4xZ3".parse().unwrap();
        assert_eq!(g.orders(), &[4, 3]);
        assert!(g.weight().is_one());
        let g: FiniteAbelianGroup = "Z8 weight=1/4".parse().unwrap();
        assert_eq!(g.weight(), &BigRational::new(1.into(), 4.into()));
        assert_eq!(g.to_string(), "Z8 weight=1/4");
        assert!("Y8".parse::<FiniteAbelianGroup>().is_err());
        assert!("Z0".parse::<FiniteAbelianGroup>().is_err());
        assert!("Z8 weight=-1".parse::<FiniteAbelianGroup>().is_err());

        let g = z(8);
        assert_eq!(g.parse_element_set("{-1,0,1}").unwrap(), vec![0, 1, 7]);
        let g: FiniteAbelianGroup = "Z4xZ3".parse().unwrap();
        let set = g.parse_element_set("{(0,0),(1,0),(3,0)}").unwrap();
        assert_eq!(set, vec![0, 3, 9]);
        assert_eq!(g.parse_element_set("{}").unwrap(), Vec::<usize>::new());
        assert!(g.parse_element_set("{(0,0),}").is_err());
    }

    #[test]
    fn turns_trig_is_exact_on_rational_points() {
        assert_eq!(Turns::new(1, 4).cos(), 0.0);
        assert_eq!(Turns::new(1, 6).cos(), 0.5);
        assert_eq!(Turns::new(2, 3).cos(), -0.5);
        assert_eq!(Turns::new(1, 2).sin(), 0.0);
        assert_eq!(Turns::new(3, 4).sin(), -1.0);
        assert_eq!(Turns::new(1, 12).sin(), 0.5);
        // 2/8 and 1/4 are the same phase
        assert_eq!(Turns::new(2, 8), Turns::new(1, 4));
        for k in 0..40 {
            let t = Turns::new(k, 40);
            assert_eq!(t.cos(), t.neg().cos());
            assert_eq!(t.sin(), -t.neg().sin());
            let x = std::f64::consts::TAU * k as f64 / 40.0;
            assert!((t.cos() - x.cos()).abs() < 1e-15);
            assert!((t.sin() - x.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn decomposition_is_an_isomorphism() {
        let g = FiniteAbelianGroup::product(&[4, 6]).unwrap();
        for gens in [vec![], vec![1], vec![2, 3], vec![7, 13], vec![1, 6]] {
            let h = subgroup_generated_idx(&g, &gens);
            let (abs, map) = h.decompose();
            assert_eq!(abs.order(), h.order());
            let mut image = map.clone();
            image.sort_unstable();
            assert_eq!(image, h.members());
            for a in 0..abs.order() {
                for b in 0..abs.order() {
                    assert_eq!(map[abs.add_idx(a, b)], g.add_idx(map[a], map[b]));
                }
            }
        }
    }
}
