//! Linear programs over boxed variables and a dense two-phase simplex solver.
//!
//! The solver works on a bounded-variable tableau: every structural variable
//! lives in `[0, u]` after shifting, nonbasic variables sit at either bound,
//! and entering/leaving choices follow Bland's smallest-index rule, so the
//! method terminates on degenerate programs. The same code runs in `f64` and
//! in exact `BigRational` arithmetic through the [`Scalar`] trait.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::group::Turns;
use crate::rational::rational_from_f64;

/// Arithmetic used by the simplex tableau.
pub trait Scalar: Clone + Debug + PartialEq + PartialOrd + Send + Sync {
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(k: i64) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// `cos(2 pi t)`; exact when rational, otherwise a fixed rational
    /// approximation. Equal phases always map to equal scalars.
    fn cos_turns(t: Turns) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact rational value, when this arithmetic is exact.
    fn to_rational(&self) -> BigRational;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn div(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    /// `self -= a * b`.
    fn sub_mul_assign(&mut self, a: &Self, b: &Self);

    /// Exactly zero (no tolerance).
    fn is_exact_zero(&self) -> bool;
    /// Beyond the working tolerance above zero.
    fn is_pos(&self) -> bool;
    fn is_neg(&self) -> bool;
    /// Large enough to pivot on.
    fn is_pivot_pos(&self) -> bool;
    fn is_pivot_neg(&self) -> bool;
    /// Project tiny negative rounding noise to zero.
    fn clamp_nonneg(&self) -> Self;

    /// Gauss-Jordan reduction of `aug` so that row `k` has a unit entry in
    /// column `pivots[k]` and zeros in the other pivot columns. `None` when
    /// the pivot columns are singular.
    fn gauss_jordan(mut aug: Vec<Vec<Self>>, pivots: &[usize]) -> Option<Vec<Vec<Self>>> {
        let m = aug.len();
        for (k, &c) in pivots.iter().enumerate() {
            let p = (k..m).max_by(|&a, &b| {
                aug[a][c]
                    .abs()
                    .partial_cmp(&aug[b][c].abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
            if !aug[p][c].abs().is_pivot_pos() {
                return None;
            }
            aug.swap(p, k);
            let piv = aug[k][c].clone();
            for v in aug[k].iter_mut() {
                *v = v.div(&piv);
            }
            let pivot_row = std::mem::take(&mut aug[k]);
            for (i, row) in aug.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let f = row[c].clone();
                if f.is_exact_zero() {
                    continue;
                }
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    v.sub_mul_assign(&f, pv);
                }
            }
            aug[k] = pivot_row;
        }
        Some(aug)
    }
}

/// Denominator of the dyadic grid that irrational cosines are rounded to
/// in exact arithmetic.
const COS_GRID_BITS: u32 = 48;

/// Reduced-cost and feasibility tolerance in floating point.
pub const FLOAT_TOL: f64 = 1e-10;
/// Smallest pivot magnitude accepted in floating point.
pub const FLOAT_PIVOT_TOL: f64 = 1e-9;

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(k: i64) -> Self {
        k as f64
    }
    fn from_rational(r: &BigRational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }
    fn cos_turns(t: Turns) -> Self {
        t.cos()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_rational(&self) -> BigRational {
        rational_from_f64(*self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn is_exact_zero(&self) -> bool {
        *self == 0.0
    }
    fn is_pos(&self) -> bool {
        *self > FLOAT_TOL
    }
    fn is_neg(&self) -> bool {
        *self < -FLOAT_TOL
    }
    fn is_pivot_pos(&self) -> bool {
        *self > FLOAT_PIVOT_TOL
    }
    fn is_pivot_neg(&self) -> bool {
        *self < -FLOAT_PIVOT_TOL
    }
    fn clamp_nonneg(&self) -> Self {
        self.max(0.0)
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(k: i64) -> Self {
        BigRational::from_integer(k.into())
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn cos_turns(t: Turns) -> Self {
        // A shared power-of-two denominator keeps elimination fraction-free
        // friendly; the rounding error is below 2^-48.
        t.cos_exact().unwrap_or_else(|| {
            let scale = (1u64 << COS_GRID_BITS) as f64;
            let k = (t.cos() * scale).round() as i64;
            BigRational::new(BigInt::from(k), BigInt::from(1u64 << COS_GRID_BITS))
        })
    }
    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn sub_mul_assign(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }
    fn is_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_neg(&self) -> bool {
        self.is_negative()
    }
    fn is_pivot_pos(&self) -> bool {
        self.is_positive()
    }
    fn is_pivot_neg(&self) -> bool {
        self.is_negative()
    }
    fn clamp_nonneg(&self) -> Self {
        self.clone()
    }

    fn gauss_jordan(aug: Vec<Vec<Self>>, pivots: &[usize]) -> Option<Vec<Vec<Self>>> {
        // Bareiss-style fraction-free elimination on integer-scaled rows;
        // every intermediate entry is a minor, so divisions are exact.
        let mut a: Vec<Vec<BigInt>> = aug.into_iter().map(integer_row).collect();
        let m = a.len();
        let mut prev = BigInt::one();
        for (k, &c) in pivots.iter().enumerate() {
            let p = (k..m)
                .filter(|&i| !a[i][c].is_zero())
                .min_by_key(|&i| a[i][c].bits())?;
            a.swap(p, k);
            let pivot_row = std::mem::take(&mut a[k]);
            let piv = &pivot_row[c];
            for (i, row) in a.iter_mut().enumerate() {
                if i == k {
                    continue;
                }
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    if v.is_zero() && (f.is_zero() || pv.is_zero()) {
                        continue;
                    }
                    let mut t = piv * &*v;
                    if !f.is_zero() && !pv.is_zero() {
                        t -= &f * pv;
                    }
                    *v = t / &prev;
                }
            }
            prev = piv.clone();
            a[k] = pivot_row;
        }
        Some(
            a.into_iter()
                .zip(pivots)
                .map(|(row, &c)| {
                    let d = row[c].clone();
                    row.into_iter().map(|x| BigRational::new(x, d.clone())).collect()
                })
                .collect(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constraint<T> {
    pub coeffs: Vec<(usize, T)>,
    pub sense: Sense,
    pub rhs: T,
}

impl<T: Scalar> Constraint<T> {
    pub fn activity(&self, x: &[T]) -> T {
        self.coeffs
            .iter()
            .fold(T::zero(), |acc, (j, a)| acc.add(&a.mul(&x[*j])))
    }
}

/// `max/min c^T x` subject to sparse rows and finite boxes `l <= x <= u`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub maximize: bool,
    pub lower: Vec<T>,
    pub upper: Vec<T>,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("row {row} references variable {var} but there are only {count}")]
    BadVariable { row: usize, var: usize, count: usize },
    #[error("variable {0} has lower bound above upper bound")]
    EmptyBox(usize),
    #[error("bound and objective vectors have inconsistent lengths")]
    Shape,
    #[error("program is infeasible")]
    Infeasible,
    #[error("program is unbounded")]
    Unbounded,
    #[error("iteration limit {0} reached")]
    IterationLimit(usize),
}

/// Optimal point with its dual multipliers.
///
/// Dual signs follow the maximization convention: `y >= 0` on `<=` rows and
/// `y <= 0` on `>=` rows. A minimization is reported as the maximization of
/// `-c^T x`. Variable-bound multipliers are implied by the
/// reduced costs `d = c - A^T y`.
#[derive(Debug, Clone, PartialEq)]
pub struct LpOutcome<T> {
    pub x: Vec<T>,
    pub objective: T,
    pub row_duals: Vec<T>,
    pub iterations: usize,
    pub pivots: usize,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize, maximize: bool) -> Self {
        Self {
            objective: vec![T::zero(); num_vars],
            maximize,
            lower: vec![T::zero(); num_vars],
            upper: vec![T::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.lower.len() != n || self.upper.len() != n {
            return Err(LpError::Shape);
        }
        for j in 0..n {
            if self.lower[j] > self.upper[j] {
                return Err(LpError::EmptyBox(j));
            }
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if let Some(&(var, _)) = c.coeffs.iter().find(|(j, _)| *j >= n) {
                return Err(LpError::BadVariable { row, var, count: n });
            }
        }
        Ok(())
    }

    pub fn objective_value(&self, x: &[T]) -> T {
        self.objective
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (c, v)| acc.add(&c.mul(v)))
    }

    /// `d_j = c_j - sum_i a_ij y_i`, in the maximization convention.
    pub fn reduced_costs(&self, y: &[T]) -> Vec<T> {
        let mut d: Vec<T> = if self.maximize {
            self.objective.clone()
        } else {
            self.objective.iter().map(|c| c.neg()).collect()
        };
        for (c, yi) in self.constraints.iter().zip(y) {
            if yi.is_exact_zero() {
                continue;
            }
            for (j, a) in &c.coeffs {
                d[*j].sub_mul_assign(a, yi);
            }
        }
        d
    }

    /// `b^T y + sum_j (max(d_j,0) u_j + min(d_j,0) l_j)`, in the maximization convention.
    pub fn dual_objective(&self, y: &[T]) -> T {
        let d = self.reduced_costs(y);
        let mut total = self
            .constraints
            .iter()
            .zip(y)
            .fold(T::zero(), |acc, (c, yi)| acc.add(&c.rhs.mul(yi)));
        for (j, dj) in d.iter().enumerate() {
            let bound = if *dj > T::zero() { &self.upper[j] } else { &self.lower[j] };
            total = total.add(&dj.mul(bound));
        }
        total
    }

    /// Solve to optimality.
    ///
    /// Exact programs first run the simplex on a floating-point copy, then
    /// adopt its final basis after checking primal feasibility and
    /// optimality exactly. A basis that is only slightly infeasible in exact
    /// arithmetic is repaired by dual simplex pivots; a basis that cannot be
    /// used at all makes the exact simplex start over. Either way the answer
    /// is exact.
    pub fn solve(&self) -> Result<LpOutcome<T>, LpError> {
        self.validate()?;
        let mut std = StandardForm::build(self);
        if T::EXACT {
            let mut float = std.to_float();
            if float.run().is_ok() && std.adopt_basis(&float) {
                return Ok(std.extract(self));
            }
            std = StandardForm::build(self);
        }
        std.run()?;
        Ok(std.extract(self))
    }
}

/// Scale a rational row by the least common multiple of its denominators.
fn integer_row(row: Vec<BigRational>) -> Vec<BigInt> {
    let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.into_iter()
        .map(|x| {
            let (n, d) = x.into_raw();
            n * (&l / d)
        })
        .collect()
}

/// Solve `M z = rhs`; `None` when `M` is singular.
fn solve_dense<T: Scalar>(mat: Vec<Vec<T>>, rhs: Vec<T>) -> Option<Vec<T>> {
    let n = rhs.len();
    let aug: Vec<Vec<T>> = mat
        .into_iter()
        .zip(rhs)
        .map(|(mut row, r)| {
            row.push(r);
            row
        })
        .collect();
    let pivots: Vec<usize> = (0..n).collect();
    let reduced = T::gauss_jordan(aug, &pivots)?;
    Some(reduced.into_iter().map(|mut row| row.pop().expect("rhs column")).collect())
}

/// How an original variable maps onto nonnegative tableau columns.
#[derive(Debug, Clone)]
enum VarMap {
    Fixed,
    Shifted { col: usize, sign_positive: bool },
    Split { pos: usize, neg: usize },
}

struct StandardForm<T> {
    rows: Vec<Vec<T>>,
    beta: Vec<T>,
    basis: Vec<usize>,
    upper: Vec<Option<T>>,
    at_upper: Vec<bool>,
    barred: Vec<bool>,
    cost: Vec<T>,
    reduced: Vec<T>,
    identity_col: Vec<usize>,
    flipped: Vec<bool>,
    var_maps: Vec<VarMap>,
    offsets: Vec<T>,
    artificial: Vec<usize>,
    iterations: usize,
    pivots: usize,
    original: Vec<Vec<T>>,
    original_rhs: Vec<T>,
    active_cost: Vec<T>,
    since_refactor: usize,
}

const MAX_ITERATIONS: usize = 200_000;
/// Floating-point tableaus are rebuilt from the original rows this often.
const REFACTOR_EVERY: usize = 40;

impl<T: Scalar> StandardForm<T> {
    fn build(lp: &LinearProgram<T>) -> Self {
        let n = lp.num_vars();
        let mut var_maps = Vec::with_capacity(n);
        let mut offsets = Vec::with_capacity(n);
        let mut col_upper: Vec<T> = Vec::new();
        let mut col_cost: Vec<T> = Vec::new();
        let sign = if lp.maximize { T::one() } else { T::one().neg() };
        for j in 0..n {
            let (l, u) = (&lp.lower[j], &lp.upper[j]);
            let c = lp.objective[j].mul(&sign);
            if l == u {
                var_maps.push(VarMap::Fixed);
                offsets.push(l.clone());
            } else if *l >= T::zero() {
                var_maps.push(VarMap::Shifted {
                    col: col_upper.len(),
                    sign_positive: true,
                });
                offsets.push(l.clone());
                col_upper.push(u.sub(l));
                col_cost.push(c);
            } else if *u <= T::zero() {
                var_maps.push(VarMap::Shifted {
                    col: col_upper.len(),
                    sign_positive: false,
                });
                offsets.push(u.clone());
                col_upper.push(u.sub(l));
                col_cost.push(c.neg());
            } else {
                let pos = col_upper.len();
                var_maps.push(VarMap::Split { pos, neg: pos + 1 });
                offsets.push(T::zero());
                col_upper.push(u.clone());
                col_upper.push(l.neg());
                col_cost.push(c.clone());
                col_cost.push(c.neg());
            }
        }
        let n_struct = col_upper.len();
        let m = lp.constraints.len();

        // dense structural rows with shifted right-hand sides
        let mut dense: Vec<Vec<T>> = Vec::with_capacity(m);
        let mut rhs: Vec<T> = Vec::with_capacity(m);
        let mut senses: Vec<Sense> = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        for c in &lp.constraints {
            let mut row = vec![T::zero(); n_struct];
            let mut b = c.rhs.clone();
            for (j, a) in &c.coeffs {
                b.sub_mul_assign(a, &offsets[*j]);
                match var_maps[*j] {
                    VarMap::Fixed => {}
                    VarMap::Shifted { col, sign_positive } => {
                        if sign_positive {
                            row[col] = row[col].add(a);
                        } else {
                            row[col] = row[col].sub(a);
                        }
                    }
                    VarMap::Split { pos, neg } => {
                        row[pos] = row[pos].add(a);
                        row[neg] = row[neg].sub(a);
                    }
                }
            }
            let mut sense = c.sense;
            let flip = b < T::zero() || (sense == Sense::Ge && b.is_exact_zero());
            if flip {
                for v in &mut row {
                    *v = v.neg();
                }
                b = b.neg();
                sense = match sense {
                    Sense::Le => Sense::Ge,
                    Sense::Ge => Sense::Le,
                    Sense::Eq => Sense::Eq,
                };
            }
            dense.push(row);
            rhs.push(b);
            senses.push(sense);
            flipped.push(flip);
        }

        let n_slack = senses.iter().filter(|s| **s != Sense::Eq).count();
        let n_art = senses.iter().filter(|s| **s != Sense::Le).count();
        let total = n_struct + n_slack + n_art;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let mut identity_col = Vec::with_capacity(m);
        let mut artificial = Vec::new();
        let mut next_slack = n_struct;
        let mut next_art = n_struct + n_slack;
        for (i, mut row) in dense.into_iter().enumerate() {
            row.resize(total, T::zero());
            match senses[i] {
                Sense::Le => {
                    row[next_slack] = T::one();
                    basis.push(next_slack);
                    identity_col.push(next_slack);
                    next_slack += 1;
                }
                Sense::Ge => {
                    row[next_slack] = T::one().neg();
                    next_slack += 1;
                    row[next_art] = T::one();
                    basis.push(next_art);
                    identity_col.push(next_art);
                    artificial.push(next_art);
                    next_art += 1;
                }
                Sense::Eq => {
                    row[next_art] = T::one();
                    basis.push(next_art);
                    identity_col.push(next_art);
                    artificial.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        let mut upper: Vec<Option<T>> = col_upper.into_iter().map(Some).collect();
        upper.resize(total, None);
        let mut cost = col_cost;
        cost.resize(total, T::zero());
        Self {
            original: rows.clone(),
            original_rhs: rhs.clone(),
            active_cost: vec![T::zero(); total],
            since_refactor: 0,
            rows,
            beta: rhs,
            basis,
            upper,
            at_upper: vec![false; total],
            barred: vec![false; total],
            cost,
            reduced: vec![T::zero(); total],
            identity_col,
            flipped,
            var_maps,
            offsets,
            artificial,
            iterations: 0,
            pivots: 0,
        }
    }

    fn price(&mut self, cost: &[T]) {
        self.active_cost = cost.to_vec();
        let total = self.reduced.len();
        for j in 0..total {
            let mut r = cost[j].neg();
            for (i, row) in self.rows.iter().enumerate() {
                let cb = &cost[self.basis[i]];
                if !cb.is_exact_zero() && !row[j].is_exact_zero() {
                    r = r.add(&cb.mul(&row[j]));
                }
            }
            self.reduced[j] = r;
        }
    }

    fn run(&mut self) -> Result<(), LpError> {
        if !self.artificial.is_empty() {
            let mut phase1 = vec![T::zero(); self.cost.len()];
            for &a in &self.artificial {
                phase1[a] = T::one().neg();
            }
            self.price(&phase1);
            self.iterate()?;
            let infeasibility = self
                .basis
                .iter()
                .zip(&self.beta)
                .filter(|(b, _)| self.artificial.contains(b))
                .fold(T::zero(), |acc, (_, v)| acc.add(v));
            let infeasible = if T::EXACT {
                infeasibility.is_pos()
            } else {
                infeasibility.to_f64() > 1e-8
            };
            if infeasible {
                return Err(LpError::Infeasible);
            }
            for &a in &self.artificial {
                self.barred[a] = true;
                self.upper[a] = Some(T::zero());
            }
        }
        let cost = self.cost.clone();
        self.price(&cost);
        self.iterate()
    }

    fn iterate(&mut self) -> Result<(), LpError> {
        loop {
            if self.iterations >= MAX_ITERATIONS {
                return Err(LpError::IterationLimit(MAX_ITERATIONS));
            }
            if !T::EXACT && self.since_refactor >= REFACTOR_EVERY {
                self.refactor();
            }
            let Some(entering) = self.choose_entering() else {
                if !T::EXACT && self.since_refactor > 0 {
                    self.refactor();
                    continue;
                }
                return Ok(());
            };
            self.since_refactor += 1;
            self.iterations += 1;
            self.step(entering)?;
        }
    }

    /// Same tableau in `f64`.
    fn to_float(&self) -> StandardForm<f64> {
        let conv = |v: &T| v.to_f64();
        let convv = |v: &[T]| v.iter().map(conv).collect::<Vec<f64>>();
        StandardForm {
            rows: self.rows.iter().map(|r| convv(r)).collect(),
            beta: convv(&self.beta),
            basis: self.basis.clone(),
            upper: self.upper.iter().map(|u| u.as_ref().map(conv)).collect(),
            at_upper: self.at_upper.clone(),
            barred: self.barred.clone(),
            cost: convv(&self.cost),
            reduced: convv(&self.reduced),
            identity_col: self.identity_col.clone(),
            flipped: self.flipped.clone(),
            var_maps: self.var_maps.clone(),
            offsets: convv(&self.offsets),
            artificial: self.artificial.clone(),
            iterations: 0,
            pivots: 0,
            original: self.original.iter().map(|r| convv(r)).collect(),
            original_rhs: convv(&self.original_rhs),
            active_cost: convv(&self.active_cost),
            since_refactor: 0,
        }
    }

    /// Take over the final basis of a floating-point run.
    ///
    /// Solves for the basic values and the row multipliers in this
    /// arithmetic, and accepts the basis only if it is primal feasible and
    /// no nonbasic column can improve the objective. A feasible but
    /// non-optimal basis is refactored and the simplex continues from it.
    fn adopt_basis(&mut self, float: &StandardForm<f64>) -> bool {
        let m = self.rows.len();
        let total = self.reduced.len();
        for &a in &self.artificial {
            self.barred[a] = true;
            self.upper[a] = Some(T::zero());
        }
        let basis = float.basis.clone();
        let mut is_basic = vec![false; total];
        for &b in &basis {
            is_basic[b] = true;
        }
        let at_upper: Vec<bool> = (0..total)
            .map(|j| {
                !is_basic[j]
                    && float.at_upper[j]
                    && matches!(&self.upper[j], Some(u) if !u.is_exact_zero())
            })
            .collect();

        let mut rhs = self.original_rhs.clone();
        for j in (0..total).filter(|&j| at_upper[j]) {
            let u = self.upper[j].clone().expect("finite upper bound");
            for (i, r) in rhs.iter_mut().enumerate() {
                if !self.original[i][j].is_exact_zero() {
                    r.sub_mul_assign(&self.original[i][j], &u);
                }
            }
        }
        let bmat: Vec<Vec<T>> = (0..m)
            .map(|i| basis.iter().map(|&b| self.original[i][b].clone()).collect())
            .collect();
        let Some(x_b) = solve_dense(bmat.clone(), rhs) else {
            return false;
        };
        let feasible = x_b.iter().zip(&basis).all(|(v, &b)| !self.out_of_bounds(v, b));
        self.basis = basis;
        self.beta = x_b;
        self.at_upper = at_upper;
        self.iterations = float.iterations;
        self.pivots = float.pivots;
        self.active_cost = self.cost.clone();
        if feasible {
            let m = self.basis.len();
            let bt: Vec<Vec<T>> = (0..m)
                .map(|k| (0..m).map(|i| bmat[i][k].clone()).collect())
                .collect();
            let c_b: Vec<T> = self.basis.iter().map(|&b| self.cost[b].clone()).collect();
            let Some(y) = solve_dense(bt, c_b) else {
                return false;
            };
            self.reduced = (0..total)
                .map(|j| {
                    let mut r = self.cost[j].neg();
                    for (i, yi) in y.iter().enumerate() {
                        if !yi.is_exact_zero() && !self.original[i][j].is_exact_zero() {
                            r = r.add(&yi.mul(&self.original[i][j]));
                        }
                    }
                    r
                })
                .collect();
            if self.choose_entering().is_none() {
                return true;
            }
        }
        // slow path: full tableau for this basis, then repair
        if !self.refactor() {
            return false;
        }
        if !feasible && (self.choose_entering().is_some() || self.dual_iterate().is_err()) {
            return false;
        }
        self.iterate().is_ok()
    }

    fn out_of_bounds(&self, v: &T, col: usize) -> bool {
        v.is_neg() || self.upper[col].as_ref().is_some_and(|u| v.sub(u).is_pos())
    }

    /// Bounded dual simplex: from a dual feasible basis, pivot out primal
    /// infeasible basic variables until the basis is feasible. Leaving rows
    /// and entering columns are chosen by smallest index among candidates.
    fn dual_iterate(&mut self) -> Result<(), LpError> {
        loop {
            if self.iterations >= MAX_ITERATIONS {
                return Err(LpError::IterationLimit(MAX_ITERATIONS));
            }
            let leaving = (0..self.basis.len())
                .filter(|&r| self.out_of_bounds(&self.beta[r], self.basis[r]))
                .min_by_key(|&r| self.basis[r]);
            let Some(r) = leaving else {
                return Ok(());
            };
            let b = self.basis[r];
            let above = !self.beta[r].is_neg();
            let target = if above {
                self.upper[b].clone().expect("above a finite bound")
            } else {
                T::zero()
            };
            let delta = self.beta[r].sub(&target);
            let mut is_basic = vec![false; self.reduced.len()];
            for &k in &self.basis {
                is_basic[k] = true;
            }
            let mut best: Option<(T, usize)> = None;
            for (j, &basic) in is_basic.iter().enumerate() {
                if basic || self.barred[j] {
                    continue;
                }
                if matches!(&self.upper[j], Some(u) if u.is_exact_zero()) {
                    continue;
                }
                let a = &self.rows[r][j];
                if a.is_exact_zero() {
                    continue;
                }
                let t = delta.div(a);
                let moves_ok = if self.at_upper[j] { t.is_neg() } else { t.is_pos() };
                if !moves_ok {
                    continue;
                }
                let ratio = self.reduced[j].div(a).abs();
                if best.as_ref().is_none_or(|(q, _)| ratio < *q) {
                    best = Some((ratio, j));
                }
            }
            let Some((_, j)) = best else {
                return Err(LpError::Infeasible);
            };
            let t = delta.div(&self.rows[r][j]);
            for i in 0..self.rows.len() {
                let a = self.rows[i][j].clone();
                if !a.is_exact_zero() {
                    self.beta[i].sub_mul_assign(&a, &t);
                }
            }
            let entering_value = if self.at_upper[j] {
                self.upper[j].clone().expect("at upper implies finite bound").add(&t)
            } else {
                t
            };
            self.at_upper[b] = above;
            self.at_upper[j] = false;
            self.pivot(r, j);
            self.beta[r] = entering_value;
            self.basis[r] = j;
            self.iterations += 1;
            self.pivots += 1;
        }
    }

    /// Recompute `B^-1 A`, the basic values and the reduced costs from the
    /// original rows by Gauss-Jordan elimination with partial pivoting.
    /// Leaves the tableau untouched if the basis matrix looks singular.
    fn refactor(&mut self) -> bool {
        self.since_refactor = 0;
        let m = self.rows.len();
        if m == 0 {
            return true;
        }
        let total = self.reduced.len();
        let mut rhs = self.original_rhs.clone();
        for j in 0..total {
            if self.at_upper[j] {
                if let Some(u) = &self.upper[j] {
                    for (i, r) in rhs.iter_mut().enumerate() {
                        r.sub_mul_assign(&self.original[i][j], u);
                    }
                }
            }
        }
        let aug: Vec<Vec<T>> = (0..m)
            .map(|i| {
                let mut row = self.original[i].clone();
                row.push(rhs[i].clone());
                row
            })
            .collect();
        let Some(reduced) = T::gauss_jordan(aug, &self.basis) else {
            return false;
        };
        for (i, mut row) in reduced.into_iter().enumerate() {
            self.beta[i] = row.pop().expect("rhs column");
            self.rows[i] = row;
        }
        let cost = self.active_cost.clone();
        self.price(&cost);
        true
    }

    fn choose_entering(&self) -> Option<usize> {
        let mut is_basic = vec![false; self.reduced.len()];
        for &b in &self.basis {
            is_basic[b] = true;
        }
        (0..self.reduced.len()).find(|&j| {
            if is_basic[j] || self.barred[j] {
                return false;
            }
            if matches!(&self.upper[j], Some(u) if u.is_exact_zero()) {
                return false;
            }
            let r = &self.reduced[j];
            if self.at_upper[j] {
                r.is_pos()
            } else {
                r.is_neg()
            }
        })
    }

    fn step(&mut self, j: usize) -> Result<(), LpError> {
        let increasing = !self.at_upper[j];
        // candidate: (step length, leaving row or None for a bound flip)
        let mut best: Option<(T, Option<usize>)> = self.upper[j].clone().map(|u| (u, None));
        for i in 0..self.rows.len() {
            let a = if increasing {
                self.rows[i][j].clone()
            } else {
                self.rows[i][j].neg()
            };
            let limit = if a.is_pivot_pos() {
                self.beta[i].clamp_nonneg().div(&a)
            } else if a.is_pivot_neg() {
                match &self.upper[self.basis[i]] {
                    Some(u) => u.sub(&self.beta[i]).clamp_nonneg().div(&a.neg()),
                    None => continue,
                }
            } else {
                continue;
            };
            let better = match &best {
                None => true,
                Some((t, None)) => limit < *t,
                Some((t, Some(r))) => {
                    limit < *t || (limit == *t && self.basis[i] < self.basis[*r])
                }
            };
            if better {
                best = Some((limit, Some(i)));
            }
        }
        let Some((t, leaving)) = best else {
            return Err(LpError::Unbounded);
        };

        // move basic variables along the edge
        let signed_t = if increasing { t.clone() } else { t.neg() };
        if !signed_t.is_exact_zero() {
            for i in 0..self.rows.len() {
                let a = self.rows[i][j].clone();
                if !a.is_exact_zero() {
                    self.beta[i].sub_mul_assign(&a, &signed_t);
                }
            }
        }

        let Some(r) = leaving else {
            self.at_upper[j] = !self.at_upper[j];
            return Ok(());
        };

        let entering_value = if self.at_upper[j] {
            self.upper[j].clone().expect("at upper implies finite bound").add(&signed_t)
        } else {
            signed_t.clone()
        };
        let leaving_var = self.basis[r];
        let a = if increasing {
            self.rows[r][j].clone()
        } else {
            self.rows[r][j].neg()
        };
        // leaving variable exits at the bound it hit
        self.at_upper[leaving_var] = a.is_pivot_neg();
        if self.at_upper[leaving_var] {
            if let Some(u) = &self.upper[leaving_var] {
                if u.is_exact_zero() {
                    self.at_upper[leaving_var] = false;
                }
            }
        }
        self.at_upper[j] = false;
        self.pivot(r, j);
        self.beta[r] = entering_value;
        self.basis[r] = j;
        self.pivots += 1;
        Ok(())
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            if !v.is_exact_zero() {
                *v = v.div(&p);
            }
        }
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let nz: Vec<usize> = (0..pivot_row.len())
            .filter(|&k| !pivot_row[k].is_exact_zero())
            .collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[j].clone();
            if f.is_exact_zero() {
                continue;
            }
            for &k in &nz {
                row[k].sub_mul_assign(&f, &pivot_row[k]);
            }
            if !T::EXACT {
                row[j] = T::zero();
            }
        }
        let f = self.reduced[j].clone();
        if !f.is_exact_zero() {
            for &k in &nz {
                self.reduced[k].sub_mul_assign(&f, &pivot_row[k]);
            }
            if !T::EXACT {
                self.reduced[j] = T::zero();
            }
        }
        self.rows[r] = pivot_row;
    }

    fn column_values(&self) -> Vec<T> {
        let mut vals: Vec<T> = (0..self.reduced.len())
            .map(|j| {
                if self.at_upper[j] {
                    self.upper[j].clone().unwrap_or_else(T::zero)
                } else {
                    T::zero()
                }
            })
            .collect();
        for (i, &b) in self.basis.iter().enumerate() {
            vals[b] = self.beta[i].clone();
        }
        vals
    }

    fn extract(&self, lp: &LinearProgram<T>) -> LpOutcome<T> {
        let cols = self.column_values();
        let x: Vec<T> = self
            .var_maps
            .iter()
            .zip(&self.offsets)
            .map(|(map, off)| match *map {
                VarMap::Fixed => off.clone(),
                VarMap::Shifted { col, sign_positive } => {
                    if sign_positive {
                        off.add(&cols[col])
                    } else {
                        off.sub(&cols[col])
                    }
                }
                VarMap::Split { pos, neg } => cols[pos].sub(&cols[neg]),
            })
            .collect();
        let row_duals = self
            .identity_col
            .iter()
            .zip(&self.flipped)
            .map(|(&c, &flip)| {
                let y = self.reduced[c].clone();
                if flip {
                    y.neg()
                } else {
                    y
                }
            })
            .collect();
        LpOutcome {
            objective: lp.objective_value(&x),
            x,
            row_duals,
            iterations: self.iterations,
            pivots: self.pivots,
        }
    }
}
