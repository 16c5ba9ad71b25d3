//! Functions on finite abelian groups and their Fourier analysis.
//!
//! Normalization: the forward transform carries the Haar weight,
//! `f^(chi) = h * sum_g f(g) conj(chi(g))`, and the inverse carries
//! `1 / (h |G|)`. With this choice `f^(0)` is exactly the integral of `f`.
//!
//! The transform is the direct `O(|G|^2)` sum over an exact phase table.
//! Every spectral certificate in the crate goes through it.

use std::fmt::Write as _;
use std::sync::{Arc, OnceLock};

use num_complex::Complex64;
use thiserror::Error;

use crate::format::sig12;
use crate::group::{FiniteAbelianGroup, Turns};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HarmonicError {
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("value at index {0} is not finite")]
    NonFinite(usize),
    #[error("functions live on different groups")]
    GroupMismatch,
    #[error("subset is empty")]
    EmptySubset,
    #[error("index {0} is outside the group")]
    IndexOutOfRange(usize),
    #[error("box half-width {m} too large: need 2m+1 <= {min_order}")]
    KernelTooWide { m: usize, min_order: u64 },
    #[error("malformed function CSV at line {line}: {reason}")]
    Csv { line: usize, reason: String },
}

/// Real-valued function on a finite group, one value per element in canonical order.
#[derive(Debug, Clone)]
pub struct GroupFunction {
    group: Arc<FiniteAbelianGroup>,
    values: Vec<f64>,
    spectrum: OnceLock<Spectrum>,
}

impl PartialEq for GroupFunction {
    fn eq(&self, other: &Self) -> bool {
        self.group == other.group && self.values == other.values
    }
}

impl GroupFunction {
    pub fn new(group: Arc<FiniteAbelianGroup>, values: Vec<f64>) -> Result<Self, HarmonicError> {
        if values.len() != group.order() {
            return Err(HarmonicError::Length {
                expected: group.order(),
                got: values.len(),
            });
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(HarmonicError::NonFinite(i));
        }
        Ok(Self {
            group,
            values,
            spectrum: OnceLock::new(),
        })
    }

    pub fn zeros(group: Arc<FiniteAbelianGroup>) -> Self {
        let n = group.order();
        Self::new(group, vec![0.0; n]).expect("length matches")
    }

    pub fn constant(group: Arc<FiniteAbelianGroup>, c: f64) -> Self {
        let n = group.order();
        Self::new(group, vec![c; n]).expect("length matches")
    }

    /// The point mass `delta_0` (value 1 at the identity).
    pub fn delta(group: Arc<FiniteAbelianGroup>) -> Self {
        let mut f = vec![0.0; group.order()];
        f[0] = 1.0;
        Self::new(group, f).expect("length matches")
    }

    pub fn indicator(group: Arc<FiniteAbelianGroup>, members: &[usize]) -> Result<Self, HarmonicError> {
        let mut f = vec![0.0; group.order()];
        for &m in members {
            *f.get_mut(m).ok_or(HarmonicError::IndexOutOfRange(m))? = 1.0;
        }
        Self::new(group, f)
    }

    pub fn from_fn(group: Arc<FiniteAbelianGroup>, f: impl Fn(usize) -> f64) -> Result<Self, HarmonicError> {
        let values = (0..group.order()).map(f).collect();
        Self::new(group, values)
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, index: usize) -> f64 {
        self.values[index]
    }

    pub fn at_zero(&self) -> f64 {
        self.values[0]
    }

    /// `h * sum_g f(g)`.
    pub fn integral(&self) -> f64 {
        self.group.weight_f64() * self.values.iter().sum::<f64>()
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Whether `f(-g) == f(g)` holds bit-for-bit.
    pub fn is_even(&self) -> bool {
        (0..self.values.len()).all(|i| self.values[i] == self.values[self.group.neg_idx(i)])
    }

    /// Spectrum, computed once and cached.
    pub fn spectrum(&self) -> &Spectrum {
        self.spectrum.get_or_init(|| dft(self))
    }

    /// `g -> f(R g)`.
    pub fn compose_scaling(&self, perm: &[usize]) -> Result<Self, HarmonicError> {
        if perm.len() != self.values.len() {
            return Err(HarmonicError::Length {
                expected: self.values.len(),
                got: perm.len(),
            });
        }
        Self::new(self.group.clone(), perm.iter().map(|&p| self.values[p]).collect())
    }

    /// CSV with columns `index, x0, x1, ..., value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("index");
        for k in 0..self.group.rank() {
            let _ = write!(out, ",x{k}");
        }
        out.push_str(",value\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = write!(out, "{i}");
            for c in self.group.coords(i) {
                let _ = write!(out, ",{c}");
            }
            let _ = writeln!(out, ",{}", sig12(*v));
        }
        out
    }

    /// Read the format written by [`GroupFunction::to_csv`]. Elements are located by
    /// their coordinates; the index column is informational.
    pub fn from_csv(group: Arc<FiniteAbelianGroup>, text: &str) -> Result<Self, HarmonicError> {
        let rank = group.rank();
        let mut values = vec![None; group.order()];
        for (line_no, line) in text.lines().enumerate().skip(1) {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split(',').map(str::trim).collect();
            let csv_err = |reason: String| HarmonicError::Csv {
                line: line_no + 1,
                reason,
            };
            if cols.len() != rank + 2 {
                return Err(csv_err(format!("expected {} columns", rank + 2)));
            }
            let coords = cols[1..=rank]
                .iter()
                .map(|c| c.parse::<i64>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| csv_err(e.to_string()))?;
            let el = group
                .element_from_signed(&coords)
                .map_err(|e| csv_err(e.to_string()))?;
            let idx = group.index_of(&el).map_err(|e| csv_err(e.to_string()))?;
            let v: f64 = cols[rank + 1].parse().map_err(|_| csv_err("bad value".into()))?;
            values[idx] = Some(v);
        }
        let missing = values.iter().filter(|v| v.is_none()).count();
        if missing > 0 {
            return Err(HarmonicError::Csv {
                line: 0,
                reason: format!("{missing} elements have no value"),
            });
        }
        Self::new(group, values.into_iter().map(Option::unwrap).collect())
    }
}

/// One complex value per character, in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    group: Arc<FiniteAbelianGroup>,
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(group: Arc<FiniteAbelianGroup>, values: Vec<Complex64>) -> Result<Self, HarmonicError> {
        if values.len() != group.order() {
            return Err(HarmonicError::Length {
                expected: group.order(),
                got: values.len(),
            });
        }
        Ok(Self { group, values })
    }

    pub fn group(&self) -> &Arc<FiniteAbelianGroup> {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn value(&self, chi: usize) -> Complex64 {
        self.values[chi]
    }

    pub fn min_real(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.re))
            .fold((0, f64::INFINITY), |a, b| if b.1 < a.1 { b } else { a })
    }

    pub fn max_abs_imag(&self) -> (usize, f64) {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| (i, v.im.abs()))
            .fold((0, 0.0), |a, b| if b.1 > a.1 { b } else { a })
    }

    /// Total absolute spectral mass `sum |f^(chi)|`.
    pub fn mass(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    /// CSV with columns `char_index, value_re, value_im`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("char_index,value_re,value_im\n");
        for (i, v) in self.values.iter().enumerate() {
            let _ = writeln!(out, "{i},{},{}", sig12(v.re), sig12(v.im));
        }
        out
    }
}

/// `cos` and `sin` of `k / exponent` turns for every `k`, via the exact phase type.
struct PhaseTable {
    modulus: u64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl PhaseTable {
    fn new(group: &FiniteAbelianGroup) -> Self {
        let modulus = group.exponent();
        let (cos, sin) = (0..modulus)
            .map(|k| {
                let t = Turns::new(k, modulus);
                (t.cos(), t.sin())
            })
            .unzip();
        Self { modulus, cos, sin }
    }
}

/// Phase numerators `chi(g) = k / exponent`, computed from cached coordinates.
struct Pairing {
    coords: Vec<Vec<u64>>,
    scale: Vec<u64>,
    orders: Vec<u64>,
    modulus: u64,
}

impl Pairing {
    fn new(group: &FiniteAbelianGroup) -> Self {
        let modulus = group.exponent();
        Self {
            coords: (0..group.order()).map(|i| group.coords(i)).collect(),
            scale: group.orders().iter().map(|&n| modulus / n).collect(),
            orders: group.orders().to_vec(),
            modulus,
        }
    }

    fn numerator(&self, chi: usize, g: usize) -> usize {
        let a = &self.coords[chi];
        let b = &self.coords[g];
        let mut acc = 0u128;
        for k in 0..a.len() {
            let prod = (a[k] as u128 * b[k] as u128) % self.orders[k] as u128;
            acc += prod * self.scale[k] as u128;
        }
        (acc % self.modulus as u128) as usize
    }
}

/// Forward transform `f^(chi) = h sum_g f(g) conj(chi(g))`.
pub fn dft(f: &GroupFunction) -> Spectrum {
    let group = f.group();
    let table = PhaseTable::new(group);
    let pairing = Pairing::new(group);
    let h = group.weight_f64();
    let n = group.order();
    debug_assert_eq!(table.modulus, pairing.modulus);
    let values = (0..n)
        .map(|chi| {
            let mut re = 0.0;
            let mut im = 0.0;
            for (g, &v) in f.values().iter().enumerate() {
                if v == 0.0 {
                    continue;
                }
                let k = pairing.numerator(chi, g);
                re += v * table.cos[k];
                im -= v * table.sin[k];
            }
            Complex64::new(h * re, h * im)
        })
        .collect();
    Spectrum {
        group: group.clone(),
        values,
    }
}

/// Inverse transform `f(g) = 1/(h|G|) sum_chi f^(chi) chi(g)`, complex output.
pub fn idft_complex(s: &Spectrum) -> Vec<Complex64> {
    let group = s.group();
    let table = PhaseTable::new(group);
    let pairing = Pairing::new(group);
    let n = group.order();
    let scale = 1.0 / (group.weight_f64() * n as f64);
    (0..n)
        .map(|g| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (chi, v) in s.values().iter().enumerate() {
                let k = pairing.numerator(chi, g);
                acc += v * Complex64::new(table.cos[k], table.sin[k]);
            }
            acc * scale
        })
        .collect()
}

/// Inverse transform, keeping the real part.
pub fn idft(s: &Spectrum) -> GroupFunction {
    let values = idft_complex(s).into_iter().map(|z| z.re).collect();
    GroupFunction::new(s.group().clone(), values).expect("finite spectrum gives finite values")
}

/// `(f * g)(x) = h sum_y f(y) g(x - y)`.
pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction, HarmonicError> {
    if f.group() != g.group() {
        return Err(HarmonicError::GroupMismatch);
    }
    let group = f.group();
    let n = group.order();
    let h = group.weight_f64();
    let mut out = vec![0.0; n];
    for (y, &fy) in f.values().iter().enumerate() {
        if fy == 0.0 {
            continue;
        }
        for (z, &gz) in g.values().iter().enumerate() {
            out[group.add_idx(y, z)] += fy * gz;
        }
    }
    for v in &mut out {
        *v *= h;
    }
    GroupFunction::new(group.clone(), out)
}

/// `1_A * 1_{-A}`, optionally divided by `h |A|` so that the value at 0 is 1.
///
/// The value at `x` is `h |A ∩ (A + x)|`; the result is positive definite and
/// supported in `A - A`.
pub fn autocorrelation(
    group: Arc<FiniteAbelianGroup>,
    subset: &[usize],
    normalize: bool,
) -> Result<GroupFunction, HarmonicError> {
    let mut members: Vec<usize> = subset.to_vec();
    members.sort_unstable();
    members.dedup();
    if members.is_empty() {
        return Err(HarmonicError::EmptySubset);
    }
    if let Some(&bad) = members.iter().find(|&&m| m >= group.order()) {
        return Err(HarmonicError::IndexOutOfRange(bad));
    }
    let mut counts = vec![0usize; group.order()];
    for &a in &members {
        for &b in &members {
            counts[group.sub_idx(a, b)] += 1;
        }
    }
    let h = group.weight_f64();
    let scale = if normalize { 1.0 / members.len() as f64 } else { h };
    let values = counts.into_iter().map(|c| c as f64 * scale).collect();
    GroupFunction::new(group, values)
}

/// Outcome of the spectral positive-definiteness test.
#[derive(Debug, Clone, PartialEq)]
pub struct PdVerdict {
    pub positive_definite: bool,
    pub tolerance: f64,
    pub min_real: f64,
    pub max_imag: f64,
    /// Character index and spectrum value that violate the test, if any.
    pub witness: Option<(usize, Complex64)>,
}

/// Default tolerance `1e-9 max(1, f(0)) |G|`.
pub fn default_pd_tolerance(f: &GroupFunction) -> f64 {
    1e-9 * f.at_zero().max(1.0) * f.group().order() as f64
}

/// On a finite group, `f` is positive definite iff its spectrum is real and
/// nonnegative.
pub fn is_positive_definite(f: &GroupFunction, tol: f64) -> PdVerdict {
    let s = f.spectrum();
    let (re_idx, min_real) = s.min_real();
    let (im_idx, max_imag) = s.max_abs_imag();
    let witness = if min_real < -tol {
        Some((re_idx, s.value(re_idx)))
    } else if max_imag > tol {
        Some((im_idx, s.value(im_idx)))
    } else {
        None
    };
    PdVerdict {
        positive_definite: witness.is_none(),
        tolerance: tol,
        min_real,
        max_imag,
        witness,
    }
}

pub fn pointwise_product(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction, HarmonicError> {
    if f.group() != g.group() {
        return Err(HarmonicError::GroupMismatch);
    }
    let values = f.values().iter().zip(g.values()).map(|(a, b)| a * b).collect();
    GroupFunction::new(f.group().clone(), values)
}

/// Normalized autocorrelation of the box `{0..m}^d`.
///
/// `k(0) = 1`, `0 <= k <= 1`, positive definite, and
/// `k(g) = prod_i (1 - |g_i| / (m+1))` for signed coordinates `|g_i| <= m`.
pub fn fejer_kernel(group: Arc<FiniteAbelianGroup>, m: usize) -> Result<GroupFunction, HarmonicError> {
    let min_order = group.orders().iter().copied().min().unwrap_or(1);
    if 2 * m as u64 + 1 > min_order {
        return Err(HarmonicError::KernelTooWide { m, min_order });
    }
    let box_members: Vec<usize> = (0..group.order())
        .filter(|&i| group.coords(i).iter().all(|&c| c as usize <= m))
        .collect();
    autocorrelation(group, &box_members, true)
}

/// `(f(x) + f(-x)) / 2`.
pub fn evenize(f: &GroupFunction) -> GroupFunction {
    let group = f.group();
    let values = (0..group.order())
        .map(|i| 0.5 * (f.value(i) + f.value(group.neg_idx(i))))
        .collect();
    GroupFunction::new(group.clone(), values).expect("length preserved")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: u64) -> Arc<FiniteAbelianGroup> {
        Arc::new(FiniteAbelianGroup::cyclic(n).unwrap())
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    /// Independent oracle: direct evaluation with libm trigonometry.
    fn dft_oracle(values: &[f64], n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|j| {
                values.iter().enumerate().fold((0.0, 0.0), |(re, im), (g, &v)| {
                    let x = std::f64::consts::TAU * (j * g) as f64 / n as f64;
                    (re + v * x.cos(), im - v * x.sin())
                })
            })
            .collect()
    }

    #[test]
    fn dft_of_delta_and_constant() {
        let g = cyc(4);
        let s = dft(&GroupFunction::delta(g.clone()));
        assert!(s.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
        let s = dft(&GroupFunction::constant(g, 1.0));
        let re: Vec<f64> = s.values().iter().map(|v| v.re).collect();
        assert_eq!(re, vec![4.0, 0.0, 0.0, 0.0]);
        assert!(s.values().iter().all(|v| v.im == 0.0));
    }

    #[test]
    fn dft_of_triangle_matches_oracle() {
        let g = cyc(8);
        let tri = [1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5];
        let f = GroupFunction::new(g, tri.to_vec()).unwrap();
        let s = f.spectrum();
        let oracle = dft_oracle(&tri, 8);
        for (j, o) in oracle.iter().enumerate() {
            let expected = 1.0 + (std::f64::consts::TAU * j as f64 / 8.0).cos();
            assert!(close(s.value(j).re, expected, 1e-15));
            assert!(close(s.value(j).re, o.0, 1e-14));
            assert_eq!(s.value(j).im, 0.0);
        }
        assert!(close(s.value(4).re, 0.0, 1e-15));
    }

    #[test]
    fn convolution_examples() {
        let g = cyc(8);
        let f = GroupFunction::new(g.clone(), vec![3.0, -1.0, 2.0, 0.0, 0.5, 0.0, 0.0, 7.0]).unwrap();
        assert_eq!(convolve(&GroupFunction::delta(g.clone()), &f).unwrap(), f);

        let a = GroupFunction::indicator(g.clone(), &[0, 1]).unwrap();
        let b = GroupFunction::indicator(g.clone(), &[0, 7]).unwrap();
        let c = convolve(&a, &b).unwrap();
        assert_eq!(c.values(), &[2.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);

        let other = GroupFunction::delta(cyc(6));
        assert_eq!(convolve(&a, &other), Err(HarmonicError::GroupMismatch));
    }

    #[test]
    fn convolution_theorem_on_z6() {
        let g = cyc(6);
        let f = GroupFunction::new(g.clone(), vec![0.3, -1.2, 2.0, 0.7, -0.1, 0.9]).unwrap();
        let k = GroupFunction::new(g.clone(), vec![1.5, 0.2, -0.4, 0.0, 2.2, -1.0]).unwrap();
        // direct double sum oracle
        let mut direct = [0.0; 6];
        for (x, d) in direct.iter_mut().enumerate() {
            for y in 0..6 {
                *d += f.value(y) * k.value((x + 6 - y) % 6);
            }
        }
        let conv = convolve(&f, &k).unwrap();
        for (x, d) in direct.iter().enumerate() {
            assert!(close(conv.value(x), *d, 1e-14));
        }
        let lhs = conv.spectrum();
        for chi in 0..6 {
            let rhs = f.spectrum().value(chi) * k.spectrum().value(chi);
            assert!((lhs.value(chi) - rhs).norm() <= 1e-12 * rhs.norm().max(1.0));
        }
    }

    #[test]
    fn autocorrelation_examples() {
        let g = cyc(8);
        let f = autocorrelation(g.clone(), &[0, 1], true).unwrap();
        assert_eq!(f.values(), &[1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]);
        assert_eq!(f.integral(), 2.0);
        assert_eq!(autocorrelation(g.clone(), &[0], true).unwrap(), GroupFunction::delta(g.clone()));
        assert_eq!(autocorrelation(g, &[], true), Err(HarmonicError::EmptySubset));

        // overlap-count oracle on Z12: |A ∩ (A + k)| for A = {0,1,2}
        let g = cyc(12);
        let f = autocorrelation(g.clone(), &[0, 1, 2], true).unwrap();
        for k in 0..12usize {
            let overlap = (0..3usize).filter(|a| (0..3usize).any(|b| (b + k) % 12 == *a)).count();
            assert!(close(f.value(k), overlap as f64 / 3.0, 1e-15));
        }
        assert!(close(f.value(1), 2.0 / 3.0, 1e-15));
        assert!(close(f.value(11), 2.0 / 3.0, 1e-15));
        assert!(close(f.value(2), 1.0 / 3.0, 1e-15));
        assert!(close(f.integral(), 3.0, 1e-14));
    }

    #[test]
    fn positive_definiteness_examples() {
        let g = cyc(3);
        assert!(is_positive_definite(&GroupFunction::delta(g.clone()), 0.0).positive_definite);
        let f = GroupFunction::new(g, vec![1.0, -1.0, -1.0]).unwrap();
        let v = is_positive_definite(&f, 0.0);
        assert!(!v.positive_definite);
        let (chi, val) = v.witness.unwrap();
        assert_eq!(chi, 0);
        assert_eq!(val.re, -1.0);

        let g = cyc(8);
        let c = GroupFunction::from_fn(g, |k| Turns::new(k as u64, 8).cos()).unwrap();
        let v = is_positive_definite(&c, 1e-12);
        assert!(v.positive_definite);
        let s = c.spectrum();
        for chi in [0, 2, 3, 4, 5, 6] {
            assert!(s.value(chi).norm() < 1e-14);
        }
        assert!(close(s.value(1).re, 4.0, 1e-14));
        assert!(close(s.value(7).re, 4.0, 1e-14));
    }

    #[test]
    fn product_examples() {
        let g = cyc(8);
        let tri = autocorrelation(g.clone(), &[0, 1], true).unwrap();
        let one = GroupFunction::constant(g.clone(), 1.0);
        assert_eq!(pointwise_product(&tri, &one).unwrap(), tri);
        let sq = pointwise_product(&tri, &tri).unwrap();
        assert!(is_positive_definite(&sq, 0.0).positive_definite);
        let d = GroupFunction::delta(g.clone());
        let f = GroupFunction::new(g.clone(), vec![2.5, 1.0, 0.0, 3.0, 0.0, 1.0, 0.0, -1.0]).unwrap();
        let p = pointwise_product(&d, &f).unwrap();
        assert_eq!(p.values(), &[2.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn fejer_examples() {
        let g = cyc(8);
        assert_eq!(
            fejer_kernel(g.clone(), 1).unwrap().values(),
            &[1.0, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5]
        );
        assert_eq!(fejer_kernel(g.clone(), 0).unwrap(), GroupFunction::delta(g.clone()));
        assert!(matches!(fejer_kernel(g, 4), Err(HarmonicError::KernelTooWide { .. })));

        let g = cyc(12);
        let k = fejer_kernel(g.clone(), 2).unwrap();
        for j in 0..=2usize {
            let expected = 1.0 - j as f64 / 3.0;
            assert!(close(k.value(j), expected, 1e-15));
            assert!(close(k.value((12 - j) % 12), expected, 1e-15));
        }

        let g = Arc::new(FiniteAbelianGroup::product(&[7, 9]).unwrap());
        let k = fejer_kernel(g.clone(), 2).unwrap();
        assert_eq!(k.at_zero(), 1.0);
        assert!(k.values().iter().all(|&v| (0.0..=1.0).contains(&v)));
        assert!(is_positive_definite(&k, 1e-12).positive_definite);
        for i in 0..g.order() {
            let l1: i64 = g.signed_coords(i).iter().map(|c| c.abs()).sum();
            assert!(k.value(i) >= 1.0 - l1 as f64 / 3.0 - 1e-15);
        }
    }

    #[test]
    fn evenize_examples() {
        let g = cyc(4);
        let f = GroupFunction::new(g.clone(), vec![0.0, 1.0, 0.0, 0.0]).unwrap();
        assert_eq!(evenize(&f).values(), &[0.0, 0.5, 0.0, 0.5]);
        let tri = autocorrelation(cyc(8), &[0, 1], true).unwrap();
        assert_eq!(evenize(&tri), tri);
        let d = GroupFunction::delta(g);
        assert_eq!(evenize(&d), d);
    }

    #[test]
    fn csv_round_trip() {
        let g = Arc::new(FiniteAbelianGroup::product(&[4, 3]).unwrap());
        let f = GroupFunction::from_fn(g.clone(), |i| i as f64 * 0.25 - 1.0).unwrap();
        let text = f.to_csv();
        assert!(text.starts_with("index,x0,x1,value\n5,1,2,0.25\n") || text.contains("\n5,1,2,0.25\n"));
        assert_eq!(GroupFunction::from_csv(g.clone(), &text).unwrap(), f);
        assert!(GroupFunction::from_csv(g, "index,x0,x1,value\n0,0,0,1\n").is_err());
        let s = GroupFunction::delta(cyc(2)).spectrum().to_csv();
        assert_eq!(s, "char_index,value_re,value_im\n0,1,0\n1,1,0\n");
    }

    #[test]
    fn rejects_bad_input() {
        let g = cyc(3);
        assert!(matches!(
            GroupFunction::new(g.clone(), vec![1.0]),
            Err(HarmonicError::Length { .. })
        ));
        assert_eq!(
            GroupFunction::new(g, vec![1.0, f64::NAN, 0.0]),
            Err(HarmonicError::NonFinite(1))
        );
    }
}
