//! Finite unions of intervals on the real line, with exact rational endpoints.
//!
//! Sets are kept in a normal form: pieces are sorted and pairwise disjoint,
//! and two pieces are merged exactly when their union is an interval. Two open
//! pieces sharing an excluded endpoint, such as `(-1,1)` and `(1,2)`, stay
//! separate, so punctured sets survive normalization.
//!
//! Single points are not representable. Every operation here returns sets
//! whose pieces are non-degenerate, with one exception: the boundary, which
//! is returned as a sorted list of points.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::rational::parse_rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TopologyError {
    #[error("interval must satisfy left < right, got {0}")]
    Degenerate(String),
    #[error("infinite endpoints must be open")]
    ClosedInfinity,
    #[error("dilation factor must be positive")]
    NonPositiveFactor,
    #[error("set is unbounded")]
    Unbounded,
    #[error("set is not symmetric about 0")]
    Asymmetric,
    #[error("cannot parse set literal {0:?}: {1}")]
    Parse(String, String),
}

/// An endpoint on the extended real line.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn finite(&self) -> Option<&BigRational> {
        match self {
            Bound::Finite(x) => Some(x),
            _ => None,
        }
    }

    fn neg(&self) -> Bound {
        match self {
            Bound::NegInf => Bound::PosInf,
            Bound::PosInf => Bound::NegInf,
            Bound::Finite(x) => Bound::Finite(-x),
        }
    }

    fn scale(&self, r: &BigRational) -> Bound {
        match self {
            Bound::Finite(x) => Bound::Finite(x * r),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::NegInf => write!(f, "-inf"),
            Bound::PosInf => write!(f, "inf"),
            Bound::Finite(x) => write!(f, "{x}"),
        }
    }
}

/// A non-degenerate interval with openness flags.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Bound,
    hi: Bound,
    lo_open: bool,
    hi_open: bool,
}

impl Interval {
    pub fn new(lo: Bound, hi: Bound, lo_open: bool, hi_open: bool) -> Result<Self, TopologyError> {
        if lo >= hi || lo == Bound::PosInf || hi == Bound::NegInf {
            return Err(TopologyError::Degenerate(format!("{lo}, {hi}")));
        }
        if (lo == Bound::NegInf && !lo_open) || (hi == Bound::PosInf && !hi_open) {
            return Err(TopologyError::ClosedInfinity);
        }
        Ok(Self {
            lo,
            hi,
            lo_open,
            hi_open,
        })
    }

    pub fn open(a: BigRational, b: BigRational) -> Result<Self, TopologyError> {
        Self::new(Bound::Finite(a), Bound::Finite(b), true, true)
    }

    pub fn closed(a: BigRational, b: BigRational) -> Result<Self, TopologyError> {
        Self::new(Bound::Finite(a), Bound::Finite(b), false, false)
    }

    pub fn lo(&self) -> &Bound {
        &self.lo
    }

    pub fn hi(&self) -> &Bound {
        &self.hi
    }

    pub fn lo_open(&self) -> bool {
        self.lo_open
    }

    pub fn hi_open(&self) -> bool {
        self.hi_open
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let above = match &self.lo {
            Bound::NegInf => true,
            Bound::Finite(a) => {
                if self.lo_open {
                    x > a
                } else {
                    x >= a
                }
            }
            Bound::PosInf => false,
        };
        let below = match &self.hi {
            Bound::PosInf => true,
            Bound::Finite(b) => {
                if self.hi_open {
                    x < b
                } else {
                    x <= b
                }
            }
            Bound::NegInf => false,
        };
        above && below
    }

    /// Order of left ends: smaller value first, closed before open at a tie.
    fn start_cmp(&self, other: &Interval) -> Ordering {
        self.lo
            .cmp(&other.lo)
            .then(self.lo_open.cmp(&other.lo_open))
    }

    /// Order of right ends: smaller value first, open before closed at a tie.
    fn end_cmp(&self, other: &Interval) -> Ordering {
        self.hi
            .cmp(&other.hi)
            .then(other.hi_open.cmp(&self.hi_open))
    }

    fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (lo, lo_open) = if self.start_cmp(other) == Ordering::Less {
            (other.lo.clone(), other.lo_open)
        } else {
            (self.lo.clone(), self.lo_open)
        };
        let (hi, hi_open) = if self.end_cmp(other) == Ordering::Less {
            (self.hi.clone(), self.hi_open)
        } else {
            (other.hi.clone(), other.hi_open)
        };
        Interval::new(lo, hi, lo_open, hi_open).ok()
    }

    fn is_subset_of(&self, other: &Interval) -> bool {
        other.start_cmp(self) != Ordering::Greater && self.end_cmp(other) != Ordering::Greater
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.lo_open { '(' } else { '[' };
        let r = if self.hi_open { ')' } else { ']' };
        write!(f, "{l}{},{}{r}", self.lo, self.hi)
    }
}

/// A finite union of intervals in normal form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RealSet1D {
    pieces: Vec<Interval>,
}

impl RealSet1D {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn new(pieces: Vec<Interval>) -> Self {
        let mut pieces = pieces;
        pieces.sort_by(|a, b| a.start_cmp(b));
        let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(cur) = out.last_mut() {
                let joins = match cur.hi.cmp(&p.lo) {
                    Ordering::Greater => true,
                    Ordering::Equal => !(cur.hi_open && p.lo_open),
                    Ordering::Less => false,
                };
                if joins {
                    if p.end_cmp(cur) == Ordering::Greater {
                        cur.hi = p.hi;
                        cur.hi_open = p.hi_open;
                    }
                    continue;
                }
            }
            out.push(p);
        }
        Self { pieces: out }
    }

    pub fn interval(iv: Interval) -> Self {
        Self { pieces: vec![iv] }
    }

    pub fn pieces(&self) -> &[Interval] {
        &self.pieces
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.pieces.iter().any(|p| p.contains(x))
    }

    pub fn is_bounded(&self) -> bool {
        self.pieces
            .iter()
            .all(|p| p.lo.finite().is_some() && p.hi.finite().is_some())
    }

    /// `sup { |x| : x in S }`, or `None` for empty or unbounded sets.
    pub fn sup_abs(&self) -> Option<BigRational> {
        if self.is_empty() || !self.is_bounded() {
            return None;
        }
        let first = self.pieces.first()?.lo.finite()?.abs();
        let last = self.pieces.last()?.hi.finite()?.abs();
        Some(if first > last { first } else { last })
    }

    /// Lebesgue measure, `None` if unbounded.
    pub fn measure(&self) -> Option<BigRational> {
        self.pieces.iter().try_fold(BigRational::zero(), |acc, p| {
            Some(acc + (p.hi.finite()? - p.lo.finite()?))
        })
    }

    pub fn interior(&self) -> Self {
        Self::new(
            self.pieces
                .iter()
                .map(|p| Interval {
                    lo_open: true,
                    hi_open: true,
                    ..p.clone()
                })
                .collect(),
        )
    }

    pub fn closure(&self) -> Self {
        Self::new(
            self.pieces
                .iter()
                .map(|p| Interval {
                    lo_open: p.lo == Bound::NegInf,
                    hi_open: p.hi == Bound::PosInf,
                    ..p.clone()
                })
                .collect(),
        )
    }

    /// `closure(S) \ interior(S)`, sorted.
    pub fn boundary(&self) -> Vec<BigRational> {
        let interior = self.interior();
        let mut pts: Vec<BigRational> = self
            .pieces
            .iter()
            .flat_map(|p| [p.lo.finite().cloned(), p.hi.finite().cloned()])
            .flatten()
            .filter(|x| !interior.contains(x))
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// `R \ closure(S)`; always a finite union of open intervals.
    pub fn exterior(&self) -> Self {
        let closed = self.closure();
        let mut out = Vec::new();
        let mut prev = Bound::NegInf;
        for p in &closed.pieces {
            if prev < p.lo {
                out.push(Interval {
                    lo: prev.clone(),
                    hi: p.lo.clone(),
                    lo_open: true,
                    hi_open: true,
                });
            }
            prev = p.hi.clone();
        }
        if prev < Bound::PosInf {
            out.push(Interval {
                lo: prev,
                hi: Bound::PosInf,
                lo_open: true,
                hi_open: true,
            });
        }
        Self { pieces: out }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::new(self.pieces.iter().chain(&other.pieces).cloned().collect())
    }

    /// Intersection; isolated points in the result are dropped.
    pub fn intersect(&self, other: &Self) -> Self {
        Self::new(
            self.pieces
                .iter()
                .flat_map(|a| other.pieces.iter().filter_map(move |b| a.intersect(b)))
                .collect(),
        )
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.pieces
            .iter()
            .all(|a| other.pieces.iter().any(|b| a.is_subset_of(b)))
    }

    /// `-S`.
    pub fn negate(&self) -> Self {
        Self::new(
            self.pieces
                .iter()
                .map(|p| Interval {
                    lo: p.hi.neg(),
                    hi: p.lo.neg(),
                    lo_open: p.hi_open,
                    hi_open: p.lo_open,
                })
                .collect(),
        )
    }

    pub fn is_symmetric(&self) -> bool {
        self.negate() == *self
    }

    /// `r S` for `r > 0`; openness flags are preserved.
    pub fn dilate(&self, r: &BigRational) -> Result<Self, TopologyError> {
        if !r.is_positive() {
            return Err(TopologyError::NonPositiveFactor);
        }
        Ok(Self {
            pieces: self
                .pieces
                .iter()
                .map(|p| Interval {
                    lo: p.lo.scale(r),
                    hi: p.hi.scale(r),
                    ..p.clone()
                })
                .collect(),
        })
    }

    /// `∂S ⊂ closure(ext S)`.
    ///
    /// The witness is the violating boundary point of smallest absolute value,
    /// preferring the nonnegative one on ties.
    pub fn is_boundary_coherent(&self) -> BoundaryVerdict {
        let reach = self.exterior().closure();
        let mut violations: Vec<BigRational> = self
            .boundary()
            .into_iter()
            .filter(|x| !reach.contains(x))
            .collect();
        violations.sort();
        let witness = violations
            .iter()
            .min_by(|a, b| a.abs().cmp(&b.abs()).then(b.cmp(a)))
            .cloned();
        BoundaryVerdict {
            coherent: violations.is_empty(),
            witness,
            violations,
        }
    }

    /// The second form of the definition: `∂S ⊂ ∂(ext S)`.
    pub fn boundary_within_exterior_boundary(&self) -> bool {
        let outer: Vec<BigRational> = self.exterior().boundary();
        self.boundary().iter().all(|x| outer.contains(x))
    }

    /// `r closure(S) ⊂ interior(S)` for every `r` in `[0, 1)`.
    ///
    /// For a bounded symmetric set with `a = sup |x|` over the closure this is
    /// equivalent to `(-a, a) ⊂ interior(S)`: each `r closure(S)` lies in
    /// `[-ra, ra] ⊂ (-a, a)`, and conversely `±a` belong to the closure, so every
    /// `|x| < a` is of the form `r (±a)` with `r < 1`.
    pub fn is_strictly_star_shaped(&self) -> Result<bool, TopologyError> {
        if !self.is_bounded() {
            return Err(TopologyError::Unbounded);
        }
        if !self.is_symmetric() {
            return Err(TopologyError::Asymmetric);
        }
        let Some(a) = self.sup_abs() else {
            return Ok(true);
        };
        let core = Interval::open(-a.clone(), a).expect("a > 0 for a non-empty symmetric set");
        Ok(RealSet1D::interval(core).is_subset(&self.interior()))
    }
}

impl fmt::Display for RealSet1D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return write!(f, "{{}}");
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join("u"))
    }
}

impl FromStr for RealSet1D {
    type Err = TopologyError;

    /// Accepts `[-2,2]`, `(-2,-1)u(-1,1)u(1,2)`, `(0,inf)`, `{}`; endpoints may be `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = |why: &str| TopologyError::Parse(s.to_string(), why.to_string());
        if t == "{}" || t == "empty" || t == "∅" {
            return Ok(Self::empty());
        }
        let mut pieces = Vec::new();
        let normalized = t.replace(['∪', 'U'], "u");
        for item in normalized.split('u') {
            if item.is_empty() {
                return Err(err("empty piece"));
            }
            let lo_open = match item.chars().next() {
                Some('(') => true,
                Some('[') => false,
                _ => return Err(err("expected '(' or '['")),
            };
            let hi_open = match item.chars().last() {
                Some(')') => true,
                Some(']') => false,
                _ => return Err(err("expected ')' or ']'")),
            };
            let body = &item[1..item.len() - 1];
            let (a, b) = body.split_once(',').ok_or_else(|| err("expected two endpoints"))?;
            let parse_bound = |x: &str| -> Result<Bound, TopologyError> {
                match x {
                    "-inf" => Ok(Bound::NegInf),
                    "inf" | "+inf" => Ok(Bound::PosInf),
                    _ => parse_rational(x)
                        .map(Bound::Finite)
                        .map_err(|e| err(&e.to_string())),
                }
            };
            pieces.push(
                Interval::new(parse_bound(a)?, parse_bound(b)?, lo_open, hi_open)
                    .map_err(|e| err(&e.to_string()))?,
            );
        }
        Ok(Self::new(pieces))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryVerdict {
    pub coherent: bool,
    pub witness: Option<BigRational>,
    pub violations: Vec<BigRational>,
}
