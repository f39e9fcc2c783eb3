//! Bidegrees, generators, Koszul signs and bigraded dimension tables.

use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GradedError {
    #[error("permutation has length {perm} but {degrees} degrees were given")]
    LengthMismatch { perm: usize, degrees: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("shift by {shift} moves bidegree ({weight}, {degree}) below degree 0")]
    NegativeDegree { weight: u32, degree: u32, shift: i64 },
    #[error("truncation bounds must be at least 1 (got max_weight={max_weight}, max_degree={max_degree})")]
    InvalidBounds { max_weight: u32, max_degree: u32 },
}

/// `(weight, degree)`; ordered by weight first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BiDegree {
    pub weight: u32,
    pub degree: u32,
}

impl BiDegree {
    pub const fn new(weight: u32, degree: u32) -> Self {
        BiDegree { weight, degree }
    }
}

impl fmt::Display for BiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.weight, self.degree)
    }
}

/// Whether degrees in a container are cohomological (algebra side) or
/// homological (Lie and loop-space side).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variance {
    Cohomological,
    Homological,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32) -> Self {
        Generator { name: name.into(), degree }
    }

    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TruncationBounds {
    pub max_weight: u32,
    pub max_degree: u32,
}

impl TruncationBounds {
    pub const DEFAULT: TruncationBounds = TruncationBounds { max_weight: 8, max_degree: 40 };

    pub fn new(max_weight: u32, max_degree: u32) -> Result<Self, GradedError> {
        if max_weight == 0 || max_degree == 0 {
            return Err(GradedError::InvalidBounds { max_weight, max_degree });
        }
        Ok(TruncationBounds { max_weight, max_degree })
    }

    pub fn contains(&self, bd: BiDegree) -> bool {
        bd.weight <= self.max_weight && bd.degree <= self.max_degree
    }

    /// Componentwise minimum.
    pub fn tightest(&self, other: &TruncationBounds) -> TruncationBounds {
        TruncationBounds {
            max_weight: self.max_weight.min(other.max_weight),
            max_degree: self.max_degree.min(other.max_degree),
        }
    }
}

impl Default for TruncationBounds {
    fn default() -> Self {
        Self::DEFAULT
    }
}

pub(crate) fn parity_sign(exponent: u64) -> i64 {
    if exponent % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Sign acquired when elements of the given degrees are permuted so that
/// element `i` lands at position `permutation[i]` (positions are 0-based).
/// Each pair whose relative order is reversed contributes `(-1)^(d_i d_j)`.
pub fn koszul_sign(permutation: &[usize], degrees: &[i64]) -> Result<i64, GradedError> {
    let n = permutation.len();
    if degrees.len() != n {
        return Err(GradedError::LengthMismatch { perm: n, degrees: degrees.len() });
    }
    let mut seen = vec![false; n];
    for &p in permutation {
        if p >= n || std::mem::replace(&mut seen[p], true) {
            return Err(GradedError::NotAPermutation(n));
        }
    }
    let mut odd_swaps = 0u64;
    for i in 0..n {
        if degrees[i] % 2 == 0 {
            continue;
        }
        for j in i + 1..n {
            if degrees[j] % 2 != 0 && permutation[i] > permutation[j] {
                odd_swaps += 1;
            }
        }
    }
    Ok(parity_sign(odd_swaps))
}

/// Finitely supported dimension table over bidegrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigradedDims {
    variance: Variance,
    bounds: TruncationBounds,
    entries: BTreeMap<BiDegree, u64>,
}

impl BigradedDims {
    pub fn new(variance: Variance, bounds: TruncationBounds) -> Self {
        BigradedDims { variance, bounds, entries: BTreeMap::new() }
    }

    pub fn from_entries<I: IntoIterator<Item = (BiDegree, u64)>>(
        variance: Variance,
        bounds: TruncationBounds,
        entries: I,
    ) -> Self {
        let mut d = Self::new(variance, bounds);
        for (bd, n) in entries {
            d.add(bd, n);
        }
        d
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn bounds(&self) -> TruncationBounds {
        self.bounds
    }

    pub fn get(&self, bd: BiDegree) -> u64 {
        self.entries.get(&bd).copied().unwrap_or(0)
    }

    pub fn at(&self, weight: u32, degree: u32) -> u64 {
        self.get(BiDegree::new(weight, degree))
    }

    /// Adds `n` at `bd`; entries outside the bounds are dropped.
    pub fn add(&mut self, bd: BiDegree, n: u64) {
        if n == 0 || !self.bounds.contains(bd) {
            return;
        }
        *self.entries.entry(bd).or_insert(0) += n;
    }

    pub fn set(&mut self, bd: BiDegree, n: u64) {
        if n == 0 || !self.bounds.contains(bd) {
            self.entries.remove(&bd);
        } else {
            self.entries.insert(bd, n);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (BiDegree, u64)> + '_ {
        self.entries.iter().map(|(k, v)| (*k, *v))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    /// Total dimension in each weight.
    pub fn weight_totals(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (bd, n) in self.iter() {
            *out.entry(bd.weight).or_insert(0) += n;
        }
        out
    }

    /// Total dimension in each degree.
    pub fn degree_totals(&self) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (bd, n) in self.iter() {
            *out.entry(bd.degree).or_insert(0) += n;
        }
        out
    }

    /// Restriction to the given bounds.
    pub fn truncated(&self, bounds: TruncationBounds) -> BigradedDims {
        let bounds = self.bounds.tightest(&bounds);
        BigradedDims {
            variance: self.variance,
            bounds,
            entries: self.entries.iter().filter(|(k, _)| bounds.contains(**k)).map(|(k, v)| (*k, *v)).collect(),
        }
    }

    pub fn with_variance(mut self, variance: Variance) -> BigradedDims {
        self.variance = variance;
        self
    }

    /// Same entries with wider (or narrower) bounds metadata; entries
    /// outside the new bounds are dropped.
    pub fn with_bounds(&self, bounds: TruncationBounds) -> BigradedDims {
        BigradedDims::from_entries(self.variance, bounds, self.iter())
    }
}

/// Moves every entry at `(w, d)` to `(w, d + k)`.
///
/// The result's degree bound is shifted along with the entries so that
/// shifting back is lossless.
pub fn shift_dims(dims: &BigradedDims, k: i64) -> Result<BigradedDims, GradedError> {
    let mut entries = BTreeMap::new();
    for (bd, n) in dims.iter() {
        let d = bd.degree as i64 + k;
        if d < 0 {
            return Err(GradedError::NegativeDegree { weight: bd.weight, degree: bd.degree, shift: k });
        }
        entries.insert(BiDegree::new(bd.weight, d as u32), n);
    }
    let max_degree = (dims.bounds.max_degree as i64 + k).max(1) as u32;
    Ok(BigradedDims {
        variance: dims.variance,
        bounds: TruncationBounds { max_weight: dims.bounds.max_weight, max_degree },
        entries,
    })
}
