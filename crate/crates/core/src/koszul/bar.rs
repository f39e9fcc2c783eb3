use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactlin::{Echelon, SparseVec};
use crate::graded::{BiDegree, TruncationBounds};
use crate::presentations::{QuadraticCommPresentation, QuotientAlgebra};

/// Dimensions of `Tor^A(ℚ, ℚ)` keyed by (bar length `s`, weight `w`,
/// degree `d`). Only nonzero entries are stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TorTable {
    bounds: Option<TruncationBounds>,
    entries: BTreeMap<(u32, u32, u32), u64>,
}

impl TorTable {
    pub fn new(bounds: TruncationBounds) -> Self {
        TorTable { bounds: Some(bounds), entries: BTreeMap::new() }
    }

    pub fn bounds(&self) -> Option<TruncationBounds> {
        self.bounds
    }

    pub fn get(&self, s: u32, w: u32, d: u32) -> u64 {
        self.entries.get(&(s, w, d)).copied().unwrap_or(0)
    }

    pub(crate) fn set(&mut self, s: u32, w: u32, d: u32, n: u64) {
        if n > 0 {
            self.entries.insert((s, w, d), n);
        } else {
            self.entries.remove(&(s, w, d));
        }
    }

    /// `(s, w, d, dim)` in ascending key order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32, u32, u64)> + '_ {
        self.entries.iter().map(|(&(s, w, d), &n)| (s, w, d, n))
    }

    /// Total dimension at `(s, w)` summed over degrees.
    pub fn at(&self, s: u32, w: u32) -> u64 {
        self.entries.range((s, w, 0)..=(s, w, u32::MAX)).map(|(_, n)| *n).sum()
    }

    /// Least off-diagonal entry, ordered by `(w, s)` and then degree.
    pub fn first_off_diagonal(&self) -> Option<(u32, u32, u32, u64)> {
        self.iter().filter(|(s, w, _, _)| s != w).min_by_key(|&(s, w, d, _)| (w, s, d))
    }
}

/// One column (fixed weight and degree) of the reduced bar complex.
struct BarColumn<'a> {
    algebra: &'a QuotientAlgebra,
    /// chains[s]: shapes of length `s` with their offsets.
    shapes: Vec<Vec<(Vec<BiDegree>, usize)>>,
    shape_index: Vec<HashMap<Vec<BiDegree>, usize>>,
    sizes: Vec<usize>,
}

fn compositions(
    support: &[BiDegree],
    remaining: BiDegree,
    current: &mut Vec<BiDegree>,
    out: &mut Vec<Vec<BiDegree>>,
) {
    if remaining.weight == 0 {
        if remaining.degree == 0 {
            out.push(current.clone());
        }
        return;
    }
    for &bd in support {
        if bd.weight <= remaining.weight && bd.degree <= remaining.degree {
            current.push(bd);
            compositions(
                support,
                BiDegree::new(remaining.weight - bd.weight, remaining.degree - bd.degree),
                current,
                out,
            );
            current.pop();
        }
    }
}

impl<'a> BarColumn<'a> {
    fn new(algebra: &'a QuotientAlgebra, column: BiDegree) -> Self {
        let support: Vec<BiDegree> = algebra.support().filter(|bd| bd.weight > 0).collect();
        let mut all = Vec::new();
        compositions(&support, column, &mut Vec::new(), &mut all);
        let top = column.weight as usize;
        let mut shapes = vec![Vec::new(); top + 1];
        let mut sizes = vec![0usize; top + 1];
        for shape in all {
            let s = shape.len();
            let size: usize = shape.iter().map(|bd| algebra.dim(*bd)).product();
            shapes[s].push((shape, sizes[s]));
            sizes[s] += size;
        }
        let shape_index = shapes.iter().map(|v| v.iter().map(|(sh, off)| (sh.clone(), *off)).collect()).collect();
        BarColumn { algebra, shapes, shape_index, sizes }
    }

    fn degree_sum_parity(shape: &[BiDegree], upto: usize) -> u32 {
        shape[..=upto].iter().map(|bd| bd.degree + 1).sum::<u32>() % 2
    }

    /// Images of the basis of `C_s` under `b: C_s -> C_{s-1}`.
    fn differential(&self, s: usize) -> Vec<SparseVec<usize>> {
        let mut images = vec![SparseVec::new(); self.sizes[s]];
        if s < 2 {
            return images;
        }
        for (shape, offset) in &self.shapes[s] {
            let dims: Vec<usize> = shape.iter().map(|bd| self.algebra.dim(*bd)).collect();
            let count: usize = dims.iter().product();
            let mut digits = vec![0usize; s];
            for local in 0..count {
                // mixed radix, last slot fastest
                let mut r = local;
                for k in (0..s).rev() {
                    digits[k] = r % dims[k];
                    r /= dims[k];
                }
                let mut entries = Vec::new();
                for i in 0..s - 1 {
                    let merged = BiDegree::new(
                        shape[i].weight + shape[i + 1].weight,
                        shape[i].degree + shape[i + 1].degree,
                    );
                    let prod = self.algebra.multiply(shape[i], digits[i], shape[i + 1], digits[i + 1]);
                    if prod.is_zero() {
                        continue;
                    }
                    let mut target: Vec<BiDegree> = Vec::with_capacity(s - 1);
                    target.extend_from_slice(&shape[..i]);
                    target.push(merged);
                    target.extend_from_slice(&shape[i + 2..]);
                    let target_offset = self.shape_index[s - 1][&target];
                    let tdims: Vec<usize> = target.iter().map(|bd| self.algebra.dim(*bd)).collect();
                    let negative = Self::degree_sum_parity(shape, i) == 1;
                    for (basis, c) in prod.iter() {
                        let mut idx = 0usize;
                        for k in 0..s - 1 {
                            let digit = match k.cmp(&i) {
                                std::cmp::Ordering::Less => digits[k],
                                std::cmp::Ordering::Equal => *basis,
                                std::cmp::Ordering::Greater => digits[k + 1],
                            };
                            idx = idx * tdims[k] + digit;
                        }
                        let c = if negative { -c.clone() } else { c.clone() };
                        entries.push((target_offset + idx, c));
                    }
                }
                images[offset + local] = SparseVec::from_entries(entries);
            }
        }
        images
    }
}

fn rank(images: &[SparseVec<usize>]) -> usize {
    let mut e = Echelon::new();
    for v in images {
        if !v.is_zero() {
            e.insert(v.clone());
        }
    }
    e.rank()
}

/// Asserts `b ∘ b = 0` from consecutive differentials.
fn assert_square_zero(upper: &[SparseVec<usize>], lower: &[SparseVec<usize>]) {
    for image in upper {
        let mut acc: SparseVec<usize> = SparseVec::new();
        for (k, c) in image.iter() {
            acc = acc.sub_scaled(&-c.clone(), &lower[*k]);
        }
        assert!(acc.is_zero(), "bar differential does not square to zero");
    }
}

/// Homology dims of one bar column, indexed by `s` (entry 0 unused).
fn column_homology(algebra: &QuotientAlgebra, column: BiDegree) -> Vec<u64> {
    let bar = BarColumn::new(algebra, column);
    let top = column.weight as usize;
    let diffs: Vec<Vec<SparseVec<usize>>> = (0..=top).map(|s| bar.differential(s)).collect();
    for s in 2..top {
        assert_square_zero(&diffs[s + 1], &diffs[s]);
    }
    let ranks: Vec<usize> = diffs.iter().map(|d| rank(d)).collect();
    (0..=top)
        .map(|s| {
            if s == 0 {
                return 0;
            }
            let upper = if s < top { ranks[s + 1] } else { 0 };
            (bar.sizes[s] - ranks[s] - upper) as u64
        })
        .collect()
}

/// Tor dims of a single column `(w, d)` of the bar complex, for `s = 1..=w`.
pub fn bar_column_tor(algebra: &QuotientAlgebra, weight: u32, degree: u32) -> Vec<u64> {
    column_homology(algebra, BiDegree::new(weight, degree))
}

/// Homology of the reduced bar complex of `Λ(V)/(R)`, per (s, w, d), for
/// weights `1..=max_weight` and degrees up to `max_degree`. The differential
/// is `b[a_1|...|a_s] = Σ_i (-1)^{ε_i} [...|a_i a_{i+1}|...]` with
/// `ε_i = Σ_{k≤i} (|a_k| + 1)`; `b ∘ b = 0` is checked on every column.
pub fn bar_tor_dims(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> TorTable {
    let algebra = QuotientAlgebra::new(presentation, bounds);
    bar_tor_from_algebra(&algebra, bounds)
}

pub(crate) fn bar_tor_from_algebra(algebra: &QuotientAlgebra, bounds: TruncationBounds) -> TorTable {
    let columns: Vec<BiDegree> = (1..=bounds.max_weight)
        .flat_map(|w| (0..=bounds.max_degree).map(move |d| BiDegree::new(w, d)))
        .collect();
    let results: Vec<(BiDegree, Vec<u64>)> =
        columns.par_iter().map(|&c| (c, column_homology(algebra, c))).collect();
    let mut table = TorTable::new(bounds);
    for (c, h) in results {
        for (s, n) in h.into_iter().enumerate() {
            table.set(s as u32, c.weight, c.degree, n);
        }
    }
    table
}
