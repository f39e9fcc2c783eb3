//! The Koszul complex `A ⊗ A^¡` of a quadratic graded-commutative algebra.
//!
//! `A^¡(s)` is the intersection of the subspaces `V^i ⊗ R̂ ⊗ V^(s-2-i)` of
//! the tensor power, where `R̂ ⊂ V ⊗ V` is spanned by graded commutators and
//! lifts of the relations. It is built one letter at a time:
//! `A^¡(s) = (V ⊗ A^¡(s-1)) ∩ (R̂ ⊗ V^(s-2))`, and each element is stored
//! through its coordinates in `V ⊗ A^¡(s-1)`, which is also the form the
//! differential needs.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::exactlin::field::{field_kernel, field_rank, row_from_entries, Row};
use crate::exactlin::{Rational, SparseVec, Subspace};
use crate::graded::{parity_sign, BiDegree, BigradedDims, Generator, TruncationBounds, Variance};
use crate::presentations::{QuadraticCommPresentation, QuotientAlgebra};

/// Outcome of [`koszul_complex_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcyclicityVerdict {
    /// No homology in positive weight within the bounds.
    AcyclicUpTo(TruncationBounds),
    /// The least `(weight, s, degree)` with nonzero homology, and its dimension.
    NotAcyclic { weight: u32, s: u32, degree: u32, dim: u64 },
}

impl AcyclicityVerdict {
    pub fn is_acyclic(&self) -> bool {
        matches!(self, AcyclicityVerdict::AcyclicUpTo(_))
    }
}

/// Functionals on `V ⊗ V` vanishing on `R̂`, indexed by the ordered pairs
/// they are nonzero on. `counts[δ]` is the number of functionals of degree δ.
struct Annihilator {
    by_pair: HashMap<(usize, usize), Vec<(usize, Rational)>>,
    counts: BTreeMap<u32, usize>,
}

impl Annihilator {
    fn new(presentation: &QuadraticCommPresentation) -> Self {
        let gens = presentation.generators();
        let mut ordered: BTreeMap<u32, Vec<(usize, usize)>> = BTreeMap::new();
        for i in 0..gens.len() {
            for j in 0..gens.len() {
                ordered.entry(gens[i].degree + gens[j].degree).or_default().push((i, j));
            }
        }
        let relations = presentation.relations_by_degree();
        let mut by_pair: HashMap<(usize, usize), Vec<(usize, Rational)>> = HashMap::new();
        let mut counts = BTreeMap::new();
        for (delta, pairs) in ordered {
            let pos = |p: (usize, usize)| pairs.binary_search(&p).expect("pair of this degree");
            let mut hat = Vec::new();
            for &(i, j) in &pairs {
                if i <= j {
                    let s = parity_sign(u64::from(gens[i].degree) * u64::from(gens[j].degree));
                    let commutator = SparseVec::from_entries(vec![
                        (pos((i, j)), Rational::one()),
                        (pos((j, i)), Rational::from_integer(-s)),
                    ]);
                    hat.push(commutator);
                }
            }
            for r in relations.get(&delta).into_iter().flatten() {
                hat.push(SparseVec::from_entries(r.iter().map(|(p, c)| (pos((p.0, p.1)), c.clone()))));
            }
            let perp = Subspace::span(pairs.len(), hat).expect("coordinates in range").annihilator();
            for (f, phi) in perp.basis().iter().enumerate() {
                for (k, c) in phi.iter() {
                    by_pair.entry(pairs[*k]).or_default().push((f, c.clone()));
                }
            }
            if perp.dim() > 0 {
                counts.insert(delta, perp.dim());
            }
        }
        Annihilator { by_pair, counts }
    }
}

/// One component `A^¡(s)` in a fixed degree. Coordinates are blocks
/// `v ⊗ A^¡(s-1)` for each generator `v`, stored in `slots`.
#[derive(Debug, Clone, Default)]
struct Piece {
    slots: Vec<(usize, usize, usize)>,
    basis: Vec<Row<Rational>>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `(generator, index in the lower piece)` of a coordinate.
    fn locate(&self, idx: usize) -> (usize, usize) {
        let pos = self.slots.partition_point(|&(_, off, _)| off <= idx) - 1;
        let (v, off, _) = self.slots[pos];
        (v, idx - off)
    }
}

/// The quadratic dual coalgebra, truncated. `layers[s][e]` is `A^¡(s)` in degree `e`.
struct DualCoalgebra {
    layers: Vec<BTreeMap<u32, Piece>>,
}

impl DualCoalgebra {
    fn new(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> Self {
        let gens = presentation.generators();
        let annihilator = Annihilator::new(presentation);
        let unit = Piece { slots: Vec::new(), basis: vec![Vec::new()] };
        let mut layers = vec![BTreeMap::from([(0, unit)])];
        for s in 1..=bounds.max_weight as usize {
            let degrees: Vec<u32> = (0..=bounds.max_degree).collect();
            let layer: BTreeMap<u32, Piece> = degrees
                .par_iter()
                .filter_map(|&e| {
                    let piece = Self::piece(gens, &annihilator, &layers, s, e);
                    (piece.dim() > 0).then_some((e, piece))
                })
                .collect();
            layers.push(layer);
        }
        DualCoalgebra { layers }
    }

    fn piece(
        gens: &[Generator],
        annihilator: &Annihilator,
        layers: &[BTreeMap<u32, Piece>],
        s: usize,
        e: u32,
    ) -> Piece {
        let below = &layers[s - 1];
        let mut slots = Vec::new();
        let mut size = 0;
        for (v, g) in gens.iter().enumerate() {
            if let Some(p) = e.checked_sub(g.degree).and_then(|r| below.get(&r)) {
                slots.push((v, size, p.dim()));
                size += p.dim();
            }
        }
        if s == 1 {
            let basis = (0..size).map(|i| vec![(i, Rational::one())]).collect();
            return Piece { slots, basis };
        }
        // constraint coordinates: (degree δ functional, element of A^¡(s-2))
        let lower = &layers[s - 2];
        let mut blocks: HashMap<u32, (usize, usize)> = HashMap::new();
        let mut constraints = 0;
        for (&delta, &count) in &annihilator.counts {
            if let Some(p) = e.checked_sub(delta).and_then(|r| lower.get(&r)) {
                blocks.insert(delta, (constraints, p.dim()));
                constraints += count * p.dim();
            }
        }
        let mut images = Vec::with_capacity(size);
        for &(v, _, n) in &slots {
            let prev = &below[&(e - gens[v].degree)];
            for j in 0..n {
                let mut entries = Vec::new();
                for (idx, m) in &prev.basis[j] {
                    let (u, l) = prev.locate(*idx);
                    let delta = gens[v].degree + gens[u].degree;
                    let Some(&(offset, width)) = blocks.get(&delta) else { continue };
                    for (f, c) in annihilator.by_pair.get(&(v, u)).into_iter().flatten() {
                        // reversed coordinates eliminate with much less fill-in
                        entries.push((constraints - 1 - (offset + f * width + l), m * c));
                    }
                }
                images.push(row_from_entries(entries));
            }
        }
        let basis = field_kernel(constraints, &images);
        Piece { slots, basis }
    }

    fn piece_at(&self, s: usize, e: u32) -> Option<&Piece> {
        self.layers.get(s).and_then(|l| l.get(&e))
    }

    fn dims(&self, bounds: TruncationBounds) -> BigradedDims {
        let entries = self.layers.iter().enumerate().flat_map(|(s, layer)| {
            layer.iter().map(move |(&e, p)| (BiDegree::new(s as u32, e), p.dim() as u64))
        });
        BigradedDims::from_entries(Variance::Cohomological, bounds, entries)
    }
}

/// Coordinates of `K_s = ⊕_e A(w - s, d - e) ⊗ A^¡(s)_e` at total `(w, d)`.
struct Term {
    /// `(e, algebra bidegree, algebra dim, coalgebra dim, offset)`
    blocks: Vec<(u32, BiDegree, usize, usize, usize)>,
    size: usize,
}

impl Term {
    fn new(algebra: &QuotientAlgebra, coalgebra: &DualCoalgebra, w: u32, d: u32, s: u32) -> Self {
        let mut blocks = Vec::new();
        let mut size = 0;
        if let Some(layer) = coalgebra.layers.get(s as usize) {
            for (&e, piece) in layer.range(..=d) {
                let bd = BiDegree::new(w - s, d - e);
                let n = algebra.dim(bd);
                if n > 0 {
                    blocks.push((e, bd, n, piece.dim(), size));
                    size += n * piece.dim();
                }
            }
        }
        Term { blocks, size }
    }

    fn block(&self, e: u32) -> Option<&(u32, BiDegree, usize, usize, usize)> {
        self.blocks.iter().find(|b| b.0 == e)
    }
}

/// Images of the basis of `K_s` in `K_{s-1}`: `a ⊗ v ⊗ c ↦ a·v ⊗ c`.
fn differential(
    algebra: &QuotientAlgebra,
    coalgebra: &DualCoalgebra,
    unit_index: &[Option<usize>],
    source: &Term,
    target: &Term,
    s: u32,
) -> Vec<Row<Rational>> {
    let gens = algebra.generators();
    let mut images = Vec::with_capacity(source.size);
    for &(e, bd, n_a, n_c, _) in &source.blocks {
        let piece = coalgebra.piece_at(s as usize, e).expect("block has a coalgebra piece");
        for a in 0..n_a {
            for c in 0..n_c {
                let mut entries = Vec::new();
                for (idx, k) in &piece.basis[c] {
                    let (v, j) = piece.locate(*idx);
                    let Some(vi) = unit_index[v] else { continue };
                    let Some(&(_, _, _, m_c, offset)) = target.block(e - gens[v].degree) else { continue };
                    let letter = BiDegree::new(1, gens[v].degree);
                    for (a2, x) in algebra.multiply(bd, a, letter, vi).iter() {
                        entries.push((offset + a2 * m_c + j, k * x));
                    }
                }
                images.push(row_from_entries(entries));
            }
        }
    }
    images
}

fn assert_square_zero(upper: &[Row<Rational>], lower: &[Row<Rational>]) {
    for image in upper {
        let mut acc = Vec::new();
        for (k, c) in image {
            acc.extend(lower[*k].iter().map(|(i, x)| (*i, c * x)));
        }
        assert!(row_from_entries(acc).is_empty(), "Koszul differential does not square to zero");
    }
}

/// Rank after reversing the column order, which keeps fill-in down here.
fn reversed_rank(ambient: usize, rows: &[Row<Rational>]) -> usize {
    let flipped: Vec<Row<Rational>> =
        rows.iter().map(|r| r.iter().rev().map(|(k, c)| (ambient - 1 - k, c.clone())).collect()).collect();
    field_rank(ambient, &flipped)
}

/// Homology dims of the column `(w, d)`, indexed by `s`.
fn column_homology(algebra: &QuotientAlgebra, coalgebra: &DualCoalgebra, unit_index: &[Option<usize>], w: u32, d: u32) -> Vec<u64> {
    let terms: Vec<Term> = (0..=w).map(|s| Term::new(algebra, coalgebra, w, d, s)).collect();
    let diffs: Vec<Vec<Row<Rational>>> = (0..=w)
        .map(|s| if s == 0 { Vec::new() } else { differential(algebra, coalgebra, unit_index, &terms[s as usize], &terms[s as usize - 1], s) })
        .collect();
    for s in 2..=w as usize {
        assert_square_zero(&diffs[s], &diffs[s - 1]);
    }
    let ranks: Vec<usize> = (0..=w as usize)
        .map(|s| match s {
            0 => 0,
            // A(0) ⊗ A^¡(w) maps onto its own coordinates in V ⊗ A^¡(w-1)
            s if s == w as usize => terms[s].size,
            s => reversed_rank(terms[s - 1].size, &diffs[s]),
        })
        .collect();
    (0..=w as usize)
        .map(|s| {
            let upper = if s < w as usize { ranks[s + 1] } else { 0 };
            (terms[s].size - ranks[s] - upper) as u64
        })
        .collect()
}

/// Position of each generator in the weight-one basis, if within bounds.
fn unit_indices(algebra: &QuotientAlgebra) -> Vec<Option<usize>> {
    algebra
        .generators()
        .iter()
        .enumerate()
        .map(|(v, g)| algebra.basis(BiDegree::new(1, g.degree)).iter().position(|m| m.as_slice() == [v]))
        .collect()
}

/// Dimensions of `A^¡` per (weight, degree), computed as the iterated
/// intersection inside the tensor algebra.
pub fn dual_coalgebra_dims(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> BigradedDims {
    DualCoalgebra::new(presentation, bounds).dims(bounds)
}

/// Homology of the Koszul complex `A ⊗ A^¡` per `(s, w, d)` with `w ≥ 1`,
/// where `s` is the coalgebra weight. Only nonzero entries are returned.
pub fn koszul_complex_homology(
    presentation: &QuadraticCommPresentation,
    bounds: TruncationBounds,
) -> BTreeMap<(u32, u32, u32), u64> {
    let algebra = QuotientAlgebra::new(presentation, bounds);
    let coalgebra = DualCoalgebra::new(presentation, bounds);
    let unit_index = unit_indices(&algebra);
    let columns: Vec<(u32, u32)> =
        (1..=bounds.max_weight).flat_map(|w| (0..=bounds.max_degree).map(move |d| (w, d))).collect();
    let found: Vec<((u32, u32), Vec<u64>)> = columns
        .par_iter()
        .map(|&(w, d)| ((w, d), column_homology(&algebra, &coalgebra, &unit_index, w, d)))
        .collect();
    let mut out = BTreeMap::new();
    for ((w, d), h) in found {
        for (s, n) in h.into_iter().enumerate() {
            if n > 0 {
                out.insert((s as u32, w, d), n);
            }
        }
    }
    out
}

/// Whether the Koszul complex is acyclic in positive weight within bounds.
pub fn koszul_complex_check(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> AcyclicityVerdict {
    let homology = koszul_complex_homology(presentation, bounds);
    match homology.iter().min_by_key(|(&(s, w, d), _)| (w, s, d)) {
        None => AcyclicityVerdict::AcyclicUpTo(bounds),
        Some((&(s, weight, degree), &dim)) => AcyclicityVerdict::NotAcyclic { weight, s, degree, dim },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(w: u32, d: u32) -> TruncationBounds {
        TruncationBounds::new(w, d).unwrap()
    }

    #[test]
    fn sphere_complex_is_acyclic() {
        for n in [2u32, 3, 4] {
            let p = QuadraticCommPresentation::from_terms(
                vec![Generator::new("x", n)],
                vec![vec![(Rational::one(), 0, 0)]],
            );
            // odd squares vanish already, so drop the redundant relation
            let p = p.unwrap_or_else(|_| QuadraticCommPresentation::from_terms(vec![Generator::new("x", n)], vec![]).unwrap());
            assert!(koszul_complex_check(&p, b(6, 30)).is_acyclic());
            // A^¡ of the sphere is one-dimensional in every weight
            let dims = dual_coalgebra_dims(&p, b(6, 30));
            for w in 0..=6 {
                assert_eq!(dims.at(w, n * w), 1);
            }
        }
    }

    #[test]
    fn polynomial_ring_has_exterior_dual() {
        let g = vec![Generator::new("x", 2), Generator::new("y", 2)];
        let p = QuadraticCommPresentation::from_terms(g, vec![]).unwrap();
        let dims = dual_coalgebra_dims(&p, b(4, 20));
        assert_eq!(dims.at(1, 2), 2);
        assert_eq!(dims.at(2, 4), 1);
        assert_eq!(dims.at(3, 6), 0);
        assert!(koszul_complex_homology(&p, b(4, 20)).is_empty());
    }

    #[test]
    fn dropping_a_relation_changes_the_dual() {
        // the trivial algebra on one even generator: A^¡ is the tensor coalgebra
        let g = vec![Generator::new("x", 2), Generator::new("y", 4)];
        let all = crate::presentations::canonical_comm_pairs(&g)
            .into_iter()
            .map(|p| vec![(Rational::one(), p.0, p.1)])
            .collect();
        let p = QuadraticCommPresentation::from_terms(g, all).unwrap();
        let dims = dual_coalgebra_dims(&p, b(3, 12));
        assert_eq!(dims.weight_totals()[&3], 8);
    }
}
