use std::collections::BTreeMap;

use crate::exactlin::{Matrix, Rational, SparseVec, Subspace};
use crate::graded::{parity_sign, Generator};
use crate::presentations::{
    canonical_comm_pairs, Pair, QuadraticCommPresentation, QuadraticLiePresentation, QuadraticRelation,
};

/// The pairing between canonical weight-2 Lie brackets (rows) and canonical
/// weight-2 monomials (columns). Both bases are indexed by the same list of
/// [`Pair`]s, so the matrix is diagonal with entries `(-1)^{|x_i||a_j|}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairingMatrix {
    pairs: Vec<Pair>,
    signs: Vec<i64>,
}

impl PairingMatrix {
    /// Pairing for commutative generators `x_i` (Lie generators have degree
    /// `|x_i| - 1`).
    pub fn new(comm_generators: &[Generator]) -> Self {
        let pairs = canonical_comm_pairs(comm_generators);
        let signs = pairs
            .iter()
            .map(|p| {
                let xi = comm_generators[p.0].degree as u64;
                let aj = comm_generators[p.1].degree as u64 - 1;
                parity_sign(xi * aj)
            })
            .collect();
        PairingMatrix { pairs, signs }
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn sign(&self, p: Pair) -> i64 {
        let i = self.pairs.binary_search(&p).expect("pair outside the canonical basis");
        self.signs[i]
    }

    pub fn matrix(&self) -> Matrix {
        let n = self.pairs.len();
        Matrix::from_triplets(n, n, self.signs.iter().enumerate().map(|(i, s)| (i, i, Rational::from_integer(*s))))
            .expect("diagonal entries are in range")
    }

    /// Exactly one nonzero entry, equal to ±1, in every row and column.
    pub fn is_perfect(&self) -> bool {
        let m = self.matrix();
        let n = self.pairs.len();
        let t = m.transpose();
        (0..n).all(|i| {
            let ok = |row: &SparseVec<usize>| row.len() == 1 && row.entries()[0].1.abs().is_one();
            ok(m.row(i)) && ok(t.row(i))
        })
    }
}

/// Annihilator, per degree, of `relations` under the pairing, written in the
/// canonical basis of the opposite side.
fn orthogonal(comm_generators: &[Generator], relations: &[QuadraticRelation]) -> Vec<QuadraticRelation> {
    let relations_by_degree = group_by_comm_degree(comm_generators, relations);
    let pairing = PairingMatrix::new(comm_generators);
    let mut by_degree: BTreeMap<u32, Vec<Pair>> = BTreeMap::new();
    for &p in pairing.pairs() {
        let d = comm_generators[p.0].degree + comm_generators[p.1].degree;
        by_degree.entry(d).or_default().push(p);
    }
    let mut out = Vec::new();
    for (d, pairs) in by_degree {
        let position = |p: &Pair| pairs.binary_search(p).expect("relation pair in this degree");
        let twisted: Vec<SparseVec<usize>> = relations_by_degree
            .get(&d)
            .into_iter()
            .flatten()
            .map(|r| {
                SparseVec::from_entries(
                    r.iter().map(|(p, c)| (position(p), c * &Rational::from_integer(pairing.sign(*p)))),
                )
            })
            .collect();
        let span = Subspace::span(pairs.len(), twisted).expect("coordinates in range");
        for v in span.annihilator().basis() {
            out.push(v.map_keys(|i| pairs[i]));
        }
    }
    out
}

/// Groups relations by the degree of the corresponding commutative monomials.
fn group_by_comm_degree(
    comm_generators: &[Generator],
    relations: &[QuadraticRelation],
) -> BTreeMap<u32, Vec<QuadraticRelation>> {
    let mut out: BTreeMap<u32, Vec<QuadraticRelation>> = BTreeMap::new();
    for r in relations {
        if let Some((p, _)) = r.leading() {
            let d = comm_generators[p.0].degree + comm_generators[p.1].degree;
            out.entry(d).or_default().push(r.clone());
        }
    }
    out
}

fn shift_down(generators: &[Generator]) -> Vec<Generator> {
    generators.iter().map(|g| Generator::new(g.name.clone(), g.degree - 1)).collect()
}

fn shift_up(generators: &[Generator]) -> Vec<Generator> {
    generators.iter().map(|g| Generator::new(g.name.clone(), g.degree + 1)).collect()
}

/// The Koszul dual Lie presentation: generators of degree `|x_i| - 1` and
/// relations the annihilator of `R` under [`PairingMatrix`], in reduced
/// echelon form per degree.
pub fn dual_lie(presentation: &QuadraticCommPresentation) -> QuadraticLiePresentation {
    let relations = orthogonal(presentation.generators(), presentation.relations());
    QuadraticLiePresentation::new(shift_down(presentation.generators()), relations)
        .expect("the annihilator of a valid presentation is a valid presentation")
}

/// The Koszul dual commutative presentation: generators of degree
/// `|a_i| + 1` and relations the annihilator of the Lie relations.
pub fn dual_comm(presentation: &QuadraticLiePresentation) -> QuadraticCommPresentation {
    let comm = shift_up(presentation.generators());
    let relations = orthogonal(&comm, presentation.relations());
    QuadraticCommPresentation::new(comm, relations)
        .expect("the annihilator of a valid presentation is a valid presentation")
}

/// Relation span per degree, as subspaces of the canonical weight-2 basis.
/// Degrees are those of the commutative generators `comm_generators`; Lie
/// relations are accepted through the identification of canonical pairs.
pub fn relation_spans(comm_generators: &[Generator], relations: &[QuadraticRelation]) -> BTreeMap<u32, Subspace> {
    let generators = comm_generators;
    let relations_by_degree = group_by_comm_degree(generators, relations);
    let pairs = canonical_comm_pairs(generators);
    let mut by_degree: BTreeMap<u32, Vec<Pair>> = BTreeMap::new();
    for p in pairs {
        by_degree.entry(generators[p.0].degree + generators[p.1].degree).or_default().push(p);
    }
    by_degree
        .into_iter()
        .map(|(d, ps)| {
            let vecs = relations_by_degree
                .get(&d)
                .into_iter()
                .flatten()
                .map(|r| SparseVec::from_entries(r.iter().map(|(p, c)| (ps.binary_search(p).unwrap(), c.clone()))))
                .collect();
            (d, Subspace::span(ps.len(), vecs).unwrap())
        })
        .collect()
}
