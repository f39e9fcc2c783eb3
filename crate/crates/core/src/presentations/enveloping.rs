//! `U(L) = T(W)/(R)` for a quadratic Lie presentation, built one weight at
//! a time as `(W ⊗ U_{w−1}) / (R ⊗ U_{w−2})`, and the Lie dimensions read
//! off from it by PBW.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::lie::{lie_relation_tensor, WordCodec};
use super::pbw::free_commutative_dims;
use super::QuadraticLiePresentation;
use crate::exactlin::field::{row_from_entries, FieldEchelon, Row};
use crate::exactlin::Rational;
use crate::graded::{BiDegree, BigradedDims, TruncationBounds, Variance};

/// `U_{w,d}`: a quotient of `⊕_g g ⊗ U_{w−1, d−|g|}`. Coordinates are laid
/// out generator by generator in reverse, so the last generator's block
/// comes first.
#[derive(Debug, Clone, Default)]
struct Piece {
    /// `(generator, offset)` for each block, in coordinate order.
    blocks: Vec<(usize, usize)>,
    size: usize,
    /// Normal form of every coordinate, in basis indices.
    normal: Vec<Row<Rational>>,
    dim: usize,
}

impl Piece {
    fn coordinate(&self, generator: usize, j: usize) -> Option<usize> {
        self.blocks.iter().find(|(g, _)| *g == generator).map(|(_, off)| off + j)
    }
}

/// Normal forms of an enveloping algebra through the bounds.
#[derive(Debug, Clone)]
pub struct EnvelopingQuotient {
    bounds: TruncationBounds,
    /// `levels[w][d]`.
    levels: Vec<BTreeMap<u32, Piece>>,
}

impl EnvelopingQuotient {
    pub fn new(presentation: &QuadraticLiePresentation, bounds: TruncationBounds) -> Self {
        let generators = presentation.generators();
        let codec = WordCodec::new(generators.len());
        // relations as Σ c · a ⊗ b, grouped by degree
        let mut relations: BTreeMap<u32, Vec<Vec<(usize, usize, Rational)>>> = BTreeMap::new();
        for r in presentation.relations() {
            let t = lie_relation_tensor(&codec, generators, r);
            if t.is_zero() {
                continue;
            }
            let terms: Vec<(usize, usize, Rational)> = t
                .iter()
                .map(|(code, c)| {
                    let ab = codec.decode(*code, 2);
                    (ab[0], ab[1], c.clone())
                })
                .collect();
            let d = generators[terms[0].0].degree + generators[terms[0].1].degree;
            relations.entry(d).or_default().push(terms);
        }
        let unit = Piece { size: 1, normal: vec![vec![(0, Rational::one())]], dim: 1, ..Piece::default() };
        let mut levels = vec![BTreeMap::from([(0u32, unit)])];
        for w in 1..=bounds.max_weight {
            let prev = &levels[w as usize - 1];
            let before = (w >= 2).then(|| &levels[w as usize - 2]);
            let empty = BTreeMap::new();
            let before = before.unwrap_or(&empty);
            let built: Vec<(u32, Piece)> = (0..=bounds.max_degree)
                .into_par_iter()
                .filter_map(|d| {
                    let mut blocks = Vec::new();
                    let mut size = 0;
                    for (g, gen) in generators.iter().enumerate().rev() {
                        if gen.degree > d {
                            continue;
                        }
                        if let Some(p) = prev.get(&(d - gen.degree)) {
                            if p.dim > 0 {
                                blocks.push((g, size));
                                size += p.dim;
                            }
                        }
                    }
                    if size == 0 {
                        return None;
                    }
                    let mut piece = Piece { blocks, size, ..Piece::default() };
                    let mut rows = Vec::new();
                    if w >= 2 {
                        for (&e, rels) in relations.range(..=d) {
                            let Some(low) = before.get(&(d - e)) else { continue };
                            for terms in rels {
                                for u in 0..low.dim {
                                    rows.push(relation_row(&piece, prev, generators, terms, u, d));
                                }
                            }
                        }
                    }
                    rows.sort_by_key(|r: &Row<Rational>| r.len());
                    let mut echelon = FieldEchelon::<Rational>::new(size);
                    for r in rows {
                        if !r.is_empty() {
                            echelon.insert(r);
                        }
                    }
                    finish(&mut piece, echelon);
                    Some((d, piece))
                })
                .collect();
            levels.push(built.into_iter().collect());
        }
        EnvelopingQuotient { bounds, levels }
    }

    pub fn dim(&self, bd: BiDegree) -> usize {
        self.levels.get(bd.weight as usize).and_then(|l| l.get(&bd.degree)).map_or(0, |p| p.dim)
    }

    pub fn dims(&self) -> BigradedDims {
        let mut out = BigradedDims::new(Variance::Homological, self.bounds);
        for (w, level) in self.levels.iter().enumerate() {
            for (&d, p) in level {
                out.add(BiDegree::new(w as u32, d), p.dim as u64);
            }
        }
        out
    }
}

/// `Σ c · a ⊗ (b · u)` in the coordinates of `piece`, where `b · u` is the
/// normal form of `b ⊗ u` one weight down.
fn relation_row(
    piece: &Piece,
    prev: &BTreeMap<u32, Piece>,
    generators: &[crate::graded::Generator],
    terms: &[(usize, usize, Rational)],
    u: usize,
    d: u32,
) -> Row<Rational> {
    let mut entries = Vec::new();
    for (a, b, c) in terms {
        let target = d - generators[*a].degree;
        let Some(mid) = prev.get(&target) else { continue };
        let coord = mid.coordinate(*b, u).expect("u lies in the block of b");
        for (j, x) in &mid.normal[coord] {
            let col = piece.coordinate(*a, *j).expect("block exists for a nonzero product");
            entries.push((col, c * x));
        }
    }
    row_from_entries(entries)
}

/// Reads off the basis and back-substitutes normal forms, from the last
/// coordinate to the first.
fn finish(piece: &mut Piece, echelon: FieldEchelon<Rational>) {
    let n = piece.size;
    let mut pivot_row = vec![None; n];
    for (i, r) in echelon.rows().iter().enumerate() {
        pivot_row[r[0].0] = Some(i);
    }
    let mut basis_of = vec![None; n];
    let mut dim = 0;
    for (c, slot) in basis_of.iter_mut().enumerate() {
        if pivot_row[c].is_none() {
            *slot = Some(dim);
            dim += 1;
        }
    }
    let mut normal: Vec<Row<Rational>> = vec![Vec::new(); n];
    for c in (0..n).rev() {
        normal[c] = match (pivot_row[c], basis_of[c]) {
            (None, Some(b)) => vec![(b, Rational::one())],
            (Some(r), _) => {
                let mut entries = Vec::new();
                for (k, x) in &echelon.rows()[r][1..] {
                    for (b, y) in &normal[*k] {
                        entries.push((*b, -(x * y)));
                    }
                }
                row_from_entries(entries)
            }
            (None, None) => unreachable!("every coordinate is a pivot or a basis element"),
        };
    }
    piece.normal = normal;
    piece.dim = dim;
}

/// Recovers Lie dimensions from those of `U(L)`: weight by weight, the part
/// of `U_w` not accounted for by products of lower-weight Lie elements.
pub fn lie_dims_from_enveloping(enveloping: &BigradedDims, bounds: TruncationBounds) -> BigradedDims {
    let mut lie = BigradedDims::new(Variance::Homological, bounds);
    for w in 1..=bounds.max_weight {
        let products = free_commutative_dims(&lie, bounds);
        for d in 0..=bounds.max_degree {
            let u = enveloping.at(w, d);
            let p = products.at(w, d);
            assert!(u >= p, "enveloping dims below the PBW lower bound at ({w}, {d})");
            lie.set(BiDegree::new(w, d), u - p);
        }
    }
    lie
}
