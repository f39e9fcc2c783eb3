use std::collections::BTreeMap;

use rayon::prelude::*;

use super::{Pair, QuadraticLiePresentation, QuadraticRelation};
use crate::exactlin::field::{row_from_entries, FieldEchelon, Row};
use crate::exactlin::{Rational, SparseVec};
use crate::graded::{parity_sign, BiDegree, BigradedDims, Generator, TruncationBounds, Variance};

/// A scalar multiple of a word in the generators: an element of `W^{⊗w}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorWord {
    pub coefficient: Rational,
    pub letters: Vec<usize>,
}

/// A homogeneous element of the tensor algebra, keyed by encoded words.
/// All words in one element have the same length.
pub type TensorElement = SparseVec<u64>;

/// Encodes fixed-length words over `n` letters as base-`n` integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordCodec {
    letters: u64,
}

impl WordCodec {
    pub fn new(letters: usize) -> Self {
        WordCodec { letters: letters.max(1) as u64 }
    }

    /// `n^len`; panics if words of this length do not fit in 64 bits.
    pub fn span(&self, len: u32) -> u64 {
        self.letters.checked_pow(len).expect("tensor words of this length overflow the 64-bit encoding")
    }

    pub fn encode(&self, letters: &[usize]) -> u64 {
        let _ = self.span(letters.len() as u32);
        letters.iter().fold(0u64, |acc, &l| acc * self.letters + l as u64)
    }

    pub fn decode(&self, mut code: u64, len: u32) -> Vec<usize> {
        let mut out = vec![0; len as usize];
        for slot in out.iter_mut().rev() {
            *slot = (code % self.letters) as usize;
            code /= self.letters;
        }
        out
    }

    /// Code of the concatenation `u ⊗ v` where `v` has length `len_v`.
    pub fn concat(&self, u: u64, v: u64, len_v: u32) -> u64 {
        u * self.span(len_v) + v
    }

    pub fn to_words(&self, element: &TensorElement, len: u32) -> Vec<TensorWord> {
        element
            .iter()
            .map(|(code, c)| TensorWord { coefficient: c.clone(), letters: self.decode(*code, len) })
            .collect()
    }

    pub fn from_words(&self, words: &[TensorWord]) -> TensorElement {
        SparseVec::from_entries(words.iter().map(|w| (self.encode(&w.letters), w.coefficient.clone())))
    }
}

/// `[u, v] = u ⊗ v - (-1)^{|u||v|} v ⊗ u` for homogeneous `u` (length
/// `len_u`, degree `deg_u`) and `v`.
pub fn bracket(
    codec: &WordCodec,
    u: &TensorElement,
    len_u: u32,
    deg_u: u32,
    v: &TensorElement,
    len_v: u32,
    deg_v: u32,
) -> TensorElement {
    let sign = Rational::from_integer(-parity_sign(deg_u as u64 * deg_v as u64));
    let mut entries = Vec::with_capacity(2 * u.len() * v.len());
    for (a, ca) in u.iter() {
        for (b, cb) in v.iter() {
            let c = ca * cb;
            entries.push((codec.concat(*b, *a, len_u), &c * &sign));
            entries.push((codec.concat(*a, *b, len_v), c));
        }
    }
    SparseVec::from_entries(entries)
}

fn pair_tensor(codec: &WordCodec, generators: &[Generator], p: Pair) -> TensorElement {
    if p.0 == p.1 {
        return SparseVec::unit(codec.encode(&[p.0, p.0]));
    }
    let gi = SparseVec::unit(p.0 as u64);
    let gj = SparseVec::unit(p.1 as u64);
    bracket(codec, &gi, 1, generators[p.0].degree, &gj, 1, generators[p.1].degree)
}

/// Tensor expansion of a canonical Lie relation.
pub fn lie_relation_tensor(codec: &WordCodec, generators: &[Generator], relation: &QuadraticRelation) -> TensorElement {
    let mut acc = SparseVec::new();
    for (p, c) in relation.iter() {
        acc = acc.sub_scaled(&-c.clone(), &pair_tensor(codec, generators, *p));
    }
    acc
}

/// Dense column numbering of the words of one length and degree, in
/// reverse lexicographic order of letters.
struct WordIndex<'a> {
    degrees: Vec<u32>,
    codec: &'a WordCodec,
    len: u32,
    degree: u32,
    /// `counts[l][e]`: words of length `l` and degree `e`.
    counts: Vec<Vec<usize>>,
}

impl<'a> WordIndex<'a> {
    fn new(generators: &[Generator], codec: &'a WordCodec, len: u32, degree: u32) -> Self {
        let degrees: Vec<u32> = generators.iter().map(|g| g.degree).collect();
        let top = degree as usize;
        let mut counts = vec![vec![0usize; top + 1]; len as usize + 1];
        counts[0][0] = 1;
        for l in 1..=len as usize {
            for e in 0..=top {
                counts[l][e] = degrees.iter().filter(|&&g| g as usize <= e).map(|&g| counts[l - 1][e - g as usize]).sum();
            }
        }
        WordIndex { degrees, codec, len, degree, counts }
    }

    fn size(&self) -> usize {
        self.counts[self.len as usize][self.degree as usize]
    }

    fn of(&self, code: u64) -> usize {
        let letters = self.codec.decode(code, self.len);
        let mut rest = self.degree;
        let mut rank = 0;
        for (i, &l) in letters.iter().enumerate() {
            let tail = self.len as usize - i - 1;
            for &g in &self.degrees[..l] {
                if g <= rest {
                    rank += self.counts[tail][(rest - g) as usize];
                }
            }
            rest -= self.degrees[l];
        }
        self.size() - 1 - rank
    }

    fn row(&self, v: &TensorElement) -> Row<Rational> {
        row_from_entries(v.iter().map(|(code, c)| (self.of(*code), c.clone())).collect())
    }
}

#[derive(Debug, Clone, Default)]
struct LieComponent {
    ideal: Vec<TensorElement>,
    quotient: Vec<TensorElement>,
}

/// The quotient `𝕃(W)/(R)` truncated to bounds, realized inside the tensor
/// algebra: per bidegree, a basis of the ideal component and representatives
/// of a complement. Both are left-normed brackets `[u, g]`.
#[derive(Debug, Clone)]
pub struct LieQuotient {
    generators: Vec<Generator>,
    codec: WordCodec,
    bounds: TruncationBounds,
    components: BTreeMap<BiDegree, LieComponent>,
}

impl LieQuotient {
    pub fn new(presentation: &QuadraticLiePresentation, bounds: TruncationBounds) -> Self {
        Self::build(presentation.generators(), presentation.relations(), bounds)
    }

    /// The free Lie algebra on `generators`.
    pub fn free(generators: &[Generator], bounds: TruncationBounds) -> Self {
        Self::build(generators, &[], bounds)
    }

    fn build(generators: &[Generator], relations: &[QuadraticRelation], bounds: TruncationBounds) -> Self {
        let codec = WordCodec::new(generators.len());
        let mut components: BTreeMap<BiDegree, LieComponent> = BTreeMap::new();
        for (i, g) in generators.iter().enumerate() {
            if g.degree <= bounds.max_degree {
                components
                    .entry(BiDegree::new(1, g.degree))
                    .or_default()
                    .quotient
                    .push(SparseVec::unit(i as u64));
            }
        }
        let mut rel_by_degree: BTreeMap<u32, Vec<TensorElement>> = BTreeMap::new();
        for r in relations {
            if let Some((p, _)) = r.leading() {
                let d = generators[p.0].degree + generators[p.1].degree;
                rel_by_degree.entry(d).or_default().push(lie_relation_tensor(&codec, generators, r));
            }
        }
        for w in 2..=bounds.max_weight {
            let previous: Vec<(BiDegree, &LieComponent)> =
                components.range(BiDegree::new(w - 1, 0)..BiDegree::new(w, 0)).map(|(k, v)| (*k, v)).collect();
            if previous.is_empty() {
                break;
            }
            let degrees: Vec<u32> = (0..=bounds.max_degree).collect();
            let built: Vec<(u32, LieComponent)> = degrees
                .par_iter()
                .filter_map(|&d| {
                    let index = WordIndex::new(generators, &codec, w, d);
                    if index.size() == 0 {
                        return None;
                    }
                    let mut echelon = FieldEchelon::<Rational>::new(index.size());
                    let mut comp = LieComponent::default();
                    let mut offer = |v: TensorElement, out: &mut Vec<TensorElement>| {
                        if echelon.insert(index.row(&v)) {
                            out.push(v);
                        }
                    };
                    let candidates = |source: &dyn Fn(&LieComponent) -> &Vec<TensorElement>| {
                        let mut out = Vec::new();
                        for (bd, prev) in &previous {
                            for (gi, g) in generators.iter().enumerate() {
                                if bd.degree + g.degree != d {
                                    continue;
                                }
                                let gv = SparseVec::unit(gi as u64);
                                out.extend(source(prev).iter().map(|u| bracket(&codec, u, w - 1, bd.degree, &gv, 1, g.degree)));
                            }
                        }
                        out
                    };
                    if w == 2 {
                        for r in rel_by_degree.get(&d).into_iter().flatten() {
                            offer(r.clone(), &mut comp.ideal);
                        }
                    } else {
                        for v in candidates(&|c| &c.ideal) {
                            offer(v, &mut comp.ideal);
                        }
                    }
                    for v in candidates(&|c| &c.quotient) {
                        offer(v, &mut comp.quotient);
                    }
                    (!comp.ideal.is_empty() || !comp.quotient.is_empty()).then_some((d, comp))
                })
                .collect();
            for (d, comp) in built {
                components.insert(BiDegree::new(w, d), comp);
            }
        }
        LieQuotient { generators: generators.to_vec(), codec, bounds, components }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn codec(&self) -> WordCodec {
        self.codec
    }

    /// Representatives of a basis of the quotient in bidegree `bd`.
    pub fn representatives(&self, bd: BiDegree) -> &[TensorElement] {
        self.components.get(&bd).map_or(&[], |c| &c.quotient)
    }

    /// A basis of the ideal component in bidegree `bd`.
    pub fn ideal(&self, bd: BiDegree) -> &[TensorElement] {
        self.components.get(&bd).map_or(&[], |c| &c.ideal)
    }

    pub fn support(&self) -> impl Iterator<Item = BiDegree> + '_ {
        self.components.keys().copied()
    }

    pub fn dims(&self) -> BigradedDims {
        BigradedDims::from_entries(
            Variance::Homological,
            self.bounds,
            self.components.iter().map(|(bd, c)| (*bd, c.quotient.len() as u64)),
        )
    }
}

/// Dimensions of the free graded Lie algebra on `generators`.
pub fn free_lie_dims(generators: &[Generator], bounds: TruncationBounds) -> BigradedDims {
    LieQuotient::free(generators, bounds).dims()
}

/// Dimensions of `𝕃(W)/(R)`, read off from its enveloping algebra
/// `T(W)/(R)`. [`LieQuotient`] computes the same numbers inside the tensor
/// algebra and is far slower once the free Lie algebra is large.
pub fn lie_algebra_dims(presentation: &QuadraticLiePresentation, bounds: TruncationBounds) -> BigradedDims {
    let u = super::EnvelopingQuotient::new(presentation, bounds).dims();
    super::lie_dims_from_enveloping(&u, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rank_of;
    use crate::presentations::canonical_lie_pairs;

    fn gens(degrees: &[u32]) -> Vec<Generator> {
        degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("a{i}"), d)).collect()
    }

    #[test]
    fn codec_round_trip() {
        let c = WordCodec::new(3);
        let w = vec![2, 0, 1, 1];
        assert_eq!(c.decode(c.encode(&w), 4), w);
        assert_eq!(c.concat(c.encode(&[2, 0]), c.encode(&[1, 1]), 2), c.encode(&w));
        let one = WordCodec::new(1);
        assert_eq!(one.decode(one.encode(&[0, 0, 0]), 3), vec![0, 0, 0]);
    }

    #[test]
    fn odd_self_bracket_is_twice_the_square() {
        let c = WordCodec::new(1);
        let a = SparseVec::unit(0u64);
        let aa = bracket(&c, &a, 1, 3, &a, 1, 3);
        assert_eq!(aa.entries(), &[(0, Rational::from_integer(2))]);
        let even = bracket(&c, &a, 1, 2, &a, 1, 2);
        assert!(even.is_zero());
    }

    #[test]
    fn single_generator_examples() {
        let b = TruncationBounds::DEFAULT;
        let d = free_lie_dims(&gens(&[3]), b);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(BiDegree::new(1, 3), 1), (BiDegree::new(2, 6), 1)]);
        let d = free_lie_dims(&gens(&[4]), b);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(BiDegree::new(1, 4), 1)]);
        assert!(free_lie_dims(&[], b).is_empty());
    }

    #[test]
    fn witt_count_two_generators_degree_zero() {
        let d = free_lie_dims(&gens(&[0, 0]), TruncationBounds::new(6, 10).unwrap());
        let by_weight: Vec<u64> = (1..=6).map(|w| d.at(w, 0)).collect();
        assert_eq!(by_weight, vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn abelian_presentation_has_only_weight_one() {
        let g = gens(&[1, 2, 3]);
        let rels = canonical_lie_pairs(&g).into_iter().map(SparseVec::unit).collect();
        let p = QuadraticLiePresentation::new(g, rels).unwrap();
        let d = lie_algebra_dims(&p, TruncationBounds::new(5, 30).unwrap());
        assert!(d.iter().all(|(bd, _)| bd.weight == 1));
        assert_eq!(d.total(), 3);
    }

    #[test]
    fn empty_relations_match_free() {
        let g = gens(&[1, 2]);
        let b = TruncationBounds::new(5, 20).unwrap();
        let p = QuadraticLiePresentation::new(g.clone(), vec![]).unwrap();
        assert_eq!(lie_algebra_dims(&p, b), free_lie_dims(&g, b));
    }

    #[test]
    fn yang_baxter_weight_two() {
        // infinitesimal braid relations on t12, t13, t23 of degree 1:
        // [t12, t13 + t23] = 0 and [t13, t12 + t23] = 0 (third follows)
        let g = gens(&[1, 1, 1]);
        let one = Rational::one();
        let r1 = SparseVec::from_entries(vec![(Pair(0, 1), one.clone()), (Pair(0, 2), one.clone())]);
        // [t13, t12] = [t12, t13] for odd generators
        let r2 = SparseVec::from_entries(vec![(Pair(0, 1), one.clone()), (Pair(1, 2), one)]);
        let p = QuadraticLiePresentation::new(g, vec![r1, r2]).unwrap();
        let d = lie_algebra_dims(&p, TruncationBounds::new(4, 10).unwrap());
        assert_eq!(d.at(2, 2), 4);
    }

    #[test]
    fn ideal_lies_in_free_lie_span() {
        let g = gens(&[1, 1]);
        let one = Rational::one();
        let r = SparseVec::from_entries(vec![(Pair(0, 0), one.clone()), (Pair(1, 1), one)]);
        let p = QuadraticLiePresentation::new(g.clone(), vec![r]).unwrap();
        let b = TruncationBounds::new(5, 10).unwrap();
        let q = LieQuotient::new(&p, b);
        let free = LieQuotient::free(&g, b);
        for bd in q.support().collect::<Vec<_>>() {
            let lie = free.representatives(bd).to_vec();
            let base = rank_of(lie.iter().cloned());
            let with_ideal = rank_of(lie.into_iter().chain(q.ideal(bd).iter().cloned()));
            assert_eq!(base, with_ideal, "ideal escapes the free Lie algebra at {bd}");
            assert_eq!(q.ideal(bd).len() + q.representatives(bd).len(), base);
        }
    }
}
