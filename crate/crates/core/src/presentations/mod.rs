//! Quadratic presentations of graded-commutative algebras and graded Lie
//! algebras, and their per-bidegree dimensions.
//!
//! Relations are stored in canonical weight-2 coordinates ([`Pair`]):
//!
//! * commutative side: `Pair(i, j)` with `i < j` is the monomial `x_i x_j`,
//!   `Pair(i, i)` is `x_i^2` and exists only for even `|x_i|`;
//! * Lie side: `Pair(i, j)` with `i < j` is the bracket `[a_i, a_j]`, and
//!   `Pair(i, i)` exists only for odd `|a_i|` and denotes the square
//!   `a_i a_i = 1/2 [a_i, a_i]` (tensor expansion `a_i ⊗ a_i`).

mod comm;
mod enveloping;
mod lie;
mod pbw;

use std::collections::{BTreeMap, HashSet};

pub use comm::{comm_algebra_dims, comm_monomial_basis, multiply_monomials, Monomial, QuotientAlgebra};
pub use enveloping::{lie_dims_from_enveloping, EnvelopingQuotient};
pub use lie::{
    bracket, free_lie_dims, lie_algebra_dims, lie_relation_tensor, LieQuotient, TensorElement, WordCodec,
};
pub use pbw::{enveloping_dims, free_commutative_dims, tensor_algebra_dims};

use crate::exactlin::{Rational, SparseVec};
use crate::graded::{parity_sign, Generator};

/// Canonical weight-2 coordinate; always `first <= second`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pair(pub usize, pub usize);

/// A quadratic relation in canonical coordinates.
pub type QuadraticRelation = SparseVec<Pair>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("generator {0:?} has degree 0; algebra generators need cohomological degree >= 1")]
    ZeroDegreeGenerator(String),
    #[error("relation {relation} references generator index {index}, but only {count} generators exist")]
    UnknownGenerator { relation: usize, index: usize, count: usize },
    #[error("relation {relation} contains the square of odd-degree generator {name:?}, which is identically zero")]
    OddSquare { relation: usize, name: String },
    #[error("relation {relation} contains the self-bracket of even-degree generator {name:?}, which is identically zero")]
    EvenSelfBracket { relation: usize, name: String },
    #[error("inhomogeneous relation {relation}: mixes degrees {first} and {second}")]
    Inhomogeneous { relation: usize, first: u32, second: u32 },
}

fn check_names(generators: &[Generator]) -> Result<(), PresentationError> {
    let mut seen = HashSet::new();
    for g in generators {
        if !seen.insert(g.name.as_str()) {
            return Err(PresentationError::DuplicateGenerator(g.name.clone()));
        }
    }
    Ok(())
}

/// Degree of a canonical pair.
fn pair_degree(generators: &[Generator], p: Pair) -> u32 {
    generators[p.0].degree + generators[p.1].degree
}

fn check_homogeneous(
    generators: &[Generator],
    index: usize,
    rel: &QuadraticRelation,
) -> Result<(), PresentationError> {
    let mut degree = None;
    for (p, _) in rel.iter() {
        let d = pair_degree(generators, *p);
        match degree {
            None => degree = Some(d),
            Some(first) if first != d => {
                return Err(PresentationError::Inhomogeneous { relation: index, first, second: d })
            }
            _ => {}
        }
    }
    Ok(())
}

/// Groups relations by degree. Zero relations are dropped.
fn relations_by_degree(
    generators: &[Generator],
    relations: &[QuadraticRelation],
) -> BTreeMap<u32, Vec<QuadraticRelation>> {
    let mut out: BTreeMap<u32, Vec<QuadraticRelation>> = BTreeMap::new();
    for r in relations {
        if let Some((p, _)) = r.leading() {
            out.entry(pair_degree(generators, *p)).or_default().push(r.clone());
        }
    }
    out
}

/// Presentation `Λ(V)/(R)` of a graded-commutative algebra with quadratic
/// relations. Generator degrees are cohomological.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticCommPresentation {
    generators: Vec<Generator>,
    relations: Vec<QuadraticRelation>,
}

impl QuadraticCommPresentation {
    /// Validates a presentation whose relations are already canonical.
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<QuadraticRelation>,
    ) -> Result<Self, PresentationError> {
        check_names(&generators)?;
        if let Some(g) = generators.iter().find(|g| g.degree == 0) {
            return Err(PresentationError::ZeroDegreeGenerator(g.name.clone()));
        }
        let n = generators.len();
        for (ri, rel) in relations.iter().enumerate() {
            for (p, _) in rel.iter() {
                for idx in [p.0, p.1] {
                    if idx >= n {
                        return Err(PresentationError::UnknownGenerator { relation: ri, index: idx, count: n });
                    }
                }
                debug_assert!(p.0 <= p.1);
                if p.0 == p.1 && generators[p.0].is_odd() {
                    return Err(PresentationError::OddSquare { relation: ri, name: generators[p.0].name.clone() });
                }
            }
            check_homogeneous(&generators, ri, rel)?;
        }
        Ok(QuadraticCommPresentation { generators, relations })
    }

    /// Builds a presentation from relations written as `c * x_i x_j` terms in
    /// any order; terms are moved into canonical order with the Koszul sign.
    pub fn from_terms(
        generators: Vec<Generator>,
        relations: Vec<Vec<(Rational, usize, usize)>>,
    ) -> Result<Self, PresentationError> {
        check_names(&generators)?;
        let n = generators.len();
        let mut canonical = Vec::with_capacity(relations.len());
        for (ri, terms) in relations.into_iter().enumerate() {
            let mut entries = Vec::with_capacity(terms.len());
            for (c, i, j) in terms {
                for idx in [i, j] {
                    if idx >= n {
                        return Err(PresentationError::UnknownGenerator { relation: ri, index: idx, count: n });
                    }
                }
                if i == j && generators[i].is_odd() {
                    return Err(PresentationError::OddSquare { relation: ri, name: generators[i].name.clone() });
                }
                if i <= j {
                    entries.push((Pair(i, j), c));
                } else {
                    let s = parity_sign(generators[i].degree as u64 * generators[j].degree as u64);
                    entries.push((Pair(j, i), c * Rational::from_integer(s)));
                }
            }
            canonical.push(SparseVec::from_entries(entries));
        }
        Self::new(generators, canonical)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[QuadraticRelation] {
        &self.relations
    }

    /// Canonical weight-2 monomials of the given degree, in ascending order.
    pub fn canonical_monomials(&self, degree: u32) -> Vec<Pair> {
        canonical_comm_pairs(&self.generators).into_iter().filter(|p| pair_degree(&self.generators, *p) == degree).collect()
    }

    /// Degrees in which weight-2 monomials exist.
    pub fn weight_two_degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> =
            canonical_comm_pairs(&self.generators).into_iter().map(|p| pair_degree(&self.generators, p)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn relations_by_degree(&self) -> BTreeMap<u32, Vec<QuadraticRelation>> {
        relations_by_degree(&self.generators, &self.relations)
    }

    pub fn pair_degree(&self, p: Pair) -> u32 {
        pair_degree(&self.generators, p)
    }
}

/// Presentation `𝕃(W)/(R)` of a graded Lie algebra with quadratic
/// relations. Generator degrees are homological.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticLiePresentation {
    generators: Vec<Generator>,
    relations: Vec<QuadraticRelation>,
}

impl QuadraticLiePresentation {
    pub fn new(
        generators: Vec<Generator>,
        relations: Vec<QuadraticRelation>,
    ) -> Result<Self, PresentationError> {
        check_names(&generators)?;
        let n = generators.len();
        for (ri, rel) in relations.iter().enumerate() {
            for (p, _) in rel.iter() {
                for idx in [p.0, p.1] {
                    if idx >= n {
                        return Err(PresentationError::UnknownGenerator { relation: ri, index: idx, count: n });
                    }
                }
                if p.0 == p.1 && !generators[p.0].is_odd() {
                    return Err(PresentationError::EvenSelfBracket {
                        relation: ri,
                        name: generators[p.0].name.clone(),
                    });
                }
            }
            check_homogeneous(&generators, ri, rel)?;
        }
        Ok(QuadraticLiePresentation { generators, relations })
    }

    /// Builds a presentation from terms `c * [a_i, a_j]` in any order, using
    /// `[a_j, a_i] = -(-1)^{|a_i||a_j|} [a_i, a_j]`. A self-bracket term
    /// `c * [a_i, a_i]` equals `2c` times the canonical square.
    pub fn from_bracket_terms(
        generators: Vec<Generator>,
        relations: Vec<Vec<(Rational, usize, usize)>>,
    ) -> Result<Self, PresentationError> {
        check_names(&generators)?;
        let n = generators.len();
        let mut canonical = Vec::with_capacity(relations.len());
        for (ri, terms) in relations.into_iter().enumerate() {
            let mut entries = Vec::with_capacity(terms.len());
            for (c, i, j) in terms {
                for idx in [i, j] {
                    if idx >= n {
                        return Err(PresentationError::UnknownGenerator { relation: ri, index: idx, count: n });
                    }
                }
                if i == j {
                    if !generators[i].is_odd() {
                        return Err(PresentationError::EvenSelfBracket { relation: ri, name: generators[i].name.clone() });
                    }
                    entries.push((Pair(i, i), c * Rational::from_integer(2)));
                } else if i < j {
                    entries.push((Pair(i, j), c));
                } else {
                    let s = -parity_sign(generators[i].degree as u64 * generators[j].degree as u64);
                    entries.push((Pair(j, i), c * Rational::from_integer(s)));
                }
            }
            canonical.push(SparseVec::from_entries(entries));
        }
        Self::new(generators, canonical)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[QuadraticRelation] {
        &self.relations
    }

    /// Canonical weight-2 brackets of the given degree, in ascending order.
    pub fn canonical_brackets(&self, degree: u32) -> Vec<Pair> {
        canonical_lie_pairs(&self.generators).into_iter().filter(|p| pair_degree(&self.generators, *p) == degree).collect()
    }

    pub fn weight_two_degrees(&self) -> Vec<u32> {
        let mut ds: Vec<u32> =
            canonical_lie_pairs(&self.generators).into_iter().map(|p| pair_degree(&self.generators, p)).collect();
        ds.sort_unstable();
        ds.dedup();
        ds
    }

    pub fn relations_by_degree(&self) -> BTreeMap<u32, Vec<QuadraticRelation>> {
        relations_by_degree(&self.generators, &self.relations)
    }

    pub fn pair_degree(&self, p: Pair) -> u32 {
        pair_degree(&self.generators, p)
    }
}

/// `{x_i x_j : i < j} ∪ {x_i^2 : |x_i| even}` in ascending order.
pub fn canonical_comm_pairs(generators: &[Generator]) -> Vec<Pair> {
    let n = generators.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i < j || !generators[i].is_odd() {
                out.push(Pair(i, j));
            }
        }
    }
    out
}

/// `{[a_i, a_j] : i < j} ∪ {a_i^2 : |a_i| odd}` in ascending order.
pub fn canonical_lie_pairs(generators: &[Generator]) -> Vec<Pair> {
    let n = generators.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i..n {
            if i < j || generators[i].is_odd() {
                out.push(Pair(i, j));
            }
        }
    }
    out
}
