use std::collections::{BTreeMap, HashMap};

use super::QuadraticCommPresentation;
use crate::exactlin::{Echelon, Rational, SparseVec};
use crate::graded::{BiDegree, BigradedDims, Generator, TruncationBounds, Variance};

/// A monomial of `Λ(V)`: generator indices in non-decreasing order, odd
/// generators appearing at most once.
pub type Monomial = Vec<usize>;

/// Basis of `Λ(V)` in bidegree `(w, d)`, in lexicographic order.
pub fn comm_monomial_basis(generators: &[Generator], weight: u32, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(weight as usize);
    extend_monomials(generators, 0, weight, degree, &mut current, &mut out);
    out
}

fn extend_monomials(
    generators: &[Generator],
    start: usize,
    remaining: u32,
    degree: u32,
    current: &mut Vec<usize>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        if degree == 0 {
            out.push(current.clone());
        }
        return;
    }
    for i in start..generators.len() {
        let g = &generators[i];
        if g.degree > degree {
            continue;
        }
        if g.is_odd() && current.last() == Some(&i) {
            continue;
        }
        current.push(i);
        extend_monomials(generators, i, remaining - 1, degree - g.degree, current, out);
        current.pop();
    }
}

/// Product of two monomials, normalized to sorted order. Returns `None`
/// when an odd generator repeats; otherwise the Koszul sign of the shuffle.
pub fn multiply_monomials(generators: &[Generator], a: &[usize], b: &[usize]) -> Option<(i64, Monomial)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut sign = 1i64;
    let (mut i, mut j) = (0, 0);
    // odd letters of `a` not yet emitted
    let mut odd_left_in_a = a.iter().filter(|&&x| generators[x].is_odd()).count();
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i] <= b[j]);
        if take_a {
            if i < a.len() && j < b.len() && a[i] == b[j] && generators[a[i]].is_odd() {
                return None;
            }
            if generators[a[i]].is_odd() {
                odd_left_in_a -= 1;
            }
            out.push(a[i]);
            i += 1;
        } else {
            if generators[b[j]].is_odd() && odd_left_in_a % 2 == 1 {
                sign = -sign;
            }
            out.push(b[j]);
            j += 1;
        }
    }
    Some((sign, out))
}

fn monomial_degree(generators: &[Generator], m: &[usize]) -> u32 {
    m.iter().map(|&i| generators[i].degree).sum()
}

#[derive(Debug, Clone)]
struct Component {
    index: HashMap<Monomial, usize>,
    basis: Vec<Monomial>,
    /// Normal form of every monomial of this bidegree, in `basis` coordinates.
    normal_forms: Vec<SparseVec<usize>>,
}

/// The quotient `Λ(V)/(R)` truncated to bounds, with a monomial basis and
/// normal forms in every bidegree.
///
/// The ideal in weight `w` is spanned by `m · r` over monomials `m` of weight
/// `w - 2` and relations `r`; the basis consists of the monomials that are not
/// pivots of its reduced echelon form.
#[derive(Debug, Clone)]
pub struct QuotientAlgebra {
    generators: Vec<Generator>,
    bounds: TruncationBounds,
    components: BTreeMap<BiDegree, Component>,
}

impl QuotientAlgebra {
    pub fn new(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> Self {
        let generators = presentation.generators().to_vec();
        let relations: Vec<(u32, Vec<(Monomial, Rational)>)> = presentation
            .relations()
            .iter()
            .filter(|r| !r.is_zero())
            .map(|r| {
                let deg = presentation.pair_degree(r.entries()[0].0);
                (deg, r.iter().map(|(p, c)| (vec![p.0, p.1], c.clone())).collect())
            })
            .collect();
        let mut components = BTreeMap::new();
        for w in 0..=bounds.max_weight {
            for d in 0..=bounds.max_degree {
                let monomials = comm_monomial_basis(&generators, w, d);
                if monomials.is_empty() {
                    continue;
                }
                let index: HashMap<Monomial, usize> =
                    monomials.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
                let mut ideal = Echelon::new();
                if w >= 2 {
                    for (rdeg, terms) in &relations {
                        if *rdeg > d {
                            continue;
                        }
                        for m in comm_monomial_basis(&generators, w - 2, d - rdeg) {
                            let mut entries = Vec::with_capacity(terms.len());
                            for (mono, c) in terms {
                                if let Some((s, prod)) = multiply_monomials(&generators, &m, mono) {
                                    entries.push((index[&prod], c * &Rational::from_integer(s)));
                                }
                            }
                            ideal.insert(SparseVec::from_entries(entries));
                        }
                    }
                }
                let rows = ideal.into_reduced();
                let mut pivot_row = vec![None; monomials.len()];
                for (r, row) in rows.iter().enumerate() {
                    pivot_row[row.entries()[0].0] = Some(r);
                }
                let mut basis_pos = vec![usize::MAX; monomials.len()];
                let mut basis = Vec::new();
                for (i, m) in monomials.iter().enumerate() {
                    if pivot_row[i].is_none() {
                        basis_pos[i] = basis.len();
                        basis.push(m.clone());
                    }
                }
                let normal_forms = (0..monomials.len())
                    .map(|i| match pivot_row[i] {
                        None => SparseVec::unit(basis_pos[i]),
                        Some(r) => SparseVec::from_entries(
                            rows[r].entries()[1..].iter().map(|(k, c)| (basis_pos[*k], -c.clone())),
                        ),
                    })
                    .collect();
                if !basis.is_empty() {
                    components.insert(BiDegree::new(w, d), Component { index, basis, normal_forms });
                }
            }
        }
        QuotientAlgebra { generators, bounds, components }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn bounds(&self) -> TruncationBounds {
        self.bounds
    }

    pub fn dim(&self, bd: BiDegree) -> usize {
        self.components.get(&bd).map_or(0, |c| c.basis.len())
    }

    /// Standard monomials of the given bidegree.
    pub fn basis(&self, bd: BiDegree) -> &[Monomial] {
        self.components.get(&bd).map_or(&[], |c| &c.basis)
    }

    /// Bidegrees with nonzero dimension, ascending.
    pub fn support(&self) -> impl Iterator<Item = BiDegree> + '_ {
        self.components.keys().copied()
    }

    /// Normal form of a sorted monomial, in basis coordinates; zero when the
    /// monomial lies outside the bounds or in the ideal.
    pub fn normal_form(&self, monomial: &[usize]) -> SparseVec<usize> {
        let bd = BiDegree::new(monomial.len() as u32, monomial_degree(&self.generators, monomial));
        match self.components.get(&bd) {
            Some(c) => match c.index.get(monomial) {
                Some(&i) => c.normal_forms[i].clone(),
                None => SparseVec::new(),
            },
            None => SparseVec::new(),
        }
    }

    /// Product of basis element `i` of `a` with basis element `j` of `b`, in
    /// basis coordinates of `a + b`.
    pub fn multiply(&self, a: BiDegree, i: usize, b: BiDegree, j: usize) -> SparseVec<usize> {
        let (x, y) = (&self.basis(a)[i], &self.basis(b)[j]);
        match multiply_monomials(&self.generators, x, y) {
            None => SparseVec::new(),
            Some((s, m)) => {
                let nf = self.normal_form(&m);
                if s == 1 {
                    nf
                } else {
                    nf.scaled(&Rational::from_integer(-1))
                }
            }
        }
    }

    pub fn dims(&self) -> BigradedDims {
        BigradedDims::from_entries(
            Variance::Cohomological,
            self.bounds,
            self.components.iter().map(|(bd, c)| (*bd, c.basis.len() as u64)),
        )
    }
}

/// Dimensions of `Λ(V)/(R)` per bidegree, including the unit at `(0, 0)`.
pub fn comm_algebra_dims(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> BigradedDims {
    QuotientAlgebra::new(presentation, bounds).dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::Pair;

    fn gens(degrees: &[u32]) -> Vec<Generator> {
        degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("x{i}"), d)).collect()
    }

    #[test]
    fn monomial_basis_examples() {
        assert!(comm_monomial_basis(&gens(&[3]), 2, 6).is_empty());
        assert_eq!(comm_monomial_basis(&gens(&[1, 1, 1]), 1, 1).len(), 3);
        for k in 0..8 {
            assert_eq!(comm_monomial_basis(&gens(&[2]), k, 2 * k), vec![vec![0; k as usize]]);
        }
        assert_eq!(comm_monomial_basis(&gens(&[]), 0, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn multiplication_signs() {
        let g = gens(&[1, 1, 2]);
        assert_eq!(multiply_monomials(&g, &[1], &[0]), Some((-1, vec![0, 1])));
        assert_eq!(multiply_monomials(&g, &[0], &[1]), Some((1, vec![0, 1])));
        assert_eq!(multiply_monomials(&g, &[2], &[0]), Some((1, vec![0, 2])));
        assert_eq!(multiply_monomials(&g, &[0], &[0]), None);
        // x1 x2 * x0 : x0 passes x2 (even) and x1 (odd)
        assert_eq!(multiply_monomials(&g, &[1, 2], &[0]), Some((-1, vec![0, 1, 2])));
        assert_eq!(multiply_monomials(&g, &[2, 2], &[2]), Some((1, vec![2, 2, 2])));
    }

    #[test]
    fn sphere_dims() {
        let b = TruncationBounds::DEFAULT;
        let even = QuadraticCommPresentation::new(gens(&[4]), vec![SparseVec::unit(Pair(0, 0))]).unwrap();
        let d = comm_algebra_dims(&even, b);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(BiDegree::new(0, 0), 1), (BiDegree::new(1, 4), 1)]);
        let odd = QuadraticCommPresentation::new(gens(&[5]), vec![]).unwrap();
        let d = comm_algebra_dims(&odd, b);
        assert_eq!(d.iter().collect::<Vec<_>>(), vec![(BiDegree::new(0, 0), 1), (BiDegree::new(1, 5), 1)]);
    }

    #[test]
    fn polynomial_ring_dims() {
        let b = TruncationBounds::new(8, 40).unwrap();
        let p = QuadraticCommPresentation::new(gens(&[2]), vec![]).unwrap();
        let d = comm_algebra_dims(&p, b);
        for w in 0..=8 {
            assert_eq!(d.at(w, 2 * w), 1);
        }
        assert_eq!(d.total(), 9);
    }

    #[test]
    fn arnold_three_strands() {
        // a12 a23 - a13 a23 - a12 a13 in degree-1 generators a12, a13, a23
        let one = Rational::one();
        let rel = SparseVec::from_entries(vec![(Pair(0, 2), one.clone()), (Pair(1, 2), -one.clone()), (Pair(0, 1), -one)]);
        let p = QuadraticCommPresentation::new(gens(&[1, 1, 1]), vec![rel]).unwrap();
        let d = comm_algebra_dims(&p, TruncationBounds::DEFAULT);
        assert_eq!(d.weight_totals().into_iter().collect::<Vec<_>>(), vec![(0, 1), (1, 3), (2, 2)]);
    }

    #[test]
    fn quotient_multiplication_respects_relation() {
        // x^2 = y^2 in degree 2, with x y free
        let one = Rational::one();
        let rel = SparseVec::from_entries(vec![(Pair(0, 0), one.clone()), (Pair(1, 1), -one)]);
        let p = QuadraticCommPresentation::new(gens(&[2, 2]), vec![rel]).unwrap();
        let a = QuotientAlgebra::new(&p, TruncationBounds::new(4, 20).unwrap());
        let w1 = BiDegree::new(1, 2);
        let xx = a.multiply(w1, 0, w1, 0);
        let yy = a.multiply(w1, 1, w1, 1);
        assert_eq!(xx, yy);
        assert_eq!(a.dim(BiDegree::new(2, 4)), 2);
        assert_eq!(a.dim(BiDegree::new(3, 6)), 2);
    }
}
