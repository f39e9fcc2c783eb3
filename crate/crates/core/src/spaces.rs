//! Catalogued rational spaces, their quadratic cohomology presentations, and
//! the homotopy and iterated loop-space dimensions read off from them.

use std::collections::BTreeMap;

use crate::exactlin::{Matrix, Rational, SparseVec};
use crate::graded::{shift_dims, BigradedDims, GradedError, Generator, TruncationBounds, Variance};
use crate::koszul::{dual_lie, koszul_check, KoszulVerdict};
use crate::presentations::{
    canonical_comm_pairs, free_commutative_dims, free_lie_dims, lie_algebra_dims, Pair, PresentationError,
    QuadraticCommPresentation, QuadraticLiePresentation, QuadraticRelation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("sphere dimension must be at least 1 (got {0})")]
    SphereDimension(u32),
    #[error("configuration space needs n >= 2 and k >= 2 (got n={n}, k={k})")]
    ConfigurationParameters { n: u32, k: u32 },
    #[error("{0} of an empty list of factors")]
    NoFactors(&'static str),
    #[error("{0} factors must be presented spaces; fold suspensions into a single suspension descriptor")]
    RawDimsFactor(&'static str),
    #[error("manifold structure matrix must be {expected}x{expected}")]
    MatrixShape { expected: usize },
    #[error("manifold structure matrix is not graded-symmetric at ({i}, {j})")]
    MatrixSymmetry { i: usize, j: usize },
    #[error("manifold structure matrix entry ({i}, {j}) is nonzero but {di} + {dj} != {m}")]
    MatrixDegree { i: usize, j: usize, di: u32, dj: u32, m: u32 },
    #[error("manifold structure matrix is degenerate (rank {rank} of {size})")]
    MatrixDegenerate { rank: usize, size: usize },
    #[error("manifold connectivity: lowest generator degree d={0}, need d >= 2")]
    ManifoldConnectivity(u32),
    #[error("manifold dimension: m={m} exceeds 3d-2 with d={d}")]
    ManifoldDimension { m: u32, d: u32 },
    #[error("manifold cohomology has total dimension {0}, need at least 4")]
    ManifoldTooSmall(usize),
    #[error("loop space order must be at least 1")]
    ZeroLoopOrder,
    #[error("connectivity: generator {name:?} has degree {degree}, but {n}-fold loops need degree >= {required}")]
    Connectivity { name: String, degree: u32, n: u32, required: u32 },
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Graded(#[from] GradedError),
}

/// A space known by its rational cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpaceDescriptor {
    Sphere(u32),
    /// `ΣY`, given the reduced rational homology of `Y` as degree → dimension.
    Suspension(BTreeMap<u32, u64>),
    /// A space whose cohomology is free graded-commutative on classes of the
    /// given degrees.
    LoopSpaceOf(Vec<u32>),
    Wedge(Vec<SpaceDescriptor>),
    Product(Vec<SpaceDescriptor>),
    /// Ordered configurations of `k` points in `R^n`.
    ConfigurationSpace { n: u32, k: u32 },
    /// A highly connected closed manifold: middle-range generators, cup
    /// products `x_i x_j = q[i][j] ω` with `ω` of degree `m`.
    HighlyConnectedManifold { degrees: Vec<u32>, q: Vec<Vec<Rational>>, m: u32 },
    Presented(QuadraticCommPresentation),
}

impl SpaceDescriptor {
    /// `Σ^n Y` from the reduced homology of `Y`.
    pub fn iterated_suspension(homology: &BTreeMap<u32, u64>, n: u32) -> SpaceDescriptor {
        assert!(n >= 1, "suspension order must be positive");
        let shifted = homology.iter().filter(|(_, &c)| c > 0).map(|(&d, &c)| (d + n - 1, c)).collect();
        SpaceDescriptor::Suspension(shifted)
    }

    fn kind(&self) -> &'static str {
        match self {
            SpaceDescriptor::Wedge(_) => "wedge",
            SpaceDescriptor::Product(_) => "product",
            _ => "space",
        }
    }
}

fn one() -> Rational {
    Rational::one()
}

fn monomial(i: usize, j: usize) -> QuadraticRelation {
    SparseVec::unit(Pair(i.min(j), i.max(j)))
}

fn sphere(n: u32) -> Result<QuadraticCommPresentation, SpaceError> {
    if n == 0 {
        return Err(SpaceError::SphereDimension(n));
    }
    let relations = if n % 2 == 0 { vec![monomial(0, 0)] } else { vec![] };
    Ok(QuadraticCommPresentation::new(vec![Generator::new("x", n)], relations)?)
}

/// Trivial algebra: every weight-2 monomial vanishes.
fn trivial(generators: Vec<Generator>) -> Result<QuadraticCommPresentation, SpaceError> {
    let relations = canonical_comm_pairs(&generators).into_iter().map(SparseVec::unit).collect();
    Ok(QuadraticCommPresentation::new(generators, relations)?)
}

fn suspension(homology: &BTreeMap<u32, u64>) -> Result<QuadraticCommPresentation, SpaceError> {
    let mut generators = Vec::new();
    for (&d, &count) in homology {
        for _ in 0..count {
            generators.push(Generator::new(format!("u{}", generators.len() + 1), d + 1));
        }
    }
    trivial(generators)
}

fn free(degrees: &[u32]) -> Result<QuadraticCommPresentation, SpaceError> {
    let generators = degrees.iter().enumerate().map(|(i, &d)| Generator::new(format!("y{}", i + 1), d)).collect();
    Ok(QuadraticCommPresentation::new(generators, vec![])?)
}

/// Disjoint union of the factors' generators and relations; generator names
/// get the 1-based factor index as a suffix. Returns the factor ranges too.
fn juxtapose(
    factors: &[SpaceDescriptor],
    kind: &'static str,
) -> Result<(Vec<Generator>, Vec<QuadraticRelation>, Vec<std::ops::Range<usize>>), SpaceError> {
    if factors.is_empty() {
        return Err(SpaceError::NoFactors(kind));
    }
    let mut generators = Vec::new();
    let mut relations = Vec::new();
    let mut ranges = Vec::new();
    for (f, factor) in factors.iter().enumerate() {
        if matches!(factor, SpaceDescriptor::Suspension(_)) {
            return Err(SpaceError::RawDimsFactor(kind));
        }
        let p = cohomology_presentation(factor)?;
        let offset = generators.len();
        generators.extend(p.generators().iter().map(|g| Generator::new(format!("{}_{}", g.name, f + 1), g.degree)));
        relations.extend(p.relations().iter().map(|r| r.map_keys(|Pair(i, j)| Pair(i + offset, j + offset))));
        ranges.push(offset..generators.len());
    }
    Ok((generators, relations, ranges))
}

/// Arnold presentation: `a_pq` for `p < q` in degree `n − 1`, with
/// `a_qp = (−1)^n a_pq`.
fn configuration(n: u32, k: u32) -> Result<QuadraticCommPresentation, SpaceError> {
    if n < 2 || k < 2 {
        return Err(SpaceError::ConfigurationParameters { n, k });
    }
    let k = k as usize;
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let name = |p: usize, q: usize| if k <= 9 { format!("a{}{}", p + 1, q + 1) } else { format!("a{}_{}", p + 1, q + 1) };
    let generators: Vec<Generator> = pairs.iter().map(|&(p, q)| Generator::new(name(p, q), n - 1)).collect();
    let index = |p: usize, q: usize| -> (i64, usize) {
        let (lo, hi, s) = if p < q { (p, q, 1) } else { (q, p, if n % 2 == 0 { 1 } else { -1 }) };
        (s, pairs.binary_search(&(lo, hi)).expect("pair is listed"))
    };
    let mut relations = Vec::new();
    if n % 2 == 1 {
        relations.extend((0..pairs.len()).map(|i| vec![(one(), i, i)]));
    }
    for p in 0..k {
        for q in p + 1..k {
            for r in q + 1..k {
                let terms = [((p, q), (q, r)), ((q, r), (r, p)), ((r, p), (p, q))]
                    .iter()
                    .map(|&((a, b), (c, d))| {
                        let (s1, x) = index(a, b);
                        let (s2, y) = index(c, d);
                        (Rational::from_integer(s1 * s2), x, y)
                    })
                    .collect();
                relations.push(terms);
            }
        }
    }
    Ok(QuadraticCommPresentation::from_terms(generators, relations)?)
}

fn manifold(degrees: &[u32], q: &[Vec<Rational>], m: u32) -> Result<QuadraticCommPresentation, SpaceError> {
    let r = degrees.len();
    if q.len() != r || q.iter().any(|row| row.len() != r) {
        return Err(SpaceError::MatrixShape { expected: r });
    }
    if 2 + r < 4 {
        return Err(SpaceError::ManifoldTooSmall(2 + r));
    }
    let d = *degrees.iter().min().expect("at least two generators");
    if d < 2 {
        return Err(SpaceError::ManifoldConnectivity(d));
    }
    if m > 3 * d - 2 {
        return Err(SpaceError::ManifoldDimension { m, d });
    }
    for i in 0..r {
        for j in 0..r {
            let sign = if degrees[i] % 2 == 1 && degrees[j] % 2 == 1 { -one() } else { one() };
            if q[i][j] != &sign * &q[j][i] {
                return Err(SpaceError::MatrixSymmetry { i, j });
            }
            if !q[i][j].is_zero() && degrees[i] + degrees[j] != m {
                return Err(SpaceError::MatrixDegree { i, j, di: degrees[i], dj: degrees[j], m });
            }
        }
    }
    let rank = Matrix::from_dense(q).expect("square matrix").rank();
    if rank < r {
        return Err(SpaceError::MatrixDegenerate { rank, size: r });
    }
    let generators: Vec<Generator> =
        degrees.iter().enumerate().map(|(i, &deg)| Generator::new(format!("x{}", i + 1), deg)).collect();
    let mut relations = Vec::new();
    let mut top = Vec::new();
    for p in canonical_comm_pairs(&generators) {
        if degrees[p.0] + degrees[p.1] != m {
            relations.push(SparseVec::unit(p));
        } else {
            top.push(p);
        }
    }
    // kernel of c ↦ Σ q_ij c_ij, pivoting on the first monomial with q ≠ 0
    let value = |p: &Pair| q[p.0][p.1].clone();
    let pivot = top.iter().find(|p| !value(p).is_zero()).copied().expect("nondegenerate q pairs some monomial");
    let pv = value(&pivot);
    for p in top.into_iter().filter(|&p| p != pivot) {
        let c = value(&p);
        if c.is_zero() {
            relations.push(SparseVec::unit(p));
        } else {
            relations.push(SparseVec::from_entries([(p, one()), (pivot, -(c / pv.clone()))]));
        }
    }
    Ok(QuadraticCommPresentation::new(generators, relations)?)
}

/// The quadratic presentation of `H^*(S; ℚ)`.
pub fn cohomology_presentation(space: &SpaceDescriptor) -> Result<QuadraticCommPresentation, SpaceError> {
    match space {
        SpaceDescriptor::Sphere(n) => sphere(*n),
        SpaceDescriptor::Suspension(h) => suspension(h),
        SpaceDescriptor::LoopSpaceOf(degrees) => free(degrees),
        SpaceDescriptor::Product(factors) => {
            let (generators, relations, _) = juxtapose(factors, space.kind())?;
            Ok(QuadraticCommPresentation::new(generators, relations)?)
        }
        SpaceDescriptor::Wedge(factors) => {
            let (generators, mut relations, ranges) = juxtapose(factors, space.kind())?;
            for (a, ra) in ranges.iter().enumerate() {
                for rb in &ranges[a + 1..] {
                    for i in ra.clone() {
                        relations.extend(rb.clone().map(|j| monomial(i, j)));
                    }
                }
            }
            Ok(QuadraticCommPresentation::new(generators, relations)?)
        }
        SpaceDescriptor::ConfigurationSpace { n, k } => configuration(*n, *k),
        SpaceDescriptor::HighlyConnectedManifold { degrees, q, m } => manifold(degrees, q, *m),
        SpaceDescriptor::Presented(p) => Ok(p.clone()),
    }
}

/// Rational homotopy Lie algebra of a space, together with the Koszulness
/// verdict of its cohomology at the same bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyLie {
    pub presentation: QuadraticLiePresentation,
    /// `dims.at(w, d)`: weight-`w` part of `π_{d+1}(X) ⊗ ℚ`.
    pub dims: BigradedDims,
    pub verdict: KoszulVerdict,
}

pub fn homotopy_lie(space: &SpaceDescriptor, bounds: TruncationBounds) -> Result<HomotopyLie, SpaceError> {
    let cohomology = cohomology_presentation(space)?;
    let verdict = koszul_check(&cohomology, bounds);
    if let KoszulVerdict::NotKoszul { witness, degree, dim } = verdict {
        log::warn!(
            "cohomology is not Koszul (Tor_{:?} in degree {degree} has dim {dim}); the dual Lie algebra need not be the homotopy Lie algebra",
            witness
        );
    }
    let presentation = dual_lie(&cohomology);
    let dims = lie_algebra_dims(&presentation, bounds);
    Ok(HomotopyLie { presentation, dims, verdict })
}

fn check_connectivity(cohomology: &QuadraticCommPresentation, n: u32) -> Result<(), SpaceError> {
    if n == 0 {
        return Err(SpaceError::ZeroLoopOrder);
    }
    let required = if n == 1 { 2 } else { n + 1 };
    match cohomology.generators().iter().find(|g| g.degree < required) {
        Some(g) => Err(SpaceError::Connectivity { name: g.name.clone(), degree: g.degree, n, required }),
        None => Ok(()),
    }
}

/// Bounds with `extra` more degrees, so that shifting down by `extra`
/// still fills the original degree range.
fn widened(bounds: TruncationBounds, extra: u32) -> TruncationBounds {
    TruncationBounds { max_weight: bounds.max_weight, max_degree: bounds.max_degree + extra }
}

/// `Λ(s^{1−n} L)` truncated to `bounds`, for a Lie dims table computed at
/// `widened(bounds, n − 1)`.
fn commutative_on_desuspension(lie: &BigradedDims, n: u32, bounds: TruncationBounds) -> Result<BigradedDims, SpaceError> {
    let shifted = shift_dims(lie, 1 - n as i64)?;
    Ok(free_commutative_dims(&shifted, bounds).with_variance(Variance::Homological))
}

/// Dimensions of `H_*(Ω^n X; ℚ)` by weight and degree.
pub fn loop_homology(space: &SpaceDescriptor, n: u32, bounds: TruncationBounds) -> Result<BigradedDims, SpaceError> {
    let cohomology = cohomology_presentation(space)?;
    check_connectivity(&cohomology, n)?;
    let lie = homotopy_lie(&SpaceDescriptor::Presented(cohomology), widened(bounds, n - 1))?;
    commutative_on_desuspension(&lie.dims, n, bounds)
}

/// Dimensions of the free Gerstenhaber `n`-algebra on a graded space with
/// `homology[d]` classes in degree `d`, all of weight one.
pub fn free_gerstenhaber_dims(homology: &BTreeMap<u32, u64>, n: u32, bounds: TruncationBounds) -> Result<BigradedDims, SpaceError> {
    if n == 0 {
        return Err(SpaceError::ZeroLoopOrder);
    }
    let mut generators = Vec::new();
    for (&d, &count) in homology {
        for _ in 0..count {
            generators.push(Generator::new(format!("v{}", generators.len() + 1), d + n - 1));
        }
    }
    let lie = free_lie_dims(&generators, widened(bounds, n - 1));
    commutative_on_desuspension(&lie, n, bounds)
}

/// Whether the presentation is Koszul up to `bounds` and generated in
/// degree one, i.e. the cohomology of a rational `K(π, 1)` as far as the
/// bounds can tell.
pub fn is_rational_kpi1(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> bool {
    if presentation.generators().iter().any(|g| g.degree != 1) {
        return false;
    }
    if !koszul_check(presentation, bounds).is_koszul() {
        return false;
    }
    let lie = lie_algebra_dims(&dual_lie(presentation), bounds);
    assert!(
        lie.iter().all(|(bd, dim)| bd.degree == 0 || dim == 0),
        "dual Lie algebra of a degree-one presentation left degree 0"
    );
    true
}

/// Reduced homology of a wedge of spheres of the given dimensions.
pub fn wedge_of_spheres_homology(dimensions: &[u32]) -> BTreeMap<u32, u64> {
    let mut out = BTreeMap::new();
    for &d in dimensions {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::BiDegree;
    use crate::presentations::{comm_algebra_dims, enveloping_dims, tensor_algebra_dims};
    use crate::series::{dims_to_series, koszul_inversion, PoincareSeries};

    fn b(w: u32, d: u32) -> TruncationBounds {
        TruncationBounds::new(w, d).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn entries(dims: &BigradedDims) -> Vec<((u32, u32), u64)> {
        dims.iter().map(|(bd, n)| ((bd.weight, bd.degree), n)).collect()
    }

    fn hyperbolic(a: u32, c: u32) -> SpaceDescriptor {
        SpaceDescriptor::HighlyConnectedManifold { degrees: vec![a, c], q: vec![vec![q(0), q(1)], vec![q(1), q(0)]], m: a + c }
    }

    /// Number of weight-`w` free Lie words on `g` even generators.
    fn witt(g: u64, w: u32) -> u64 {
        let mobius = |n: u32| -> i64 {
            let (mut n, mut sign, mut p) = (n, 1, 2);
            while p * p <= n {
                if n % p == 0 {
                    n /= p;
                    if n % p == 0 {
                        return 0;
                    }
                    sign = -sign;
                }
                p += 1;
            }
            if n > 1 { -sign } else { sign }
        };
        let total: i64 = (1..=w).filter(|e| w % e == 0).map(|e| mobius(e) * (g as i64).pow(w / e)).sum();
        (total / w as i64) as u64
    }

    #[test]
    fn sphere_presentations() {
        let p = cohomology_presentation(&SpaceDescriptor::Sphere(4)).unwrap();
        assert_eq!(p.generators(), &[Generator::new("x", 4)]);
        assert_eq!(p.relations(), &[SparseVec::unit(Pair(0, 0))]);
        assert!(cohomology_presentation(&SpaceDescriptor::Sphere(3)).unwrap().relations().is_empty());
        assert_eq!(cohomology_presentation(&SpaceDescriptor::Sphere(0)), Err(SpaceError::SphereDimension(0)));
    }

    #[test]
    fn configuration_presentation_has_one_arnold_relation() {
        let p = cohomology_presentation(&SpaceDescriptor::ConfigurationSpace { n: 2, k: 3 }).unwrap();
        assert_eq!(p.generators().len(), 3);
        assert!(p.generators().iter().all(|g| g.degree == 1));
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relations()[0].len(), 3);
        let odd = cohomology_presentation(&SpaceDescriptor::ConfigurationSpace { n: 3, k: 3 }).unwrap();
        assert_eq!(odd.relations().len(), 4);
        assert!(cohomology_presentation(&SpaceDescriptor::ConfigurationSpace { n: 1, k: 3 }).is_err());
    }

    #[test]
    fn product_and_wedge_of_two_spheres() {
        let s2 = SpaceDescriptor::Sphere(2);
        let prod = cohomology_presentation(&SpaceDescriptor::Product(vec![s2.clone(), s2.clone()])).unwrap();
        let names: Vec<&str> = prod.generators().iter().map(|g| g.name.as_str()).collect();
        assert_eq!(names, ["x_1", "x_2"]);
        assert_eq!(prod.relations(), &[SparseVec::unit(Pair(0, 0)), SparseVec::unit(Pair(1, 1))]);
        let wedge = cohomology_presentation(&SpaceDescriptor::Wedge(vec![s2.clone(), s2])).unwrap();
        assert_eq!(wedge.relations().len(), 3);
        assert!(wedge.relations().contains(&SparseVec::unit(Pair(0, 1))));
        assert_eq!(
            cohomology_presentation(&SpaceDescriptor::Wedge(vec![])),
            Err(SpaceError::NoFactors("wedge"))
        );
        let raw = SpaceDescriptor::Suspension(BTreeMap::from([(1, 1)]));
        assert_eq!(
            cohomology_presentation(&SpaceDescriptor::Product(vec![raw])),
            Err(SpaceError::RawDimsFactor("product"))
        );
    }

    #[test]
    fn manifold_matches_product_of_spheres() {
        let m = hyperbolic(2, 2);
        let prod = SpaceDescriptor::Product(vec![SpaceDescriptor::Sphere(2), SpaceDescriptor::Sphere(2)]);
        let pm = cohomology_presentation(&m).unwrap();
        let pp = cohomology_presentation(&prod).unwrap();
        assert_eq!(comm_algebra_dims(&pm, b(8, 40)), comm_algebra_dims(&pp, b(8, 40)));
        assert_eq!(homotopy_lie(&m, b(6, 30)).unwrap().dims, homotopy_lie(&prod, b(6, 30)).unwrap().dims);
        // S^3 x S^3: odd middle classes, antisymmetric q
        let m33 = SpaceDescriptor::HighlyConnectedManifold {
            degrees: vec![3, 3],
            q: vec![vec![q(0), q(1)], vec![q(-1), q(0)]],
            m: 6,
        };
        let p33 = SpaceDescriptor::Product(vec![SpaceDescriptor::Sphere(3), SpaceDescriptor::Sphere(3)]);
        assert_eq!(
            comm_algebra_dims(&cohomology_presentation(&m33).unwrap(), b(6, 30)),
            comm_algebra_dims(&cohomology_presentation(&p33).unwrap(), b(6, 30))
        );
    }

    #[test]
    fn manifold_validation_names_the_constraint() {
        let go = |degrees: Vec<u32>, q: Vec<Vec<Rational>>, m: u32| {
            cohomology_presentation(&SpaceDescriptor::HighlyConnectedManifold { degrees, q, m }).unwrap_err()
        };
        let hyp = vec![vec![q(0), q(1)], vec![q(1), q(0)]];
        assert_eq!(go(vec![2, 3], hyp.clone(), 5), SpaceError::ManifoldDimension { m: 5, d: 2 });
        assert_eq!(go(vec![1, 1], hyp.clone(), 2), SpaceError::ManifoldConnectivity(1));
        assert_eq!(go(vec![2], vec![vec![q(1)]], 4), SpaceError::ManifoldTooSmall(3));
        assert_eq!(go(vec![2, 2], vec![vec![q(0), q(1)], vec![q(2), q(0)]], 4), SpaceError::MatrixSymmetry { i: 0, j: 1 });
        assert_eq!(go(vec![2, 2], vec![vec![q(1), q(1)], vec![q(1), q(1)]], 4), SpaceError::MatrixDegenerate { rank: 1, size: 2 });
        assert!(matches!(go(vec![3, 3], hyp.clone(), 5), SpaceError::MatrixDegree { .. } | SpaceError::MatrixSymmetry { .. }));
        assert_eq!(go(vec![2, 2], hyp.clone(), 3), SpaceError::MatrixDegree { i: 0, j: 1, di: 2, dj: 2, m: 3 });
        assert_eq!(go(vec![2, 2], vec![vec![q(0)]], 4), SpaceError::MatrixShape { expected: 2 });
    }

    #[test]
    fn definite_form_gives_one_relation_short_of_all_monomials() {
        // x1^2 = x2^2 = ω, x1 x2 = 0
        let p = cohomology_presentation(&SpaceDescriptor::HighlyConnectedManifold {
            degrees: vec![2, 2],
            q: vec![vec![q(1), q(0)], vec![q(0), q(1)]],
            m: 4,
        })
        .unwrap();
        let dims = comm_algebra_dims(&p, b(4, 20));
        assert_eq!(entries(&dims), vec![((0, 0), 1), ((1, 2), 2), ((2, 4), 1)]);
    }

    #[test]
    fn sphere_homotopy() {
        for n in 2..=7u32 {
            let h = homotopy_lie(&SpaceDescriptor::Sphere(n), b(8, 40)).unwrap();
            assert!(h.verdict.is_koszul());
            let mut expected = vec![((1, n - 1), 1)];
            if n % 2 == 0 {
                expected.push(((2, 2 * n - 2), 1));
            }
            assert_eq!(entries(&h.dims), expected, "S^{n}");
        }
    }

    #[test]
    fn suspension_of_points_has_witt_dims() {
        // S^1 ∨ S^1 as the suspension of two points
        let h = homotopy_lie(&SpaceDescriptor::Suspension(BTreeMap::from([(0, 2)])), b(6, 10)).unwrap();
        let by_weight = h.dims.weight_totals();
        for w in 1..=6 {
            assert_eq!(by_weight.get(&w).copied().unwrap_or(0), witt(2, w), "weight {w}");
        }
        assert_eq!((1..=4).map(|w| by_weight[&w]).collect::<Vec<_>>(), [2, 1, 2, 3]);
    }

    #[test]
    fn suspension_lie_algebra_is_free_by_pbw() {
        // ΣY with two degree-1 classes in Y: U(L) must be the tensor algebra
        let h = homotopy_lie(&SpaceDescriptor::Suspension(BTreeMap::from([(1, 2)])), b(6, 12)).unwrap();
        let gens = [Generator::new("a", 1), Generator::new("b", 1)];
        assert_eq!(enveloping_dims(&h.dims, b(6, 12)), tensor_algebra_dims(&gens, b(6, 12)));
        assert_eq!(h.dims.at(2, 2), 3);
    }

    #[test]
    fn loops_on_spheres() {
        for n in 2..=5u32 {
            let dims = loop_homology(&SpaceDescriptor::Sphere(n), 1, b(8, 40)).unwrap();
            let expected: Vec<((u32, u32), u64)> =
                (0..=8).map(|w| ((w, w * (n - 1)), 1)).filter(|((_, d), _)| *d <= 40).collect();
            assert_eq!(entries(&dims), expected);
            let a = PoincareSeries::from_terms(b(8, 40), [(BiDegree::new(0, 0), 1), (BiDegree::new(1, n), 1)]);
            assert_eq!(koszul_inversion(&a, b(8, 40)).unwrap(), dims_to_series(&dims, true));
        }
        let double = loop_homology(&SpaceDescriptor::Sphere(3), 2, b(8, 40)).unwrap();
        assert_eq!(entries(&double), vec![((0, 0), 1), ((1, 1), 1)]);
    }

    #[test]
    fn loops_respect_connectivity() {
        let err = loop_homology(&SpaceDescriptor::Sphere(2), 2, b(4, 20)).unwrap_err();
        assert!(matches!(err, SpaceError::Connectivity { degree: 2, n: 2, required: 3, .. }));
        assert!(loop_homology(&SpaceDescriptor::Sphere(1), 1, b(4, 20)).is_err());
        assert!(loop_homology(&SpaceDescriptor::Sphere(3), 1, b(4, 20)).is_ok());
        assert_eq!(loop_homology(&SpaceDescriptor::Sphere(3), 0, b(4, 20)), Err(SpaceError::ZeroLoopOrder));
    }

    #[test]
    fn free_gerstenhaber_examples() {
        let bounds = b(6, 30);
        let unit = free_gerstenhaber_dims(&BTreeMap::new(), 2, bounds).unwrap();
        assert_eq!(entries(&unit), vec![((0, 0), 1)]);
        for qd in 0..=3u32 {
            let one_class = BTreeMap::from([(qd, 1)]);
            assert_eq!(
                free_gerstenhaber_dims(&one_class, 1, bounds).unwrap(),
                tensor_algebra_dims(&[Generator::new("v", qd)], bounds)
            );
        }
        for qd in 1..=3u32 {
            for n in 1..=3u32 {
                let v = wedge_of_spheres_homology(&[qd]);
                assert_eq!(
                    free_gerstenhaber_dims(&v, n, bounds).unwrap(),
                    loop_homology(&SpaceDescriptor::Sphere(qd + n), n, bounds).unwrap(),
                    "q={qd} n={n}"
                );
            }
        }
    }

    #[test]
    fn kpi1_detection() {
        for k in 3..=4 {
            let p = cohomology_presentation(&SpaceDescriptor::ConfigurationSpace { n: 2, k }).unwrap();
            assert!(is_rational_kpi1(&p, b(5, 10)));
        }
        let s2 = cohomology_presentation(&SpaceDescriptor::Sphere(2)).unwrap();
        assert!(!is_rational_kpi1(&s2, b(5, 10)));
        let torus = cohomology_presentation(&SpaceDescriptor::LoopSpaceOf(vec![1, 1])).unwrap();
        assert!(is_rational_kpi1(&torus, b(5, 10)));
        let lie = lie_algebra_dims(&dual_lie(&torus), b(5, 10));
        assert_eq!(entries(&lie), vec![((1, 0), 2)]);
    }

    #[test]
    fn iterated_suspension_shifts_homology() {
        let y = wedge_of_spheres_homology(&[1, 1, 2]);
        assert_eq!(
            SpaceDescriptor::iterated_suspension(&y, 3),
            SpaceDescriptor::Suspension(BTreeMap::from([(3, 2), (4, 1)]))
        );
        let p = cohomology_presentation(&SpaceDescriptor::iterated_suspension(&y, 1)).unwrap();
        let degrees: Vec<u32> = p.generators().iter().map(|g| g.degree).collect();
        assert_eq!(degrees, [2, 2, 3]);
        assert_eq!(p.relations().len(), 5);
    }
}
