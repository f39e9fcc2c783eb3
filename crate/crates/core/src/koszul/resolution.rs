//! Minimal free resolution of the trivial module over a quotient algebra,
//! computed weight by weight. The number of generators of the `s`-th free
//! module in bidegree `(w, d)` is `dim Tor_{s,w,d}`.

use std::collections::HashMap;

use rayon::prelude::*;

use super::bar::TorTable;
use crate::exactlin::field::{field_image_and_kernel, field_rank, row_from_entries, Field, Row};
use crate::graded::{BiDegree, TruncationBounds};
use crate::presentations::QuotientAlgebra;

fn sub(a: BiDegree, b: BiDegree) -> Option<BiDegree> {
    (a.weight >= b.weight && a.degree >= b.degree).then(|| BiDegree::new(a.weight - b.weight, a.degree - b.degree))
}

fn add(a: BiDegree, b: BiDegree) -> BiDegree {
    BiDegree::new(a.weight + b.weight, a.degree + b.degree)
}

/// Structure constants of the algebra over `F`.
struct Table<F: Field> {
    dims: HashMap<BiDegree, usize>,
    products: HashMap<(BiDegree, BiDegree), Vec<Row<F>>>,
}

impl<F: Field> Table<F> {
    fn new(algebra: &QuotientAlgebra) -> Self {
        let support: Vec<BiDegree> = algebra.support().collect();
        let dims: HashMap<BiDegree, usize> = support.iter().map(|bd| (*bd, algebra.dim(*bd))).collect();
        let bounds = algebra.bounds();
        let pairs: Vec<(BiDegree, BiDegree)> = support
            .iter()
            .filter(|a| a.weight > 0)
            .flat_map(|a| support.iter().filter(|b| b.weight > 0).map(move |b| (*a, *b)))
            .filter(|(a, b)| bounds.contains(add(*a, *b)) && dims.contains_key(&add(*a, *b)))
            .collect();
        let products: HashMap<_, _> = pairs
            .par_iter()
            .map(|&(a, b)| {
                let mut rows = Vec::with_capacity(dims[&a] * dims[&b]);
                for i in 0..dims[&a] {
                    for j in 0..dims[&b] {
                        let prod = algebra.multiply(a, i, b, j);
                        rows.push(prod.iter().map(|(k, c)| (*k, F::from_rational(c))).collect());
                    }
                }
                ((a, b), rows)
            })
            .collect();
        Table { dims, products }
    }

    fn dim(&self, bd: BiDegree) -> usize {
        self.dims.get(&bd).copied().unwrap_or(0)
    }

    /// `a_i * b_j` in the basis of `a + b`.
    fn product(&self, a: BiDegree, i: usize, b: BiDegree, j: usize) -> Row<F> {
        if a.weight == 0 {
            return vec![(j, F::one())];
        }
        if b.weight == 0 {
            return vec![(i, F::one())];
        }
        match self.products.get(&(a, b)) {
            Some(rows) => rows[i * self.dim(b) + j].clone(),
            None => Vec::new(),
        }
    }
}

/// A free generator: its bidegree and its boundary, written as a list of
/// `(generator of the previous module, algebra basis index, coefficient)`.
#[derive(Debug, Clone)]
struct FreeGen<F: Field> {
    bd: BiDegree,
    boundary: Vec<(usize, usize, F)>,
}

/// Coordinates on the bidegree-`bd` part of a free module. Later generators
/// and later basis elements get smaller coordinates; eliminating in this
/// order produces far less fill-in.
struct Layout {
    offsets: HashMap<usize, (usize, usize)>,
    slots: Vec<(usize, BiDegree, usize)>,
    size: usize,
}

impl Layout {
    fn new<F: Field>(table: &Table<F>, gens: &[FreeGen<F>], bd: BiDegree) -> Self {
        let mut offsets = HashMap::new();
        let mut slots = Vec::new();
        let mut size = 0;
        for (g, gen) in gens.iter().enumerate().rev() {
            if let Some(c) = sub(bd, gen.bd) {
                let n = table.dim(c);
                if n > 0 {
                    offsets.insert(g, (size, n));
                    slots.push((g, c, n));
                    size += n;
                }
            }
        }
        Layout { offsets, slots, size }
    }

    fn index(&self, gen: usize, basis: usize) -> usize {
        let (offset, n) = self.offsets[&gen];
        offset + n - 1 - basis
    }

    /// Inverse of [`Layout::index`].
    fn locate(&self, idx: usize) -> (usize, usize) {
        let pos = self.slots.partition_point(|&(g, _, _)| self.offsets[&g].0 <= idx) - 1;
        let (g, _, n) = self.slots[pos];
        (g, self.offsets[&g].0 + n - 1 - idx)
    }
}

/// `a_i · ∂(e_g)` in the coordinates of `target` (the previous module in
/// bidegree `bd_a + bd_g`).
fn act<F: Field>(
    table: &Table<F>,
    prev_gens: &[FreeGen<F>],
    target: &Layout,
    a: BiDegree,
    i: usize,
    gen: &FreeGen<F>,
) -> Row<F> {
    let mut entries = Vec::new();
    for (h, j, c) in &gen.boundary {
        let b = sub(gen.bd, prev_gens[*h].bd).expect("boundary lies below its generator");
        for (k, x) in table.product(a, i, b, *j) {
            entries.push((target.index(*h, k), c.mul(&x)));
        }
    }
    row_from_entries(entries)
}

/// Resolution state over `F`.
pub(crate) struct Resolution<F: Field> {
    table: Table<F>,
    bounds: TruncationBounds,
    gens: Vec<Vec<FreeGen<F>>>,
    tor: TorTable,
    computed_weight: u32,
}

impl<F: Field> Resolution<F> {
    pub(crate) fn new(algebra: &QuotientAlgebra, bounds: TruncationBounds) -> Self {
        let table = Table::new(algebra);
        let unit = FreeGen { bd: BiDegree::new(0, 0), boundary: Vec::new() };
        Resolution { table, bounds, gens: vec![vec![unit]], tor: TorTable::new(bounds), computed_weight: 0 }
    }

    pub(crate) fn tor(&self) -> &TorTable {
        &self.tor
    }

    pub(crate) fn computed_weight(&self) -> u32 {
        self.computed_weight
    }

    /// Extends the resolution through the next weight; returns the number
    /// of off-diagonal generators found in that weight.
    pub(crate) fn step(&mut self) -> u64 {
        let w = self.computed_weight + 1;
        assert!(w <= self.bounds.max_weight, "resolution already complete");
        let degrees: Vec<u32> = (0..=self.bounds.max_degree).collect();
        // different degrees of one weight never interact
        if w == self.bounds.max_weight {
            // the last generators' boundaries are never needed
            let counts: Vec<(u32, Vec<u64>)> =
                degrees.par_iter().map(|&d| (d, self.weight_counts(BiDegree::new(w, d)))).collect();
            let mut off_diagonal = 0;
            for (d, per_s) in counts {
                for (s1, n) in per_s.into_iter().enumerate() {
                    self.tor.set(s1 as u32, w, d, n);
                    if s1 as u32 != w {
                        off_diagonal += n;
                    }
                }
            }
            self.computed_weight = w;
            return off_diagonal;
        }
        let found: Vec<(u32, Vec<Vec<FreeGen<F>>>)> =
            degrees.par_iter().map(|&d| (d, self.weight_column(BiDegree::new(w, d)))).collect();
        let mut off_diagonal = 0;
        for (d, per_s) in found {
            for (s1, new) in per_s.into_iter().enumerate() {
                if new.is_empty() {
                    continue;
                }
                let n = new.len() as u64;
                self.tor.set(s1 as u32, w, d, n);
                if s1 as u32 != w {
                    off_diagonal += n;
                }
                while self.gens.len() <= s1 {
                    self.gens.push(Vec::new());
                }
                self.gens[s1].extend(new);
            }
        }
        self.computed_weight = w;
        off_diagonal
    }

    /// Matrix of `∂_{s+1}` on the part of `F_{s+1}` in bidegree `bd` spanned
    /// by generators of lower weight, in the coordinates of `here`.
    fn old_boundaries(&self, s: usize, here: &Layout, next: &Layout) -> Vec<Row<F>> {
        let table = &self.table;
        let empty = Vec::new();
        let next_gens = self.gens.get(s + 1).unwrap_or(&empty);
        let prev = &self.gens[s];
        next.slots
            .iter()
            .flat_map(|&(g, a, n)| {
                let gen = &next_gens[g];
                // row order matches the coordinates of `next`
                (0..n).rev().map(move |i| act(table, prev, here, a, i, gen))
            })
            .collect()
    }

    fn layout(&self, s: usize, bd: BiDegree) -> Layout {
        match self.gens.get(s) {
            Some(gens) => Layout::new(&self.table, gens, bd),
            None => Layout::new(&self.table, &[], bd),
        }
    }

    /// Number of new generators in bidegree `bd` for each `s + 1`, from ranks
    /// alone. New generators never enter a relation, so the cycles of `F_s`
    /// in `bd` have dimension `size - rank` of the lower-weight part.
    fn weight_counts(&self, bd: BiDegree) -> Vec<u64> {
        let top = bd.weight as usize;
        let mut out = vec![0u64; top + 1];
        let mut here = self.layout(0, bd);
        let mut cycles = here.size;
        for s in 0..top {
            let next = self.layout(s + 1, bd);
            let rows = self.old_boundaries(s, &here, &next);
            let rank = field_rank(here.size, &rows);
            out[s + 1] = (cycles - rank) as u64;
            cycles = next.size - rank;
            here = next;
            if here.size == 0 && (s + 2..=top).all(|t| self.gens.get(t).is_none_or(|g| g.is_empty())) {
                break;
            }
        }
        out
    }

    /// New generators in bidegree `bd` for each module index `s + 1`.
    ///
    /// At each `s` the boundaries of the lower-weight generators of the next
    /// module are eliminated once; the kernel relations found there are the
    /// kernel of the following differential, since a newly added generator
    /// never takes part in a relation.
    fn weight_column(&self, bd: BiDegree) -> Vec<Vec<FreeGen<F>>> {
        let top = bd.weight as usize;
        let mut out: Vec<Vec<FreeGen<F>>> = vec![Vec::new(); top + 1];
        let mut here = self.layout(0, bd);
        // ker of the augmentation: all of F_0 in positive weight
        let mut kernel: Vec<Row<F>> = (0..here.size).map(|i| vec![(i, F::one())]).collect();
        for s in 0..top {
            let next = self.layout(s + 1, bd);
            let rows = self.old_boundaries(s, &here, &next);
            let (mut span, next_kernel) = field_image_and_kernel(here.size, &rows);
            if kernel.len() > span.rank() {
                for v in kernel {
                    if span.insert(v.clone()) {
                        let boundary = v
                            .into_iter()
                            .map(|(idx, c)| {
                                let (g, basis) = here.locate(idx);
                                (g, basis, c)
                            })
                            .collect();
                        out[s + 1].push(FreeGen { bd, boundary });
                    }
                }
            }
            kernel = next_kernel;
            here = next;
            if here.size == 0 && kernel.is_empty() {
                // nothing of this bidegree in the next module
                let remaining = (s + 2..=top).all(|t| self.gens.get(t).is_none_or(|g| g.is_empty()));
                if remaining {
                    break;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Rational;
    use crate::graded::Generator;
    use crate::koszul::bar::bar_tor_from_algebra;
    use crate::presentations::QuadraticCommPresentation;

    fn tor(p: &QuadraticCommPresentation, bounds: TruncationBounds) -> (TorTable, TorTable) {
        let algebra = QuotientAlgebra::new(p, bounds);
        let mut r = Resolution::<Rational>::new(&algebra, bounds);
        while r.computed_weight() < bounds.max_weight {
            r.step();
        }
        (r.tor().clone(), bar_tor_from_algebra(&algebra, bounds))
    }

    #[test]
    fn agrees_with_bar_homology() {
        let g = vec![Generator::new("x", 1), Generator::new("y", 3), Generator::new("z", 2)];
        let one = Rational::one();
        let p = QuadraticCommPresentation::from_terms(g, vec![vec![(one.clone(), 0, 1), (one, 2, 2)]]).unwrap();
        let (res, bar) = tor(&p, TruncationBounds::new(4, 10).unwrap());
        assert_eq!(res, bar);
    }

    #[test]
    fn quadratic_monomial_ideal_is_pure() {
        // k[x, y]/(x^2, xy)
        let g = vec![Generator::new("x", 2), Generator::new("y", 2)];
        let one = Rational::one();
        let p = QuadraticCommPresentation::from_terms(g, vec![vec![(one.clone(), 0, 0)], vec![(one, 0, 1)]]).unwrap();
        let (res, bar) = tor(&p, TruncationBounds::new(5, 20).unwrap());
        assert_eq!(res, bar);
        assert_eq!(res.first_off_diagonal(), None);
    }
}
