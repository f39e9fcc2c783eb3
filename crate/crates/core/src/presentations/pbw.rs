use crate::graded::{BiDegree, BigradedDims, Generator, TruncationBounds, Variance};

struct Grid {
    bounds: TruncationBounds,
    cells: Vec<u64>,
}

impl Grid {
    fn unit(bounds: TruncationBounds) -> Self {
        let mut cells = vec![0; ((bounds.max_weight + 1) * (bounds.max_degree + 1)) as usize];
        cells[0] = 1;
        Grid { bounds, cells }
    }

    fn idx(&self, w: u32, d: u32) -> usize {
        (w * (self.bounds.max_degree + 1) + d) as usize
    }

    /// Multiplies by `1 + t^a z^b`.
    fn times_exterior(&mut self, a: u32, b: u32) {
        for w in (a..=self.bounds.max_weight).rev() {
            for d in (b..=self.bounds.max_degree).rev() {
                let src = self.cells[self.idx(w - a, d - b)];
                let dst = self.idx(w, d);
                self.cells[dst] = self.cells[dst].checked_add(src).expect("dimension overflow");
            }
        }
    }

    /// Multiplies by `1 / (1 - t^a z^b)`.
    fn times_symmetric(&mut self, a: u32, b: u32) {
        for w in a..=self.bounds.max_weight {
            for d in b..=self.bounds.max_degree {
                let src = self.cells[self.idx(w - a, d - b)];
                let dst = self.idx(w, d);
                self.cells[dst] = self.cells[dst].checked_add(src).expect("dimension overflow");
            }
        }
    }

    fn into_dims(self, variance: Variance) -> BigradedDims {
        let mut out = BigradedDims::new(variance, self.bounds);
        for w in 0..=self.bounds.max_weight {
            for d in 0..=self.bounds.max_degree {
                out.add(BiDegree::new(w, d), self.cells[self.idx(w, d)]);
            }
        }
        out
    }
}

/// Dimensions of the free graded-commutative algebra on a graded space with
/// the given dimensions: the product over basis slots of `1 + t^w z^d` (odd
/// `d`) or `1 / (1 - t^w z^d)` (even `d`), truncated. Entries of weight 0
/// are ignored.
pub fn free_commutative_dims(space: &BigradedDims, bounds: TruncationBounds) -> BigradedDims {
    let mut grid = Grid::unit(bounds);
    for (bd, m) in space.iter() {
        if bd.weight == 0 || !bounds.contains(bd) {
            continue;
        }
        for _ in 0..m {
            if bd.degree % 2 == 1 {
                grid.times_exterior(bd.weight, bd.degree);
            } else {
                grid.times_symmetric(bd.weight, bd.degree);
            }
        }
    }
    grid.into_dims(space.variance())
}

/// Dimensions of `U(L)` from those of `L`, by Poincaré–Birkhoff–Witt.
pub fn enveloping_dims(lie: &BigradedDims, bounds: TruncationBounds) -> BigradedDims {
    free_commutative_dims(lie, bounds).with_variance(Variance::Homological)
}

/// Dimensions of the tensor algebra on `generators` (words counted by
/// length and total degree).
pub fn tensor_algebra_dims(generators: &[Generator], bounds: TruncationBounds) -> BigradedDims {
    let mut grid = Grid::unit(bounds);
    for w in 1..=bounds.max_weight {
        for d in 0..=bounds.max_degree {
            let mut total = 0u64;
            for g in generators {
                if g.degree <= d {
                    total += grid.cells[grid.idx(w - 1, d - g.degree)];
                }
            }
            let i = grid.idx(w, d);
            grid.cells[i] = total;
        }
    }
    grid.into_dims(Variance::Homological)
}
