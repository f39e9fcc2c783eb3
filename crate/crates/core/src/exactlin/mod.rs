//! Exact linear algebra over the rationals.
//!
//! Everything here is deterministic: reduced forms depend only on the
//! input vectors and their order, never on hashing or threads.

pub mod field;
mod rational;
mod sparse;

pub use rational::{ParseRationalError, Rational};
pub use sparse::{kernel_of_images, rank_of, reduced_basis, Echelon, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinAlgError {
    #[error("ambient dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
}

/// Sparse rational matrix stored by rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec<usize>>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![SparseVec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(SparseVec::unit).collect() }
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self, LinAlgError>
    where
        I: IntoIterator<Item = (usize, usize, Rational)>,
    {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinAlgError::OutOfBounds { row: r, col: c, rows, cols });
            }
            buckets[r].push((c, v));
        }
        let data = buckets.into_iter().map(SparseVec::from_entries).collect();
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.push(SparseVec::from_dense(r));
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn from_sparse_rows(cols: usize, data: Vec<SparseVec<usize>>) -> Result<Self, LinAlgError> {
        for (r, row) in data.iter().enumerate() {
            if let Some((c, _)) = row.entries().last() {
                if *c >= cols {
                    return Err(LinAlgError::OutOfBounds { row: r, col: *c, rows: data.len(), cols });
                }
            }
        }
        Ok(Matrix { rows: data.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &SparseVec<usize> {
        &self.data[r]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        self.data[r].get(c)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(SparseVec::len).sum()
    }

    pub fn transpose(&self) -> Matrix {
        let mut buckets: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row.iter() {
                buckets[*c].push((r, v.clone()));
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data: buckets.into_iter().map(SparseVec::from_sorted_unchecked).collect(),
        }
    }

    pub fn mul_vec(&self, v: &SparseVec<usize>) -> SparseVec<usize> {
        SparseVec::from_entries(
            self.data
                .iter()
                .enumerate()
                .map(|(r, row)| (r, row.dot(v)))
                .filter(|(_, x)| !x.is_zero()),
        )
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = SparseVec::new();
                for (k, a) in row.iter() {
                    acc = acc.sub_scaled(&-a, &other.data[*k]);
                }
                acc
            })
            .collect();
        Ok(Matrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(SparseVec::is_zero)
    }

    pub fn rank(&self) -> usize {
        rank_of(self.data.iter().cloned())
    }
}

/// Rank of `m` together with a kernel basis.
///
/// The kernel basis is indexed by the non-pivot columns `f` of the row
/// reduced echelon form: the vector for `f` is `e_f - sum_p R[p][f] e_p`.
pub fn rank_and_kernel(m: &Matrix) -> (usize, Vec<SparseVec<usize>>) {
    let rref = reduced_basis(m.data.iter().cloned());
    let rank = rref.len();
    let mut pivot_of_col = vec![None; m.cols];
    for (i, row) in rref.iter().enumerate() {
        pivot_of_col[row.entries()[0].0] = Some(i);
    }
    // column f of the RREF, restricted to pivot rows
    let mut col_entries: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m.cols];
    for row in &rref {
        let p = row.entries()[0].0;
        for (c, v) in &row.entries()[1..] {
            col_entries[*c].push((p, v.clone()));
        }
    }
    let kernel = (0..m.cols)
        .filter(|&f| pivot_of_col[f].is_none())
        .map(|f| {
            let mut entries: Vec<(usize, Rational)> =
                col_entries[f].iter().map(|(p, v)| (*p, -v)).collect();
            entries.push((f, Rational::one()));
            SparseVec::from_entries(entries)
        })
        .collect();
    (rank, kernel)
}

/// A subspace of `Q^ambient`, kept as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec<usize>>,
}

impl Subspace {
    pub fn span(ambient: usize, vectors: Vec<SparseVec<usize>>) -> Result<Self, LinAlgError> {
        for v in &vectors {
            if let Some((k, _)) = v.entries().last() {
                if *k >= ambient {
                    return Err(LinAlgError::DimensionMismatch { expected: ambient, found: k + 1 });
                }
            }
        }
        Ok(Subspace { ambient, basis: reduced_basis(vectors) })
    }

    pub fn from_dense(ambient: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        for v in vectors {
            if v.len() != ambient {
                return Err(LinAlgError::DimensionMismatch { expected: ambient, found: v.len() });
            }
        }
        Ok(Subspace {
            ambient,
            basis: reduced_basis(vectors.iter().map(|v| SparseVec::from_dense(v))),
        })
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(SparseVec::unit).collect() }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec<usize>] {
        &self.basis
    }

    pub fn contains(&self, v: &SparseVec<usize>) -> bool {
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(b.clone());
        }
        e.contains(v)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let mut e = Echelon::new();
        for b in &self.basis {
            e.insert(b.clone());
        }
        other.basis.iter().all(|v| e.contains(v))
    }

    /// Orthogonal complement under the standard dot product.
    pub fn annihilator(&self) -> Subspace {
        let m = Matrix { rows: self.basis.len(), cols: self.ambient, data: self.basis.clone() };
        let (_, kernel) = rank_and_kernel(&m);
        Subspace { ambient: self.ambient, basis: reduced_basis(kernel) }
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        if self.ambient != other.ambient {
            return Err(LinAlgError::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Subspace::span(self.ambient, self.basis.iter().chain(&other.basis).cloned().collect())
    }
}

/// Intersection of subspaces sharing one ambient space, as an RREF basis.
pub fn intersect_subspaces(spans: &[Subspace]) -> Result<Subspace, LinAlgError> {
    let Some(first) = spans.first() else {
        return Ok(Subspace::zero(0));
    };
    let ambient = first.ambient;
    if let Some(bad) = spans.iter().find(|s| s.ambient != ambient) {
        return Err(LinAlgError::DimensionMismatch { expected: ambient, found: bad.ambient });
    }
    if spans.len() == 1 {
        return Ok(first.clone());
    }
    // (U_1 ∩ ... ∩ U_k) = (U_1^⊥ + ... + U_k^⊥)^⊥
    let complements: Vec<SparseVec<usize>> =
        spans.iter().flat_map(|s| s.annihilator().basis).collect();
    Ok(Subspace::span(ambient, complements)?.annihilator())
}
