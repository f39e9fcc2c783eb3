//! Sparse row elimination with a dense scratch buffer, generic over the
//! scalar type.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt::Debug;

use super::Rational;

pub trait Field: Clone + PartialEq + Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; the argument is nonzero.
    fn inv(&self) -> Self;
    fn from_rational(r: &Rational) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

/// A sparse row: strictly increasing column indices with nonzero values.
pub type Row<F> = Vec<(usize, F)>;

/// `a - c * b` for sorted sparse rows.
pub fn row_sub_scaled<F: Field>(a: &Row<F>, c: &F, b: &Row<F>) -> Row<F> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i == a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, c.mul(&b[j].1).neg()));
            j += 1;
        } else {
            let v = a[i].1.sub(&c.mul(&b[j].1));
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Builds a sorted row from unsorted entries, merging duplicates.
pub fn row_from_entries<F: Field>(mut entries: Vec<(usize, F)>) -> Row<F> {
    entries.sort_by_key(|e| e.0);
    let mut out: Row<F> = Vec::with_capacity(entries.len());
    for (k, v) in entries {
        match out.last_mut() {
            Some((lk, lv)) if *lk == k => *lv = lv.add(&v),
            _ => out.push((k, v)),
        }
        if out.last().is_some_and(|(_, v)| v.is_zero()) {
            out.pop();
        }
    }
    out
}

/// Dense scratch space for reducing one row at a time: values, membership
/// flags and a min-heap of the positions still to visit.
#[derive(Debug, Clone)]
struct Workspace<F: Field> {
    dense: Vec<F>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<usize>>,
}

impl<F: Field> Workspace<F> {
    fn new(ambient: usize) -> Self {
        Workspace { dense: vec![F::zero(); ambient], queued: vec![false; ambient], heap: BinaryHeap::new() }
    }

    fn take(&mut self, k: usize) -> F {
        self.queued[k] = false;
        std::mem::replace(&mut self.dense[k], F::zero())
    }

    /// Clears leading entries of `v` against `rows` until one has no pivot.
    /// Each pivot row is scattered into the dense buffer, so the cost of a
    /// step is the length of the pivot row alone.
    fn reduce_leading(&mut self, pivot_of: &[u32], rows: &[Row<F>], v: Row<F>) -> Row<F> {
        for (k, x) in v {
            self.dense[k] = x;
            self.queued[k] = true;
            self.heap.push(Reverse(k));
        }
        let mut out = Vec::new();
        while let Some(Reverse(k)) = self.heap.pop() {
            let c = self.take(k);
            if c.is_zero() {
                continue;
            }
            let r = pivot_of[k];
            if r == NO_ROW {
                out.push((k, c));
                while let Some(Reverse(j)) = self.heap.pop() {
                    let x = self.take(j);
                    if !x.is_zero() {
                        out.push((j, x));
                    }
                }
                break;
            }
            for (j, x) in &rows[r as usize][1..] {
                let j = *j;
                self.dense[j] = self.dense[j].sub(&c.mul(x));
                if !self.queued[j] {
                    self.queued[j] = true;
                    self.heap.push(Reverse(j));
                }
            }
        }
        out
    }
}

/// Incremental echelon form over a field with dense pivot lookup. Stored
/// rows are normalized to leading coefficient one.
#[derive(Debug, Clone)]
pub struct FieldEchelon<F: Field> {
    pivot_of: Vec<u32>,
    rows: Vec<Row<F>>,
    work: Workspace<F>,
}

const NO_ROW: u32 = u32::MAX;

impl<F: Field> FieldEchelon<F> {
    pub fn new(ambient: usize) -> Self {
        FieldEchelon { pivot_of: vec![NO_ROW; ambient], rows: Vec::new(), work: Workspace::new(ambient) }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Row<F>] {
        &self.rows
    }

    fn reduce_leading(&mut self, v: Row<F>) -> Row<F> {
        self.work.reduce_leading(&self.pivot_of, &self.rows, v)
    }

    fn push_reduced(&mut self, v: Row<F>) {
        let (k, c) = &v[0];
        let k = *k;
        let inv = c.inv();
        let row: Row<F> = v.into_iter().map(|(i, x)| (i, x.mul(&inv))).collect();
        self.pivot_of[k] = self.rows.len() as u32;
        self.rows.push(row);
    }

    /// Inserts `v`; returns true iff it was independent.
    pub fn insert(&mut self, v: Row<F>) -> bool {
        let v = self.reduce_leading(v);
        if v.is_empty() {
            return false;
        }
        self.push_reduced(v);
        true
    }

    pub fn contains(&mut self, v: &Row<F>) -> bool {
        self.reduce_leading(v.clone()).is_empty()
    }
}

/// Rank of a list of rows in an ambient space of the given dimension.
pub fn field_rank<F: Field>(ambient: usize, rows: &[Row<F>]) -> usize {
    let mut e = FieldEchelon::new(ambient);
    // short rows first keeps fill-in down
    let mut order: Vec<&Row<F>> = rows.iter().collect();
    order.sort_by_key(|r| r.len());
    for r in order {
        if !r.is_empty() {
            e.insert(r.clone());
        }
    }
    e.rank()
}

/// Kernel basis of the map sending source basis vector `i` to `images[i]`
/// (rows in an ambient space of dimension `ambient`).
pub fn field_kernel<F: Field>(ambient: usize, images: &[Row<F>]) -> Vec<Row<F>> {
    field_image_and_kernel(ambient, images).1
}

/// Echelon basis of the span of `images`, together with a kernel basis of
/// the map sending source basis vector `i` to `images[i]`.
pub fn field_image_and_kernel<F: Field>(ambient: usize, images: &[Row<F>]) -> (FieldEchelon<F>, Vec<Row<F>>) {
    let n = images.len();
    let mut e = FieldEchelon::new(ambient + n);
    let mut kernel = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| images[i].len());
    for i in order {
        let mut v = images[i].clone();
        v.push((ambient + i, F::one()));
        let v = e.reduce_leading(v);
        match v.first() {
            Some((k, _)) if *k < ambient => e.push_reduced(v),
            Some(_) => {
                kernel.push(v.into_iter().map(|(k, x)| (k - ambient, x)).collect());
            }
            None => unreachable!("tag coordinate cannot cancel"),
        }
    }
    let mut span = FieldEchelon::new(ambient);
    drop(e.work);
    for row in e.rows {
        let image: Row<F> = row.into_iter().take_while(|(k, _)| *k < ambient).collect();
        let lead = image[0].0;
        span.pivot_of[lead] = span.rows.len() as u32;
        span.rows.push(image);
    }
    (span, kernel)
}
