use std::collections::HashMap;
use std::hash::Hash;

use super::Rational;

/// A sparse vector: entries sorted by key, no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseVec<K> {
    entries: Vec<(K, Rational)>,
}

impl<K> Default for SparseVec<K> {
    fn default() -> Self {
        SparseVec { entries: Vec::new() }
    }
}

impl<K: Copy + Ord> SparseVec<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a vector from arbitrary `(key, value)` pairs, summing duplicates.
    pub fn from_entries<I: IntoIterator<Item = (K, Rational)>>(iter: I) -> Self {
        let mut raw: Vec<(K, Rational)> = iter.into_iter().collect();
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        let mut entries: Vec<(K, Rational)> = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            match entries.last_mut() {
                Some((lk, lv)) if *lk == k => *lv += &v,
                _ => entries.push((k, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    /// Wraps entries that are already sorted, deduplicated and nonzero.
    pub fn from_sorted_unchecked(entries: Vec<(K, Rational)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, v)| !v.is_zero()));
        SparseVec { entries }
    }

    pub fn unit(key: K) -> Self {
        SparseVec { entries: vec![(key, Rational::one())] }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(K, Rational)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(K, Rational)> {
        self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(K, Rational)> {
        self.entries.iter()
    }

    pub fn leading(&self) -> Option<&(K, Rational)> {
        self.entries.first()
    }

    pub fn get(&self, key: K) -> Rational {
        match self.entries.binary_search_by(|e| e.0.cmp(&key)) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        if factor.is_zero() {
            return Self::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(k, v)| (*k, v * factor)).collect(),
        }
    }

    pub fn map_keys<L: Copy + Ord, F: Fn(K) -> L>(&self, f: F) -> SparseVec<L> {
        SparseVec::from_entries(self.entries.iter().map(|(k, v)| (f(*k), v.clone())))
    }

    /// Returns `self - factor * other`.
    pub fn sub_scaled(&self, factor: &Rational, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((b[j].0, -(factor * &b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let v = a[i].1.sub_mul(factor, &b[j].1);
                    if !v.is_zero() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(k, v)| (*k, -(factor * v))));
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.sub_scaled(&-Rational::one(), other)
    }

    pub fn dot(&self, other: &Self) -> Rational {
        let mut acc = Rational::zero();
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc += &(&a[i].1 * &b[j].1);
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn normalized(&self) -> Self {
        match self.entries.first() {
            None => Self::new(),
            Some((_, lead)) if lead.is_one() => self.clone(),
            Some((_, lead)) => self.scaled(&lead.recip()),
        }
    }
}

impl SparseVec<usize> {
    pub fn to_dense(&self, dim: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); dim];
        for (k, v) in &self.entries {
            out[*k] = v.clone();
        }
        out
    }

    pub fn from_dense(values: &[Rational]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.clone()))
                .collect(),
        }
    }
}

/// Incremental row-echelon basis over sparse vectors.
///
/// Every stored row has leading coefficient 1 and a distinct leading key
/// (its pivot). Rows are only reduced on their leading entries, so insertion
/// touches as few rows as possible.
#[derive(Clone, Debug)]
pub struct Echelon<K> {
    rows: Vec<SparseVec<K>>,
    pivots: HashMap<K, usize>,
}

impl<K: Copy + Ord + Hash> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: Vec::new(), pivots: HashMap::new() }
    }
}

impl<K: Copy + Ord + Hash> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec<K>] {
        &self.rows
    }

    pub fn is_pivot(&self, key: K) -> bool {
        self.pivots.contains_key(&key)
    }

    fn reduce_leading(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        while let Some((k, c)) = v.leading() {
            match self.pivots.get(k) {
                Some(&row) => {
                    let c = c.clone();
                    v = v.sub_scaled(&c, &self.rows[row]);
                }
                None => break,
            }
        }
        v
    }

    /// Reduces every pivot key out of `v`.
    pub fn reduce(&self, mut v: SparseVec<K>) -> SparseVec<K> {
        let mut pos = 0;
        while pos < v.entries.len() {
            let (k, c) = &v.entries[pos];
            match self.pivots.get(k) {
                Some(&row) => {
                    let c = c.clone();
                    v = v.sub_scaled(&c, &self.rows[row]);
                    // entries before `pos` are untouched since pivot rows start at their pivot
                }
                None => pos += 1,
            }
        }
        v
    }

    /// Inserts `v`; returns true iff it was independent of the current rows.
    pub fn insert(&mut self, v: SparseVec<K>) -> bool {
        let v = self.reduce_leading(v);
        match v.leading() {
            None => false,
            Some((k, _)) => {
                let k = *k;
                self.pivots.insert(k, self.rows.len());
                self.rows.push(v.normalized());
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce_leading(v.clone()).is_zero()
    }

    /// Fully reduced rows (RREF), sorted by ascending pivot.
    pub fn into_reduced(self) -> Vec<SparseVec<K>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by(|&a, &b| self.rows[b].entries[0].0.cmp(&self.rows[a].entries[0].0));
        let mut done = Echelon::new();
        for idx in order {
            let row = &self.rows[idx];
            let lead = row.entries[0].clone();
            let tail = SparseVec { entries: row.entries[1..].to_vec() };
            let tail = done.reduce(tail);
            let mut entries = Vec::with_capacity(tail.len() + 1);
            entries.push(lead);
            entries.extend(tail.entries);
            let k = entries[0].0;
            done.pivots.insert(k, done.rows.len());
            done.rows.push(SparseVec { entries });
        }
        let mut rows = done.rows;
        rows.sort_by(|a, b| a.entries[0].0.cmp(&b.entries[0].0));
        rows
    }
}

/// Rank of the span of `vectors`.
pub fn rank_of<K: Copy + Ord + Hash, I: IntoIterator<Item = SparseVec<K>>>(vectors: I) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

/// RREF basis of the span of `vectors`.
pub fn reduced_basis<K: Copy + Ord + Hash, I: IntoIterator<Item = SparseVec<K>>>(
    vectors: I,
) -> Vec<SparseVec<K>> {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.into_reduced()
}

/// Kernel of the linear map sending the `i`-th basis vector of the source to
/// `images[i]`. The basis is indexed by free source coordinates: the
/// returned vector for free index `f` has coefficient 1 at `f` and 0 at every
/// other free index. Ordered by ascending free index.
pub fn kernel_of_images<K: Copy + Ord + Hash>(images: &[SparseVec<K>]) -> Vec<SparseVec<usize>> {
    // Augment each image with a tag coordinate recording the source index;
    // tags sort after every image key, so elimination on the image part
    // leaves the source combinations in the tag part.
    #[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
    enum Slot<K> {
        Image(K),
        Source(usize),
    }
    let mut e: Echelon<Slot<K>> = Echelon::new();
    let mut kernel_rows = Vec::new();
    // Process sources from last to first so that each kernel relation is
    // expressed with its lowest tag the newest source: this yields the
    // "free index" normal form after reduction below.
    for (i, img) in images.iter().enumerate().rev() {
        let mut entries: Vec<(Slot<K>, Rational)> =
            img.entries.iter().map(|(k, v)| (Slot::Image(*k), v.clone())).collect();
        entries.push((Slot::Source(i), Rational::one()));
        let v = e.reduce_leading(SparseVec { entries });
        match v.leading() {
            Some((Slot::Image(k), _)) => {
                let k = *k;
                e.pivots.insert(Slot::Image(k), e.rows.len());
                e.rows.push(v.normalized());
            }
            Some((Slot::Source(_), _)) => kernel_rows.push(v),
            None => unreachable!("tag coordinate cannot cancel"),
        }
    }
    let kernel: Vec<SparseVec<usize>> = kernel_rows
        .into_iter()
        .map(|v| {
            SparseVec::from_sorted_unchecked(
                v.entries
                    .into_iter()
                    .map(|(k, c)| match k {
                        Slot::Source(i) => (i, c),
                        Slot::Image(_) => unreachable!(),
                    })
                    .collect(),
            )
        })
        .collect();
    canonical_kernel(kernel)
}

/// Brings a kernel basis into the deterministic form described on
/// [`kernel_of_images`]: RREF with respect to descending coordinate order,
/// so that free (non-pivot-in-the-map) coordinates carry the identity.
fn canonical_kernel(vectors: Vec<SparseVec<usize>>) -> Vec<SparseVec<usize>> {
    use std::cmp::Reverse;
    let flipped = vectors
        .into_iter()
        .map(|v| v.map_keys(Reverse))
        .collect::<Vec<_>>();
    let mut rows = reduced_basis(flipped);
    rows.sort_by_key(|r| r.entries()[0].0);
    rows.reverse();
    rows.into_iter().map(|v| v.map_keys(|Reverse(k)| k)).collect()
}
