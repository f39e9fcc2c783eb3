//! Truncated bivariate Poincaré series in `t` (weight) and `z` (degree),
//! the Koszul inversion formula, and closed forms at `t = 1`.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::graded::{BiDegree, BigradedDims, TruncationBounds};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("constant term is {0}, expected 1")]
    ConstantTerm(i128),
    #[error("term t^{weight} z^{degree} would receive a negative z exponent")]
    NegativeExponent { weight: u32, degree: u32 },
    #[error("series reaches the truncation bound at t^{weight} z^{degree}; it is not known to be a polynomial")]
    InfiniteSupport { weight: u32, degree: u32 },
    #[error("denominator has constant term {0} at t = 1, so the series does not converge there")]
    DegenerateAtOne(i128),
}

/// A bivariate series truncated to weights and degrees within bounds. Only
/// nonzero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoincareSeries {
    bounds: TruncationBounds,
    coeffs: BTreeMap<BiDegree, i128>,
}

impl PoincareSeries {
    pub fn zero(bounds: TruncationBounds) -> Self {
        PoincareSeries { bounds, coeffs: BTreeMap::new() }
    }

    pub fn one(bounds: TruncationBounds) -> Self {
        PoincareSeries::from_terms(bounds, [(BiDegree::new(0, 0), 1)])
    }

    /// Sums the given terms; those beyond the bounds are dropped.
    pub fn from_terms(bounds: TruncationBounds, terms: impl IntoIterator<Item = (BiDegree, i128)>) -> Self {
        let mut s = PoincareSeries::zero(bounds);
        for (bd, c) in terms {
            s.add_term(bd, c);
        }
        s
    }

    fn add_term(&mut self, bd: BiDegree, c: i128) {
        if c == 0 || !self.bounds.contains(bd) {
            return;
        }
        let entry = self.coeffs.entry(bd).or_insert(0);
        *entry = entry.checked_add(c).expect("coefficient overflow");
        if *entry == 0 {
            self.coeffs.remove(&bd);
        }
    }

    pub fn bounds(&self) -> TruncationBounds {
        self.bounds
    }

    pub fn get(&self, weight: u32, degree: u32) -> i128 {
        self.coeffs.get(&BiDegree::new(weight, degree)).copied().unwrap_or(0)
    }

    /// Nonzero coefficients in ascending (weight, degree) order.
    pub fn iter(&self) -> impl Iterator<Item = (BiDegree, i128)> + '_ {
        self.coeffs.iter().map(|(bd, c)| (*bd, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The same series under tighter (or equal) bounds.
    pub fn truncated(&self, bounds: TruncationBounds) -> Self {
        let bounds = self.bounds.tightest(&bounds);
        PoincareSeries::from_terms(bounds, self.iter())
    }

    /// Coefficients of `z^d` after setting `t = 1`, for `d = 0..=max_degree`.
    pub fn at_t_one(&self) -> Vec<i128> {
        let mut out = vec![0i128; self.bounds.max_degree as usize + 1];
        for (bd, c) in self.iter() {
            let slot = &mut out[bd.degree as usize];
            *slot = slot.checked_add(c).expect("coefficient overflow");
        }
        out
    }

    /// `Σ c_{w,d} (-1)^w t^w z^{d + shift·w}`: the substitution `t ↦ -t z^shift`.
    pub fn substitute_weight(&self, shift: i64) -> Result<PoincareSeries, SeriesError> {
        let mut out = PoincareSeries::zero(self.bounds);
        for (bd, c) in self.iter() {
            let degree = i64::from(bd.degree) + shift * i64::from(bd.weight);
            if degree < 0 {
                return Err(SeriesError::NegativeExponent { weight: bd.weight, degree: bd.degree });
            }
            let sign = if bd.weight % 2 == 0 { c } else { -c };
            if let Ok(degree) = u32::try_from(degree) {
                out.add_term(BiDegree::new(bd.weight, degree), sign);
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<PoincareSeries, SeriesError> {
        let c0 = self.get(0, 0);
        if c0 != 1 {
            return Err(SeriesError::ConstantTerm(c0));
        }
        let b = self.bounds;
        let rest: Vec<(BiDegree, i128)> = self.iter().filter(|(bd, _)| *bd != BiDegree::new(0, 0)).collect();
        let mut grid = vec![vec![0i128; b.max_degree as usize + 1]; b.max_weight as usize + 1];
        grid[0][0] = 1;
        for w in 0..=b.max_weight as usize {
            for d in 0..=b.max_degree as usize {
                if (w, d) == (0, 0) {
                    continue;
                }
                let mut acc = 0i128;
                for (bd, c) in &rest {
                    let (dw, dd) = (bd.weight as usize, bd.degree as usize);
                    if dw <= w && dd <= d {
                        let term = c.checked_mul(grid[w - dw][d - dd]).expect("coefficient overflow");
                        acc = acc.checked_sub(term).expect("coefficient overflow");
                    }
                }
                grid[w][d] = acc;
            }
        }
        Ok(PoincareSeries::from_terms(
            b,
            grid.into_iter().enumerate().flat_map(|(w, row)| {
                row.into_iter().enumerate().map(move |(d, c)| (BiDegree::new(w as u32, d as u32), c))
            }),
        ))
    }
}

impl fmt::Display for PoincareSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (bd, c)) in self.iter().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let body = match (c.unsigned_abs(), bd.weight, bd.degree) {
                (m, 0, 0) => m.to_string(),
                (1, w, d) => monomial(w, d),
                (m, w, d) => format!("{m}{}", monomial(w, d)),
            };
            if i > 0 {
                write!(f, " {sign}{sep}{body}")?;
            } else {
                write!(f, "{sign}{body}")?;
            }
        }
        Ok(())
    }
}

fn monomial(w: u32, d: u32) -> String {
    let power = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        e => format!("{v}^{e}"),
    };
    format!("{}{}", power("t", w), power("z", d))
}

/// The series with coefficients `dims(w, d)`. With `with_unit`, a constant
/// term 1 is supplied when the dims do not already record the unit.
pub fn dims_to_series(dims: &BigradedDims, with_unit: bool) -> PoincareSeries {
    let bounds = dims.bounds();
    let mut s = PoincareSeries::from_terms(bounds, dims.iter().map(|(bd, n)| (bd, i128::from(n))));
    if with_unit && s.get(0, 0) == 0 {
        s.add_term(BiDegree::new(0, 0), 1);
    }
    s
}

/// Truncated product; the result carries the tighter of the two bounds.
pub fn series_mul(a: &PoincareSeries, b: &PoincareSeries) -> PoincareSeries {
    let bounds = a.bounds.tightest(&b.bounds);
    let mut out = PoincareSeries::zero(bounds);
    for (x, c) in a.iter() {
        for (y, e) in b.iter() {
            let bd = BiDegree::new(x.weight + y.weight, x.degree + y.degree);
            if bounds.contains(bd) {
                out.add_term(bd, c.checked_mul(e).expect("coefficient overflow"));
            }
        }
    }
    out
}

/// `A^!(t, z) = A(-t z^{-1}, z)^{-1}`, truncated to `bounds`.
pub fn koszul_inversion(a: &PoincareSeries, bounds: TruncationBounds) -> Result<PoincareSeries, SeriesError> {
    let c0 = a.get(0, 0);
    if c0 != 1 {
        return Err(SeriesError::ConstantTerm(c0));
    }
    a.truncated(bounds).substitute_weight(-1)?.inverse()
}

/// Numerator and denominator coefficient lists in `z`, lowest power first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub numerator: Vec<i128>,
    pub denominator: Vec<i128>,
}

impl ClosedForm {
    /// Power series expansion of numerator / denominator through `z^max_degree`.
    pub fn expand(&self, max_degree: u32) -> Vec<i128> {
        let n = max_degree as usize + 1;
        let d0 = self.denominator[0];
        let mut out = vec![0i128; n];
        for k in 0..n {
            let mut acc = self.numerator.get(k).copied().unwrap_or(0);
            for (j, dj) in self.denominator.iter().enumerate().skip(1).take(k) {
                acc = acc.checked_sub(dj.checked_mul(out[k - j]).expect("coefficient overflow")).expect("coefficient overflow");
            }
            // d0 is ±1
            out[k] = acc * d0;
        }
        out
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", polynomial(&self.numerator), polynomial(&self.denominator))
    }
}

fn polynomial(coeffs: &[i128]) -> String {
    let terms: Vec<(usize, i128)> = coeffs.iter().copied().enumerate().filter(|(_, c)| *c != 0).collect();
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in terms.into_iter().enumerate() {
        if i > 0 {
            out.push_str(if c < 0 { " - " } else { " + " });
        } else if c < 0 {
            out.push('-');
        }
        let m = c.unsigned_abs();
        match k {
            0 => out.push_str(&m.to_string()),
            _ => {
                if m != 1 {
                    out.push_str(&m.to_string());
                }
                out.push('z');
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
    }
    out
}

/// Closed form of `koszul_inversion(a)` at `t = 1`: `1 / A(-z^{-1}, z)`,
/// with the sign chosen so that the denominator has constant term 1.
///
/// `a` must be a polynomial: its support must stay strictly inside the
/// bounds, otherwise a truncation cannot be told from the end of the series.
pub fn rational_closed_form(a: &PoincareSeries) -> Result<ClosedForm, SeriesError> {
    let b = a.bounds();
    if let Some((bd, _)) = a.iter().find(|(bd, _)| bd.weight == b.max_weight || bd.degree == b.max_degree) {
        return Err(SeriesError::InfiniteSupport { weight: bd.weight, degree: bd.degree });
    }
    let c0 = a.get(0, 0);
    if c0 != 1 {
        return Err(SeriesError::ConstantTerm(c0));
    }
    let mut denominator = vec![0i128; b.max_degree as usize + 1];
    for (bd, c) in a.iter() {
        if bd.degree < bd.weight {
            return Err(SeriesError::NegativeExponent { weight: bd.weight, degree: bd.degree });
        }
        let slot = &mut denominator[(bd.degree - bd.weight) as usize];
        *slot += if bd.weight % 2 == 0 { c } else { -c };
    }
    while denominator.len() > 1 && denominator.last() == Some(&0) {
        denominator.pop();
    }
    let mut numerator = vec![1i128];
    match denominator[0] {
        1 => {}
        -1 => {
            denominator.iter_mut().for_each(|c| *c = -*c);
            numerator[0] = -1;
        }
        other => return Err(SeriesError::DegenerateAtOne(other)),
    }
    Ok(ClosedForm { numerator, denominator })
}
