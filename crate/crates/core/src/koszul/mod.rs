//! Quadratic duals, Tor of quadratic algebras, and Koszulness verdicts.

mod bar;
mod complex;
mod dual;
mod resolution;

pub use bar::{bar_column_tor, bar_tor_dims, TorTable};
pub use complex::{dual_coalgebra_dims, koszul_complex_check, koszul_complex_homology, AcyclicityVerdict};
pub use dual::{dual_comm, dual_lie, relation_spans, PairingMatrix};

use crate::exactlin::Rational;
use crate::graded::TruncationBounds;
use crate::presentations::{QuadraticCommPresentation, QuotientAlgebra};
use resolution::Resolution;

/// Outcome of [`koszul_check`]. Koszulness is only ever claimed up to the
/// bounds it was checked at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KoszulVerdict {
    KoszulUpTo(TruncationBounds),
    /// Least `(w, s)` with `s ≠ w` and nonzero `Tor_{s,w}`, then least
    /// degree; `witness` is `(s, w)` and `dim` is the exact dimension.
    NotKoszul { witness: (u32, u32), degree: u32, dim: u64 },
}

impl KoszulVerdict {
    pub fn is_koszul(&self) -> bool {
        matches!(self, KoszulVerdict::KoszulUpTo(_))
    }
}

/// Exact `Tor^A(ℚ, ℚ)` of `A = Λ(V)/(R)` through the bounds, from a
/// minimal free resolution of the trivial module.
pub fn resolution_tor_dims(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> TorTable {
    let algebra = QuotientAlgebra::new(presentation, bounds);
    let mut r = Resolution::<Rational>::new(&algebra, bounds);
    while r.computed_weight() < bounds.max_weight {
        r.step();
    }
    r.tor().clone()
}

/// Decides whether `Tor_{s,w}` vanishes off the diagonal for all weights in
/// bounds. The minimal resolution is extended one weight at a time and the
/// check stops at the first weight with an off-diagonal class.
pub fn koszul_check(presentation: &QuadraticCommPresentation, bounds: TruncationBounds) -> KoszulVerdict {
    let algebra = QuotientAlgebra::new(presentation, bounds);
    let mut r = Resolution::<Rational>::new(&algebra, bounds);
    while r.computed_weight() < bounds.max_weight {
        if r.step() > 0 {
            let (s, w, degree, dim) = r.tor().first_off_diagonal().expect("off-diagonal entry was counted");
            return KoszulVerdict::NotKoszul { witness: (s, w), degree, dim };
        }
    }
    KoszulVerdict::KoszulUpTo(bounds)
}
