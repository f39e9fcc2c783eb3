//! Koszul duality for quadratic graded-commutative algebras and graded Lie
//! algebras, with exact rational arithmetic throughout.

pub mod exactlin;
pub mod graded;
pub mod presentations;
pub mod koszul;
pub mod series;
pub mod spaces;
