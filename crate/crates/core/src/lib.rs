//! Exact computations with knot Floer complexes over F2[U, U^-1].
//!
//! Build complexes from knot expressions ([`knots`]) or the `cfk v1` text
//! format ([`cfk`]), compute `tau`, `epsilon`, `a1` and `a2`
//! ([`invariants`]), and compare, order and certify independence of classes
//! ([`concordance`]).

pub mod cfk;
pub mod concordance;
pub mod gf2;
pub mod invariants;
pub mod knots;
pub mod laurent;
pub mod render;

pub use cfk::CfkComplex;
pub use concordance::ClassRep;
pub use knots::KnotExpr;
pub use laurent::LaurentPoly;
