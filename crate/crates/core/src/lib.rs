//! Exact arithmetic and verification tooling for Galois extensions of F_p(t)
//! with few ramified places.
//!
//! The crate is organised around a handful of small, pure layers:
//!
//! - [`field`] / [`poly`]: finite fields F_p and F_p[t]/(pi), and dense
//!   univariate polynomials over them.
//! - [`factor`]: factorization, irreducibility, square tests and the unit
//!   count Phi of a residue ring.
//! - [`carlitz`]: additive (Carlitz) polynomials [M](x) and the module
//!   action they induce.
//! - [`bivar`]: polynomials in x over F_p[t] — discriminants via
//!   fraction-free resultants, reduction at a finite place.
//! - [`ramify`]: which places of F_p(t) ramify in the splitting field of a
//!   given polynomial.
//! - [`galois`]: Galois-group classification for quadratic, cubic and
//!   biquadratic families.
//! - [`construct`]: searches producing witnesses for the D8 and S3 families,
//!   abelian moduli selection, principal-unit group structure, and
//!   irreducible-substitution counts.
//! - [`curves`]: point counting and divisor class numbers of quadratic
//!   function fields.
//! - [`conjecture`]: the conjectured minimal number of ramified places for a
//!   finite group, evaluated from compact group descriptors.
//! - [`tables`]: replay verification of the bundled witness tables.
//!
//! Everything is exact (no floating point in the algebra) and deterministic:
//! randomized subroutines draw from a fixed or caller-supplied seed.

pub mod bivar;
pub mod carlitz;
pub mod conjecture;
pub mod construct;
pub mod curves;



pub mod error;
pub mod factor;
pub mod field;
pub mod galois;
pub mod fp;

pub mod poly;
pub mod ramify;
pub mod tables;

pub mod text;

pub use error::{Error, Result};
pub use field::{FFElem, FieldSpec};
pub use poly::Poly;
