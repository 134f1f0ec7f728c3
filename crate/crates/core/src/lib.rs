//! Exact-arithmetic and high-precision verification of the residue
//! combinatorics of Eisenstein symbols, the free-Lie-algebra model of the
//! elliptic polylogarithm at torsion sections, and the polylogarithm values
//! of the Hodge regulator of cyclotomic elements.
//!
//! The crate is split by layer:
//!
//! - [`exact`]: rationals, polynomials, truncated power series, Bernoulli
//!   polynomials and their distribution relation.
//! - [`modular`]: `GL2(Z/N)`, the coset space `P\GL2`, divisors on
//!   `(Z/N)^2 \ 0`, the horospherical map and the regulator coefficient
//!   formulas.
//! - [`lie`]: the truncated free Lie algebra on two generators (Lyndon/Hall
//!   basis), BCH, the metabelian quotients and the residue computation at
//!   torsion points.
//! - [`numeric`]: fixed-point arbitrary precision, Hurwitz zeta, polylogarithms
//!   at roots of unity and the numeric regulator checks.

pub mod error;
pub mod exact;
pub mod lie;
pub mod modular;
pub mod numeric;

pub use error::{Error, Result};
pub use exact::{PowerSeries, Rational, RationalPolynomial};
