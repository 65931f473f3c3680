//! Exact arithmetic foundation: rationals, cyclotomic numbers, sparse
//! multivariate polynomials and normalized rational functions.
//!
//! The coefficient field throughout the crate is the union of the cyclotomic
//! fields `Q(zeta_m)`; every value of [`CyclotomicNumber`] lives in one such
//! field and mixed-order arithmetic embeds into `Q(zeta_lcm)` first.

mod cyclotomic;
mod gcd;
mod mono;
mod poly;
mod ratfun;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use gcd::poly_gcd;
pub use mono::{Mono, VarSet, MAX_VARS};
pub use poly::Polynomial;
pub use ratfun::RationalFunction;

/// Arbitrary-precision rational number; always stored with coprime numerator
/// and positive denominator.
pub type Rational = num_rational::BigRational;

/// Arbitrary-precision integer.
pub type Integer = num_bigint::BigInt;
