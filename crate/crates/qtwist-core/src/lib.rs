//! Exact symbolic computation in noncommutative q-Ore algebras.
//!
//! The central objects are operators in the algebra `K(q, M)<L>` subject to
//! the q-commutation rule `L M = q M L`, acting on sequences `f_n(q)` by
//! `L f_n = f_{n+1}` and `M f_n = q^n f_n`. Given an annihilating operator
//! (or a zero-dimensional system of them) for a sequence, this crate computes
//! annihilators for
//!
//!  - the twisted sequence `f_n(w q)` where `w` is a complex root of unity,
//!  - the substituted sequence `f_n(q^(1/k))`, and the combined map
//!    `q -> w * q^(1/k)`,
//!
//! including inhomogeneous recurrences handled in the module `O^2` modulo the
//! relation `(0, L - 1)` under a position-over-term order.
//!
//! Supporting layers: exact cyclotomic arithmetic over the union of the
//! fields `Q(zeta_m)` ([`kernel`]), left Groebner reduction and staircase
//! bookkeeping ([`ore`]), Newton polygons and slope sets ([`newton`]), and an
//! independent unrolling oracle that checks every produced operator against
//! explicit sequence tables ([`oracle`]).
//!
//! The crate is `no_std` (with `alloc`); IO, parsing and the command line
//! surface live in the companion crate `qtwist-cli`.
// PROFILING: #![cfg_attr(not(test), no_std)]

extern crate alloc; extern crate std;

pub mod error;
pub mod kernel;
pub mod newton;
pub mod oracle;
pub mod ore;
pub mod twist;

pub use error::{Error, Result};
