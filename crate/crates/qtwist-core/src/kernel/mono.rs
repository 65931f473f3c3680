//! Variable contexts and packed exponent vectors.
//!
//! A [`Mono`] packs up to [`MAX_VARS`] exponents of 16 bits each into one
//! `u128`, with variable 0 in the most significant field. The derived integer
//! order is therefore exactly lexicographic order with the declaration order
//! as variable priority, monomial multiplication is integer addition, and
//! divisibility is a per-field comparison.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Maximum number of variables in one context.
pub const MAX_VARS: usize = 8;

const FIELD_BITS: u32 = 16;
const FIELD_MASK: u128 = (1 << FIELD_BITS) - 1;

const fn shift_for(var: usize) -> u32 {
    ((MAX_VARS - 1 - var) as u32) * FIELD_BITS
}

/// An ordered set of variable names shared by the polynomials of one
/// computation. Cheap to clone; compared by content with a pointer fast path.
#[derive(Clone, Debug)]
pub struct VarSet {
    names: Arc<Vec<String>>,
}

impl VarSet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                requested: names.len(),
                max: MAX_VARS,
            });
        }
        let owned: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in owned.iter().enumerate() {
            if n.is_empty() || owned[..i].contains(n) {
                return Err(Error::BadSignature(alloc::format!(
                    "duplicate or empty variable name {n:?}"
                )));
            }
        }
        Ok(VarSet {
            names: Arc::new(owned),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for VarSet {}

/// Packed exponent vector; see the module docs for the encoding.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono(u128);

impl Mono {
    pub const ONE: Mono = Mono(0);

    pub fn var(i: usize, e: u16) -> Mono {
        debug_assert!(i < MAX_VARS);
        Mono((e as u128) << shift_for(i))
    }

    pub fn from_exponents(exps: &[u16]) -> Mono {
        debug_assert!(exps.len() <= MAX_VARS);
        let mut m = 0u128;
        for (i, &e) in exps.iter().enumerate() {
            m |= (e as u128) << shift_for(i);
        }
        Mono(m)
    }

    pub fn exp(&self, i: usize) -> u16 {
        ((self.0 >> shift_for(i)) & FIELD_MASK) as u16
    }

    pub fn exponents(&self, nvars: usize) -> Vec<u16> {
        (0..nvars).map(|i| self.exp(i)).collect()
    }

    pub fn is_one(&self) -> bool {
        self.0 == 0
    }

    pub fn total_degree(&self) -> u32 {
        (0..MAX_VARS).map(|i| self.exp(i) as u32).sum()
    }

    /// Product of monomials. Panics in debug builds on per-field overflow.
    pub fn mul(&self, other: &Mono) -> Mono {
        debug_assert!((0..MAX_VARS)
            .all(|i| (self.exp(i) as u32 + other.exp(i) as u32) <= u16::MAX as u32));
        Mono(self.0 + other.0)
    }

    pub fn divides(&self, other: &Mono) -> bool {
        (0..MAX_VARS).all(|i| self.exp(i) <= other.exp(i))
    }

    /// Exact quotient; caller must ensure `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Mono {
        debug_assert!(other.divides(self));
        Mono(self.0 - other.0)
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        let mut m = 0u128;
        for i in 0..MAX_VARS {
            m |= (self.exp(i).max(other.exp(i)) as u128) << shift_for(i);
        }
        Mono(m)
    }

    pub fn gcd(&self, other: &Mono) -> Mono {
        let mut m = 0u128;
        for i in 0..MAX_VARS {
            m |= (self.exp(i).min(other.exp(i)) as u128) << shift_for(i);
        }
        Mono(m)
    }

    pub fn with_exp(&self, i: usize, e: u16) -> Mono {
        let cleared = self.0 & !(FIELD_MASK << shift_for(i));
        Mono(cleared | ((e as u128) << shift_for(i)))
    }
}

impl core::fmt::Debug for Mono {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let exps: Vec<u16> = (0..MAX_VARS).map(|i| self.exp(i)).collect();
        write!(f, "Mono{exps:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packing_roundtrip() {
        let m = Mono::from_exponents(&[3, 0, 7, 65535]);
        assert_eq!(m.exp(0), 3);
        assert_eq!(m.exp(2), 7);
        assert_eq!(m.exp(3), 65535);
        assert_eq!(m.exp(7), 0);
        assert_eq!(m.total_degree(), 3 + 7 + 65535);
    }

    #[test]
    fn order_is_lex_with_declaration_priority() {
        // q^2 > q M^5 > M^7 in a [q, M] context
        let q2 = Mono::from_exponents(&[2, 0]);
        let qm5 = Mono::from_exponents(&[1, 5]);
        let m7 = Mono::from_exponents(&[0, 7]);
        assert!(q2 > qm5);
        assert!(qm5 > m7);
    }

    #[test]
    fn divisibility_and_quotient() {
        let a = Mono::from_exponents(&[1, 2]);
        let b = Mono::from_exponents(&[2, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(b.div(&a), Mono::from_exponents(&[1, 0]));
        assert_eq!(a.lcm(&b), b);
        assert_eq!(a.gcd(&b), a);
    }

    #[test]
    fn varset_rejects_duplicates_and_overflow() {
        assert!(VarSet::new(&["q", "q"]).is_err());
        let too_many: Vec<String> = (0..9).map(|i| alloc::format!("x{i}")).collect();
        assert!(matches!(
            VarSet::new(&too_many),
            Err(Error::TooManyVariables { .. })
        ));
    }
}
