//! Left Groebner bases of left ideals in the Ore algebra, and module
//! elements encoding inhomogeneous recurrences.

use alloc::vec::Vec;
use core::fmt;

use super::engine::{self, VOp};
use super::order::{Comp, MMono, MonomialOrder};
use super::{OreAlgebraSignature, OreOperator};
use crate::error::{Error, Result};
use crate::kernel::Mono;

/// Default cap on the number of basis elements produced by completion.
pub const DEFAULT_BASIS_CAP: usize = 256;

/// An auto-reduced left Groebner basis of a left ideal of the Ore algebra,
/// together with its staircase data when the ideal is zero-dimensional.
#[derive(Clone)]
pub struct LeftGroebnerBasis {
    sig: OreAlgebraSignature,
    order: MonomialOrder,
    /// Monic generators for reduction.
    vops: Vec<VOp>,
    /// Cleared content-free presentation of the generators.
    gens: Vec<OreOperator>,
    /// Monomials under the stairs, when finite.
    stairs: Option<Vec<Mono>>,
}

impl LeftGroebnerBasis {
    /// Complete `generators` to an auto-reduced left Groebner basis.
    pub fn new(generators: &[OreOperator], order: MonomialOrder) -> Result<Self> {
        Self::with_cap(generators, order, DEFAULT_BASIS_CAP)
    }

    pub fn with_cap(
        generators: &[OreOperator],
        order: MonomialOrder,
        max_basis: usize,
    ) -> Result<Self> {
        let sig = generators
            .iter()
            .find(|g| !g.is_zero())
            .map(|g| g.signature().clone())
            .ok_or(Error::ZeroOperator)?;
        if !generators.iter().all(|g| g.signature().same(&sig)) {
            return Err(Error::SignatureMismatch);
        }
        let vgens: Vec<VOp> = generators.iter().map(VOp::from_operator).collect();
        let vops = engine::buchberger(&vgens, &order, max_basis)?;
        Self::from_vops(sig, order, vops)
    }

    /// Wrap an already completed, auto-reduced basis (the ansatz engine
    /// produces one by construction) without re-running completion.
    pub(crate) fn from_completed(
        sig: OreAlgebraSignature,
        order: MonomialOrder,
        vops: Vec<VOp>,
    ) -> Result<Self> {
        let monic: Vec<VOp> = vops.iter().map(|g| g.monic(&order)).collect();
        Self::from_vops(sig, order, monic)
    }

    fn from_vops(
        sig: OreAlgebraSignature,
        order: MonomialOrder,
        vops: Vec<VOp>,
    ) -> Result<Self> {
        let leads: Vec<MMono> = vops
            .iter()
            .map(|g| g.lead(&order).expect("nonzero basis element").0)
            .collect();
        let stairs =
            engine::under_stairs_mm(&leads, sig.r(), &[Comp::Op], &order)
                .ok()
                .map(|mm| mm.into_iter().map(|m| m.l).collect());
        let gens = vops
            .iter()
            .map(|g| g.clone().into_operator().normalized_cleared())
            .collect();
        Ok(LeftGroebnerBasis {
            sig,
            order,
            vops,
            gens,
            stairs,
        })
    }

    pub fn signature(&self) -> &OreAlgebraSignature {
        &self.sig
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Generators in cleared content-free presentation, sorted by leading
    /// monomial.
    pub fn generators(&self) -> &[OreOperator] {
        &self.gens
    }

    pub fn leading_monomials(&self) -> Vec<Mono> {
        self.vops
            .iter()
            .map(|g| g.lead(&self.order).expect("nonzero").0.l)
            .collect()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.stairs.is_some()
    }

    /// The monomials under the stairs; errors when the ideal is not
    /// zero-dimensional.
    pub fn under_stairs(&self) -> Result<&[Mono]> {
        self.stairs
            .as_deref()
            .ok_or(Error::NotZeroDimensional)
    }

    /// Number of monomials under the stairs.
    pub fn rank(&self) -> Result<usize> {
        Ok(self.under_stairs()?.len())
    }

    /// Full left reduction: the remainder has no monomial divisible by a
    /// leading monomial of the basis, and `a - reduce(a)` lies in the ideal.
    pub fn reduce(&self, a: &OreOperator) -> OreOperator {
        assert!(a.signature().same(&self.sig), "algebra mismatch");
        engine::reduce_full(&VOp::from_operator(a), &self.vops, &self.order).into_operator()
    }

    pub(crate) fn vops(&self) -> &[VOp] {
        &self.vops
    }
}

impl fmt::Debug for LeftGroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LeftGroebnerBasis[")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "]")
    }
}

/// Complete a generating set to an auto-reduced left Groebner basis.
pub fn left_buchberger(
    generators: &[OreOperator],
    order: MonomialOrder,
) -> Result<LeftGroebnerBasis> {
    LeftGroebnerBasis::new(generators, order)
}

/// Remainder of `a` modulo the basis.
pub fn left_reduce(a: &OreOperator, basis: &LeftGroebnerBasis) -> OreOperator {
    basis.reduce(a)
}

/// Monomials under the stairs of the basis.
pub fn under_stairs(basis: &LeftGroebnerBasis) -> Result<Vec<Mono>> {
    basis.under_stairs().map(|s| s.to_vec())
}

/// An inhomogeneous relation `op(f) = rhs(1)` in the left module `O^2`,
/// where `1` denotes the constant-one sequence. The module is always used
/// together with the relation `(0, L_k - 1)` which encodes that `1` is
/// shift-invariant.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleElement {
    pub op: OreOperator,
    pub rhs: OreOperator,
}

impl ModuleElement {
    pub fn new(op: OreOperator, rhs: OreOperator) -> Result<Self> {
        if !op.signature().same(rhs.signature()) {
            return Err(Error::SignatureMismatch);
        }
        Ok(ModuleElement { op, rhs })
    }

    pub fn signature(&self) -> &OreAlgebraSignature {
        self.op.signature()
    }

    /// Equality of both components up to content and unit, coupled: the
    /// pair is cleared and content-stripped jointly.
    pub fn equivalent(&self, other: &ModuleElement) -> bool {
        let a = VOp::from_pair(&self.op, &self.rhs);
        let b = VOp::from_pair(&other.op, &other.rhs);
        let order = MonomialOrder::degrevlex().with_pot();
        let (na, nb) = (a.monic(&order), b.monic(&order));
        na.terms.len() == nb.terms.len()
            && na
                .terms
                .iter()
                .zip(nb.terms.iter())
                .all(|((ma, ca), (mb, cb))| ma == mb && ca == cb)
    }
}

impl fmt::Debug for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) :: ({})", self.op, self.rhs)
    }
}

/// Build the module Groebner basis `{(op, rhs), (0, L_k - 1 for each k)}`
/// under a POT order; used by the inhomogeneous twisting entry point.
pub(crate) fn module_basis_with_shift_relation(
    rel: &ModuleElement,
    order: &MonomialOrder,
) -> Result<Vec<VOp>> {
    let sig = rel.signature().clone();
    if rel.op.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let mut gens = alloc::vec![VOp::from_pair(&rel.op, &rel.rhs)];
    for k in 0..sig.r() {
        let shift_minus_one =
            &OreOperator::l_pow(&sig, k, 1) - &OreOperator::one(&sig);
        gens.push(VOp::from_pair(&OreOperator::zero(&sig), &shift_minus_one));
    }
    engine::buchberger(&gens, order, DEFAULT_BASIS_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::RationalFunction;
    use crate::ore::coeff_poly;

    fn sig() -> OreAlgebraSignature {
        OreAlgebraSignature::univariate()
    }

    fn central_q_binomial_op(s: &OreAlgebraSignature) -> OreOperator {
        let c1 = coeff_poly(s, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let c0 = coeff_poly(
            s,
            &[(-1, &[2, 3]), (-1, &[1, 2]), (1, &[1, 1]), (1, &[0, 0])],
        );
        s.from_recurrences(&[alloc::vec![c0, c1]]).unwrap().remove(0)
    }

    #[test]
    fn principal_ideal_is_its_own_basis() {
        let s = sig();
        let p = central_q_binomial_op(&s);
        let g = left_buchberger(&[p.clone()], MonomialOrder::degrevlex()).unwrap();
        assert_eq!(g.generators().len(), 1);
        assert!(g.generators()[0].equivalent(&p));
        assert_eq!(g.rank().unwrap(), 1);
        assert_eq!(g.under_stairs().unwrap(), &[Mono::ONE]);
    }

    #[test]
    fn redundant_generator_removed() {
        let s = sig();
        let l_minus_1 = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::one(&s);
        let m = OreOperator::m_pow(&s, 0, 1);
        let redundant = &m * &l_minus_1;
        let g =
            left_buchberger(&[l_minus_1.clone(), redundant], MonomialOrder::degrevlex()).unwrap();
        assert_eq!(g.generators().len(), 1);
        assert!(g.generators()[0].equivalent(&l_minus_1));
    }

    #[test]
    fn reduce_generator_to_zero_and_skip_coefficients() {
        let s = sig();
        let p = central_q_binomial_op(&s);
        let g = left_buchberger(&[p.clone()], MonomialOrder::degrevlex()).unwrap();
        assert!(g.reduce(&p).is_zero());
        // coefficient-only operators are irreducible when 1 is under the stairs
        let m = OreOperator::m_pow(&s, 0, 1);
        assert_eq!(g.reduce(&m), m);
    }

    #[test]
    fn reduce_l_squared_to_staircase_support() {
        let s = sig();
        let p = central_q_binomial_op(&s);
        let g = left_buchberger(&[p.clone()], MonomialOrder::degrevlex()).unwrap();
        let l2 = OreOperator::l_pow(&s, 0, 2);
        let r = g.reduce(&l2);
        // stairs = {1}: the remainder is a pure coefficient
        assert_eq!(r.num_terms(), 1);
        assert!(r.coefficient(&Mono::ONE).is_some());
        // hand-computed: reducing L^2 twice by P gives
        // sigma(c0/c1) * (c0/c1) ... verified through the identity
        // L^2 - r in <P>: multiply back and reduce again.
        let diff = &l2 - &r;
        assert!(g.reduce(&diff).is_zero());
    }

    #[test]
    fn two_variable_system_rank_bound() {
        // P1 = L1 - M2, P2 = L2 - M1: d1 = d2 = 1, rank <= 1.
        let s = OreAlgebraSignature::new(
            &["q"],
            &[("L1", "M1", "q"), ("L2", "M2", "q")],
        )
        .unwrap();
        let p1 = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::m_pow(&s, 1, 1);
        let p2 = &OreOperator::l_pow(&s, 1, 1) - &OreOperator::m_pow(&s, 0, 1);
        let g = left_buchberger(&[p1, p2], MonomialOrder::degrevlex()).unwrap();
        assert!(g.is_zero_dimensional());
        assert!(g.rank().unwrap() <= 1);
        // Left multiples of generators lie in the ideal.
        for a in g.generators() {
            for b in g.generators() {
                assert!(g.reduce(&(a * b)).is_zero());
            }
        }
    }

    #[test]
    fn staircase_enumeration_two_pure_powers() {
        // lm set {L1^2, L2} in r = 2: stairs = {1, L1}
        let order = MonomialOrder::degrevlex();
        let leads = alloc::vec![
            MMono::op(Mono::from_exponents(&[2, 0])),
            MMono::op(Mono::from_exponents(&[0, 1])),
        ];
        let st = engine::under_stairs_mm(&leads, 2, &[Comp::Op], &order).unwrap();
        let exps: Vec<Vec<u16>> = st.iter().map(|m| m.l.exponents(2)).collect();
        assert_eq!(exps, alloc::vec![alloc::vec![0, 0], alloc::vec![1, 0]]);
    }

    #[test]
    fn non_zero_dimensional_detected() {
        let s = OreAlgebraSignature::new(
            &["q"],
            &[("L1", "M1", "q"), ("L2", "M2", "q")],
        )
        .unwrap();
        // Only L1 - 1: no pure power of L2 in the leading monomials.
        let p1 = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::one(&s);
        let g = left_buchberger(&[p1], MonomialOrder::degrevlex()).unwrap();
        assert!(!g.is_zero_dimensional());
        assert!(matches!(g.rank(), Err(Error::NotZeroDimensional)));
    }

    #[test]
    fn non_commutative_s_elements_matter() {
        // {L - 1, M L - q M} is inconsistent as a commutative pair but the
        // S-element reduces to (q - 1) M ... the completion must discover
        // the staircase honestly. L*(M L - q M): sigma twists apply.
        let s = sig();
        let l_minus_1 = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::one(&s);
        let m = OreOperator::m_pow(&s, 0, 1);
        let q = OreOperator::q_pow(&s, 0, 1);
        let other = &(&m * &OreOperator::l_pow(&s, 0, 1)) - &(&q * &m);
        let g = left_buchberger(&[l_minus_1, other], MonomialOrder::degrevlex()).unwrap();
        // M L - q M = M (L - 1) + (1 - q) M ... wait: M*L - q*M reduces by
        // L - 1 to M - qM = (1-q) M, a unit, so the ideal is everything.
        assert_eq!(g.generators().len(), 1);
        assert!(g.generators()[0].equivalent(&OreOperator::one(&s)));
    }

    #[test]
    fn module_basis_contains_shift_relation() {
        let s = sig();
        let p = central_q_binomial_op(&s);
        let b = OreOperator::m_pow(&s, 0, 1);
        let rel = ModuleElement::new(p, b).unwrap();
        let order = MonomialOrder::degrevlex().with_pot();
        let vops = module_basis_with_shift_relation(&rel, &order).unwrap();
        assert_eq!(vops.len(), 2);
        let leads: Vec<MMono> = vops.iter().map(|g| g.lead(&order).unwrap().0).collect();
        assert!(leads.iter().any(|m| m.comp == Comp::Op));
        assert!(leads.iter().any(|m| m.comp == Comp::Rhs));
        let stairs = engine::under_stairs_mm(&leads, 1, &[Comp::Op, Comp::Rhs], &order).unwrap();
        // the relation has order 1, so stairs = {rhs 1, op 1}: rank 2
        assert_eq!(stairs.len(), 2);
    }
}
