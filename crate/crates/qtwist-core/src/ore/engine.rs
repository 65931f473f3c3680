//! Internal reduction engine on component-tagged operators.
//!
//! A [`VOp`] is an element of the free module `O^2` (operator component and
//! right-hand-side component); plain ring elements are module elements whose
//! rhs component is zero. All left-reduction, staircase and completion logic
//! is written once against this representation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::order::{Comp, MMono, MonomialOrder};
use super::{OreAlgebraSignature, OreOperator};
use crate::error::{Error, Result};
use crate::kernel::{Mono, RationalFunction};

#[derive(Clone)]
pub(crate) struct VOp {
    pub sig: OreAlgebraSignature,
    pub terms: BTreeMap<MMono, RationalFunction>,
}

impl VOp {
    pub fn zero(sig: &OreAlgebraSignature) -> Self {
        VOp {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_operator(op: &OreOperator) -> Self {
        VOp {
            sig: op.signature().clone(),
            terms: op
                .terms()
                .map(|(m, c)| (MMono::op(*m), c.clone()))
                .collect(),
        }
    }

    /// Module element `(op, rhs)` for the relation `op(f) = rhs(1)`.
    pub fn from_pair(op: &OreOperator, rhs: &OreOperator) -> Self {
        let mut terms: BTreeMap<MMono, RationalFunction> = op
            .terms()
            .map(|(m, c)| (MMono::op(*m), c.clone()))
            .collect();
        terms.extend(rhs.terms().map(|(m, c)| (MMono::rhs(*m), c.clone())));
        VOp {
            sig: op.signature().clone(),
            terms,
        }
    }

    pub fn monomial(sig: &OreAlgebraSignature, m: MMono) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, RationalFunction::one(sig.coeff_vars()));
        VOp {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn component(&self, comp: Comp) -> OreOperator {
        OreOperator::from_terms(
            &self.sig,
            self.terms
                .iter()
                .filter(|(m, _)| m.comp == comp)
                .map(|(m, c)| (m.l, c.clone())),
        )
    }

    pub fn into_operator(self) -> OreOperator {
        debug_assert!(self.terms.keys().all(|m| m.comp == Comp::Op));
        self.component(Comp::Op)
    }

    pub fn lead(&self, order: &MonomialOrder) -> Option<(MMono, &RationalFunction)> {
        let r = self.sig.r();
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_mm(a, b, r))
            .map(|(m, c)| (*m, c))
    }

    fn insert_add(&mut self, m: MMono, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = &*e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &VOp) -> VOp {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &VOp) -> VOp {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(*m, -c);
        }
        out
    }

    /// Left multiplication by the term `coef * L^delta`; coefficients of the
    /// operand pick up the `sigma^delta` twist, both components alike.
    pub fn left_mul_term(&self, coef: &RationalFunction, delta: &Mono) -> VOp {
        if coef.is_zero() {
            return VOp::zero(&self.sig);
        }
        let mut out = VOp::zero(&self.sig);
        for (m, c) in &self.terms {
            let twisted = self.sig.sigma_coef(c, delta);
            out.insert_add(
                MMono {
                    comp: m.comp,
                    l: m.l.mul(delta),
                },
                coef * &twisted,
            );
        }
        out
    }

    /// Scale every coefficient.
    pub fn scaled(&self, coef: &RationalFunction) -> VOp {
        self.left_mul_term(coef, &Mono::ONE)
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self, order: &MonomialOrder) -> VOp {
        match self.lead(order) {
            None => self.clone(),
            Some((_, lc)) => {
                if lc.is_one() {
                    self.clone()
                } else {
                    let inv = lc.inv().expect("leading coefficient nonzero");
                    self.scaled(&inv)
                }
            }
        }
    }
}

/// Fully reduce `a` modulo `basis`: no monomial of the result is divisible by
/// any leading monomial of the basis. Reduction steps left-multiply basis
/// elements by `(c / sigma^delta(lc)) L^delta`.
pub(crate) fn reduce_full(a: &VOp, basis: &[VOp], order: &MonomialOrder) -> VOp {
    let leads: Vec<(MMono, RationalFunction)> = basis
        .iter()
        .map(|g| {
            let (m, c) = g.lead(order).expect("basis elements nonzero");
            (m, c.clone())
        })
        .collect();
    let r = a.sig.r();
    let mut out = a.clone();
    loop {
        // The reducible monomial that is largest in the runtime order.
        let mut best: Option<(MMono, usize)> = None;
        for (m, _) in &out.terms {
            for (gi, (lm, _)) in leads.iter().enumerate() {
                if lm.divides(m) {
                    let better = match &best {
                        None => true,
                        Some((bm, _)) => order.cmp_mm(m, bm, r) == core::cmp::Ordering::Greater,
                    };
                    if better {
                        best = Some((*m, gi));
                    }
                    break;
                }
            }
        }
        let Some((mu, gi)) = best else {
            return out;
        };
        let delta = mu.l.div(&leads[gi].0.l);
        let lc_twisted = a.sig.sigma_coef(&leads[gi].1, &delta);
        let factor = &out.terms[&mu] / &lc_twisted;
        let sub = basis[gi].left_mul_term(&factor, &delta);
        out = out.sub(&sub);
        debug_assert!(!out.terms.contains_key(&mu));
    }
}

/// Monic auto-reduced completion of the left submodule generated by `gens`.
/// S-elements are formed only for leading monomials in the same component;
/// every S-element must reduce to zero for the result to be a left Groebner
/// basis, which the loop enforces by construction.
pub(crate) fn buchberger(
    gens: &[VOp],
    order: &MonomialOrder,
    max_basis: usize,
) -> Result<Vec<VOp>> {
    let sig = gens
        .first()
        .map(|g| g.sig.clone())
        .ok_or(Error::ZeroOperator)?;
    let mut basis: Vec<VOp> = Vec::new();
    for g in gens {
        if !g.is_zero() {
            basis.push(g.monic(order));
        }
    }
    if basis.is_empty() {
        return Err(Error::ZeroOperator);
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in 0..i {
            pairs.push((j, i));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        let (lmi, _) = basis[i].lead(order).expect("nonzero");
        let (lmj, _) = basis[j].lead(order).expect("nonzero");
        if lmi.comp != lmj.comp {
            continue;
        }
        let gamma = lmi.l.lcm(&lmj.l);
        let one = RationalFunction::one(sig.coeff_vars());
        let si = basis[i].left_mul_term(&one, &gamma.div(&lmi.l));
        let sj = basis[j].left_mul_term(&one, &gamma.div(&lmj.l));
        // Generators are monic, but the sigma twist changes the leading
        // coefficients; rescale so the gamma terms cancel exactly.
        let ci = si.lead(order).expect("nonzero").1.clone();
        let cj = sj.lead(order).expect("nonzero").1.clone();
        let s = si
            .scaled(&ci.inv().expect("nonzero lead"))
            .sub(&sj.scaled(&cj.inv().expect("nonzero lead")));
        let rem = reduce_full(&s, &basis, order);
        if !rem.is_zero() {
            let rem = rem.monic(order);
            basis.push(rem);
            let n = basis.len() - 1;
            for t in 0..n {
                pairs.push((t, n));
            }
            if basis.len() > max_basis {
                return Err(Error::BudgetExceeded(alloc::format!(
                    "left Groebner basis exceeded {max_basis} elements"
                )));
            }
        }
    }

    Ok(autoreduce(basis, order))
}

/// Interreduce a basis: drop elements reducing to zero against the others,
/// fully reduce the rest, keep everything monic, sort by leading monomial.
pub(crate) fn autoreduce(mut basis: Vec<VOp>, order: &MonomialOrder) -> Vec<VOp> {
    loop {
        let mut changed = false;
        let mut i = 0;
        while i < basis.len() {
            let g = basis.remove(i);
            let rem = reduce_full(&g, &basis, order);
            if rem.is_zero() {
                changed = true;
                continue; // dropped; do not advance
            }
            let rem = rem.monic(order);
            if rem.terms != g.terms {
                changed = true;
            }
            basis.insert(i, rem);
            i += 1;
        }
        if !changed {
            break;
        }
    }
    let r = basis
        .first()
        .map(|g| g.sig.r())
        .unwrap_or(1);
    basis.sort_by(|a, b| {
        let (la, _) = a.lead(order).expect("nonzero");
        let (lb, _) = b.lead(order).expect("nonzero");
        order.cmp_mm(&la, &lb, r)
    });
    basis
}

/// Monomials under the stairs of the given leading monomials, per component.
/// Finite exactly when each present component has a pure power of every
/// shift variable among its leading monomials.
pub(crate) fn under_stairs_mm(
    leads: &[MMono],
    r: usize,
    comps: &[Comp],
    order: &MonomialOrder,
) -> Result<Vec<MMono>> {
    let mut stairs: Vec<MMono> = Vec::new();
    for &comp in comps {
        let comp_leads: Vec<&MMono> = leads.iter().filter(|m| m.comp == comp).collect();
        let mut bounds = [0u16; crate::kernel::MAX_VARS];
        for (k, bound) in bounds.iter_mut().enumerate().take(r) {
            let pure = comp_leads
                .iter()
                .filter(|m| {
                    m.l.exp(k) > 0 && (0..r).all(|i| i == k || m.l.exp(i) == 0)
                })
                .map(|m| m.l.exp(k))
                .min();
            match pure {
                Some(d) => *bound = d,
                None => return Err(Error::NotZeroDimensional),
            }
        }
        // Enumerate the box below the pure-power bounds, filtering by
        // divisibility against all leading monomials of this component.
        let mut exps = [0u16; crate::kernel::MAX_VARS];
        loop {
            let cand = Mono::from_exponents(&exps[..r]);
            if !comp_leads.iter().any(|m| m.l.divides(&cand)) {
                stairs.push(MMono { comp, l: cand });
            }
            // Odometer increment.
            let mut k = 0;
            loop {
                if k == r {
                    break;
                }
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
        }
    }
    stairs.sort_by(|a, b| order.cmp_mm(a, b, r));
    Ok(stairs)
}
