//! Monomial orders on L-exponents and on two-component module monomials.

use core::cmp::Ordering;

use crate::kernel::Mono;

/// Base order on L-exponent vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderKind {
    Lex,
    DegLex,
    DegRevLex,
}

/// A total, multiplicative well-order on L-monomials, with an optional
/// position-over-term component priority for elements of the module `O^2`
/// (the operator component dominates the right-hand-side component).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub pot: bool,
}

impl MonomialOrder {
    /// Default order: degrevlex with declaration-order tie-break.
    pub fn degrevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegRevLex,
            pot: false,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            pot: false,
        }
    }

    pub fn deglex() -> Self {
        MonomialOrder {
            kind: OrderKind::DegLex,
            pot: false,
        }
    }

    pub fn with_pot(self) -> Self {
        MonomialOrder { pot: true, ..self }
    }

    /// Compare two L-exponent vectors over `r` shift variables.
    pub fn cmp_l(&self, a: &Mono, b: &Mono, r: usize) -> Ordering {
        match self.kind {
            OrderKind::Lex => a.cmp(b),
            OrderKind::DegLex => {
                let (da, db) = (a.total_degree(), b.total_degree());
                da.cmp(&db).then_with(|| a.cmp(b))
            }
            OrderKind::DegRevLex => {
                let (da, db) = (a.total_degree(), b.total_degree());
                da.cmp(&db).then_with(|| {
                    for i in (0..r).rev() {
                        let (ea, eb) = (a.exp(i), b.exp(i));
                        if ea != eb {
                            // Smaller exponent in the last differing
                            // variable means the larger monomial.
                            return eb.cmp(&ea);
                        }
                    }
                    Ordering::Equal
                })
            }
        }
    }

    pub(crate) fn cmp_mm(&self, a: &MMono, b: &MMono, r: usize) -> Ordering {
        // Component priority first (POT): operator component on top. The
        // crate only ever builds module elements under POT.
        a.comp.cmp(&b.comp).then_with(|| self.cmp_l(&a.l, &b.l, r))
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        Self::degrevlex()
    }
}

/// Component of an element of the module `O^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Comp {
    /// Right-hand-side component (applied to the constant-one sequence).
    Rhs = 0,
    /// Operator component (applied to the sequence itself).
    Op = 1,
}

/// A module monomial: a component tag plus an L-exponent vector. The derived
/// `Ord` (component, then raw lex) is used only as a storage key; semantic
/// comparisons go through [`MonomialOrder::cmp_mm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct MMono {
    pub comp: Comp,
    pub l: Mono,
}

impl MMono {
    pub fn op(l: Mono) -> Self {
        MMono { comp: Comp::Op, l }
    }

    pub fn rhs(l: Mono) -> Self {
        MMono { comp: Comp::Rhs, l }
    }

    pub fn divides(&self, other: &MMono) -> bool {
        self.comp == other.comp && self.l.divides(&other.l)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Mono {
        Mono::from_exponents(exps)
    }

    #[test]
    fn degrevlex_tie_break() {
        let o = MonomialOrder::degrevlex();
        // x0^2 x1 > x0 x1^2 under degrevlex (same degree; last variable
        // exponent smaller wins)
        assert_eq!(o.cmp_l(&m(&[2, 1]), &m(&[1, 2]), 2), Ordering::Greater);
        assert_eq!(o.cmp_l(&m(&[0, 3]), &m(&[2, 0]), 2), Ordering::Greater);
        assert_eq!(o.cmp_l(&m(&[1, 1]), &m(&[1, 1]), 2), Ordering::Equal);
    }

    #[test]
    fn pot_component_dominates() {
        let o = MonomialOrder::degrevlex().with_pot();
        let hi = MMono::op(m(&[0]));
        let lo = MMono::rhs(m(&[7]));
        assert_eq!(o.cmp_mm(&hi, &lo, 1), Ordering::Greater);
    }
}
