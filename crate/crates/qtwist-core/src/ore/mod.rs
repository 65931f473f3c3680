//! The noncommutative Ore algebra `O = K(q, M)<L>`.
//!
//! Generators satisfy the q-commutation rules
//!
//! ```text
//!   L_k M_k = q_{a(k)} M_k L_k,      L_j M_k = M_k L_j  (j != k),
//! ```
//!
//! equivalently `L_k F(M) = F(..., q_{a(k)} M_k, ...) L_k` for any rational
//! function `F`. Operators act on multivariate sequences by
//! `L_k f_n = f_(n + e_k)` and `M_k f_n = q_{a(k)}^(n_k) f_n`.
//!
//! An [`OreOperator`] is kept in normal form: every coefficient is written to
//! the left of its power product in the `L` variables. [`LeftGroebnerBasis`]
//! provides left reduction, the staircase of a zero-dimensional left ideal,
//! and a Buchberger-style completion (the product criterion is not valid
//! here, so no criterion shortcuts are taken).

mod basis;
mod engine;
mod order;

pub use basis::{
    left_buchberger, left_reduce, under_stairs, LeftGroebnerBasis, ModuleElement,
    DEFAULT_BASIS_CAP,
};
pub use order::{MonomialOrder, OrderKind};

pub(crate) use basis::module_basis_with_shift_relation;
pub(crate) use engine::{reduce_full, under_stairs_mm, VOp};
pub(crate) use order::{Comp, MMono};

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::kernel::{poly_gcd, Mono, Polynomial, RationalFunction, VarSet};

/// Shape of an Ore algebra: `s` ground variables `q_j`, and `r` pairs
/// `(M_k, L_k)` where the pair `k` is attached to the ground variable
/// `q_{a(k)}` by the index map `a`.
#[derive(Clone)]
pub struct OreAlgebraSignature {
    inner: Arc<SigInner>,
}

struct SigInner {
    q_names: Vec<String>,
    m_names: Vec<String>,
    l_names: Vec<String>,
    q_index: Vec<usize>,
    /// Coefficient variable context: the q-variables then the M-variables.
    coeff_vars: VarSet,
    /// Context of the q-variables alone (sequence table values live here).
    q_vars: VarSet,
}

impl OreAlgebraSignature {
    /// Build a signature from ground variable names and `(L, M, q)` triples.
    pub fn new<S: AsRef<str>>(q_vars: &[S], pairs: &[(S, S, S)]) -> Result<Self> {
        let s = q_vars.len();
        let r = pairs.len();
        if r < 1 || s < 1 || s > r {
            return Err(Error::BadSignature(alloc::format!(
                "need 1 <= s <= r, got s = {s}, r = {r}"
            )));
        }
        let q_names: Vec<String> = q_vars.iter().map(|x| x.as_ref().to_string()).collect();
        let m_names: Vec<String> = pairs.iter().map(|(_, m, _)| m.as_ref().to_string()).collect();
        let l_names: Vec<String> = pairs.iter().map(|(l, _, _)| l.as_ref().to_string()).collect();
        let mut q_index = Vec::with_capacity(r);
        for (_, _, qn) in pairs {
            let qn = qn.as_ref();
            match q_names.iter().position(|x| x == qn) {
                Some(j) => q_index.push(j),
                None => {
                    return Err(Error::BadSignature(alloc::format!(
                        "shift pair references unknown ground variable {qn:?}"
                    )))
                }
            }
        }
        let mut all: Vec<&String> = q_names.iter().chain(&m_names).chain(&l_names).collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::BadSignature(String::from("names must be distinct")));
        }
        let coeff_names: Vec<&String> = q_names.iter().chain(&m_names).collect();
        let coeff_vars = VarSet::new(&coeff_names)?;
        let q_vars = VarSet::new(&q_names)?;
        if r > crate::kernel::MAX_VARS {
            return Err(Error::TooManyVariables {
                requested: r,
                max: crate::kernel::MAX_VARS,
            });
        }
        Ok(OreAlgebraSignature {
            inner: Arc::new(SigInner {
                q_names,
                m_names,
                l_names,
                q_index,
                coeff_vars,
                q_vars,
            }),
        })
    }

    /// The signature `K(q, M)<L>` of the univariate q-shift case.
    pub fn univariate() -> Self {
        Self::new(&["q"], &[("L", "M", "q")]).expect("static names are valid")
    }

    /// Number of shift pairs.
    pub fn r(&self) -> usize {
        self.inner.m_names.len()
    }

    /// Number of ground variables.
    pub fn s(&self) -> usize {
        self.inner.q_names.len()
    }

    /// Index of the ground variable attached to pair `k`.
    pub fn q_index(&self, k: usize) -> usize {
        self.inner.q_index[k]
    }

    pub fn q_name(&self, j: usize) -> &str {
        &self.inner.q_names[j]
    }

    pub fn m_name(&self, k: usize) -> &str {
        &self.inner.m_names[k]
    }

    pub fn l_name(&self, k: usize) -> &str {
        &self.inner.l_names[k]
    }

    /// Variable context of operator coefficients (q-variables then M-variables).
    pub fn coeff_vars(&self) -> &VarSet {
        &self.inner.coeff_vars
    }

    /// Variable context of sequence values (q-variables only).
    pub fn q_vars(&self) -> &VarSet {
        &self.inner.q_vars
    }

    /// Index of `M_k` within the coefficient context.
    pub fn m_pos(&self, k: usize) -> usize {
        self.s() + k
    }

    /// Index of `q_j` within the coefficient context.
    pub fn q_pos(&self, j: usize) -> usize {
        j
    }

    pub fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.q_names == other.inner.q_names
                && self.inner.m_names == other.inner.m_names
                && self.inner.l_names == other.inner.l_names
                && self.inner.q_index == other.inner.q_index)
    }

    /// Shift a coefficient monomial by `sigma^delta`: commuting `L^delta`
    /// past it replaces `M_k` by `q_{a(k)}^(delta_k) M_k`, i.e. adds
    /// `delta_k * exp(M_k)` to the exponent of `q_{a(k)}`.
    pub(crate) fn sigma_mono(&self, m: Mono, delta: &Mono) -> Mono {
        let mut out = m;
        for k in 0..self.r() {
            let d = delta.exp(k);
            if d == 0 {
                continue;
            }
            let b = m.exp(self.m_pos(k));
            if b == 0 {
                continue;
            }
            let j = self.q_pos(self.q_index(k));
            out = out.with_exp(j, out.exp(j) + d * b);
        }
        out
    }

    pub(crate) fn sigma_poly(&self, p: &Polynomial, delta: &Mono) -> Polynomial {
        if delta.is_one() {
            return p.clone();
        }
        p.map_monomials(|m| self.sigma_mono(m, delta))
    }

    pub(crate) fn sigma_coef(&self, c: &RationalFunction, delta: &Mono) -> RationalFunction {
        if delta.is_one() {
            return c.clone();
        }
        c.map_monomials(|m| self.sigma_mono(m, delta))
    }

    /// Operators `P_k = sum_j c_{k,j} L_k^j` from per-direction coefficient
    /// lists (`c_{k,j}` indexed by ascending `j`). The top coefficient of
    /// each list must be nonzero.
    pub fn from_recurrences(&self, recs: &[Vec<Polynomial>]) -> Result<Vec<OreOperator>> {
        if recs.len() != self.r() {
            return Err(Error::BadSignature(alloc::format!(
                "expected {} coefficient lists, got {}",
                self.r(),
                recs.len()
            )));
        }
        recs.iter()
            .enumerate()
            .map(|(k, coeffs)| {
                match coeffs.last() {
                    None => return Err(Error::ZeroLeadingCoefficient),
                    Some(c) if c.is_zero() => return Err(Error::ZeroLeadingCoefficient),
                    _ => {}
                }
                let terms = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(
                    |(j, c)| {
                        (
                            Mono::var(k, j as u16),
                            RationalFunction::from_poly(c.clone()),
                        )
                    },
                );
                Ok(OreOperator::from_terms(self, terms))
            })
            .collect()
    }
}

impl PartialEq for OreAlgebraSignature {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for OreAlgebraSignature {}

impl fmt::Debug for OreAlgebraSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OreAlgebraSignature(q = {:?}; ", self.inner.q_names)?;
        for k in 0..self.r() {
            write!(
                f,
                "{}:{}@{} ",
                self.l_name(k),
                self.m_name(k),
                self.q_name(self.q_index(k))
            )?;
        }
        write!(f, ")")
    }
}

/// Normal-form element of the Ore algebra: a finite map from L-exponent
/// vectors to nonzero coefficients in `K(q, M)`, coefficients on the left.
#[derive(Clone, PartialEq, Eq)]
pub struct OreOperator {
    sig: OreAlgebraSignature,
    terms: BTreeMap<Mono, RationalFunction>,
}

impl OreOperator {
    pub fn zero(sig: &OreAlgebraSignature) -> Self {
        OreOperator {
            sig: sig.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(sig: &OreAlgebraSignature) -> Self {
        Self::from_coefficient(sig, RationalFunction::one(sig.coeff_vars()))
    }

    pub fn from_coefficient(sig: &OreAlgebraSignature, c: RationalFunction) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::ONE, c);
        }
        OreOperator {
            sig: sig.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(sig: &OreAlgebraSignature, iter: I) -> Self
    where
        I: IntoIterator<Item = (Mono, RationalFunction)>,
    {
        let mut terms = BTreeMap::new();
        for (m, c) in iter {
            if c.is_zero() {
                continue;
            }
            match terms.entry(m) {
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
        OreOperator {
            sig: sig.clone(),
            terms,
        }
    }

    /// The shift generator `L_k^e`.
    pub fn l_pow(sig: &OreAlgebraSignature, k: usize, e: u16) -> Self {
        assert!(k < sig.r());
        Self::from_terms(
            sig,
            [(Mono::var(k, e), RationalFunction::one(sig.coeff_vars()))],
        )
    }

    /// The multiplication generator `M_k^e` (a coefficient).
    pub fn m_pow(sig: &OreAlgebraSignature, k: usize, e: u16) -> Self {
        assert!(k < sig.r());
        Self::from_coefficient(
            sig,
            RationalFunction::from_poly(Polynomial::var_pow(sig.coeff_vars(), sig.m_pos(k), e)),
        )
    }

    /// The central ground variable `q_j^e` (a coefficient).
    pub fn q_pow(sig: &OreAlgebraSignature, j: usize, e: u16) -> Self {
        assert!(j < sig.s());
        Self::from_coefficient(
            sig,
            RationalFunction::from_poly(Polynomial::var_pow(sig.coeff_vars(), sig.q_pos(j), e)),
        )
    }

    pub fn signature(&self) -> &OreAlgebraSignature {
        &self.sig
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, lexp: &Mono) -> Option<&RationalFunction> {
        self.terms.get(lexp)
    }

    /// Maximum exponent of `L_k` over the support.
    pub fn order_in(&self, k: usize) -> u16 {
        self.terms.keys().map(|m| m.exp(k)).max().unwrap_or(0)
    }

    /// Total order for a univariate operator (`r = 1`).
    pub fn order(&self) -> u16 {
        self.order_in(0)
    }

    /// Leading monomial and coefficient with respect to `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<(Mono, &RationalFunction)> {
        let r = self.sig.r();
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| order.cmp_l(a, b, r))
            .map(|(m, c)| (*m, c))
    }

    fn assert_sig(&self, other: &OreOperator) {
        assert!(
            self.sig.same(&other.sig),
            "operator arithmetic across different algebras"
        );
    }

    /// Left multiplication by a coefficient.
    pub fn coef_mul(&self, c: &RationalFunction) -> OreOperator {
        if c.is_zero() {
            return Self::zero(&self.sig);
        }
        OreOperator {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, c * x))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn pow(&self, e: u16) -> OreOperator {
        let mut acc = Self::one(&self.sig);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Clear denominators only: multiply by the least common multiple of the
    /// coefficient denominators, keeping any polynomial content (which a
    /// Newton polygon, for instance, must see).
    pub fn cleared_denominators(&self) -> OreOperator {
        if self.terms.values().all(|c| c.is_polynomial()) {
            return self.clone();
        }
        let vars = self.sig.coeff_vars();
        let mut den_lcm = Polynomial::one(vars);
        for c in self.terms.values() {
            if !c.den().is_one() {
                let g = poly_gcd(&den_lcm, c.den());
                den_lcm = &den_lcm * &c.den().exact_div(&g).expect("gcd divides");
            }
        }
        OreOperator {
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let scale = den_lcm.exact_div(c.den()).expect("common multiple");
                    (*m, RationalFunction::from_poly(&scale * c.num()))
                })
                .collect(),
        }
    }

    /// Clear denominators and strip content: the canonical q-Weyl-algebra
    /// presentation. Coefficients become jointly content-free polynomials
    /// and the leading coefficient (lex on L, then on monomials) gets a
    /// positive leading rational.
    pub fn normalized_cleared(&self) -> OreOperator {
        if self.is_zero() {
            return self.clone();
        }
        let vars = self.sig.coeff_vars();
        let mut den_lcm = Polynomial::one(vars);
        for c in self.terms.values() {
            if !c.den().is_one() {
                let g = poly_gcd(&den_lcm, c.den());
                den_lcm = &den_lcm * &c.den().exact_div(&g).expect("gcd divides");
            }
        }
        let mut polys: BTreeMap<Mono, Polynomial> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let scale = den_lcm.exact_div(c.den()).expect("lcm is a common multiple");
                (*m, &scale * c.num())
            })
            .collect();
        let mut content = Polynomial::zero(vars);
        for p in polys.values() {
            content = poly_gcd(&content, p);
            if content.is_one() {
                break;
            }
        }
        if !content.is_one() && !content.is_zero() {
            for p in polys.values_mut() {
                *p = p.exact_div(&content).expect("content divides");
            }
        }
        // Unit normalization keyed to the lex-leading L-monomial.
        let lead = *polys.keys().next_back().expect("nonzero operator");
        let unit = polys[&lead].primitive_unit();
        OreOperator {
            sig: self.sig.clone(),
            terms: polys
                .into_iter()
                .map(|(m, p)| (m, RationalFunction::from_poly(p.scaled(&unit))))
                .collect(),
        }
    }

    /// Equality up to content and a unit of the coefficient field.
    pub fn equivalent(&self, other: &OreOperator) -> bool {
        self.normalized_cleared() == other.normalized_cleared()
    }

    /// Left division for univariate operators: `self = quot * div + rem`
    /// with `order(rem) < order(div)`. The quotient multiplies from the
    /// left, so its coefficients see the sigma-twisted leading coefficient
    /// of the divisor.
    pub fn left_div_rem(&self, div: &OreOperator) -> Result<(OreOperator, OreOperator)> {
        self.assert_sig(div);
        if self.sig.r() != 1 {
            return Err(Error::BadSignature(alloc::string::String::from(
                "left division is defined for univariate operators",
            )));
        }
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let d = div.order();
        let lc = div
            .coefficient(&Mono::var(0, d))
            .expect("leading coefficient present");
        let mut rem = self.clone();
        let mut quot = OreOperator::zero(&self.sig);
        while !rem.is_zero() {
            let e = rem.order();
            if e < d {
                break;
            }
            let delta = Mono::var(0, e - d);
            let c_rem = rem.coefficient(&Mono::var(0, e)).expect("order exponent");
            let factor = c_rem / &self.sig.sigma_coef(lc, &delta);
            let term = OreOperator::from_terms(&self.sig, [(delta, factor)]);
            quot = &quot + &term;
            rem = &rem - &(&term * div);
        }
        Ok((quot, rem))
    }

    /// Gcd of all exponents of `M_k` across the (cleared) coefficients;
    /// `None` when no positive power of `M_k` occurs ("any period").
    pub fn m_exponent_gcd(&self, k: usize) -> Option<u16> {
        let cleared = self.normalized_cleared();
        let pos = self.sig.m_pos(k);
        let mut g: u16 = 0;
        for c in cleared.terms.values() {
            for (m, _) in c.num().terms() {
                g = num_integer::Integer::gcd(&g, &m.exp(pos));
            }
        }
        (g != 0).then_some(g)
    }
}

impl Add for &OreOperator {
    type Output = OreOperator;
    fn add(self, rhs: &OreOperator) -> OreOperator {
        self.assert_sig(rhs);
        OreOperator::from_terms(
            &self.sig,
            self.terms
                .iter()
                .chain(rhs.terms.iter())
                .map(|(m, c)| (*m, c.clone())),
        )
    }
}

impl Sub for &OreOperator {
    type Output = OreOperator;
    fn sub(self, rhs: &OreOperator) -> OreOperator {
        self + &(-rhs)
    }
}

impl Neg for &OreOperator {
    type Output = OreOperator;
    fn neg(self) -> OreOperator {
        OreOperator {
            sig: self.sig.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &OreOperator {
    type Output = OreOperator;
    /// Normal-form product: commuting `L^alpha` past a coefficient twists it
    /// by `sigma^alpha` before the exponents add.
    fn mul(self, rhs: &OreOperator) -> OreOperator {
        self.assert_sig(rhs);
        let mut terms: Vec<(Mono, RationalFunction)> = Vec::new();
        for (alpha, a) in &self.terms {
            for (beta, b) in &rhs.terms {
                let twisted = self.sig.sigma_coef(b, alpha);
                terms.push((alpha.mul(beta), a * &twisted));
            }
        }
        OreOperator::from_terms(&self.sig, terms)
    }
}

impl fmt::Display for OreOperator {
    /// Prints the cleared, content-free presentation with L-powers in
    /// descending lex order; the output re-parses to the same operator.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let cleared = self.normalized_cleared();
        let mut first = true;
        for (lm, c) in cleared.terms.iter().rev() {
            let lpart = fmt_l_mono(lm, &self.sig);
            let p = c.num();
            if lpart.is_empty() {
                // Constant part: splice the polynomial's own term list.
                let body = alloc::format!("{p}");
                if first {
                    write!(f, "{body}")?;
                } else if let Some(rest) = body.strip_prefix('-') {
                    write!(f, " - {rest}")?;
                } else {
                    write!(f, " + {body}")?;
                }
            } else if p.num_terms() > 1 {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({p})*{lpart}")?;
            } else {
                let body = alloc::format!("{p}");
                let (neg, mag) = match body.strip_prefix('-') {
                    Some(rest) => (true, rest),
                    None => (false, body.as_str()),
                };
                if first {
                    if neg {
                        write!(f, "-")?;
                    }
                } else if neg {
                    write!(f, " - ")?;
                } else {
                    write!(f, " + ")?;
                }
                if mag == "1" {
                    write!(f, "{lpart}")?;
                } else {
                    write!(f, "{mag}*{lpart}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for OreOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn fmt_l_mono(m: &Mono, sig: &OreAlgebraSignature) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for k in 0..sig.r() {
        let e = m.exp(k);
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "{}", sig.l_name(k));
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

#[cfg(test)]
pub(crate) fn coeff_poly(sig: &OreAlgebraSignature, src: &[(i64, &[u16])]) -> Polynomial {
    Polynomial::from_terms(
        sig.coeff_vars(),
        src.iter().map(|(c, exps)| {
            (
                Mono::from_exponents(exps),
                crate::kernel::CyclotomicNumber::from_integer(*c),
            )
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> OreAlgebraSignature {
        OreAlgebraSignature::univariate()
    }

    #[test]
    fn q_commutation() {
        let s = sig();
        let l = OreOperator::l_pow(&s, 0, 1);
        let m = OreOperator::m_pow(&s, 0, 1);
        let q = OreOperator::q_pow(&s, 0, 1);
        // L M = q M L
        assert_eq!(&l * &m, &(&q * &m) * &l);
        // L * 1 = L
        assert_eq!(&l * &OreOperator::one(&s), l);
    }

    #[test]
    fn product_of_l_plus_m_and_l_minus_m() {
        let s = sig();
        let l = OreOperator::l_pow(&s, 0, 1);
        let m = OreOperator::m_pow(&s, 0, 1);
        let prod = &(&l + &m) * &(&l - &m);
        // L^2 + (1 - q) M L - M^2
        let l2 = OreOperator::l_pow(&s, 0, 2);
        let one_minus_q = OreOperator::from_coefficient(
            &s,
            RationalFunction::from_poly(coeff_poly(&s, &[(1, &[0, 0]), (-1, &[1, 0])])),
        );
        let m2 = OreOperator::m_pow(&s, 0, 2);
        let expected = &(&l2 + &(&(&one_minus_q * &m) * &l)) - &m2;
        assert_eq!(prod, expected);
    }

    #[test]
    fn central_q_binomial_operator_from_recurrence() {
        let s = sig();
        // c_1 = qM - 1, c_0 = -(q^2 M^3 + q M^2 - q M - 1)
        let c1 = coeff_poly(&s, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let c0 = coeff_poly(
            &s,
            &[(-1, &[2, 3]), (-1, &[1, 2]), (1, &[1, 1]), (1, &[0, 0])],
        );
        let ops = s.from_recurrences(&[alloc::vec![c0, c1]]).unwrap();
        assert_eq!(ops.len(), 1);
        assert_eq!(ops[0].order(), 1);
        assert_eq!(
            alloc::format!("{}", ops[0]),
            "(q*M - 1)*L - q^2*M^3 - q*M^2 + q*M + 1"
        );
        // zero top coefficient is rejected
        let z = Polynomial::zero(s.coeff_vars());
        assert!(matches!(
            s.from_recurrences(&[alloc::vec![coeff_poly(&s, &[(1, &[0, 0])]), z]]),
            Err(Error::ZeroLeadingCoefficient)
        ));
    }

    #[test]
    fn associativity_on_small_operators() {
        let s = sig();
        let l = OreOperator::l_pow(&s, 0, 1);
        let m = OreOperator::m_pow(&s, 0, 1);
        let q = OreOperator::q_pow(&s, 0, 1);
        let a = &(&l * &l) + &m;
        let b = &(&q * &l) - &OreOperator::one(&s);
        let c = &m * &l;
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multivariate_commutation_is_selective() {
        // L_1 commutes with M_2 but twists M_1.
        let s = OreAlgebraSignature::new(
            &["q"],
            &[("L1", "M1", "q"), ("L2", "M2", "q")],
        )
        .unwrap();
        let l1 = OreOperator::l_pow(&s, 0, 1);
        let m1 = OreOperator::m_pow(&s, 0, 1);
        let m2 = OreOperator::m_pow(&s, 1, 1);
        let q = OreOperator::q_pow(&s, 0, 1);
        assert_eq!(&l1 * &m2, &m2 * &l1);
        assert_eq!(&l1 * &m1, &(&q * &m1) * &l1);
    }

    #[test]
    fn normalized_cleared_strips_content_and_units() {
        let s = sig();
        let a = OreOperator::from_terms(
            &s,
            [
                (
                    Mono::var(0, 1),
                    RationalFunction::from_poly(coeff_poly(&s, &[(2, &[1, 1])])),
                ),
                (
                    Mono::ONE,
                    RationalFunction::from_poly(coeff_poly(&s, &[(-2, &[1, 2])])),
                ),
            ],
        );
        // common content 2 q M divides out
        assert_eq!(alloc::format!("{}", a.normalized_cleared()), "L - M");
        let b = a.coef_mul(&RationalFunction::from_poly(coeff_poly(
            &s,
            &[(-7, &[3, 1])],
        )));
        assert!(a.equivalent(&b));
    }
}
