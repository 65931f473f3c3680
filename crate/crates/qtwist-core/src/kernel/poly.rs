//! Sparse multivariate polynomials with cyclotomic coefficients.
//!
//! Terms are kept sorted in descending lexicographic order of their packed
//! exponent vectors, so the first term is the leading term under the global
//! variable order (q-variables before M-variables before auxiliaries, each in
//! declaration order). No zero coefficients are ever stored.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::needs_parens;
use super::{CyclotomicNumber, Integer, Mono, Rational, VarSet};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: VarSet,
    /// Sorted strictly descending by monomial; coefficients nonzero.
    terms: Vec<(Mono, CyclotomicNumber)>,
}

impl Polynomial {
    pub fn zero(vars: &VarSet) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, CyclotomicNumber::one())
    }

    pub fn constant(vars: &VarSet, c: CyclotomicNumber) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((Mono::ONE, c));
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn rational(vars: &VarSet, r: Rational) -> Self {
        Self::constant(vars, CyclotomicNumber::from_rational(r))
    }

    pub fn integer(vars: &VarSet, n: i64) -> Self {
        Self::constant(vars, CyclotomicNumber::from_integer(n))
    }

    pub fn var(vars: &VarSet, i: usize) -> Self {
        Self::var_pow(vars, i, 1)
    }

    pub fn var_pow(vars: &VarSet, i: usize, e: u16) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        Self::term(vars, Mono::var(i, e), CyclotomicNumber::one())
    }

    pub fn term(vars: &VarSet, mono: Mono, c: CyclotomicNumber) -> Self {
        let mut terms = Vec::new();
        if !c.is_zero() {
            terms.push((mono, c));
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    pub fn from_terms<I>(vars: &VarSet, iter: I) -> Self
    where
        I: IntoIterator<Item = (Mono, CyclotomicNumber)>,
    {
        let mut map: BTreeMap<Mono, CyclotomicNumber> = BTreeMap::new();
        for (m, c) in iter {
            if c.is_zero() {
                continue;
            }
            match map.entry(m) {
                alloc::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                alloc::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        }
        Polynomial {
            vars: vars.clone(),
            terms: map.into_iter().rev().collect(),
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &CyclotomicNumber)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the global (lex, declaration-priority) order.
    pub fn leading(&self) -> Option<(&Mono, &CyclotomicNumber)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn coefficient_of(&self, m: &Mono) -> Option<&CyclotomicNumber> {
        self.terms
            .binary_search_by(|(t, _)| m.cmp(t))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    /// Largest exponent of variable `i` in any term; 0 for the zero polynomial.
    pub fn degree_in(&self, i: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(i)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exp(i) > 0)
    }

    fn assert_ctx(&self, other: &Polynomial) {
        assert!(
            self.vars.same(&other.vars),
            "polynomial arithmetic across different variable contexts"
        );
    }

    fn merge(&self, other: &Polynomial, negate_rhs: bool) -> Polynomial {
        self.assert_ctx(other);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match mb.cmp(ma) {
                core::cmp::Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push((*mb, if negate_rhs { -cb } else { cb.clone() }));
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    let c = if negate_rhs { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(
            other.terms[j..]
                .iter()
                .map(|(m, c)| (*m, if negate_rhs { -c } else { c.clone() })),
        );
        Polynomial {
            vars: self.vars.clone(),
            terms: out,
        }
    }

    pub fn mul_term(&self, mono: &Mono, c: &CyclotomicNumber) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.mul(mono), x * c))
                .filter(|(_, x)| !x.is_zero())
                .collect(),
        }
    }

    pub fn scaled(&self, c: &CyclotomicNumber) -> Polynomial {
        self.mul_term(&Mono::ONE, c)
    }

    pub fn scaled_rational(&self, r: &Rational) -> Polynomial {
        if r.is_zero() {
            return Self::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (*m, x.scaled(r)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u16) -> Polynomial {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact division: returns `q` with `self = q * div`, or an error when
    /// `div` does not divide `self`.
    pub fn exact_div(&self, div: &Polynomial) -> Result<Polynomial> {
        self.assert_ctx(div);
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (dm, dc) = div.leading().expect("nonzero divisor");
        let dc_inv = dc.inv()?;
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, CyclotomicNumber)> = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            if !dm.divides(rm) {
                return Err(Error::InexactDivision);
            }
            let qm = rm.div(dm);
            let qc = rc * &dc_inv;
            quot.push((qm, qc.clone()));
            let sub = div.mul_term(&qm, &qc);
            rem = rem.merge(&sub, true);
        }
        // Leading monomials strictly decrease, so quot is already sorted.
        Ok(Polynomial {
            vars: self.vars.clone(),
            terms: quot,
        })
    }

    /// Apply a monomial map and re-canonicalize (terms may merge).
    pub fn map_monomials(&self, mut f: impl FnMut(Mono) -> Mono) -> Polynomial {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| (f(*m), c.clone())),
        )
    }

    /// Apply a term map into a possibly different variable context.
    pub fn map_terms_into(
        &self,
        vars: &VarSet,
        mut f: impl FnMut(Mono, &CyclotomicNumber) -> (Mono, CyclotomicNumber),
    ) -> Polynomial {
        Self::from_terms(vars, self.terms.iter().map(|(m, c)| f(*m, c)))
    }

    /// Substitute `var -> scale * var^(1/root_index)`: each power `var^e`
    /// becomes `scale^e * var^(e/root_index)`. Every exponent of `var` must
    /// be divisible by `root_index`.
    pub fn substitute_scaled(
        &self,
        var: usize,
        scale: &CyclotomicNumber,
        root_index: u16,
    ) -> Result<Polynomial> {
        assert!(root_index >= 1);
        for (m, _) in &self.terms {
            if m.exp(var) % root_index != 0 {
                return Err(Error::Inadmissible(alloc::format!(
                    "exponent {} of {} is not divisible by {}",
                    m.exp(var),
                    self.vars.name(var),
                    root_index
                )));
            }
        }
        Ok(Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| {
                let e = m.exp(var);
                let scaled = c * &scale.pow(e as u32);
                (m.with_exp(var, e / root_index), scaled)
            }),
        ))
    }

    /// Substitute a constant for variable `i`.
    pub fn substitute_constant(&self, i: usize, val: &CyclotomicNumber) -> Polynomial {
        Self::from_terms(
            &self.vars,
            self.terms.iter().map(|(m, c)| {
                let e = m.exp(i);
                (m.with_exp(i, 0), c * &val.pow(e as u32))
            }),
        )
    }

    /// Positive rational `t` such that `t * self` has integer coordinates
    /// with content 1. Returns 1 for the zero polynomial.
    fn integer_primitive_scale(&self) -> Rational {
        if self.is_zero() {
            return Rational::one();
        }
        let mut den_lcm = Integer::one();
        for (_, c) in &self.terms {
            for r in c.coefficients() {
                if !r.is_zero() {
                    den_lcm = den_lcm.lcm(r.denom());
                }
            }
        }
        let mut num_gcd = Integer::zero();
        for (_, c) in &self.terms {
            for r in c.coefficients() {
                if !r.is_zero() {
                    let scaled = r.numer() * (&den_lcm / r.denom());
                    num_gcd = num_gcd.gcd(&scaled);
                }
            }
        }
        Rational::new(den_lcm, num_gcd)
    }

    /// Scale by a positive rational so that all coordinates are integers of
    /// content 1. Does not touch the leading coefficient's direction.
    pub fn rational_primitive(&self) -> Polynomial {
        let t = self.integer_primitive_scale();
        if t.is_one() {
            self.clone()
        } else {
            self.scaled_rational(&t)
        }
    }

    /// The scalar `u` such that `self * u` equals
    /// [`Polynomial::normalized_primitive`]. Zero for the zero polynomial.
    pub fn primitive_unit(&self) -> CyclotomicNumber {
        match self.leading() {
            None => CyclotomicNumber::zero(),
            Some((_, lc)) => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                let monic = self.scaled(&inv);
                let t = monic.integer_primitive_scale();
                inv.scaled(&t)
            }
        }
    }

    /// Canonical scalar normal form: divide by the leading coefficient, then
    /// scale so all coordinates are integers with content 1. The leading
    /// coefficient of the result is a positive rational.
    pub fn normalized_primitive(&self) -> Polynomial {
        self.scaled(&self.primitive_unit())
    }

    /// Evaluate all variables at rational points (small helper for tests and
    /// cross-checks).
    pub fn eval_rational(&self, point: &[Rational]) -> CyclotomicNumber {
        let mut acc = CyclotomicNumber::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, v) in point.iter().enumerate() {
                let e = m.exp(i);
                if e > 0 {
                    let mut p = Rational::one();
                    for _ in 0..e {
                        p *= v;
                    }
                    term = term.scaled(&p);
                }
            }
            acc = &acc + &term;
        }
        acc
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.merge(rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_ctx(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let (small, big) = if self.terms.len() <= rhs.terms.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut map: BTreeMap<Mono, CyclotomicNumber> = BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                match map.entry(m) {
                    alloc::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    alloc::collections::btree_map::Entry::Occupied(mut e) => {
                        let s = e.get() + &c;
                        if s.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = s;
                        }
                    }
                }
            }
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: map.into_iter().rev().collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    /// Canonical textual form in the expression grammar of the crate:
    /// terms in descending monomial order, explicit `*` and `^`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let mono = fmt_mono(m, &self.vars);
            let c = c.demoted();
            let (sign_neg, body) = coefficient_body(&c, mono.is_empty());
            if i == 0 {
                if sign_neg {
                    write!(f, "-")?;
                }
            } else if sign_neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (body.is_empty(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => write!(f, "{mono}")?,
                (false, true) => write!(f, "{body}")?,
                (false, false) => write!(f, "{body}*{mono}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn fmt_mono(m: &Mono, vars: &VarSet) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::new();
    for i in 0..vars.len() {
        let e = m.exp(i);
        if e == 0 {
            continue;
        }
        if !s.is_empty() {
            s.push('*');
        }
        let _ = write!(s, "{}", vars.name(i));
        if e > 1 {
            let _ = write!(s, "^{e}");
        }
    }
    s
}

/// Split a coefficient into an extracted sign and a printable body.
/// An empty body means the coefficient is (+/-) 1 and can be omitted in
/// front of a monomial.
fn coefficient_body(c: &CyclotomicNumber, standalone: bool) -> (bool, alloc::string::String) {
    if let Some(r) = c.to_rational() {
        let neg = r.is_negative();
        let mag = r.abs();
        if mag.is_one() && !standalone {
            return (neg, alloc::string::String::new());
        }
        let body = if mag.denom().is_one() {
            alloc::format!("{}", mag.numer())
        } else {
            alloc::format!("{}/{}", mag.numer(), mag.denom())
        };
        return (neg, body);
    }
    if needs_parens(c) {
        (false, alloc::format!("({c})"))
    } else {
        (false, alloc::format!("{c}"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm() -> VarSet {
        VarSet::new(&["q", "M"]).unwrap()
    }

    fn parse_simple(vars: &VarSet, src: &[(i64, &[u16])]) -> Polynomial {
        Polynomial::from_terms(
            vars,
            src.iter().map(|(c, exps)| {
                (
                    Mono::from_exponents(exps),
                    CyclotomicNumber::from_integer(*c),
                )
            }),
        )
    }

    #[test]
    fn product_of_conjugates() {
        let v = qm();
        let q = Polynomial::var(&v, 0);
        let one = Polynomial::one(&v);
        let a = &q - &one; // q - 1
        let b = &q + &one; // q + 1
        let prod = &a * &b;
        let expected = parse_simple(&v, &[(1, &[2, 0]), (-1, &[0, 0])]);
        assert_eq!(prod, expected);
    }

    #[test]
    fn exact_division_roundtrip() {
        let v = qm();
        let q = Polynomial::var(&v, 0);
        let one = Polynomial::one(&v);
        let q2m1 = parse_simple(&v, &[(1, &[2, 0]), (-1, &[0, 0])]);
        let quot = q2m1.exact_div(&(&q - &one)).unwrap();
        assert_eq!(quot, &q + &one);
        // inexact division reports an error
        assert!(matches!(
            q2m1.exact_div(&(&q - &Polynomial::integer(&v, 2))),
            Err(Error::InexactDivision)
        ));
    }

    #[test]
    fn cancellation_to_zero() {
        let v = qm();
        let qm_minus_1 = parse_simple(&v, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let back = parse_simple(&v, &[(-1, &[1, 1]), (1, &[0, 0])]);
        assert!((&qm_minus_1 + &back).is_zero());
    }

    #[test]
    fn substitute_scaled_powers() {
        let v = qm();
        let minus_one = CyclotomicNumber::from_integer(-1);
        let q2 = Polynomial::var_pow(&v, 0, 2);
        let q3 = Polynomial::var_pow(&v, 0, 3);
        // even power invariant under sign flip
        assert_eq!(q2.substitute_scaled(0, &minus_one, 1).unwrap(), q2);
        // odd power picks up the sign
        assert_eq!(q3.substitute_scaled(0, &minus_one, 1).unwrap(), -&q3);
        // q^8 M^2 -> q^4 M^2 -> q^4 M under root index 2 in each variable
        let p = parse_simple(&v, &[(1, &[8, 2])]);
        let one = CyclotomicNumber::one();
        let step1 = p.substitute_scaled(0, &one, 2).unwrap();
        let step2 = step1.substitute_scaled(1, &one, 2).unwrap();
        assert_eq!(step2, parse_simple(&v, &[(1, &[4, 1])]));
        // indivisible exponent is an admissibility error
        assert!(q3.substitute_scaled(0, &one, 2).is_err());
    }

    #[test]
    fn normalized_primitive_is_idempotent_and_positive() {
        let v = qm();
        let p = parse_simple(&v, &[(-4, &[2, 0]), (6, &[1, 1]), (-2, &[0, 0])]);
        let n = p.normalized_primitive();
        let expected = parse_simple(&v, &[(2, &[2, 0]), (-3, &[1, 1]), (1, &[0, 0])]);
        assert_eq!(n, expected);
        assert_eq!(n.normalized_primitive(), n);
    }

    #[test]
    fn display_canonical() {
        let v = qm();
        let p = parse_simple(
            &v,
            &[(1, &[1, 1]), (-1, &[0, 0])],
        );
        assert_eq!(alloc::format!("{p}"), "q*M - 1");
        let p2 = parse_simple(&v, &[(-1, &[2, 3]), (5, &[0, 1]), (7, &[0, 0])]);
        assert_eq!(alloc::format!("{p2}"), "-q^2*M^3 + 5*M + 7");
        let z3 = CyclotomicNumber::root_of_unity(3, 1);
        let p3 = Polynomial::term(&v, Mono::from_exponents(&[1, 0]), z3.clone());
        assert_eq!(alloc::format!("{p3}"), "zeta(3)*q");
        let c = &CyclotomicNumber::one() + &z3;
        let p4 = Polynomial::term(&v, Mono::from_exponents(&[0, 2]), c);
        assert_eq!(alloc::format!("{p4}"), "(zeta(3) + 1)*M^2");
    }
}
