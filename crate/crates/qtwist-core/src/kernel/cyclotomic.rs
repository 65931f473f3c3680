//! Elements of the cyclotomic fields `Q(zeta_m)`.
//!
//! A [`CyclotomicNumber`] of order `m` is a residue modulo the m-th cyclotomic
//! polynomial `Phi_m`, stored as a coefficient vector of length `phi(m)` on
//! the power basis `1, zeta, ..., zeta^(phi(m)-1)`. Order 1 is the rationals.
//! Arithmetic between different orders embeds both operands into
//! `Q(zeta_lcm)` first; results that happen to be rational are demoted to
//! order 1 automatically, and [`CyclotomicNumber::demoted`] finds the genuine
//! minimal subfield when needed for canonical output.

use alloc::{vec, vec::Vec};
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Euler's totient.
pub fn euler_phi(m: u32) -> u32 {
    assert!(m >= 1);
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors(m: u32) -> Vec<u32> {
    let mut divs: Vec<u32> = (1..=m).filter(|d| m % d == 0).collect();
    divs.sort_unstable();
    divs
}

/// Coefficients of the m-th cyclotomic polynomial, ascending degree.
///
/// Computed exactly by dividing `x^m - 1` by `Phi_d` for all proper divisors
/// `d` of `m`. Coefficients are integers; they are returned as rationals to
/// match the arithmetic they feed.
pub fn cyclotomic_polynomial(m: u32) -> Vec<Rational> {
    assert!(m >= 1);
    // x^m - 1
    let mut poly = vec![Rational::zero(); m as usize + 1];
    poly[0] = -Rational::one();
    poly[m as usize] = Rational::one();
    for d in divisors(m) {
        if d == m {
            continue;
        }
        let phi_d = cyclotomic_polynomial(d);
        poly = dense_div_exact(&poly, &phi_d);
    }
    poly
}

/// Exact division of dense univariate polynomials (ascending coefficients).
/// Panics if the division is inexact; callers only divide known multiples.
fn dense_div_exact(num: &[Rational], den: &[Rational]) -> Vec<Rational> {
    let dd = den.len() - 1;
    assert!(!den[dd].is_zero());
    let mut rem: Vec<Rational> = num.to_vec();
    let dn = rem.len() - 1;
    assert!(dn >= dd);
    let mut quot = vec![Rational::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &den[dd];
        quot[i - dd] = c.clone();
        for (j, dc) in den.iter().enumerate() {
            let t = &c * dc;
            rem[i - dd + j] -= t;
        }
    }
    assert!(rem.iter().all(Rational::is_zero), "inexact dense division");
    quot
}

fn dense_is_zero(v: &[Rational]) -> bool {
    v.iter().all(Rational::is_zero)
}

fn dense_deg(v: &[Rational]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Reduce `v` modulo the monic polynomial `modulus` in place.
fn dense_rem(v: &mut Vec<Rational>, modulus: &[Rational]) {
    let md = modulus.len() - 1;
    while let Some(d) = dense_deg(v) {
        if d < md {
            break;
        }
        let c = core::mem::replace(&mut v[d], Rational::zero());
        for (j, mc) in modulus.iter().enumerate().take(md) {
            let t = &c * mc;
            v[d - md + j] -= t;
        }
    }
    v.truncate(md);
    v.resize(md, Rational::zero());
}

/// An element of `Q(zeta_order)`, reduced modulo `Phi_order`.
#[derive(Clone)]
pub struct CyclotomicNumber {
    order: u32,
    /// Length `phi(order)`; coefficient of `zeta_order^i` at position `i`.
    coeffs: Vec<Rational>,
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber {
            order: 1,
            coeffs: vec![Rational::zero()],
        }
    }

    pub fn one() -> Self {
        CyclotomicNumber {
            order: 1,
            coeffs: vec![Rational::one()],
        }
    }

    pub fn from_rational(r: Rational) -> Self {
        CyclotomicNumber {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `zeta_m^t`, constructed at its minimal order `m / gcd(m, t)`.
    pub fn root_of_unity(m: u32, t: i64) -> Self {
        assert!(m >= 1);
        let t = t.rem_euclid(m as i64) as u32;
        if t == 0 {
            return Self::one();
        }
        let g = m.gcd(&t);
        let (m, t) = (m / g, t / g);
        let phi = euler_phi(m) as usize;
        let mut coeffs = vec![Rational::zero(); phi.max(t as usize + 1)];
        coeffs[t as usize] = Rational::one();
        let modulus = cyclotomic_polynomial(m);
        dense_rem(&mut coeffs, &modulus);
        CyclotomicNumber { order: m, coeffs }.rational_demoted()
    }

    /// The raw coefficient vector on the power basis of `zeta_order`.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The element as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.coeffs[0].clone())
        } else {
            self.demoted_to(1).map(|c| c.coeffs[0].clone())
        }
    }

    /// Embed into `Q(zeta_target)`; `order` must divide `target`.
    pub fn embedded(&self, target: u32) -> Result<Self> {
        if target == self.order {
            return Ok(self.clone());
        }
        if target % self.order != 0 {
            return Err(Error::Inadmissible(alloc::format!(
                "cannot embed order {} into order {}",
                self.order,
                target
            )));
        }
        let step = (target / self.order) as usize;
        let phi = euler_phi(target) as usize;
        let mut coeffs = vec![Rational::zero(); phi.max((self.coeffs.len() - 1) * step + 1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * step] = c.clone();
        }
        let modulus = cyclotomic_polynomial(target);
        dense_rem(&mut coeffs, &modulus);
        Ok(CyclotomicNumber {
            order: target,
            coeffs,
        })
    }

    /// Change the stored order: embed upward, or rewrite in a subfield.
    /// Fails when the element does not lie in `Q(zeta_target)`.
    pub fn embed(&self, target: u32) -> Result<Self> {
        if target % self.order == 0 {
            self.embedded(target)
        } else {
            self.demoted_to(target)
                .ok_or_else(|| Error::Inadmissible(alloc::format!(
                    "element of Q(zeta_{}) does not lie in Q(zeta_{})",
                    self.order,
                    target
                )))
        }
    }

    /// Demote to order 1 when the vector is visibly rational.
    fn rational_demoted(self) -> Self {
        if self.order > 1 && self.is_rational() {
            CyclotomicNumber {
                order: 1,
                coeffs: vec![self.coeffs[0].clone()],
            }
        } else {
            self
        }
    }

    /// Rewrite in `Q(zeta_d)` if the element lies there (`d` divides order).
    fn demoted_to(&self, d: u32) -> Option<Self> {
        if d == self.order {
            return Some(self.clone());
        }
        if self.order % d != 0 {
            return None;
        }
        // Solve sum_j x_j zeta_m^(j m/d) = self over Q by Gaussian elimination
        // on the phi(m) x phi(d) embedding matrix.
        let phi_m = self.coeffs.len();
        let phi_d = euler_phi(d) as usize;
        let modulus = cyclotomic_polynomial(self.order);
        let step = (self.order / d) as usize;
        let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(phi_d);
        for j in 0..phi_d {
            let mut v = vec![Rational::zero(); phi_m.max(j * step + 1)];
            v[j * step] = Rational::one();
            dense_rem(&mut v, &modulus);
            basis.push(v);
        }
        // Augmented system: columns are basis vectors, target is self.coeffs.
        let mut rows: Vec<Vec<Rational>> = (0..phi_m)
            .map(|i| {
                let mut row: Vec<Rational> = basis.iter().map(|b| b[i].clone()).collect();
                row.push(self.coeffs[i].clone());
                row
            })
            .collect();
        let ncols = phi_d;
        let mut pivot_rows: Vec<usize> = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                return None; // dependent basis cannot happen; bail out safely
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero() {
                    let f = rows[i][c].clone();
                    for j in 0..=ncols {
                        let t = &f * &rows[r][j];
                        rows[i][j] -= t;
                    }
                }
            }
            pivot_rows.push(r);
            r += 1;
        }
        // Consistency: rows below the pivots must have zero right-hand side.
        for row in rows.iter().skip(r) {
            if !row[ncols].is_zero() {
                return None;
            }
        }
        let coeffs: Vec<Rational> = (0..ncols).map(|c| rows[c][ncols].clone()).collect();
        Some(CyclotomicNumber { order: d, coeffs })
    }

    /// Canonical representative: the smallest order `d` with the element in
    /// `Q(zeta_d)`.
    pub fn demoted(&self) -> Self {
        if self.order == 1 {
            return self.clone();
        }
        for d in divisors(self.order) {
            if d == self.order {
                break;
            }
            if let Some(c) = self.demoted_to(d) {
                return c;
            }
        }
        self.clone()
    }

    fn binop(&self, other: &Self, f: impl Fn(&mut Vec<Rational>, &[Rational])) -> Self {
        let m = self.order.lcm(&other.order);
        let a = self.embedded(m).expect("lcm embedding");
        let b = other.embedded(m).expect("lcm embedding");
        let mut coeffs = a.coeffs;
        f(&mut coeffs, &b.coeffs);
        CyclotomicNumber { order: m, coeffs }.rational_demoted()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let m = self.order.lcm(&other.order);
        let a = self.embedded(m).expect("lcm embedding");
        let b = other.embedded(m).expect("lcm embedding");
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                prod[i + j] += ca * cb;
            }
        }
        if m > 1 {
            let modulus = cyclotomic_polynomial(m);
            dense_rem(&mut prod, &modulus);
        } else {
            prod.truncate(1);
        }
        CyclotomicNumber {
            order: m,
            coeffs: prod,
        }
        .rational_demoted()
    }

    /// Multiplicative inverse; `Phi_m` is irreducible so every nonzero
    /// residue is invertible (extended Euclid over `Q[x]`).
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.order == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let modulus = cyclotomic_polynomial(self.order);
        // Extended Euclid: r0 = modulus, r1 = self; track s only for r1 side.
        let mut r0 = modulus.clone();
        let mut r1 = self.coeffs.clone();
        let mut s0 = vec![Rational::zero()];
        let mut s1 = vec![Rational::one()];
        while !dense_is_zero(&r1) {
            let (q, r) = dense_divmod(&r0, &r1);
            let s = dense_sub(&s0, &dense_mul(&q, &s1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
        }
        // r0 = gcd (a nonzero constant since Phi_m is irreducible).
        let d = dense_deg(&r0).expect("gcd of nonzero inputs");
        if d != 0 {
            return Err(Error::Internal(alloc::string::String::from(
                "cyclotomic modulus not coprime to residue",
            )));
        }
        let scale = r0[0].recip();
        let mut inv: Vec<Rational> = s0.iter().map(|c| c * &scale).collect();
        dense_rem(&mut inv, &modulus);
        Ok(CyclotomicNumber {
            order: self.order,
            coeffs: inv,
        }
        .rational_demoted())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative order if the element is a root of unity, else `None`.
    pub fn root_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut acc = self.clone();
        // A root of unity in Q(zeta_m) has order dividing lcm(2, m).
        let bound = self.order.lcm(&2);
        for k in 1..=bound {
            if acc.is_one() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    /// Scale by a rational factor.
    pub fn scaled(&self, r: &Rational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }
}

fn dense_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = dense_deg(den).expect("division by zero polynomial");
    let mut rem = num.to_vec();
    let dn = match dense_deg(&rem) {
        Some(d) if d >= dd => d,
        _ => return (vec![Rational::zero()], rem),
    };
    let mut quot = vec![Rational::zero(); dn - dd + 1];
    for i in (dd..=dn).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let c = &rem[i] / &den[dd];
        quot[i - dd] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[i - dd + j] -= t;
        }
    }
    (quot, rem)
}

fn dense_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    out
}

fn dense_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    out
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        let m = self.order.lcm(&other.order);
        let a = self.embedded(m).expect("lcm embedding");
        let b = other.embedded(m).expect("lcm embedding");
        a.coeffs == b.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl Add for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.binop(rhs, |a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
        })
    }
}

impl Sub for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.binop(rhs, |a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x -= y;
            }
        })
    }
}

impl Mul for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        CyclotomicNumber::mul(self, rhs)
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Prints in the expression grammar of the crate: a rational literal, or
    /// a sum of `c*zeta(m)^i` terms (parenthesized by the polynomial printer
    /// when needed, not here).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.demoted();
        if c.order == 1 {
            return fmt_rational(&c.coeffs[0], f);
        }
        let mut first = true;
        for (i, coef) in c.coeffs.iter().enumerate().rev() {
            if coef.is_zero() {
                continue;
            }
            let mag = coef.abs();
            if first {
                if coef.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if coef.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if i == 0 {
                fmt_rational(&mag, f)?;
            } else {
                if !mag.is_one() {
                    fmt_rational(&mag, f)?;
                    write!(f, "*")?;
                }
                write!(f, "zeta({})", c.order)?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `true` exactly when the number of terms needs parentheses when printed as
/// a coefficient in front of a monomial.
pub(crate) fn needs_parens(c: &CyclotomicNumber) -> bool {
    let c = c.demoted();
    if c.order == 1 {
        return c.coeffs[0].is_negative();
    }
    let nonzero = c.coeffs.iter().filter(|x| !x.is_zero()).count();
    nonzero > 1 || c.coeffs.iter().any(|x| x.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(m: u32) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(m, 1)
    }

    #[test]
    fn cyclotomic_polynomials_small_orders() {
        let as_i64 = |v: Vec<Rational>| -> Vec<i64> {
            v.iter()
                .map(|c| {
                    assert!(c.denom().is_one());
                    i64::try_from(c.numer()).unwrap()
                })
                .collect()
        };
        assert_eq!(as_i64(cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(2)), vec![1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(3)), vec![1, 1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(as_i64(cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta_two_is_minus_one() {
        let z = zeta(2);
        assert_eq!(z.order(), 1);
        assert_eq!(z.to_rational(), Some(Rational::from_integer((-1).into())));
    }

    #[test]
    fn zeta_three_times_square_is_one() {
        let z = zeta(3);
        let z2 = z.pow(2);
        assert!((&z * &z2).is_one());
        assert!(z.pow(3).is_one());
    }

    #[test]
    fn inverse_of_zeta_three() {
        let z = zeta(3);
        let inv = z.inv().unwrap();
        // zeta_3^-1 = zeta_3^2 = -1 - zeta_3
        assert_eq!(inv, z.pow(2));
        let minus_one_minus_z = &(-&CyclotomicNumber::one()) - &z;
        assert_eq!(inv, minus_one_minus_z);
        assert!((&z * &inv).is_one());
    }

    #[test]
    fn mixed_order_arithmetic_embeds() {
        // zeta_4 * zeta_6 = zeta_12^(3+2) = zeta_12^5
        let prod = &zeta(4) * &zeta(6);
        assert_eq!(prod, CyclotomicNumber::root_of_unity(12, 5));
        // zeta_6 = -zeta_3^2
        assert_eq!(zeta(6), -&zeta(3).pow(2));
    }

    #[test]
    fn demote_finds_minimal_order() {
        // zeta_12^3 = zeta_4 (i); constructed minimal already
        let z = CyclotomicNumber::root_of_unity(12, 3);
        assert_eq!(z.order(), 4);
        // zeta_3 + zeta_3^2 = -1
        let s = &zeta(3) + &zeta(3).pow(2);
        assert_eq!(s.to_rational(), Some(Rational::from_integer((-1).into())));
        // (zeta_12)(zeta_12^5) = zeta_12^6 = -1
        let p = &CyclotomicNumber::root_of_unity(12, 1) * &CyclotomicNumber::root_of_unity(12, 5);
        assert_eq!(p.to_rational(), Some(Rational::from_integer((-1).into())));
    }

    #[test]
    fn root_order_detection() {
        assert_eq!(zeta(5).root_order(), Some(5));
        assert_eq!(zeta(2).root_order(), Some(2));
        assert_eq!(CyclotomicNumber::one().root_order(), Some(1));
        assert_eq!(
            CyclotomicNumber::from_integer(2).root_order(),
            None,
        );
        assert_eq!(CyclotomicNumber::root_of_unity(6, 2).root_order(), Some(3));
    }

    #[test]
    fn float_cross_check() {
        // Compare exact arithmetic against complex-float evaluation at
        // zeta_m = exp(2 pi i / m); sanity check only.
        use num_complex::Complex64;
        let to_c = |x: &CyclotomicNumber| -> Complex64 {
            let m = x.order() as f64;
            let z = Complex64::from_polar(1.0, core::f64::consts::TAU / m);
            x.coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let cf = c.numer().to_string().parse::<f64>().unwrap()
                        / c.denom().to_string().parse::<f64>().unwrap();
                    z.powu(i as u32) * cf
                })
                .sum()
        };
        let a = &zeta(5) + &zeta(3).pow(2);
        let b = &zeta(15) - &CyclotomicNumber::from_integer(3);
        let prod = &a * &b;
        let diff = (to_c(&a) * to_c(&b) - to_c(&prod)).norm();
        assert!(diff < 1e-9, "float mismatch: {diff}");
        let inv = a.inv().unwrap();
        let diff2 = (to_c(&a) * to_c(&inv) - Complex64::new(1.0, 0.0)).norm();
        assert!(diff2 < 1e-9, "inverse float mismatch: {diff2}");
    }
}
