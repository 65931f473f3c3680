//! Normalized rational functions over the cyclotomic coefficient field.

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::{poly_gcd, CyclotomicNumber, Polynomial, Rational, VarSet};
use crate::error::{Error, Result};

/// A fraction of polynomials. After [`RationalFunction::new`] the pair is
/// coprime and the denominator carries integer-primitive coordinates with a
/// positive leading rational coefficient; the raw constructor used by the
/// sequence oracle skips that normalization and is documented there.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    /// Normalized fraction `num / den`. Errors when `den` is zero.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RationalFunction {
                den: Polynomial::one(num.vars()),
                num,
            };
        }
        let (mut num, mut den) = (num, den);
        if !den.is_one() {
            let g = poly_gcd(&num, &den);
            if !g.is_one() {
                num = num.exact_div(&g).expect("gcd divides");
                den = den.exact_div(&g).expect("gcd divides");
            }
        }
        let unit = den.primitive_unit();
        if !unit.is_one() {
            num = num.scaled(&unit);
            den = den.scaled(&unit);
        }
        RationalFunction { num, den }
    }

    /// Unnormalized fraction; the caller guarantees `den != 0`. Used where
    /// gcd normalization would dominate the runtime (sequence tables).
    pub fn raw(num: Polynomial, den: Polynomial) -> Self {
        debug_assert!(!den.is_zero());
        RationalFunction { num, den }
    }

    pub fn from_poly(num: Polynomial) -> Self {
        RationalFunction {
            den: Polynomial::one(num.vars()),
            num,
        }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Self::from_poly(Polynomial::zero(vars))
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::from_poly(Polynomial::one(vars))
    }

    pub fn constant(vars: &VarSet, c: CyclotomicNumber) -> Self {
        Self::from_poly(Polynomial::constant(vars, c))
    }

    pub fn rational(vars: &VarSet, r: Rational) -> Self {
        Self::from_poly(Polynomial::rational(vars, r))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn vars(&self) -> &VarSet {
        self.num.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Re-run normalization (after raw construction).
    pub fn normalize(&self) -> Self {
        Self::normalized(self.num.clone(), self.den.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalized(self.den.clone(), self.num.clone()))
    }

    /// Apply a monomial map to numerator and denominator and re-normalize
    /// the scalar unit (a bijective exponent map preserves coprimality).
    pub fn map_monomials(&self, mut f: impl FnMut(super::Mono) -> super::Mono) -> Self {
        let num = self.num.map_monomials(&mut f);
        let den = self.den.map_monomials(&mut f);
        let unit = den.primitive_unit();
        if unit.is_one() {
            RationalFunction { num, den }
        } else {
            RationalFunction {
                num: num.scaled(&unit),
                den: den.scaled(&unit),
            }
        }
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::normalized(&self.num - &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        RationalFunction::normalized(num, &self.den * &rhs.den)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(self.vars());
        }
        // Cross-cancel before multiplying to keep the products small.
        let g1 = poly_gcd(&self.num, &rhs.den);
        let g2 = poly_gcd(&rhs.num, &self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let b = rhs.num.exact_div(&g2).expect("gcd divides");
        let c = self.den.exact_div(&g2).expect("gcd divides");
        RationalFunction::normalized(&a * &b, &c * &d)
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        assert!(!rhs.is_zero(), "division by the zero rational function");
        self * &RationalFunction {
            num: rhs.den.clone(),
            den: rhs.num.clone(),
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Mono;

    fn qm() -> VarSet {
        VarSet::new(&["q", "M"]).unwrap()
    }

    fn p(vars: &VarSet, src: &[(i64, &[u16])]) -> Polynomial {
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
    fn normalization_cancels_and_fixes_sign() {
        let v = qm();
        // (q^2 - 1) / (-2q + 2) = -(q + 1)/2
        let num = p(&v, &[(1, &[2, 0]), (-1, &[0, 0])]);
        let den = p(&v, &[(-2, &[1, 0]), (2, &[0, 0])]);
        let r = RationalFunction::new(num, den).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(
            r.num(),
            &p(&v, &[(-1, &[1, 0]), (-1, &[0, 0])]).scaled_rational(&Rational::new(
                1.into(),
                2.into()
            ))
        );
    }

    #[test]
    fn normalize_is_idempotent_and_inverse_cancels() {
        let v = qm();
        let a = RationalFunction::new(
            p(&v, &[(3, &[1, 2]), (1, &[0, 0])]),
            p(&v, &[(2, &[2, 0]), (-5, &[0, 1])]),
        )
        .unwrap();
        assert_eq!(a.normalize(), a);
        let prod = &a * &a.inv().unwrap();
        assert!(prod.is_one());
    }

    #[test]
    fn zero_denominator_rejected() {
        let v = qm();
        assert!(matches!(
            RationalFunction::new(Polynomial::one(&v), Polynomial::zero(&v)),
            Err(Error::DivisionByZero)
        ));
    }
}
