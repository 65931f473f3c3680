//! Multivariate polynomial gcd.
//!
//! Content/primitive-part recursion down to a pseudo-remainder sequence in
//! one main variable, with rational-content stripping between steps to keep
//! intermediate coefficients small. Correctness over speed; the instances in
//! this crate are small to medium.

use alloc::vec::Vec;

use super::{Mono, Polynomial};

/// Greatest common divisor, canonically normalized: primitive integer
/// coordinates with a positive leading rational coefficient.
/// `poly_gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    gcd_inner(a, b).normalized_primitive()
}

fn gcd_inner(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.vars());
    }
    // Monomial fast path: exponent-wise minimum.
    if a.is_monomial() && b.is_monomial() {
        let (ma, _) = a.leading().unwrap();
        let (mb, _) = b.leading().unwrap();
        return Polynomial::term(
            a.vars(),
            ma.gcd(mb),
            super::CyclotomicNumber::one(),
        );
    }
    // Univariate with rational coefficients: modular images with Chinese
    // remaindering, certified by trial division.
    {
        let nvars = a.vars().len();
        let mut act = (0..nvars).filter(|&v| a.uses_var(v) || b.uses_var(v));
        if let (Some(v), None) = (act.next(), act.next()) {
            if let Some(g) = univariate_gcd_modular(a, b, v) {
                return g;
            }
        }
    }

    let nvars = a.vars().len();
    let main = (0..nvars)
        .rev()
        .find(|&v| a.uses_var(v) || b.uses_var(v))
        .expect("non-constant polynomials use a variable");

    let cont_a = content_wrt(a, main);
    let cont_b = content_wrt(b, main);
    let pp_a = a.exact_div(&cont_a).expect("content divides");
    let pp_b = b.exact_div(&cont_b).expect("content divides");
    let cont_gcd = gcd_inner(&cont_a, &cont_b);

    // Certified coprimality shortcut: specialize all variables but `main`
    // at a point keeping the leading main-coefficient nonzero. A degree-zero
    // specialized gcd proves the primitive parts coprime.
    if certified_coprime(&pp_a, &pp_b, main) {
        return cont_gcd;
    }

    // Bivariate evaluation/interpolation gcd; certified by trial division,
    // so the pseudo-remainder sequence below stays as the fallback.
    let active: Vec<usize> = (0..nvars)
        .filter(|&v| pp_a.uses_var(v) || pp_b.uses_var(v))
        .collect();
    if active.len() == 2 {
        let w = if active[0] == main { active[1] } else { active[0] };
        if let Some(g) = brown_bivariate(&pp_a, &pp_b, main, w) {
            return &cont_gcd * &g;
        }
    }

    // Primitive pseudo-remainder sequence in the main variable: dividing
    // every remainder by its full content keeps coefficient growth linear
    // instead of exponential across steps.
    let (mut f, mut g) = if pp_a.degree_in(main) >= pp_b.degree_in(main) {
        (pp_a, pp_b)
    } else {
        (pp_b, pp_a)
    };
    loop {
        let r = pseudo_rem(&f, &g, main);
        if r.is_zero() {
            let g_primitive = g
                .exact_div(&content_wrt(&g, main))
                .expect("content divides");
            return &cont_gcd * &g_primitive;
        }
        if r.degree_in(main) == 0 {
            // Primitive parts are coprime in the main variable.
            return cont_gcd;
        }
        f = g;
        g = r
            .exact_div(&content_wrt(&r, main))
            .expect("content divides");
    }
}

/// Evaluate every variable except `v` at the given integer point, producing
/// a univariate polynomial in `v` (coefficients may be cyclotomic).
fn specialize_except(p: &Polynomial, v: usize, point: &[i64]) -> Vec<super::CyclotomicNumber> {
    let mut coeffs =
        alloc::vec![super::CyclotomicNumber::zero(); p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let mut val = c.clone();
        for (i, &x) in point.iter().enumerate() {
            if i == v {
                continue;
            }
            let e = m.exp(i);
            if e > 0 {
                let mut pw = super::Rational::from_integer(1.into());
                for _ in 0..e {
                    pw *= super::Rational::from_integer(x.into());
                }
                val = val.scaled(&pw);
            }
        }
        let slot = &mut coeffs[m.exp(v) as usize];
        *slot = &*slot + &val;
    }
    coeffs
}

/// Sound coprimality certificate for polynomials primitive in `v`: if the
/// leading `v`-coefficient of `a` survives a specialization of the other
/// variables and the specialized univariate gcd has degree zero, then
/// `gcd(a, b)` is a unit. (The leading-coefficient condition pins the
/// `v`-degree of any common divisor under the specialization, and working
/// modulo a prime only ever inflates the gcd degree further, so a modular
/// degree of zero is still a proof.)
fn certified_coprime(a: &Polynomial, b: &Polynomial, v: usize) -> bool {
    let nvars = a.vars().len();
    if a.degree_in(v) == 0 || b.degree_in(v) == 0 {
        return false;
    }
    for trial in 0..3i64 {
        let point: Vec<i64> = (0..nvars)
            .map(|i| 2 + trial + (i as i64 % 3))
            .collect();
        // Fast path: all-rational coefficients checked modulo a prime.
        if let (Some(ua), Some(ub)) = (
            specialize_mod_p(a, v, &point),
            specialize_mod_p(b, v, &point),
        ) {
            if ua.last().map(|&c| c == 0).unwrap_or(true) {
                continue;
            }
            return gcd_degree_mod_p(ua, ub) == Some(0);
        }
        // Cyclotomic coefficients: exact univariate Euclid.
        let ua = specialize_except(a, v, &point);
        if ua.last().map(|c| c.is_zero()).unwrap_or(true) {
            continue;
        }
        let ub = specialize_except(b, v, &point);
        return univariate_gcd_degree(&ua, &ub) == Some(0);
    }
    false
}

/// 61-bit Mersenne prime used for the modular certificate.
const CERT_PRIME: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % CERT_PRIME as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    base %= CERT_PRIME;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> Option<u64> {
    if a % CERT_PRIME == 0 {
        return None;
    }
    Some(pow_mod(a, CERT_PRIME - 2))
}

fn bigint_mod_p(x: &super::Integer) -> u64 {
    use num_traits::Signed;
    let p = super::Integer::from(CERT_PRIME);
    let r = x % &p;
    let r = if r.is_negative() { r + &p } else { r };
    u64::try_from(&r).expect("residue fits")
}

/// Specialize all variables but `v` at an integer point modulo the
/// certificate prime. `None` when a coefficient is not rational or a
/// denominator vanishes modulo the prime.
fn specialize_mod_p(p: &Polynomial, v: usize, point: &[i64]) -> Option<Vec<u64>> {
    let mut coeffs = alloc::vec![0u64; p.degree_in(v) as usize + 1];
    for (m, c) in p.terms() {
        let r = c.to_rational()?;
        let den = inv_mod(bigint_mod_p(r.denom()))?;
        let mut val = mul_mod(bigint_mod_p(r.numer()), den);
        for (i, &x) in point.iter().enumerate() {
            if i == v {
                continue;
            }
            let e = m.exp(i);
            if e > 0 {
                val = mul_mod(val, pow_mod(x as u64, e as u64));
            }
        }
        let slot = &mut coeffs[m.exp(v) as usize];
        *slot = (*slot + val) % CERT_PRIME;
    }
    Some(coeffs)
}

/// Degree of the gcd of two univariate polynomials over the certificate
/// prime field; `None` when an input is identically zero.
fn gcd_degree_mod_p(mut r0: Vec<u64>, mut r1: Vec<u64>) -> Option<usize> {
    let deg = |v: &[u64]| v.iter().rposition(|&c| c != 0);
    let (mut d0, mut d1) = (deg(&r0)?, deg(&r1)?);
    if d0 < d1 {
        core::mem::swap(&mut r0, &mut r1);
        core::mem::swap(&mut d0, &mut d1);
    }
    loop {
        let lc_inv = inv_mod(r1[d1]).expect("nonzero lead");
        for i in (d1..=d0).rev() {
            if r0[i] == 0 {
                continue;
            }
            let c = mul_mod(r0[i], lc_inv);
            r0[i] = 0;
            for j in 0..d1 {
                let t = mul_mod(c, r1[j]);
                r0[i - d1 + j] = (r0[i - d1 + j] + CERT_PRIME - t) % CERT_PRIME;
            }
        }
        match deg(&r0) {
            None => return Some(d1),
            Some(d) => {
                core::mem::swap(&mut r0, &mut r1);
                d0 = d1;
                d1 = d;
            }
        }
    }
}

/// Degree of the gcd of two dense univariate polynomials over the
/// cyclotomic field; `None` for a zero input.
fn univariate_gcd_degree(
    a: &[super::CyclotomicNumber],
    b: &[super::CyclotomicNumber],
) -> Option<usize> {
    let deg = |v: &[super::CyclotomicNumber]| v.iter().rposition(|c| !c.is_zero());
    let mut r0: Vec<super::CyclotomicNumber> = a.to_vec();
    let mut r1: Vec<super::CyclotomicNumber> = b.to_vec();
    let (mut d0, mut d1) = (deg(&r0)?, deg(&r1)?);
    if d0 < d1 {
        core::mem::swap(&mut r0, &mut r1);
        core::mem::swap(&mut d0, &mut d1);
    }
    loop {
        // r0 <- r0 mod r1 (monic remainder), then rotate.
        let lc_inv = r1[d1].inv().expect("nonzero leading coefficient");
        for i in (d1..=d0).rev() {
            if r0[i].is_zero() {
                continue;
            }
            let c = &r0[i] * &lc_inv;
            r0[i] = super::CyclotomicNumber::zero();
            for j in 0..d1 {
                let t = &c * &r1[j];
                r0[i - d1 + j] = &r0[i - d1 + j] - &t;
            }
        }
        match deg(&r0) {
            None => return Some(d1),
            Some(d) => {
                core::mem::swap(&mut r0, &mut r1);
                d0 = d1;
                d1 = d;
            }
        }
    }
}

/// Deterministic Miller-Rabin for u64 (the listed witnesses are exact for
/// all 64-bit inputs).
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powm = |mut base: u64, mut e: u64| {
        let mut acc = 1u64;
        base %= n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulm(acc, base);
            }
            base = mulm(base, base);
            e >>= 1;
        }
        acc
    };
    'witness: for w in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powm(w, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Gcd of univariate polynomials with rational coefficients via modular
/// images and Chinese remaindering; the reconstructed candidate is certified
/// by exact trial division. `None` when a coefficient is not rational (the
/// cyclotomic fallback handles those) or the prime budget runs out.
fn univariate_gcd_modular(a: &Polynomial, b: &Polynomial, v: usize) -> Option<Polynomial> {
    use num_traits::{One, Signed, Zero};
    let a = a.rational_primitive();
    let b = b.rational_primitive();
    let to_int_vec = |p: &Polynomial| -> Option<Vec<super::Integer>> {
        let mut out = alloc::vec![super::Integer::zero(); p.degree_in(v) as usize + 1];
        for (m, c) in p.terms() {
            let r = c.to_rational()?;
            if !r.denom().is_one() {
                return None; // primitive form should be integral
            }
            out[m.exp(v) as usize] = r.numer().clone();
        }
        Some(out)
    };
    let ia = to_int_vec(&a)?;
    let ib = to_int_vec(&b)?;
    let lc_gcd = num_integer::Integer::gcd(ia.last()?, ib.last()?);

    let mod_image = |poly: &[super::Integer], p: u64| -> Vec<u64> {
        let pb = super::Integer::from(p);
        poly.iter()
            .map(|x| {
                let r = x % &pb;
                let r = if r.is_negative() { r + &pb } else { r };
                u64::try_from(&r).expect("residue fits")
            })
            .collect()
    };

    let mut prime = (1u64 << 62) - 57;
    let mut best_deg: Option<usize> = None;
    let mut crt: Vec<super::Integer> = Vec::new();
    let mut modulus = super::Integer::one();
    let mut stable = false;
    for _ in 0..96 {
        prime += 1;
        while !is_prime_u64(prime) {
            prime += 1;
        }
        let pa = mod_image(&ia, prime);
        let pb = mod_image(&ib, prime);
        if *pa.last().unwrap() == 0 || *pb.last().unwrap() == 0 {
            continue; // prime divides a leading coefficient
        }
        let g = gcd_mod_p(pa, pb, prime)?;
        let dg = g.len() - 1;
        if dg == 0 {
            return Some(Polynomial::one(a.vars()));
        }
        match best_deg {
            Some(d) if dg > d => continue,
            Some(d) if dg < d => {
                crt.clear();
                modulus = super::Integer::one();
                best_deg = Some(dg);
            }
            None => best_deg = Some(dg),
            _ => {}
        }
        // Normalize the image so its leading coefficient is lc_gcd mod p.
        let lc_target = {
            let pb2 = super::Integer::from(prime);
            let r = &lc_gcd % &pb2;
            let r = if r.is_negative() { r + &pb2 } else { r };
            u64::try_from(&r).expect("residue fits")
        };
        let inv = inv_mod_p(*g.last().unwrap(), prime)?;
        let scale = ((lc_target as u128 * inv as u128) % prime as u128) as u64;
        let g: Vec<u64> = g
            .iter()
            .map(|&c| ((c as u128 * scale as u128) % prime as u128) as u64)
            .collect();
        // Symmetric CRT merge.
        let pb2 = super::Integer::from(prime);
        if crt.is_empty() {
            crt = g
                .iter()
                .map(|&c| {
                    let x = super::Integer::from(c);
                    if &x * 2 > pb2.clone() {
                        x - &pb2
                    } else {
                        x
                    }
                })
                .collect();
            modulus = pb2;
            stable = false;
        } else {
            let mut changed = false;
            let minv = inv_mod_p(
                {
                    let r = &modulus % &pb2;
                    let r = if r.is_negative() { r + &pb2 } else { r };
                    u64::try_from(&r).expect("fits")
                },
                prime,
            )?;
            let new_modulus = &modulus * &pb2;
            for (x, &gp) in crt.iter_mut().zip(&g) {
                // x' = x + modulus * ((gp - x) * minv mod p)
                let xr = {
                    let r = &*x % &pb2;
                    let r = if r.is_negative() { r + &pb2 } else { r };
                    u64::try_from(&r).expect("fits")
                };
                let diff = (gp + prime - xr) % prime;
                let t = ((diff as u128 * minv as u128) % prime as u128) as u64;
                if t != 0 {
                    changed = true;
                    *x += &modulus * super::Integer::from(t);
                }
                // symmetric representative
                if (&*x) * 2 > new_modulus.clone() {
                    *x -= &new_modulus;
                } else if (&*x) * 2 < -new_modulus.clone() {
                    *x += &new_modulus;
                }
            }
            modulus = new_modulus;
            if !changed && stable {
                // Two stable rounds: try to certify.
                let cand = Polynomial::from_terms(
                    a.vars(),
                    crt.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(
                        |(e, c)| {
                            (
                                Mono::var(v, e as u16),
                                super::CyclotomicNumber::from_rational(
                                    super::Rational::from_integer(c.clone()),
                                ),
                            )
                        },
                    ),
                )
                .rational_primitive();
                if !cand.is_zero()
                    && a.exact_div(&cand).is_ok()
                    && b.exact_div(&cand).is_ok()
                {
                    return Some(cand.normalized_primitive());
                }
                stable = false;
            } else {
                stable = !changed;
            }
        }
    }
    None
}

fn inv_mod_p(a: u64, p: u64) -> Option<u64> {
    if a % p == 0 {
        return None;
    }
    // Fermat.
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, base);
        }
        base = mulm(base, base);
        e >>= 1;
    }
    Some(acc)
}

/// Monic gcd of dense univariate polynomials over `Z/p`; coefficients
/// ascending, no trailing zeros in the result.
fn gcd_mod_p(mut r0: Vec<u64>, mut r1: Vec<u64>, p: u64) -> Option<Vec<u64>> {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut r0);
    trim(&mut r1);
    if r0.is_empty() || r1.is_empty() {
        return None;
    }
    let mulm = |x: u64, y: u64| ((x as u128 * y as u128) % p as u128) as u64;
    if r0.len() < r1.len() {
        core::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let d1 = r1.len() - 1;
        let inv = inv_mod_p(r1[d1], p)?;
        for i in (d1..r0.len()).rev() {
            if r0[i] == 0 {
                continue;
            }
            let c = mulm(r0[i], inv);
            r0[i] = 0;
            for j in 0..d1 {
                let t = mulm(c, r1[j]);
                r0[i - d1 + j] = (r0[i - d1 + j] + p - t) % p;
            }
        }
        trim(&mut r0);
        if r0.is_empty() {
            // monic normalization
            let inv = inv_mod_p(*r1.last().unwrap(), p)?;
            return Some(r1.iter().map(|&c| mulm(c, inv)).collect());
        }
        core::mem::swap(&mut r0, &mut r1);
    }
}

/// Dense-interpolation gcd for primitive bivariate polynomials: evaluate
/// `w`, take univariate gcds in `main`, rescale every image so its leading
/// coefficient matches `gamma = gcd(lc(a), lc(b))` at the point, interpolate
/// in `w`, and certify the primitive part by trial division. `None` when the
/// points run out or the division fails (the caller then falls back to the
/// pseudo-remainder sequence).
fn brown_bivariate(
    a: &Polynomial,
    b: &Polynomial,
    main: usize,
    w: usize,
) -> Option<Polynomial> {
    let lc_a = leading_coeff_v(a, main);
    let lc_b = leading_coeff_v(b, main);
    let gamma = gcd_inner(&lc_a, &lc_b).normalized_primitive();
    let dw_points =
        (a.degree_in(w).min(b.degree_in(w)) + gamma.degree_in(w) + 1) as usize;

    let mut points: Vec<i64> = Vec::new();
    let mut images: Vec<Polynomial> = Vec::new();
    let mut best_deg: Option<u16> = None;
    let mut t: i64 = 0;
    let mut tried = 0usize;
    while images.len() < dw_points {
        // Point sequence 0, 1, -1, 2, -2, ...
        t = if t > 0 { -t } else { -t + 1 };
        tried += 1;
        if tried > 4 * dw_points + 16 {
            return None;
        }
        let tval = super::CyclotomicNumber::from_integer(t);
        if lc_a.substitute_constant(w, &tval).is_zero()
            || lc_b.substitute_constant(w, &tval).is_zero()
        {
            continue;
        }
        let ia = a.substitute_constant(w, &tval);
        let ib = b.substitute_constant(w, &tval);
        let mut g = gcd_inner(&ia, &ib).normalized_primitive();
        let dg = g.degree_in(main);
        if dg == 0 {
            // Coprime at a good point: the primitive parts are coprime.
            return Some(Polynomial::one(a.vars()));
        }
        match best_deg {
            Some(d) if dg > d => continue, // unlucky point
            Some(d) if dg < d => {
                // Everything collected so far was unlucky.
                points.clear();
                images.clear();
                best_deg = Some(dg);
            }
            None => best_deg = Some(dg),
            _ => {}
        }
        // Scale the image so lc_main(image) = gamma(t).
        let target = gamma.substitute_constant(w, &tval);
        let target = target
            .leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(super::CyclotomicNumber::zero);
        if target.is_zero() {
            continue;
        }
        let lc_g = {
            let d = g.degree_in(main);
            let lcp = Polynomial::from_terms(
                g.vars(),
                g.terms()
                    .filter(|(m, _)| m.exp(main) == d)
                    .map(|(m, c)| (m.with_exp(main, 0), c.clone())),
            );
            lcp.leading().map(|(_, c)| c.clone()).expect("nonzero")
        };
        let scale = &target * &lc_g.inv().ok()?;
        g = g.scaled(&scale);
        points.push(t);
        images.push(g);
    }

    // Newton divided differences with polynomial values.
    let mut coeffs: Vec<Polynomial> = Vec::with_capacity(images.len());
    for (j, img) in images.iter().enumerate() {
        let mut acc = img.clone();
        for (i, c) in coeffs.iter().enumerate() {
            let dt = super::Rational::from_integer((points[j] - points[i]).into());
            acc = (&acc - c).scaled_rational(&dt.recip());
        }
        coeffs.push(acc);
    }
    let vars = a.vars();
    let mut cand = Polynomial::zero(vars);
    let mut basis = Polynomial::one(vars);
    for (j, c) in coeffs.iter().enumerate() {
        cand = &cand + &(c * &basis);
        if j + 1 < coeffs.len() {
            let lin = &Polynomial::var(vars, w) - &Polynomial::integer(vars, points[j]);
            basis = &basis * &lin;
        }
    }
    if cand.is_zero() {
        return None;
    }
    let cand = cand
        .exact_div(&content_wrt(&cand, main))
        .ok()?
        .normalized_primitive();
    if cand.is_constant() && !cand.is_zero() {
        return Some(Polynomial::one(vars));
    }
    let one_check = |x: &Polynomial| x.exact_div(&cand).is_ok();
    if one_check(a) && one_check(b) {
        Some(cand)
    } else {
        None
    }
}

/// Content of `p` with respect to variable `v`: the gcd of the coefficient
/// polynomials of the powers of `v`.
fn content_wrt(p: &Polynomial, v: usize) -> Polynomial {
    let mut acc = Polynomial::zero(p.vars());
    for c in v_coefficients(p, v) {
        acc = gcd_inner(&acc, &c);
        if acc.is_one() {
            break;
        }
    }
    acc.normalized_primitive()
}

/// The nonzero coefficient polynomials of `p` seen as univariate in `v`
/// (each with the `v`-exponent zeroed out).
fn v_coefficients(p: &Polynomial, v: usize) -> Vec<Polynomial> {
    let mut by_exp: alloc::collections::BTreeMap<u16, Vec<(Mono, super::CyclotomicNumber)>> =
        alloc::collections::BTreeMap::new();
    for (m, c) in p.terms() {
        by_exp
            .entry(m.exp(v))
            .or_default()
            .push((m.with_exp(v, 0), c.clone()));
    }
    by_exp
        .into_values()
        .map(|terms| Polynomial::from_terms(p.vars(), terms))
        .collect()
}

/// Leading coefficient of `p` in `v`, with the `v`-exponent zeroed.
fn leading_coeff_v(p: &Polynomial, v: usize) -> Polynomial {
    let d = p.degree_in(v);
    Polynomial::from_terms(
        p.vars(),
        p.terms()
            .filter(|(m, _)| m.exp(v) == d)
            .map(|(m, c)| (m.with_exp(v, 0), c.clone())),
    )
}

/// Pseudo-remainder of `f` by `g` in variable `v`: eliminates the leading
/// `v`-power of the running remainder by cross-multiplication until its
/// `v`-degree drops below `deg_v(g)`.
fn pseudo_rem(f: &Polynomial, g: &Polynomial, v: usize) -> Polynomial {
    let dg = g.degree_in(v);
    let lc_g = leading_coeff_v(g, v);
    let mut r = f.clone();
    while !r.is_zero() {
        let dr = r.degree_in(v);
        if dr < dg {
            break;
        }
        let lc_r = leading_coeff_v(&r, v);
        let shift = Polynomial::var_pow(r.vars(), v, dr - dg);
        r = &(&r * &lc_g) - &(&(&lc_r * &shift) * g);
        r = r.rational_primitive();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{CyclotomicNumber, VarSet};

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
    fn univariate_factor() {
        let v = qm();
        let q2m1 = p(&v, &[(1, &[2, 0]), (-1, &[0, 0])]);
        let qm1 = p(&v, &[(1, &[1, 0]), (-1, &[0, 0])]);
        assert_eq!(poly_gcd(&q2m1, &qm1), qm1);
    }

    #[test]
    fn monomial_gcd() {
        let v = qm();
        let a = p(&v, &[(1, &[1, 2])]); // q M^2
        let b = p(&v, &[(1, &[2, 1])]); // q^2 M
        assert_eq!(poly_gcd(&a, &b), p(&v, &[(1, &[1, 1])]));
    }

    #[test]
    fn zero_cases() {
        let v = qm();
        let z = Polynomial::zero(&v);
        let a = p(&v, &[(2, &[1, 0]), (-2, &[0, 0])]);
        assert!(poly_gcd(&z, &z).is_zero());
        assert_eq!(poly_gcd(&a, &z), p(&v, &[(1, &[1, 0]), (-1, &[0, 0])]));
    }

    #[test]
    fn multivariate_common_factor() {
        let v = qm();
        // (qM - 1) * (q + M) and (qM - 1) * (q - M)
        let f = p(&v, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let a = &f * &p(&v, &[(1, &[1, 0]), (1, &[0, 1])]);
        let b = &f * &p(&v, &[(1, &[1, 0]), (-1, &[0, 1])]);
        assert_eq!(poly_gcd(&a, &b), f);
    }

    #[test]
    fn coprime_coefficients_of_central_q_binomial_operator() {
        // gcd over {qM - 1, -q^2 M^3 - q M^2 + q M + 1} is 1: the operator
        // annihilating the central q-binomial coefficient is content-free.
        let v = qm();
        let c1 = p(&v, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let c0 = p(
            &v,
            &[(-1, &[2, 3]), (-1, &[1, 2]), (1, &[1, 1]), (1, &[0, 0])],
        );
        assert!(poly_gcd(&c1, &c0).is_one());
    }

    #[test]
    fn gcd_divides_both_inputs() {
        let v = qm();
        let a = &p(&v, &[(1, &[2, 1]), (3, &[0, 0])]) * &p(&v, &[(1, &[1, 1]), (-2, &[0, 1])]);
        let b = &p(&v, &[(1, &[1, 0]), (5, &[0, 2])]) * &p(&v, &[(1, &[1, 1]), (-2, &[0, 1])]);
        let g = poly_gcd(&a, &b);
        assert!(a.exact_div(&g).is_ok());
        assert!(b.exact_div(&g).is_ok());
        assert!(g.exact_div(&p(&v, &[(1, &[1, 1]), (-2, &[0, 1])])).is_ok());
    }
}
