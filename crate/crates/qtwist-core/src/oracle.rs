//! Brute-force verification of annihilating operators against explicit
//! sequence tables.
//!
//! Tables hold exact values `f_n(q)` as unnormalized fractions of
//! polynomials; all checks cross-multiply instead of normalizing, so no gcd
//! is ever computed on the large numerators that unrolled recurrences
//! produce. Generators for classical q-hypergeometric sequences, recurrence
//! unrolling, coefficient-wise twisting `q -> w q`, and residual checks give
//! an oracle that is independent of the Groebner/ansatz machinery it is used
//! to validate.
//!
//! Root substitutions `q -> q^(1/k)` are verified in the rescaled variable:
//! a table with `scale = k` stores values of `f_n` in the variable
//! `s = q^(1/k)`, and operator coefficients are evaluated with every
//! q-exponent multiplied by `k`, so that all arithmetic stays polynomial.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::kernel::{Mono, Polynomial, RationalFunction, VarSet};
use crate::ore::{ModuleElement, OreAlgebraSignature, OreOperator};
use crate::twist::TwistSpec;

/// An exact sequence value, kept as an unnormalized fraction.
#[derive(Clone)]
pub struct TableValue {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl TableValue {
    pub fn from_poly(num: Polynomial) -> Self {
        let den = Polynomial::one(num.vars());
        TableValue { num, den }
    }

    pub fn from_rational_function(r: &RationalFunction) -> Self {
        TableValue {
            num: r.num().clone(),
            den: r.den().clone(),
        }
    }

    pub fn to_rational_function(&self) -> RationalFunction {
        RationalFunction::raw(self.num.clone(), self.den.clone()).normalize()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, other: &TableValue) -> TableValue {
        if self.num.is_zero() {
            return other.clone();
        }
        if other.num.is_zero() {
            return self.clone();
        }
        if self.den == other.den {
            return TableValue {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
        }
        // Unrolled denominators form a divisibility chain; try both ways
        // before falling back to the full cross product.
        if let Ok(t) = other.den.exact_div(&self.den) {
            return TableValue {
                num: &(&self.num * &t) + &other.num,
                den: other.den.clone(),
            };
        }
        if let Ok(t) = self.den.exact_div(&other.den) {
            return TableValue {
                num: &self.num + &(&other.num * &t),
                den: self.den.clone(),
            };
        }
        TableValue {
            num: &(&self.num * &other.den) + &(&other.num * &self.den),
            den: &self.den * &other.den,
        }
    }

    fn mul_poly(&self, p: &Polynomial) -> TableValue {
        TableValue {
            num: &self.num * p,
            den: self.den.clone(),
        }
    }

    fn div_poly(&self, p: &Polynomial) -> TableValue {
        debug_assert!(!p.is_zero());
        if let Ok(q) = self.num.exact_div(p) {
            return TableValue {
                num: q,
                den: self.den.clone(),
            };
        }
        TableValue {
            num: self.num.clone(),
            den: &self.den * p,
        }
    }

    fn neg(&self) -> TableValue {
        TableValue {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

/// How a table was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableOrigin {
    ClosedForm,
    Unrolled,
    Derived,
}

/// A window of exact sequence values indexed by multi-indices in `N^r`.
#[derive(Clone)]
pub struct SequenceTable {
    qvars: VarSet,
    arity: usize,
    /// Per q-variable root index `k`; values live in `s_j` with
    /// `q_j = s_j^(k_j)`.
    scale: Vec<u16>,
    values: BTreeMap<Vec<u32>, TableValue>,
    origin: TableOrigin,
}

impl SequenceTable {
    pub fn new(qvars: &VarSet, arity: usize, origin: TableOrigin) -> Self {
        SequenceTable {
            qvars: qvars.clone(),
            arity,
            scale: vec![1; qvars.len()],
            values: BTreeMap::new(),
            origin,
        }
    }

    pub fn qvars(&self) -> &VarSet {
        &self.qvars
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn origin(&self) -> TableOrigin {
        self.origin
    }

    pub fn scale(&self) -> &[u16] {
        &self.scale
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn insert(&mut self, idx: Vec<u32>, value: TableValue) {
        debug_assert_eq!(idx.len(), self.arity);
        self.values.insert(idx, value);
    }

    pub fn get(&self, idx: &[u32]) -> Option<&TableValue> {
        self.values.get(idx)
    }

    /// Normalized value at an index.
    pub fn value(&self, idx: &[u32]) -> Option<RationalFunction> {
        self.get(idx).map(TableValue::to_rational_function)
    }

    pub fn indices(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.values.keys()
    }
}

/// `(q; q)_n = prod_{j=1..n} (1 - q^j)` for `0 <= n <= n_max`.
pub fn q_pochhammer_table(qvars: &VarSet, n_max: u32) -> SequenceTable {
    assert_eq!(qvars.len(), 1, "univariate generator");
    let mut t = SequenceTable::new(qvars, 1, TableOrigin::ClosedForm);
    let one = Polynomial::one(qvars);
    let mut acc = one.clone();
    t.insert(vec![0], TableValue::from_poly(acc.clone()));
    for n in 1..=n_max {
        let factor = &one - &Polynomial::var_pow(qvars, 0, n as u16);
        acc = &acc * &factor;
        t.insert(vec![n], TableValue::from_poly(acc.clone()));
    }
    t
}

/// The central q-binomial coefficient `[2n, n]_q` for `0 <= n <= n_max`,
/// computed as `(q; q)_{2n} / ((q; q)_n)^2` by exact division.
pub fn central_q_binomial_table(qvars: &VarSet, n_max: u32) -> SequenceTable {
    assert_eq!(qvars.len(), 1, "univariate generator");
    let poch = q_pochhammer_table(qvars, 2 * n_max);
    let mut t = SequenceTable::new(qvars, 1, TableOrigin::ClosedForm);
    for n in 0..=n_max {
        let top = &poch.get(&[2 * n]).unwrap().num;
        let bot = &poch.get(&[n]).unwrap().num;
        let val = top
            .exact_div(&(bot * bot))
            .expect("q-binomial quotients are polynomials");
        t.insert(vec![n], TableValue::from_poly(val));
    }
    t
}

/// Evaluate a cleared polynomial coefficient at the concrete index `idx`:
/// `M_k` becomes `q_{a(k)}^(n_k)` and every q-exponent is then multiplied by
/// the per-variable table scale.
fn eval_poly_at(
    sig: &OreAlgebraSignature,
    p: &Polynomial,
    idx: &[u32],
    scale: &[u16],
    qvars: &VarSet,
) -> Polynomial {
    p.map_terms_into(qvars, |m, c| {
        let mut out = Mono::ONE;
        for j in 0..sig.s() {
            let mut e = m.exp(sig.q_pos(j)) as u64;
            for k in 0..sig.r() {
                if sig.q_index(k) == j {
                    e += idx[k] as u64 * m.exp(sig.m_pos(k)) as u64;
                }
            }
            let e = e * scale[j] as u64;
            assert!(e <= u16::MAX as u64, "evaluated exponent overflow");
            out = out.mul(&Mono::var(j, e as u16));
        }
        (out, c.clone())
    })
}

fn check_compat(sig: &OreAlgebraSignature, table: &SequenceTable) -> Result<()> {
    if !sig.q_vars().same(&table.qvars) || sig.r() != table.arity {
        return Err(Error::SignatureMismatch);
    }
    Ok(())
}

/// Apply an operator to a table: `(P f)_n = sum_a c_a(q, q^n) f_(n+a)`,
/// defined on every index whose shifted neighbours are all present.
pub fn apply(op: &OreOperator, table: &SequenceTable) -> Result<SequenceTable> {
    let sig = op.signature();
    check_compat(sig, table)?;
    let cleared = op.normalized_cleared();
    let mut out = SequenceTable::new(&table.qvars, table.arity, TableOrigin::Derived);
    out.scale = table.scale.clone();
    'indices: for idx in table.values.keys() {
        let mut acc = TableValue::from_poly(Polynomial::zero(&table.qvars));
        for (alpha, c) in cleared.terms() {
            let mut shifted = idx.clone();
            for k in 0..sig.r() {
                shifted[k] += alpha.exp(k) as u32;
            }
            let Some(f) = table.get(&shifted) else {
                continue 'indices;
            };
            debug_assert!(c.is_polynomial());
            let coef = eval_poly_at(sig, c.num(), idx, &table.scale, &table.qvars);
            acc = acc.add(&f.mul_poly(&coef));
        }
        out.insert(idx.clone(), acc);
    }
    if out.is_empty() {
        return Err(Error::InsufficientTable(alloc::format!(
            "no index has all {} shifts covered",
            cleared.num_terms()
        )));
    }
    Ok(out)
}

/// Unroll a univariate recurrence `sum_j c_j(q, q^n) f_(n+j) = rhs(q, q^n)`
/// forward from initial values `f_0, ..., f_(d-1)`.
pub fn unroll(
    rec: &OreOperator,
    rhs: Option<&OreOperator>,
    initial: &[RationalFunction],
    n_max: u32,
) -> Result<SequenceTable> {
    let sig = rec.signature();
    if sig.r() != 1 {
        return Err(Error::BadSignature(alloc::string::String::from(
            "unrolling is defined for univariate recurrences",
        )));
    }
    let cleared = rec.normalized_cleared();
    let rhs_cleared = match rhs {
        // The right-hand side shares the relation's normalization, so clear
        // both components jointly through the module presentation.
        Some(b) => {
            let pair = crate::ore::VOp::from_pair(rec, b);
            let order = crate::ore::MonomialOrder::degrevlex().with_pot();
            let lead_inv = pair
                .lead(&order)
                .and_then(|(_, c)| c.inv().ok())
                .ok_or(Error::ZeroOperator)?;
            let scaled = pair.scaled(&lead_inv);
            let op_part = scaled.component(crate::ore::Comp::Op);
            let rhs_part = scaled.component(crate::ore::Comp::Rhs);
            // rescale rhs by the same clearing unit applied to the op part
            let unit = find_clearing_unit(&op_part, &cleared)?;
            Some(rhs_part.coef_mul(&unit))
        }
        None => None,
    };
    let d = cleared.order() as u32;
    if initial.len() as u32 != d {
        return Err(Error::InsufficientTable(alloc::format!(
            "recurrence of order {d} needs exactly {d} initial values, got {}",
            initial.len()
        )));
    }
    let qvars = sig.q_vars();
    let mut t = SequenceTable::new(qvars, 1, TableOrigin::Unrolled);
    for (n, v) in initial.iter().enumerate() {
        if !v.vars().same(qvars) {
            return Err(Error::SignatureMismatch);
        }
        t.insert(vec![n as u32], TableValue::from_rational_function(v));
    }
    if n_max < d {
        return Ok(t);
    }
    let scale = vec![1u16; qvars.len()];
    for n in 0..=(n_max - d) {
        let idx = [n];
        let top = cleared
            .coefficient(&Mono::var(0, d as u16))
            .expect("leading coefficient present");
        let top_eval = eval_poly_at(sig, top.num(), &idx, &scale, qvars);
        if top_eval.is_zero() {
            return Err(Error::SingularStep(n as i64 + d as i64));
        }
        let mut acc = match &rhs_cleared {
            Some(b) => {
                let mut s = TableValue::from_poly(Polynomial::zero(qvars));
                for (beta, c) in b.terms() {
                    debug_assert_eq!(beta.exp(0), 0, "rhs is reduced to shift degree 0");
                    let coef = eval_poly_at(sig, c.num(), &idx, &scale, qvars);
                    s = s.add(&TableValue::from_poly(coef));
                }
                s
            }
            None => TableValue::from_poly(Polynomial::zero(qvars)),
        };
        for (alpha, c) in cleared.terms() {
            let j = alpha.exp(0) as u32;
            if j == d {
                continue;
            }
            let coef = eval_poly_at(sig, c.num(), &idx, &scale, qvars);
            let f = t.get(&[n + j]).expect("previous values present");
            acc = acc.add(&f.mul_poly(&coef).neg());
        }
        let next = acc.div_poly(&top_eval);
        t.insert(vec![n + d], next);
    }
    Ok(t)
}

/// `rhs` cleared jointly with the operator: find the coefficient `u` with
/// `cleared = u * op_monic`; both inputs are nonzero multiples of each other.
fn find_clearing_unit(
    op_monic: &OreOperator,
    cleared: &OreOperator,
) -> Result<RationalFunction> {
    let (lead, _) = op_monic
        .terms()
        .next_back()
        .ok_or(Error::ZeroOperator)?;
    let a = cleared
        .coefficient(lead)
        .ok_or_else(|| Error::Internal(alloc::string::String::from("clearing changed support")))?;
    let b = op_monic.coefficient(lead).expect("lead present");
    Ok(a / b)
}

/// Unroll an inhomogeneous relation.
pub fn unroll_module(
    rel: &ModuleElement,
    initial: &[RationalFunction],
    n_max: u32,
) -> Result<SequenceTable> {
    unroll(&rel.op, Some(&rel.rhs), initial, n_max)
}

/// Twist a table: `g_n(q) = f_n(w q)` done coefficient-wise (each `q^e`
/// scaled by `w^e`), per ground variable. With a root index `k > 1` the
/// result is reinterpreted in the variable `s = q^(1/k)` and the table's
/// scale records that.
pub fn twist_table(table: &SequenceTable, spec: &TwistSpec) -> SequenceTable {
    assert!(
        table.scale.iter().all(|&k| k == 1),
        "twisting an already rescaled table is not supported"
    );
    assert_eq!(spec.len(), table.qvars.len());
    let scale_poly = |p: &Polynomial| -> Polynomial {
        p.map_terms_into(&table.qvars.clone(), |m, c| {
            let mut c = c.clone();
            for j in 0..spec.len() {
                let e = m.exp(j);
                if e > 0 {
                    c = &c * &spec.omega(j).pow(e as u32);
                }
            }
            (m, c)
        })
    };
    let mut out = SequenceTable::new(&table.qvars, table.arity, table.origin);
    out.scale = (0..spec.len()).map(|j| spec.root_index(j)).collect();
    for (idx, v) in &table.values {
        out.insert(
            idx.clone(),
            TableValue {
                num: scale_poly(&v.num),
                den: scale_poly(&v.den),
            },
        );
    }
    out
}

/// Outcome of an annihilation check.
#[derive(Clone, Debug)]
pub struct AnnihilationReport {
    /// Number of indices at which the residual was evaluated.
    pub checked: usize,
    /// Indices with a nonzero residual.
    pub failures: Vec<Vec<u32>>,
}

impl AnnihilationReport {
    pub fn ok(&self) -> bool {
        self.checked > 0 && self.failures.is_empty()
    }
}

/// Residual check `P f = 0` on every index the table can support.
pub fn check_annihilates(op: &OreOperator, table: &SequenceTable) -> Result<AnnihilationReport> {
    if op.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let residual = apply(op, table)?;
    Ok(AnnihilationReport {
        checked: residual.len(),
        failures: residual
            .values
            .iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, _)| i.clone())
            .collect(),
    })
}

/// Residual check for every generator of a basis.
pub fn check_annihilates_all(
    ops: &[OreOperator],
    table: &SequenceTable,
) -> Result<AnnihilationReport> {
    let mut checked = usize::MAX;
    let mut failures = Vec::new();
    for op in ops {
        let rep = check_annihilates(op, table)?;
        checked = checked.min(rep.checked);
        failures.extend(rep.failures);
    }
    if ops.is_empty() {
        return Err(Error::ZeroOperator);
    }
    failures.sort();
    failures.dedup();
    Ok(AnnihilationReport { checked, failures })
}

/// Residual check `op(f) - rhs(1) = 0` for an inhomogeneous relation; the
/// right-hand side is applied to the constant-one sequence.
pub fn check_annihilates_module(
    rel: &ModuleElement,
    table: &SequenceTable,
) -> Result<AnnihilationReport> {
    let sig = rel.signature();
    check_compat(sig, table)?;
    if rel.op.is_zero() {
        return Err(Error::ZeroOperator);
    }
    // Clear the pair jointly so both sides keep consistent scaling.
    let pair = crate::ore::VOp::from_pair(&rel.op, &rel.rhs);
    let order = crate::ore::MonomialOrder::degrevlex().with_pot();
    let lead_inv = pair
        .lead(&order)
        .and_then(|(_, c)| c.inv().ok())
        .ok_or(Error::ZeroOperator)?;
    let monic = pair.scaled(&lead_inv);
    let op_monic = monic.component(crate::ore::Comp::Op);
    let rhs_monic = monic.component(crate::ore::Comp::Rhs);
    let op_cleared = op_monic.normalized_cleared();
    let unit = find_clearing_unit(&op_monic, &op_cleared)?;
    let rhs_cleared = rhs_monic.coef_mul(&unit);

    let lhs = apply(&op_cleared, table)?;
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for (idx, v) in &lhs.values {
        // rhs(1) at idx: all shifts act trivially on the one-sequence.
        let mut b = TableValue::from_poly(Polynomial::zero(&table.qvars));
        for (_, c) in rhs_cleared.terms() {
            let mut coef = eval_poly_at(sig, c.num(), idx, &table.scale, &table.qvars);
            if !c.is_polynomial() {
                let den = eval_poly_at(sig, c.den(), idx, &table.scale, &table.qvars);
                if den.is_zero() {
                    return Err(Error::SingularStep(idx[0] as i64));
                }
                b = b.add(&TableValue { num: coef, den });
                continue;
            }
            coef = eval_poly_at(sig, c.num(), idx, &table.scale, &table.qvars);
            b = b.add(&TableValue::from_poly(coef));
        }
        let residual = v.add(&b.neg());
        checked += 1;
        if !residual.is_zero() {
            failures.push(idx.clone());
        }
    }
    if checked == 0 {
        return Err(Error::InsufficientTable(alloc::string::String::from(
            "table does not cover the span of the relation",
        )));
    }
    Ok(AnnihilationReport { checked, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ore::coeff_poly;
    use crate::ore::MonomialOrder;

    fn sig() -> OreAlgebraSignature {
        OreAlgebraSignature::univariate()
    }

    fn central_q_binomial_op(s: &OreAlgebraSignature) -> OreOperator {
        let c1 = coeff_poly(s, &[(1, &[1, 1]), (-1, &[0, 0])]);
        let c0 = coeff_poly(
            s,
            &[(-1, &[2, 3]), (-1, &[1, 2]), (1, &[1, 1]), (1, &[0, 0])],
        );
        s.from_recurrences(&[vec![c0, c1]]).unwrap().remove(0)
    }

    fn pochhammer_op(s: &OreAlgebraSignature) -> OreOperator {
        // L - (1 - q M)
        let c0 = coeff_poly(s, &[(-1, &[0, 0]), (1, &[1, 1])]);
        let c1 = coeff_poly(s, &[(1, &[0, 0])]);
        s.from_recurrences(&[vec![c0, c1]]).unwrap().remove(0)
    }

    #[test]
    fn pochhammer_small_values() {
        let s = sig();
        let t = q_pochhammer_table(s.q_vars(), 3);
        let one = Polynomial::one(s.q_vars());
        let q = Polynomial::var(s.q_vars(), 0);
        assert_eq!(t.get(&[0]).unwrap().num, one);
        assert_eq!(t.get(&[1]).unwrap().num, &one - &q);
        // (1-q)(1-q^2)(1-q^3) expanded
        let expected = &(&(&one - &q) * &(&one - &q.pow(2))) * &(&one - &q.pow(3));
        assert_eq!(t.get(&[3]).unwrap().num, expected);
    }

    #[test]
    fn central_q_binomial_small_values() {
        let s = sig();
        let t = central_q_binomial_table(s.q_vars(), 2);
        let one = Polynomial::one(s.q_vars());
        let q = Polynomial::var(s.q_vars(), 0);
        assert_eq!(t.get(&[0]).unwrap().num, one);
        assert_eq!(t.get(&[1]).unwrap().num, &one + &q);
        // 1 + q + 2q^2 + q^3 + q^4
        let expected = &(&(&(&one + &q) + &q.pow(2).scaled_rational(&crate::kernel::Rational::from_integer(2.into()))) + &q.pow(3)) + &q.pow(4);
        assert_eq!(t.get(&[2]).unwrap().num, expected);
    }

    #[test]
    fn constant_sequence_annihilated_by_shift_minus_one() {
        let s = sig();
        let mut t = SequenceTable::new(s.q_vars(), 1, TableOrigin::ClosedForm);
        for n in 0..10 {
            t.insert(vec![n], TableValue::from_poly(Polynomial::one(s.q_vars())));
        }
        let p = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::one(&s);
        let rep = check_annihilates(&p, &t).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.checked, 9);
    }

    #[test]
    fn defining_recurrences_annihilate_their_tables() {
        let s = sig();
        let qb = central_q_binomial_table(s.q_vars(), 8);
        let rep = check_annihilates(&central_q_binomial_op(&s), &qb).unwrap();
        assert!(rep.ok(), "failures at {:?}", rep.failures);
        let poch = q_pochhammer_table(s.q_vars(), 8);
        let rep = check_annihilates(&pochhammer_op(&s), &poch).unwrap();
        assert!(rep.ok());
    }

    #[test]
    fn perturbed_operator_fails_everywhere() {
        let s = sig();
        let qb = central_q_binomial_table(s.q_vars(), 8);
        let bad = &central_q_binomial_op(&s) + &OreOperator::one(&s);
        let rep = check_annihilates(&bad, &qb).unwrap();
        assert_eq!(rep.failures.len(), rep.checked);
    }

    #[test]
    fn unroll_reproduces_closed_form() {
        let s = sig();
        let init = [RationalFunction::one(s.q_vars())];
        let t = unroll(&pochhammer_op(&s), None, &init, 8).unwrap();
        let closed = q_pochhammer_table(s.q_vars(), 8);
        for n in 0..=8u32 {
            assert_eq!(
                t.value(&[n]).unwrap(),
                closed.value(&[n]).unwrap(),
                "mismatch at {n}"
            );
        }
    }

    #[test]
    fn unroll_roundtrip_zero_residual() {
        let s = sig();
        // Generic initial values through a recurrence with denominators.
        let p = central_q_binomial_op(&s);
        let init = [RationalFunction::one(s.q_vars())];
        let t = unroll(&p, None, &init, 12).unwrap();
        let rep = check_annihilates(&p, &t).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.checked, 12);
    }

    #[test]
    fn unroll_singular_step_is_reported() {
        let s = sig();
        // leading coefficient q M - q^3 vanishes at n = 2
        let c1 = coeff_poly(&s, &[(1, &[1, 1]), (-1, &[3, 0])]);
        let c0 = coeff_poly(&s, &[(1, &[0, 0])]);
        let p = s.from_recurrences(&[vec![c0, c1]]).unwrap().remove(0);
        let init = [RationalFunction::one(s.q_vars())];
        assert!(matches!(
            unroll(&p, None, &init, 8),
            Err(Error::SingularStep(3))
        ));
    }

    #[test]
    fn module_check_constant_relation() {
        let s = sig();
        // (L - 1) f = 0 as a module relation with zero right-hand side.
        let p = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::one(&s);
        let rel = ModuleElement::new(p, OreOperator::zero(&s)).unwrap();
        let mut t = SequenceTable::new(s.q_vars(), 1, TableOrigin::ClosedForm);
        for n in 0..6 {
            t.insert(vec![n], TableValue::from_poly(Polynomial::one(s.q_vars())));
        }
        let rep = check_annihilates_module(&rel, &t).unwrap();
        assert!(rep.ok());
    }

    #[test]
    fn module_unroll_and_check() {
        let s = sig();
        // (L - 1) f = q M: f_{n+1} = f_n + q^{n+1} summed geometric-style.
        let p = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::one(&s);
        let b = &OreOperator::q_pow(&s, 0, 1) * &OreOperator::m_pow(&s, 0, 1);
        let rel = ModuleElement::new(p, b).unwrap();
        let init = [RationalFunction::one(s.q_vars())];
        let t = unroll_module(&rel, &init, 10).unwrap();
        // f_1 = 1 + q
        let one = Polynomial::one(s.q_vars());
        let q = Polynomial::var(s.q_vars(), 0);
        assert_eq!(
            t.value(&[1]).unwrap(),
            RationalFunction::from_poly(&one + &q)
        );
        let rep = check_annihilates_module(&rel, &t).unwrap();
        assert!(rep.ok());
        assert_eq!(rep.checked, 10);
    }

    #[test]
    fn apply_respects_action_homomorphism() {
        let s = sig();
        let t = central_q_binomial_table(s.q_vars(), 10);
        let a = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::m_pow(&s, 0, 1);
        let b = &(&OreOperator::q_pow(&s, 0, 1) * &OreOperator::l_pow(&s, 0, 1))
            + &OreOperator::one(&s);
        let ab = &a * &b;
        let via_product = apply(&ab, &t).unwrap();
        let via_steps = apply(&a, &apply(&b, &t).unwrap()).unwrap();
        for idx in via_product.indices() {
            let x = via_product.value(idx).unwrap();
            let y = via_steps.value(idx).unwrap();
            assert_eq!(x, y, "mismatch at {idx:?}");
        }
        assert!(via_product.len() >= 8);
    }

    #[test]
    fn window_too_small_is_an_error() {
        let s = sig();
        let mut t = SequenceTable::new(s.q_vars(), 1, TableOrigin::ClosedForm);
        t.insert(vec![0], TableValue::from_poly(Polynomial::one(s.q_vars())));
        let p = &OreOperator::l_pow(&s, 0, 2) - &OreOperator::one(&s);
        assert!(matches!(
            check_annihilates(&p, &t),
            Err(Error::InsufficientTable(_))
        ));
    }

    #[test]
    fn multivariate_apply() {
        // f(n1, n2) = q^(n1 n2) satisfies L1 f = M2 f2... concretely
        // (L1 - M2) f = 0 and (L2 - M1) f = 0.
        let s = OreAlgebraSignature::new(&["q"], &[("L1", "M1", "q"), ("L2", "M2", "q")])
            .unwrap();
        let mut t = SequenceTable::new(s.q_vars(), 2, TableOrigin::ClosedForm);
        for n1 in 0..6u32 {
            for n2 in 0..6u32 {
                let v = Polynomial::var_pow(s.q_vars(), 0, (n1 * n2) as u16);
                t.insert(vec![n1, n2], TableValue::from_poly(v));
            }
        }
        let p1 = &OreOperator::l_pow(&s, 0, 1) - &OreOperator::m_pow(&s, 1, 1);
        let p2 = &OreOperator::l_pow(&s, 1, 1) - &OreOperator::m_pow(&s, 0, 1);
        assert!(check_annihilates(&p1, &t).unwrap().ok());
        assert!(check_annihilates(&p2, &t).unwrap().ok());
        let _ = MonomialOrder::degrevlex();
    }
}
