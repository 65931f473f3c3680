//! Twisting annihilators by roots of unity and substituting rational powers
//! of q.
//!
//! Given a left Groebner basis `F` of a zero-dimensional annihilator ideal
//! for a sequence `f`, [`twist_substitute`] produces a left Groebner basis
//! `J` annihilating the transformed sequence
//!
//! ```text
//!   g_n(q) = f_n(w_1 q_1^(1/k_1), ..., w_s q_s^(1/k_s)),
//! ```
//!
//! where `w_j` is a primitive root of unity of order `m_j`. The engine loops
//! over candidate support monomials in increasing order (FGLM style): for the
//! frontier monomial `T0` and the previously rejected monomials `V` it forms
//! the ansatz `A = c_0 T0 + sum c_j V_j`, reduces it modulo `F`, clears
//! denominators, rewrites
//!
//! ```text
//!   M_k^a -> M_k^(a mod l_k) N_k^(a div l_k),    l_k = lcm(m_{a(k)}, k_{a(k)}),
//!   q_j^a -> q_j^(a mod k_j) Q_j^(a div k_j),
//! ```
//!
//! and equates the coefficient of every residual monomial times staircase
//! monomial to zero. A nontrivial solution of the resulting linear system
//! over `K(Q, N)` is an element of the intersection of the ideal with the
//! admissible subalgebra; the final back-substitution divides exponents by
//! `k` and scales `q_j^a` by `w_j^a`. Inhomogeneous recurrences run through
//! the same loop in the module `O^2` with the relation `(0, L - 1)` under a
//! position-over-term order.

mod factor;

pub use factor::{verify_factorization, FactorizationReport, FactorizationStatus};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer as _;

use crate::error::{Error, Result};
use crate::kernel::{
    CyclotomicNumber, Mono, Polynomial, RationalFunction,
};
use crate::ore::{
    module_basis_with_shift_relation, reduce_full, under_stairs_mm, Comp, LeftGroebnerBasis,
    MMono, ModuleElement, MonomialOrder, OreAlgebraSignature, OreOperator, VOp,
};

/// Per-ground-variable transformation data: `q -> omega * q^(1/root_index)`
/// with `omega` a primitive root of unity of order `root_order`.
#[derive(Clone, Debug)]
pub struct VarTwist {
    root_order: u32,
    root_index: u16,
    omega: CyclotomicNumber,
}

impl VarTwist {
    /// Twist by the default primitive root `zeta_m` and root index `k`.
    pub fn new(root_order: u32, root_index: u16) -> Result<Self> {
        Self::with_omega(
            root_order,
            root_index,
            CyclotomicNumber::root_of_unity(root_order, 1),
        )
    }

    /// Twist by a caller-chosen primitive root of order `root_order`.
    pub fn with_omega(
        root_order: u32,
        root_index: u16,
        omega: CyclotomicNumber,
    ) -> Result<Self> {
        if root_order == 0 || root_index == 0 {
            return Err(Error::BadSignature(String::from(
                "root order and root index must be positive",
            )));
        }
        if omega.root_order() != Some(root_order) {
            return Err(Error::NotPrimitiveRoot { order: root_order });
        }
        Ok(VarTwist {
            root_order,
            root_index,
            omega,
        })
    }

    pub fn identity() -> Self {
        VarTwist {
            root_order: 1,
            root_index: 1,
            omega: CyclotomicNumber::one(),
        }
    }

    pub fn root_order(&self) -> u32 {
        self.root_order
    }

    pub fn root_index(&self) -> u16 {
        self.root_index
    }

    pub fn omega(&self) -> &CyclotomicNumber {
        &self.omega
    }
}

/// The complete transformation: one [`VarTwist`] per ground variable.
#[derive(Clone, Debug)]
pub struct TwistSpec {
    per_q: Vec<VarTwist>,
}

impl TwistSpec {
    pub fn new(per_q: Vec<VarTwist>) -> Self {
        TwistSpec { per_q }
    }

    /// Univariate spec `q -> zeta_m q^(1/k)`.
    pub fn single(root_order: u32, root_index: u16) -> Result<Self> {
        Ok(TwistSpec {
            per_q: vec![VarTwist::new(root_order, root_index)?],
        })
    }

    pub fn identity(s: usize) -> Self {
        TwistSpec {
            per_q: (0..s).map(|_| VarTwist::identity()).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.per_q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.per_q.is_empty()
    }

    pub fn var(&self, j: usize) -> &VarTwist {
        &self.per_q[j]
    }

    pub fn root_order(&self, j: usize) -> u32 {
        self.per_q[j].root_order
    }

    pub fn root_index(&self, j: usize) -> u16 {
        self.per_q[j].root_index
    }

    pub fn omega(&self, j: usize) -> &CyclotomicNumber {
        &self.per_q[j].omega
    }

    /// Admissibility modulus for the pair `k` of a signature:
    /// `lcm(root_order, root_index)` of the attached ground variable.
    fn ell(&self, sig: &OreAlgebraSignature, k: usize) -> u16 {
        let j = sig.q_index(k);
        let m = self.root_order(j) as u64;
        let kk = self.root_index(j) as u64;
        let l = m.lcm(&kk);
        u16::try_from(l).expect("admissibility modulus fits in u16")
    }

    /// `R * prod_k lcm(m_{a(k)}, k_{a(k)}) * prod_j k_j`.
    pub fn rank_bound(&self, sig: &OreAlgebraSignature, input_rank: usize) -> usize {
        let mut bound = input_rank;
        for k in 0..sig.r() {
            bound *= self.ell(sig, k) as usize;
        }
        for j in 0..sig.s() {
            bound *= self.root_index(j) as usize;
        }
        bound
    }
}

/// Options for [`twist_substitute`].
#[derive(Clone, Copy, Debug, Default)]
pub struct TwistOptions {
    /// Also return the admissible basis over `(q, M)` before the final
    /// substitution (all q-exponents divisible by `k_j`, all M-exponents by
    /// `lcm(m, k)`).
    pub return_before_backsub: bool,
}

/// Result of twisting an annihilator ideal.
pub struct TwistResult {
    /// Left Groebner basis annihilating the transformed sequence.
    pub basis: LeftGroebnerBasis,
    /// The admissible basis prior to back-substitution, when requested.
    pub before_backsub: Option<LeftGroebnerBasis>,
    /// `rank(basis) <= rank_bound` always holds.
    pub rank_bound: usize,
    /// For a principal univariate input: left cofactors `Q` with
    /// `before_backsub = Q * input` in the Ore algebra.
    pub cofactors: Option<Vec<OreOperator>>,
}

/// Result of twisting an inhomogeneous univariate recurrence.
pub struct ModuleTwistResult {
    /// Twisted relation `op(g) = rhs(1)`.
    pub relation: ModuleElement,
    /// Admissible relation before back-substitution, when requested.
    pub before_backsub: Option<ModuleElement>,
    pub rank_bound: usize,
    /// Rank of the computed module basis (number of staircase monomials).
    pub rank: usize,
}

/// Annihilator basis for `g_n = f_n(w_1 q_1^(1/k_1), ...)` given a
/// zero-dimensional basis for `f`.
pub fn twist_substitute(
    input: &LeftGroebnerBasis,
    spec: &TwistSpec,
    options: TwistOptions,
) -> Result<TwistResult> {
    let sig = input.signature().clone();
    if spec.len() != sig.s() {
        return Err(Error::BadSignature(alloc::format!(
            "spec covers {} ground variables, algebra has {}",
            spec.len(),
            sig.s()
        )));
    }
    input.under_stairs()?; // zero-dimensionality required
    let order = *input.order();
    let stairs: Vec<MMono> = input
        .under_stairs()?
        .iter()
        .map(|m| MMono::op(*m))
        .collect();
    let engine = Engine::new(sig.clone(), order, spec, input.vops().to_vec(), stairs)?;
    let out = engine.run()?;

    let before_vops = out.generators;
    let after_vops: Vec<VOp> = before_vops
        .iter()
        .map(|g| backsub_vop(&sig, spec, g))
        .collect::<Result<_>>()?;

    let basis = LeftGroebnerBasis::from_completed(sig.clone(), order, after_vops)?;
    if let Ok(rank) = basis.rank() {
        if rank > out.rank_bound {
            return Err(Error::Internal(alloc::format!(
                "rank {rank} exceeds bound {}",
                out.rank_bound
            )));
        }
    }
    let before = if options.return_before_backsub || input.generators().len() == 1 {
        Some(LeftGroebnerBasis::from_completed(
            sig.clone(),
            order,
            before_vops,
        )?)
    } else {
        None
    };

    // Left cofactors for a principal univariate input.
    let cofactors = match (&before, sig.r(), input.generators().len()) {
        (Some(b), 1, 1) => {
            let p = &input.generators()[0];
            let qs: Result<Vec<OreOperator>> = b
                .generators()
                .iter()
                .map(|a| {
                    let (quot, rem) = a.left_div_rem(p)?;
                    if rem.is_zero() {
                        Ok(quot)
                    } else {
                        Err(Error::Internal(String::from(
                            "admissible output is not a left multiple of the input",
                        )))
                    }
                })
                .collect();
            Some(qs?)
        }
        _ => None,
    };

    Ok(TwistResult {
        basis,
        before_backsub: if options.return_before_backsub {
            before
        } else {
            None
        },
        rank_bound: out.rank_bound,
        cofactors,
    })
}

/// The annihilating operator of the twist `f_n(w q)` of a univariate
/// sequence annihilated by `p`; denominators cleared and content-free, of
/// order at most `m * order(p)`.
pub fn tau_omega(p: &OreOperator, omega: &CyclotomicNumber) -> Result<OreOperator> {
    let sig = p.signature();
    if sig.r() != 1 || sig.s() != 1 {
        return Err(Error::BadSignature(String::from(
            "twisting a single operator requires the univariate algebra",
        )));
    }
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let m = omega
        .root_order()
        .ok_or(Error::NotPrimitiveRoot { order: 0 })?;
    let spec = TwistSpec::new(vec![VarTwist::with_omega(m, 1, omega.clone())?]);
    let basis = LeftGroebnerBasis::new(core::slice::from_ref(p), MonomialOrder::degrevlex())?;
    let result = twist_substitute(&basis, &spec, TwistOptions::default())?;
    let gens = result.basis.generators();
    if gens.len() != 1 {
        return Err(Error::Internal(alloc::format!(
            "principal univariate twist returned {} generators",
            gens.len()
        )));
    }
    Ok(gens[0].clone())
}

/// Twist an inhomogeneous univariate recurrence `p(f) = b(q, q^n)`: returns
/// a relation satisfied by every transformed solution. Runs in the module
/// `O^2` modulo `(0, L - 1)` under a position-over-term order.
pub fn inhomogeneous_twist(
    p: &OreOperator,
    b: &RationalFunction,
    spec: &TwistSpec,
    options: TwistOptions,
) -> Result<ModuleTwistResult> {
    let sig = p.signature().clone();
    if spec.len() != sig.s() {
        return Err(Error::BadSignature(String::from(
            "spec length must match the number of ground variables",
        )));
    }
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    let rel = ModuleElement::new(p.clone(), OreOperator::from_coefficient(&sig, b.clone()))?;
    let order = MonomialOrder::degrevlex().with_pot();
    let vops = module_basis_with_shift_relation(&rel, &order)?;
    let leads: Vec<MMono> = vops
        .iter()
        .map(|g| g.lead(&order).expect("nonzero").0)
        .collect();
    let stairs = under_stairs_mm(&leads, sig.r(), &[Comp::Op, Comp::Rhs], &order)?;
    let engine = Engine::new(sig.clone(), order, spec, vops, stairs)?;
    let out = engine.run()?;

    let pick_relation = |gens: &[VOp]| -> Result<ModuleElement> {
        let mut found: Option<ModuleElement> = None;
        for g in gens {
            let (lm, _) = g.lead(&order).expect("nonzero");
            if lm.comp == Comp::Op {
                if found.is_some() {
                    return Err(Error::Internal(String::from(
                        "expected a single operator-component generator",
                    )));
                }
                found = Some(cleared_pair(g)?);
            }
        }
        found.ok_or_else(|| {
            Error::Internal(String::from("no operator-component generator produced"))
        })
    };

    let before_rel = pick_relation(&out.generators)?;
    let after_vops: Vec<VOp> = out
        .generators
        .iter()
        .map(|g| backsub_vop(&sig, spec, g))
        .collect::<Result<_>>()?;
    let relation = pick_relation(&after_vops)?;
    Ok(ModuleTwistResult {
        relation,
        before_backsub: options.return_before_backsub.then_some(before_rel),
        rank_bound: out.rank_bound,
        rank: out.rank,
    })
}

/// Largest `l` such that the operator lies in `K(q)[M^l]<L>`: the gcd of all
/// M-exponents. `MPeriod::Any` when no positive power of `M` occurs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MPeriod {
    /// Coefficients are free of `M`: every period works.
    Any,
    Period(u16),
}

pub fn m_period(p: &OreOperator) -> Result<MPeriod> {
    if p.is_zero() {
        return Err(Error::ZeroOperator);
    }
    Ok(match p.m_exponent_gcd(0) {
        None => MPeriod::Any,
        Some(g) => MPeriod::Period(g),
    })
}

/// Joint cleared content-free presentation of a module element.
fn cleared_pair(v: &VOp) -> Result<ModuleElement> {
    let sig = &v.sig;
    let vars = sig.coeff_vars();
    let mut den_lcm = Polynomial::one(vars);
    for c in v.terms.values() {
        if !c.den().is_one() {
            let g = crate::kernel::poly_gcd(&den_lcm, c.den());
            den_lcm = &den_lcm * &c.den().exact_div(&g).expect("gcd divides");
        }
    }
    let mut polys: BTreeMap<MMono, Polynomial> = BTreeMap::new();
    for (m, c) in &v.terms {
        let scale = den_lcm.exact_div(c.den()).expect("common multiple");
        polys.insert(*m, &scale * c.num());
    }
    let mut content = Polynomial::zero(vars);
    for p in polys.values() {
        content = crate::kernel::poly_gcd(&content, p);
        if content.is_one() {
            break;
        }
    }
    if !content.is_one() && !content.is_zero() {
        for p in polys.values_mut() {
            *p = p.exact_div(&content).expect("content divides");
        }
    }
    let lead = *polys.keys().next_back().expect("nonzero element");
    let unit = polys[&lead].primitive_unit();
    let mut op_terms = Vec::new();
    let mut rhs_terms = Vec::new();
    for (m, p) in polys {
        let coef = RationalFunction::from_poly(p.scaled(&unit));
        match m.comp {
            Comp::Op => op_terms.push((m.l, coef)),
            Comp::Rhs => rhs_terms.push((m.l, coef)),
        }
    }
    ModuleElement::new(
        OreOperator::from_terms(sig, op_terms),
        OreOperator::from_terms(sig, rhs_terms),
    )
}

/// Back-substitution: divide q- and M-exponents by the root index of the
/// attached ground variable and scale by `omega^(old q-exponent)`. `N_k`
/// (the `M^l` block) needs no root scaling because `omega^(n l) = 1`.
fn backsub_vop(sig: &OreAlgebraSignature, spec: &TwistSpec, v: &VOp) -> Result<VOp> {
    let vars = sig.coeff_vars();
    let mut out = VOp::zero(sig);
    for (mm, c) in &v.terms {
        if !c.is_polynomial() {
            return Err(Error::Internal(String::from(
                "admissible generator must have polynomial coefficients",
            )));
        }
        let mapped = c.num().map_terms_into(vars, |m, coef| {
            let mut scale = coef.clone();
            let mut out_m = Mono::ONE;
            for j in 0..sig.s() {
                let a = m.exp(sig.q_pos(j));
                let k = spec.root_index(j);
                debug_assert_eq!(a % k, 0, "inadmissible q-exponent survived");
                if a > 0 {
                    scale = &scale * &spec.omega(j).pow(a as u32);
                }
                out_m = out_m.mul(&Mono::var(sig.q_pos(j), a / k));
            }
            for k_pair in 0..sig.r() {
                let b = m.exp(sig.m_pos(k_pair));
                let k = spec.root_index(sig.q_index(k_pair));
                debug_assert_eq!(b % k, 0, "inadmissible M-exponent survived");
                out_m = out_m.mul(&Mono::var(sig.m_pos(k_pair), b / k));
            }
            (out_m, scale)
        });
        out = out.add(&VOp::monomial(sig, *mm).scaled(&RationalFunction::from_poly(mapped)));
    }
    Ok(out)
}

struct EngineOutput {
    generators: Vec<VOp>,
    rank_bound: usize,
    rank: usize,
}

/// A staircase coordinate vector with one shared denominator. Keeping the
/// denominator factored out of every coordinate lets the shift recursion run
/// on polynomial numerators only, with no gcd in the loop.
#[derive(Clone)]
struct NFVec {
    nums: Vec<Polynomial>,
    den: Polynomial,
}

/// One frontier or rejected monomial with its normal form on the staircase.
struct Cand {
    mono: MMono,
    nf: NFVec,
}

struct Engine {
    sig: OreAlgebraSignature,
    order: MonomialOrder,
    basis: Vec<VOp>,
    stairs: Vec<MMono>,
    stair_index: BTreeMap<MMono, usize>,
    /// Admissibility modulus per pair.
    ell: Vec<u16>,
    /// Root index per ground variable.
    kq: Vec<u16>,
    /// `mulmat[k][i]` = normal form of `L_k * stairs[i]`.
    mulmat: Vec<Vec<NFVec>>,
    rank_bound: usize,
}

impl Engine {
    fn new(
        sig: OreAlgebraSignature,
        order: MonomialOrder,
        spec: &TwistSpec,
        basis: Vec<VOp>,
        stairs: Vec<MMono>,
    ) -> Result<Self> {
        let ell: Vec<u16> = (0..sig.r()).map(|k| spec.ell(&sig, k)).collect();
        let kq: Vec<u16> = (0..sig.s()).map(|j| spec.root_index(j)).collect();
        let rank_bound = spec.rank_bound(&sig, stairs.len());
        let stair_index: BTreeMap<MMono, usize> =
            stairs.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut engine = Engine {
            sig,
            order,
            basis,
            stairs,
            stair_index,
            ell,
            kq,
            mulmat: Vec::new(),
            rank_bound,
        };
        engine.mulmat = (0..engine.sig.r())
            .map(|k| {
                (0..engine.stairs.len())
                    .map(|i| {
                        let m = engine.stairs[i];
                        let shifted = MMono {
                            comp: m.comp,
                            l: m.l.mul(&Mono::var(k, 1)),
                        };
                        engine.nf_of_monomial(shifted)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(engine)
    }

    fn zero_nf(&self) -> NFVec {
        NFVec {
            nums: vec![Polynomial::zero(self.sig.coeff_vars()); self.stairs.len()],
            den: Polynomial::one(self.sig.coeff_vars()),
        }
    }

    fn nf_of_monomial(&self, m: MMono) -> Result<NFVec> {
        if let Some(&i) = self.stair_index.get(&m) {
            let mut nf = self.zero_nf();
            nf.nums[i] = Polynomial::one(self.sig.coeff_vars());
            return Ok(nf);
        }
        let reduced = reduce_full(&VOp::monomial(&self.sig, m), &self.basis, &self.order);
        // Clear the reduced coordinates to one shared denominator.
        let vars = self.sig.coeff_vars();
        let mut den = Polynomial::one(vars);
        for c in reduced.terms.values() {
            if !c.den().is_one() {
                let g = crate::kernel::poly_gcd(&den, c.den());
                den = &den * &c.den().exact_div(&g).expect("gcd divides");
            }
        }
        let mut nf = self.zero_nf();
        nf.den = den.clone();
        for (mm, c) in &reduced.terms {
            let Some(&i) = self.stair_index.get(mm) else {
                return Err(Error::Internal(String::from(
                    "normal form not supported on the staircase",
                )));
            };
            let scale = den.exact_div(c.den()).expect("common multiple");
            nf.nums[i] = &scale * c.num();
        }
        Ok(nf)
    }

    /// `nf(L_k * u)` from `nf(u)` through the multiplication matrices:
    /// `L_k (sum (n_i/d) U_i) = sum (sigma_k(n_i)/sigma_k(d)) (L_k U_i)`.
    /// The shared denominator becomes `sigma_k(d)` times the product of the
    /// distinct multiplication-row denominators; in a univariate run only
    /// one row is nontrivial, so no redundant factor ever enters.
    fn nf_shift(&self, nf: &NFVec, k: usize) -> NFVec {
        let delta = Mono::var(k, 1);
        let vars = self.sig.coeff_vars();
        let sig_den = self.sig.sigma_poly(&nf.den, &delta);
        let active: Vec<usize> = (0..nf.nums.len())
            .filter(|&i| !nf.nums[i].is_zero())
            .collect();
        let mut extra: Vec<Polynomial> = Vec::new();
        for &i in &active {
            let d = &self.mulmat[k][i].den;
            if !d.is_one() && !extra.contains(d) {
                extra.push(d.clone());
            }
        }
        let mut extra_product = Polynomial::one(vars);
        for e in &extra {
            extra_product = &extra_product * e;
        }
        let mut out = self.zero_nf();
        out.den = &sig_den * &extra_product;
        for &i in &active {
            let row = &self.mulmat[k][i];
            let shifted_num = self.sig.sigma_poly(&nf.nums[i], &delta);
            let factor = extra_product
                .exact_div(&row.den)
                .expect("row denominator divides the product");
            let scaled = &shifted_num * &factor;
            for (t, entry) in row.nums.iter().enumerate() {
                if entry.is_zero() {
                    continue;
                }
                out.nums[t] = &out.nums[t] + &(&scaled * entry);
            }
        }
        out
    }

    /// Product of the residual-group translates of `den`, skipping the
    /// identity: `q_j -> zeta_{k_j}^b q_j` and `M_k -> zeta_{l_k}^a M_k`.
    /// `den` times this cofactor is invariant under the group, hence an
    /// admissible polynomial; scaling a support column by it is a legitimate
    /// reparametrization of the unknown over `K(Q, N)`.
    fn norm_cofactor(&self, den: &Polynomial) -> Polynomial {
        let vars = self.sig.coeff_vars();
        if den.is_one() {
            return Polynomial::one(vars);
        }
        let mut orders = Vec::new();
        for j in 0..self.sig.s() {
            orders.push((self.sig.q_pos(j), self.kq[j] as u32));
        }
        for k in 0..self.sig.r() {
            orders.push((self.sig.m_pos(k), self.ell[k] as u32));
        }
        let mut cof = Polynomial::one(vars);
        let mut element = vec![0u32; orders.len()];
        loop {
            // Odometer over the group; skip the identity.
            let mut pos = 0;
            loop {
                if pos == orders.len() {
                    return cof;
                }
                element[pos] += 1;
                if element[pos] < orders[pos].1 {
                    break;
                }
                element[pos] = 0;
                pos += 1;
            }
            let translate = den.map_terms_into(vars, |m, c| {
                let mut scaled = c.clone();
                for (t, &(var, order)) in orders.iter().enumerate() {
                    if element[t] == 0 {
                        continue;
                    }
                    let e = m.exp(var) as u32;
                    if e > 0 {
                        let root = CyclotomicNumber::root_of_unity(
                            order,
                            (element[t] as u64 * e as u64 % order as u64) as i64,
                        );
                        scaled = &scaled * &root;
                    }
                }
                (m, scaled)
            });
            cof = &cof * &translate;
        }
    }

    /// Norm-cleared coordinate vector of a support monomial: residual class
    /// and staircase position index the coordinates, entries are polynomials
    /// in the admissible block variables `(Q, N)` (stored on the q/M slots).
    /// Also returns the admissible norm that scales the unknown back.
    fn column_vector(
        &self,
        cand: &Cand,
        coords: &mut BTreeMap<(usize, Mono), usize>,
    ) -> (BTreeMap<usize, RationalFunction>, Polynomial) {
        let vars = self.sig.coeff_vars();
        let cof = self.norm_cofactor(&cand.nf.den);
        let norm = &cand.nf.den * &cof;
        let mut entries: BTreeMap<usize, Vec<(Mono, CyclotomicNumber)>> = BTreeMap::new();
        for (i, n) in cand.nf.nums.iter().enumerate() {
            if n.is_zero() {
                continue;
            }
            let cleared = if cof.is_one() { n.clone() } else { n * &cof };
            for (m, coef) in cleared.terms() {
                let mut res = Mono::ONE;
                let mut aux = Mono::ONE;
                for j in 0..self.sig.s() {
                    let a = m.exp(self.sig.q_pos(j));
                    let k = self.kq[j];
                    res = res.mul(&Mono::var(self.sig.q_pos(j), a % k));
                    aux = aux.mul(&Mono::var(self.sig.q_pos(j), a / k));
                }
                for kp in 0..self.sig.r() {
                    let b = m.exp(self.sig.m_pos(kp));
                    let l = self.ell[kp];
                    res = res.mul(&Mono::var(self.sig.m_pos(kp), b % l));
                    aux = aux.mul(&Mono::var(self.sig.m_pos(kp), b / l));
                }
                let next = coords.len();
                let coord = *coords.entry((i, res)).or_insert(next);
                entries.entry(coord).or_default().push((aux, coef.clone()));
            }
        }
        let entries = entries
            .into_iter()
            .filter_map(|(coord, terms)| {
                let p = Polynomial::from_terms(vars, terms);
                (!p.is_zero()).then(|| (coord, RationalFunction::from_poly(p)))
            })
            .collect();
        (entries, norm)
    }

    fn run(self) -> Result<EngineOutput> {
        let comps: Vec<Comp> = {
            let mut cs: Vec<Comp> = self.stairs.iter().map(|m| m.comp).collect();
            cs.sort_unstable();
            cs.dedup();
            if cs.is_empty() {
                cs.push(Comp::Op);
            }
            cs
        };
        let mut frontier: Vec<Cand> = comps
            .iter()
            .map(|&comp| {
                let mono = MMono { comp, l: Mono::ONE };
                Ok(Cand {
                    mono,
                    nf: self.nf_of_monomial(mono)?,
                })
            })
            .collect::<Result<_>>()?;
        let mut rejected: Vec<Cand> = Vec::new();
        let mut output: Vec<(MMono, VOp)> = Vec::new();
        let mut state = Echelon::new(self.sig.coeff_vars());

        while !frontier.is_empty() {
            // Smallest frontier monomial in the runtime order.
            let pick = frontier
                .iter()
                .enumerate()
                .min_by(|(_, a), (_, b)| self.order.cmp_mm(&a.mono, &b.mono, self.sig.r()))
                .map(|(i, _)| i)
                .expect("frontier nonempty");
            let cand = frontier.swap_remove(pick);
            std::eprintln!("[engine] monomial {:?} (den terms {})", cand.mono, cand.nf.den.num_terms());
            let t0 = std::time::Instant::now();
            let (column, norm) = self.column_vector(&cand, &mut state.coords);
            std::eprintln!("[engine] column built in {:?}; entries {}", t0.elapsed(), column.len());
            let t1 = std::time::Instant::now();
            let outcome = state.offer(column);
            std::eprintln!("[engine] offer took {:?}", t1.elapsed());
            match outcome {
                Offer::Dependent(combo) => {
                    let t2 = std::time::Instant::now();
                    let element = self.solution_element(&cand, &norm, &combo, &state)?;
                    std::eprintln!("[engine] solution built in {:?}", t2.elapsed());
                    let t3 = std::time::Instant::now();
                    let check = reduce_full(&element, &self.basis, &self.order);
                    std::eprintln!("[engine] verify reduce took {:?}", t3.elapsed());
                    if !check.is_zero() {
                        return Err(Error::Internal(String::from(
                            "ansatz solution does not reduce to zero",
                        )));
                    }
                    frontier.retain(|f| !cand.mono.divides(&f.mono));
                    output.push((cand.mono, element));
                }
                Offer::Independent => {
                    state.inserted.push((cand.mono, norm));
                    // Expand the frontier with the shift successors.
                    for k in 0..self.sig.r() {
                        let child = MMono {
                            comp: cand.mono.comp,
                            l: cand.mono.l.mul(&Mono::var(k, 1)),
                        };
                        if output.iter().any(|(lm, _)| lm.divides(&child)) {
                            continue;
                        }
                        if frontier.iter().any(|f| f.mono == child) {
                            continue;
                        }
                        let tnf = std::time::Instant::now();
                        let nf = self.nf_shift(&cand.nf, k);
                        std::eprintln!("[engine] nf_shift took {:?}", tnf.elapsed());
                        frontier.push(Cand { mono: child, nf });
                    }
                    rejected.push(cand);
                    if rejected.len() > self.rank_bound {
                        return Err(Error::BudgetExceeded(alloc::format!(
                            "ansatz support exceeded the rank bound {}; \
                             the input is not a zero-dimensional Groebner basis",
                            self.rank_bound
                        )));
                    }
                    if frontier.len() > 4 * self.rank_bound.max(1) {
                        return Err(Error::BudgetExceeded(String::from(
                            "frontier grew past four times the rank bound",
                        )));
                    }
                }
            }
        }

        Ok(EngineOutput {
            generators: output.into_iter().map(|(_, g)| g).collect(),
            rank_bound: self.rank_bound,
            rank: rejected.len(),
        })
    }

    /// Build the relation from a discovered dependence: the frontier
    /// monomial with coefficient `-norm`, and each rejected support monomial
    /// with coefficient `combo_j` times its recorded admissible norm, all
    /// expanded from `(Q, N)` block exponents back to `(q, M)`.
    fn solution_element(
        &self,
        cand: &Cand,
        cand_norm: &Polynomial,
        combo: &[RationalFunction],
        state: &Echelon,
    ) -> Result<VOp> {
        let expand = |p: &Polynomial| -> Polynomial {
            p.map_terms_into(self.sig.coeff_vars(), |m, coef| {
                let mut out_m = Mono::ONE;
                for j in 0..self.sig.s() {
                    let a = m.exp(self.sig.q_pos(j));
                    out_m = out_m.mul(&Mono::var(self.sig.q_pos(j), a * self.kq[j]));
                }
                for kp in 0..self.sig.r() {
                    let b = m.exp(self.sig.m_pos(kp));
                    out_m = out_m.mul(&Mono::var(self.sig.m_pos(kp), b * self.ell[kp]));
                }
                (out_m, coef.clone())
            })
        };
        // Norms already carry real (q, M) exponents; only the combination
        // coefficients live on the block variables and need expanding.
        let mut out = VOp::monomial(&self.sig, cand.mono)
            .scaled(&RationalFunction::from_poly(-cand_norm));
        for (c, (mono, norm)) in combo.iter().zip(&state.inserted) {
            if c.is_zero() {
                continue;
            }
            let expanded = RationalFunction::new(expand(c.num()), expand(c.den()))
                .expect("denominator stays nonzero under exponent expansion");
            let coef = &expanded * &RationalFunction::from_poly(norm.clone());
            out = out.add(&VOp::monomial(&self.sig, *mono).scaled(&coef));
        }
        Ok(out)
    }
}

/// Outcome of offering a column to the echelon.
enum Offer {
    /// The column equals the recorded combination of the inserted ones.
    Dependent(Vec<RationalFunction>),
    Independent,
}

/// Incremental reduced row echelon over the field `K(Q, N)`, tracking for
/// every echelon vector its expression in the inserted support columns.
/// Columns are stable across the whole run (norm-clearing does not depend on
/// the iteration), so each is reduced exactly once.
struct Echelon {
    vars: crate::kernel::VarSet,
    coords: BTreeMap<(usize, Mono), usize>,
    rows: Vec<EchRow>,
    /// Support monomial and admissible norm of every independent column.
    inserted: Vec<(MMono, Polynomial)>,
}

struct EchRow {
    lead: usize,
    /// Sparse entries with `entries[lead] = 1` and no entry at the lead of
    /// any other row.
    entries: BTreeMap<usize, RationalFunction>,
    /// Expression of this vector over the inserted columns.
    combo: Vec<RationalFunction>,
}

fn sparse_axpy_neg(
    target: &mut BTreeMap<usize, RationalFunction>,
    factor: &RationalFunction,
    source: &BTreeMap<usize, RationalFunction>,
    skip: usize,
) {
    for (coord, e) in source {
        if *coord == skip {
            continue;
        }
        let sub = factor * e;
        match target.entry(*coord) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(-&sub);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() - &sub;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
}

impl Echelon {
    fn new(vars: &crate::kernel::VarSet) -> Self {
        Echelon {
            vars: vars.clone(),
            coords: BTreeMap::new(),
            rows: Vec::new(),
            inserted: Vec::new(),
        }
    }

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero(&self.vars)
    }

    fn offer(&mut self, column: BTreeMap<usize, RationalFunction>) -> Offer {
        let mut r = column;
        // Reduce against the echelon; a single pass suffices because rows
        // carry no entries at each other's leads.
        let mut factors: Vec<RationalFunction> = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            match r.remove(&row.lead) {
                None => factors.push(self.zero()),
                Some(factor) => {
                    sparse_axpy_neg(&mut r, &factor, &row.entries, row.lead);
                    factors.push(factor);
                }
            }
        }
        // Express the reduction over the inserted columns.
        let mut over_inserted = vec![self.zero(); self.inserted.len()];
        for (row, f) in self.rows.iter().zip(&factors) {
            if f.is_zero() {
                continue;
            }
            for (slot, c) in over_inserted.iter_mut().zip(&row.combo) {
                if c.is_zero() {
                    continue;
                }
                let t = f * c;
                *slot = &*slot + &t;
            }
        }
        if r.is_empty() {
            return Offer::Dependent(over_inserted);
        }
        // Insert: normalize the new vector to lead coefficient 1 and keep
        // the reduced-echelon property by eliminating its lead everywhere.
        let lead = *r.keys().next().expect("nonempty remainder");
        let lead_val = r.get(&lead).cloned().expect("lead present");
        let inv = lead_val.inv().expect("nonzero lead");
        let entries: BTreeMap<usize, RationalFunction> =
            r.iter().map(|(c, e)| (*c, e * &inv)).collect();
        let mut new_combo: Vec<RationalFunction> = over_inserted
            .into_iter()
            .map(|v| if v.is_zero() { v } else { -&(&v * &inv) })
            .collect();
        new_combo.push(inv); // coefficient of the column being inserted
        let zero = RationalFunction::zero(&self.vars);
        for row in self.rows.iter_mut() {
            row.combo.push(zero.clone());
            let Some(c) = row.entries.remove(&lead) else {
                continue;
            };
            sparse_axpy_neg(&mut row.entries, &c, &entries, lead);
            for (old, delta) in row.combo.iter_mut().zip(&new_combo) {
                if delta.is_zero() {
                    continue;
                }
                let t = &c * delta;
                *old = &*old - &t;
            }
        }
        self.rows.push(EchRow {
            lead,
            entries,
            combo: new_combo,
        });
        Offer::Independent
    }
}
