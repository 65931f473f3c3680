//! The inhomogeneous recurrence of the colored Jones polynomial of the
//! figure-eight knot (4_1), used as the large end-to-end fixture: twisting
//! it in module mode must reproduce the published exponent profile, slope
//! set, and an oracle-verified annihilation of transformed solution tables.

use std::time::Instant;

use qtwist_core::kernel::{CyclotomicNumber, Mono, Polynomial, RationalFunction};
use qtwist_core::newton::{newton_polygon, slope_set};
use qtwist_core::oracle::{check_annihilates_module, twist_table, unroll_module};
use qtwist_core::ore::{ModuleElement, OreAlgebraSignature, OreOperator};
use qtwist_core::twist::{inhomogeneous_twist, TwistOptions, TwistSpec};

fn poly(sig: &OreAlgebraSignature, terms: &[(i64, u16, u16)]) -> Polynomial {
    Polynomial::from_terms(
        sig.coeff_vars(),
        terms.iter().map(|&(c, qe, me)| {
            (
                Mono::from_exponents(&[qe, me]),
                CyclotomicNumber::from_integer(c),
            )
        }),
    )
}

/// c2 = q^2 M^2 (q^2 M - 1)(q M^2 - 1)
/// c1 = -(q^4 M^4 - q^3 M^3 - q^3 M^2 - q M^2 - q M + 1)(q M - 1)^2 (q M + 1)
/// c0 = q^2 M^2 (M - 1)(q^3 M^2 - 1)
/// b  = q M (q M + 1)(q M^2 - 1)(q^3 M^2 - 1)
pub fn figure_eight_relation(sig: &OreAlgebraSignature) -> ModuleElement {
    let c2 = {
        let lead = poly(sig, &[(1, 2, 2)]);
        let f1 = poly(sig, &[(1, 2, 1), (-1, 0, 0)]);
        let f2 = poly(sig, &[(1, 1, 2), (-1, 0, 0)]);
        &(&lead * &f1) * &f2
    };
    let c1 = {
        let f0 = poly(
            sig,
            &[
                (1, 4, 4),
                (-1, 3, 3),
                (-1, 3, 2),
                (-1, 1, 2),
                (-1, 1, 1),
                (1, 0, 0),
            ],
        );
        let f1 = poly(sig, &[(1, 1, 1), (-1, 0, 0)]);
        let f2 = poly(sig, &[(1, 1, 1), (1, 0, 0)]);
        -&(&(&(&f0 * &f1) * &f1) * &f2)
    };
    let c0 = {
        let lead = poly(sig, &[(1, 2, 2)]);
        let f1 = poly(sig, &[(0, 0, 0), (1, 0, 1), (-1, 0, 0)]);
        let f2 = poly(sig, &[(1, 3, 2), (-1, 0, 0)]);
        &(&lead * &f1) * &f2
    };
    let b = {
        let lead = poly(sig, &[(1, 1, 1)]);
        let f1 = poly(sig, &[(1, 1, 1), (1, 0, 0)]);
        let f2 = poly(sig, &[(1, 1, 2), (-1, 0, 0)]);
        let f3 = poly(sig, &[(1, 3, 2), (-1, 0, 0)]);
        &(&(&lead * &f1) * &f2) * &f3
    };
    let op = sig.from_recurrences(&[vec![c0, c1, c2]]).unwrap().remove(0);
    let rhs = OreOperator::from_coefficient(sig, RationalFunction::from_poly(b));
    ModuleElement::new(op, rhs).unwrap()
}

/// Largest exponent of the given coefficient variable over both components.
fn max_exponent(rel: &ModuleElement, var: usize) -> u16 {
    let mut best = 0;
    for part in [&rel.op, &rel.rhs] {
        let cleared = part.cleared_denominators();
        for (_, c) in cleared.terms() {
            best = best.max(c.num().degree_in(var));
        }
    }
    best
}

#[test]
fn expanded_operator_matches_published_form() {
    let sig = OreAlgebraSignature::univariate();
    let rel = figure_eight_relation(&sig);
    // (q^5 M^5 - q^3 M^4 - q^4 M^3 + q^2 M^2) L^2
    let c2 = poly(&sig, &[(1, 5, 5), (-1, 3, 4), (-1, 4, 3), (1, 2, 2)]);
    // -q^7M^7 + 2q^6M^6 + (q^6+q^4)M^5 - (q^5+q^4+q^3)M^4 - (q^4+q^3+q^2)M^3
    //   + (q^3+q)M^2 + 2qM - 1
    let c1 = poly(
        &sig,
        &[
            (-1, 7, 7),
            (2, 6, 6),
            (1, 6, 5),
            (1, 4, 5),
            (-1, 5, 4),
            (-1, 4, 4),
            (-1, 3, 4),
            (-1, 4, 3),
            (-1, 3, 3),
            (-1, 2, 3),
            (1, 3, 2),
            (1, 1, 2),
            (2, 1, 1),
            (-1, 0, 0),
        ],
    );
    // q^5 M^5 - q^5 M^4 - q^2 M^3 + q^2 M^2
    let c0 = poly(&sig, &[(1, 5, 5), (-1, 5, 4), (-1, 2, 3), (1, 2, 2)]);
    let expected = sig.from_recurrences(&[vec![c0, c1, c2]]).unwrap().remove(0);
    assert_eq!(rel.op, expected);
    // input exponent profile: L 2, M 7, q 7
    assert_eq!(rel.op.order(), 2);
    assert_eq!(max_exponent(&rel, 0), 7);
    assert_eq!(max_exponent(&rel, 1), 7);
}

#[test]
fn input_newton_polygon_and_slopes() {
    let sig = OreAlgebraSignature::univariate();
    let rel = figure_eight_relation(&sig);
    let np = newton_polygon(&rel.op).unwrap();
    let expected: std::collections::BTreeSet<(i64, i64)> =
        [(0, 2), (1, 0), (2, 2), (2, 5), (1, 7), (0, 5)]
            .into_iter()
            .collect();
    assert_eq!(np.vertex_set(), expected);
    let slopes: Vec<String> = np.slopes.iter().map(|s| s.to_string()).collect();
    assert_eq!(slopes, ["-2", "2"]);
}

#[test]
fn twist_by_minus_one_module_mode() {
    let sig = OreAlgebraSignature::univariate();
    let rel = figure_eight_relation(&sig);
    let spec = TwistSpec::single(2, 1).unwrap();
    let started = Instant::now();
    let out = inhomogeneous_twist(&rel.op, &rhs_coefficient(&rel), &spec, TwistOptions::default())
        .unwrap();
    let elapsed = started.elapsed();
    eprintln!("figure-eight twist m=2 took {elapsed:?}");
    let twisted = &out.relation;
    assert_eq!(twisted.op.order(), 5);
    assert_eq!(max_exponent(twisted, 0), 58, "q-exponent");
    assert_eq!(max_exponent(twisted, 1), 22, "M-exponent");
    assert!(out.rank <= out.rank_bound);
    assert_eq!(out.rank_bound, 6);
    // slope set of the twisted homogeneous part grows by 0
    let slopes: Vec<String> = slope_set(&twisted.op)
        .unwrap()
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(slopes, ["-2", "0", "2"]);

    // Oracle: the twisted relation annihilates the twist of any solution.
    let init = [
        RationalFunction::one(sig.q_vars()),
        RationalFunction::one(sig.q_vars()),
    ];
    let table = unroll_module(&rel, &init, 40).unwrap();
    let twisted_table = twist_table(&table, &spec);
    let rep = check_annihilates_module(twisted, &twisted_table).unwrap();
    assert!(rep.ok(), "failures at {:?}", rep.failures);
    assert!(rep.checked >= 30, "only {} residuals checked", rep.checked);
    eprintln!("figure-eight twist m=2 + oracle took {:?}", started.elapsed());
}

fn rhs_coefficient(rel: &ModuleElement) -> RationalFunction {
    rel.rhs
        .coefficient(&Mono::ONE)
        .cloned()
        .unwrap_or_else(|| RationalFunction::zero(rel.signature().coeff_vars()))
}
