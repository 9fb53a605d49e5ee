use super::*;
use crate::algebra::Element;
use crate::catalog::{self, Fixture};
use crate::hermitian::LeadingTermCone;
use crate::matrix::{FieldRing, Matrix};
use crate::scalars::{Field, Scalar, SignOracle};
use proptest::prelude::*;

fn q0() -> Field {
    Field::rationals()
}

fn bounds() -> ClosureBounds {
    ClosureBounds::default()
}

fn verdict_for(fx: &Fixture) -> RealityVerdict {
    let f = fx.k_field().clone();
    formal_reality_check(fx.rep.gram(), &f.one(), &ordering_pool(&f), bounds()).unwrap()
}

#[test]
fn d3_extension_is_not_formally_real() {
    let fx = catalog::d3_symbolic().unwrap();
    let v = verdict_for(&fx);
    assert_eq!(v.status, RealityStatus::NotFormallyReal);
    assert!(v.verify().unwrap());
    let Some(Certificate::Opposite(c)) = &v.certificate else {
        panic!("expected an opposite pair");
    };
    let b = fx.k_field().generator("b").unwrap();
    let t = &c.target_values()[0];
    assert!(*t == b || *t == -&b, "certificate value {t}");
}

#[test]
fn alternating_case_is_not_formally_real() {
    let q = q0();
    let ring = FieldRing(q.clone());
    let c = Matrix::from_rows(&ring, vec![vec![q.zero(), q.one()], vec![q.int(-1), q.zero()]]).unwrap();
    let v = formal_reality_check(&c, &q.int(-1), &[SignOracle::Rational], bounds()).unwrap();
    assert_eq!(v.status, RealityStatus::NotFormallyReal);
    assert!(matches!(v.certificate, Some(Certificate::Alternating(_))));
    assert!(v.verify().unwrap());
}

#[test]
fn positive_quaternion_extension_is_formally_real() {
    let fx = catalog::quaternion(2, 3).unwrap();
    let v = verdict_for(&fx);
    assert_eq!(v.status, RealityStatus::FormallyReal);
    assert!(matches!(v.witness, Some(Witness::Ordering(SignOracle::Embedding { .. }))));
    assert!(v.verify().unwrap());
    assert_eq!(v.generators, vec![fx.k_field().one(), fx.k_field().int(3)]);
}

#[test]
fn cone_existence_basic_cases() {
    let q = q0();
    let yes = cone_existence(&q, &[q.one()], true, &[SignOracle::Rational], bounds()).unwrap();
    assert_eq!(yes.status, RealityStatus::FormallyReal);
    let f = Field::functions(&q, &["x"]);
    let b = f.generator("x").unwrap();
    let no = cone_existence(&f, &[f.one(), b.clone(), -&b], true, &ordering_pool(&f), bounds()).unwrap();
    assert_eq!(no.status, RealityStatus::NotFormallyReal);
    assert!(no.verify().unwrap());
    let neg = cone_existence(&q, &[q.int(-2), q.int(-5)], false, &[SignOracle::Rational], bounds()).unwrap();
    assert!(matches!(neg.witness, Some(Witness::NegatedOrdering(_))));
    let neg_unital = cone_existence(&q, &[q.int(-2)], true, &[SignOracle::Rational], bounds()).unwrap();
    assert_eq!(neg_unital.status, RealityStatus::NotFormallyReal);
}

#[test]
fn norm_criteria_agree() {
    let qc = catalog::quaternion_crossed(2, 3).unwrap();
    let r = norm_criteria(&qc.rep).unwrap();
    assert!(r.commuting && r.norms_in_k && r.gram_diagonal);
    let k = qc.k_field();
    assert_eq!(r.a().unwrap(), vec![k.one(), k.int(3)]);

    let bq = catalog::biquaternion().unwrap();
    let r = norm_criteria(&bq.rep).unwrap();
    assert!(r.agree() && r.norms_in_k);

    let d3 = catalog::d3_crossed(&catalog::d3_symbolic().unwrap()).unwrap();
    let r = norm_criteria(&d3.rep).unwrap();
    assert!(!r.commuting && !r.norms_in_k && !r.gram_diagonal);
}

#[test]
fn extension_criterion() {
    let d3 = catalog::d3_crossed(&catalog::d3_symbolic().unwrap()).unwrap();
    let pool = ordering_pool(d3.k_field());
    let rep = extension_formally_real(&d3.rep, &pool, bounds()).unwrap();
    assert_eq!(rep.verdict.status, RealityStatus::NotFormallyReal);
    assert!(rep.clause.contains("not in K"), "{}", rep.clause);
    assert!(rep.verdict.verify().unwrap());

    let qc = catalog::quaternion_crossed(2, 3).unwrap();
    let rep = extension_formally_real(&qc.rep, &ordering_pool(qc.k_field()), bounds()).unwrap();
    assert_eq!(rep.verdict.status, RealityStatus::FormallyReal);
    assert!(rep.verdict.verify().unwrap());

    let qn = catalog::quaternion_crossed(2, -3).unwrap();
    let rep = extension_formally_real(&qn.rep, &ordering_pool(qn.k_field()), bounds()).unwrap();
    assert_eq!(rep.verdict.status, RealityStatus::NotFormallyReal);
    assert!(rep.verdict.verify().unwrap());
}

#[test]
fn cocycle_norm_identity_holds() {
    for fx in [catalog::quaternion_crossed(2, 3).unwrap(), catalog::biquaternion().unwrap()] {
        let rows = cocycle_norm_identity(&fx.rep).unwrap();
        assert!(rows.iter().all(|r| r.2), "{}: {rows:?}", fx.name);
    }
}

#[test]
fn transformation_law_on_biquaternion() {
    let fx = catalog::biquaternion().unwrap();
    let alg = fx.algebra().clone();
    let k = fx.k_field().clone();
    let th = k.generator("th").unwrap();
    let u = &Element::scalar(&alg, &(&k.int(2) + &th)) + &fx.gen("e_s");
    let u = &u + &fx.involution().apply(&u);
    let d = &fx.gen("e_t") + &Element::scalar(&alg, &th);
    for s in 0..4 {
        assert!(transformation_law(&fx.rep, &u, &d, s).unwrap());
    }
}

#[test]
fn vanishing_squares_in_d3() {
    let fx = catalog::d3(2, 2).unwrap();
    let ds = catalog::vanishing_squares(&fx).unwrap();
    let cert = SohsCertificate::vanishing(fx.involution(), ds);
    assert!(cert.is_obstruction());
    let check = verify_sohs(&cert).unwrap();
    assert!(check.holds && check.residual.is_zero());

    let other = catalog::d3(3, 3).unwrap();
    let cert = SohsCertificate::vanishing(other.involution(), catalog::vanishing_squares(&other).unwrap());
    let check = verify_sohs(&cert).unwrap();
    assert!(!check.holds && !check.residual.is_zero());

    let zero = SohsCertificate::vanishing(fx.involution(), vec![Element::zero(fx.algebra())]);
    assert!(verify_sohs(&zero).unwrap().holds);
}

#[test]
fn quaternion_trace_forms() {
    let fx = catalog::quaternion_symbolic().unwrap();
    let f = fx.algebra().coeff_field().clone();
    let (a, b) = (f.generator("a").unwrap(), f.generator("b").unwrap());
    let two = f.int(2);
    let basis = default_f_basis(fx.presentation());
    let rep = trace_form_report(fx.presentation(), None, &[]).unwrap();
    assert!(rep.verified);
    let ab = &a * &b;
    let expected = [two.clone(), &two * &a, &two * &b, &two * &ab];
    assert_eq!(rep.gram, Matrix::diagonal(rep.gram.ring(), &expected));
    let bil = bilinear_trace_form(fx.presentation(), &basis).unwrap();
    let expected_bil = [two.clone(), &two * &a, &two * &b, -&(&two * &ab)];
    assert_eq!(bil, Matrix::diagonal(bil.ring(), &expected_bil));
    // independent oracle: matrix trace of the left regular representation
    for (i, gi) in basis.iter().enumerate() {
        for (j, gj) in basis.iter().enumerate() {
            let via_lambda = fx.rep.lambda_trace(&(gi * gj)).unwrap();
            assert_eq!(*bil.get(i, j), via_lambda);
        }
    }
}

#[test]
fn d3_at_two_trace_form_is_not_psd() {
    let fx = catalog::d3(2, 2).unwrap();
    let rep = trace_form_report(fx.presentation(), None, &[]).unwrap();
    assert!(rep.verified);
    assert!(!rep.per_ordering.is_empty());
    assert!(!rep.psd());
}

#[test]
fn star_ordering_cases() {
    let q = q0();
    let hamilton = catalog::quaternion_canonical(-1, -1).unwrap();
    let alg = hamilton.algebra().clone();
    let samples: Vec<Element> = (0..6)
        .map(|s| Element::from_coeffs(&alg, &[q.int(s), q.int(1 - s), q.int(2), q.int(s * s - 3)]))
        .collect();
    let ok = star_ordering_check(&q, &SignOracle::Rational, Some(hamilton.presentation()), &samples, &[q.one()]).unwrap();
    assert!(ok.holds());
    let trivial = star_ordering_check(&q, &SignOracle::Rational, None, &[], &[q.one()]).unwrap();
    assert!(trivial.holds());
    let k = Field::algebraic(&q, "t", &[q.int(-2), q.zero(), q.one()]).unwrap();
    let t = k.generator("t").unwrap();
    let neg = k
        .embeddings()
        .into_iter()
        .map(|e| SignOracle::embedding(&e))
        .find(|o| !sign_at(&t, o).unwrap().is_nonnegative())
        .unwrap();
    let bad = star_ordering_check(&k, &neg, None, &[], &[t.clone()]).unwrap();
    assert!(!bad.holds());
    assert_eq!(bad.failure, Some(t));
}

#[test]
fn anticommuting_leading_term_witness() {
    let (m1, m2) = catalog::anticommuting_cones();
    let plane = catalog::anticommuting_plane();
    let j = plane.y();
    let w = leading_term_witness(&m1, &[plane.one(), j.clone()]).unwrap();
    assert!(matches!(w, Some(Witness::LeadingTerm { samples: 2, .. })));
    assert!(leading_term_witness(&m2, &[plane.one(), j]).unwrap().is_none());
    let _: &LeadingTermCone = &m2;
}

#[test]
fn ordering_pool_shapes() {
    let q = q0();
    assert_eq!(ordering_pool(&q), vec![SignOracle::Rational]);
    let f = Field::functions(&q, &["a", "b"]);
    assert_eq!(ordering_pool(&f).len(), 4);
    let sqrt2 = Field::algebraic(&q, "t", &[q.int(-2), q.zero(), q.one()]).unwrap();
    assert_eq!(ordering_pool(&sqrt2).len(), 2);
    assert_eq!(ordering_pool(&catalog::eisenstein()), vec![SignOracle::Rational]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rational_diagonals(entries in prop::collection::vec((1i64..=9, 1i64..=5, any::<bool>()), 1..4)) {
        let q = q0();
        let gens: Vec<Scalar> = entries
            .iter()
            .map(|(n, d, neg)| q.frac(if *neg { -n } else { *n }, *d))
            .collect();
        let v = cone_existence(&q, &gens, false, &[SignOracle::Rational], bounds()).unwrap();
        let same_sign = entries.iter().all(|e| e.2) || entries.iter().all(|e| !e.2);
        prop_assert_eq!(v.status == RealityStatus::FormallyReal, same_sign);
        prop_assert!(v.verify().unwrap());
    }

    #[test]
    fn sohs_residual_is_linear(s in -4i64..=4) {
        let fx = catalog::d3(2, 2).unwrap();
        let mut ds = catalog::vanishing_squares(&fx).unwrap();
        let f = fx.algebra().coeff_field().clone();
        let extra = Element::scalar(fx.algebra(), &f.int(s));
        ds.push(extra);
        let check = verify_sohs(&SohsCertificate::vanishing(fx.involution(), ds)).unwrap();
        prop_assert_eq!(check.residual, Element::scalar(fx.algebra(), &f.int(s * s)));
    }
}

#[test]
fn extension_identities_on_crossed_fixtures() {
    for fx in [catalog::quaternion_crossed(2, 3).unwrap(), catalog::biquaternion().unwrap()] {
        let k = fx.k_field().clone();
        for o in ordering_pool(&k) {
            let mut rng = crate::sample::rng(7);
            let rep = extension_identities(&fx.rep, ordering_cone(&k, &o), &mut rng, 12).unwrap();
            assert!(rep.holds(), "{}: {:?}", fx.name, rep.tallies);
        }
    }
}
