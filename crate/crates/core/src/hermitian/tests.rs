use std::sync::Arc;

use super::*;
use crate::algebra::{Algebra, Element, Involution, QuantumPlane, SkewPoly};
use crate::matrix::{FieldRing, Matrix, RepresentationContext, StarRing};
use crate::projection::SubfieldPresentation;
use crate::scalars::{Field, Scalar, SignOracle};
use proptest::prelude::*;

fn q0() -> Field {
    Field::rationals()
}

fn gaussian() -> Field {
    let q = q0();
    let k = Field::algebraic(&q, "i", &[q.int(1), q.int(0), q.int(1)]).unwrap();
    let i = k.generator("i").unwrap();
    k.with_involution(&-&i).unwrap()
}

fn eisenstein() -> Field {
    let q = q0();
    let k = Field::algebraic(&q, "e", &[q.int(1), q.int(1), q.int(1)]).unwrap();
    let e = k.generator("e").unwrap();
    k.with_involution(&(&e * &e)).unwrap()
}

/// Quaternions `(a, b)` over Q with `i* = i`, `j* = j`, presented over
/// `K = Q(i)`.
fn quaternion_ctx(a: i64, b: i64) -> Arc<RepresentationContext> {
    let q = q0();
    let h = Algebra::quaternion(&q, &q.int(a), &q.int(b)).unwrap();
    let inv = Involution::new(&h, vec![h.generator("i").unwrap(), h.generator("j").unwrap()]).unwrap();
    let pres = SubfieldPresentation::symbol_standard(&inv).unwrap();
    Arc::new(RepresentationContext::new(&pres).unwrap())
}

fn mat(ring: &FieldRing, rows: &[&[Scalar]]) -> Matrix<FieldRing> {
    Matrix::from_rows(ring, rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

#[test]
fn d3_gram_diagonalizes_to_one_b_minus_b() {
    let f = Field::functions(&eisenstein(), &["a", "b"]);
    let b = f.generator("b").unwrap();
    let ring = FieldRing(f.clone());
    let (o, z) = (f.one(), f.zero());
    let a = mat(&ring, &[&[o.clone(), z.clone(), z.clone()], &[z.clone(), z.clone(), b.clone()], &[z.clone(), b.clone(), z]]);
    let res = diagonalize(&a, &o).unwrap();
    assert!(res.verify(&a).unwrap());
    assert_eq!(res.diagonal(), vec![o, b.clone(), -&b]);
    assert_eq!(res.zeros, 0);
    assert!(!res.p.det().unwrap().is_zero());
}

#[test]
fn hyperbolic_pair_splits_to_b_minus_b() {
    let f = Field::functions(&q0(), &["a", "b"]);
    let b = f.generator("b").unwrap();
    let ring = FieldRing(f.clone());
    let a = mat(&ring, &[&[f.zero(), b.clone()], &[b.clone(), f.zero()]]);
    let res = diagonalize(&a, &f.one()).unwrap();
    assert!(res.verify(&a).unwrap());
    let pool = vec![f.one(), f.int(2), f.frac(1, 2)];
    assert!(match_diagonal(&ring, &res.diagonal(), &[-&b, b.clone()], &pool).is_some());
    assert!(match_diagonal(&ring, &res.diagonal(), &[b.clone(), b], &pool).is_none());
}

#[test]
fn diagonal_input_is_kept() {
    let q = q0();
    let ring = FieldRing(q.clone());
    let a = Matrix::diagonal(&ring, &[q.int(3), q.int(-1), q.int(5)]);
    let res = diagonalize(&a, &q.one()).unwrap();
    assert_eq!(res.p, Matrix::identity(&ring, 3));
    assert_eq!(res.diagonal(), vec![q.int(3), q.int(-1), q.int(5)]);
}

#[test]
fn zero_matrix_has_empty_diagonal() {
    let q = q0();
    let ring = FieldRing(q.clone());
    let res = diagonalize(&Matrix::zeros(&ring, 3, 3), &q.one()).unwrap();
    assert!(res.blocks.is_empty());
    assert_eq!(res.zeros, 3);
}

#[test]
fn non_hermitian_is_rejected() {
    let q = q0();
    let ring = FieldRing(q.clone());
    let a = mat(&ring, &[&[q.one(), q.int(2)], &[q.int(3), q.one()]]);
    assert!(matches!(diagonalize(&a, &q.one()), Err(HermitianError::NotHermitian(_))));
}

#[test]
fn alternating_witness_swaps() {
    let q = q0();
    let ring = FieldRing(q.clone());
    let c = mat(&ring, &[&[q.zero(), q.one()], &[q.int(-1), q.zero()]]);
    let w = alternating_degenerate_witness(&c, &q.int(-1)).unwrap();
    assert_eq!(w.q, mat(&ring, &[&[q.zero(), q.one()], &[q.one(), q.zero()]]));
    assert!(w.verify().unwrap());
    let z = alternating_degenerate_witness(&Matrix::zeros(&ring, 2, 2), &q.int(-1)).unwrap();
    assert_eq!(z.q, Matrix::identity(&ring, 2));
    assert!(matches!(
        alternating_degenerate_witness(&c, &q.one()),
        Err(HermitianError::NotHermitian(_)) | Err(HermitianError::WrongCase(_))
    ));
}

#[test]
fn skew_hermitian_over_gaussian_is_diagonalized() {
    let k = gaussian();
    let i = k.generator("i").unwrap();
    let ring = FieldRing(k.clone());
    let m1 = k.int(-1);
    // -1-hermitian: A* = -A
    let a = mat(&ring, &[&[k.zero(), k.one()], &[m1.clone(), k.zero()]]);
    let res = diagonalize(&a, &m1).unwrap();
    assert!(res.is_diagonal());
    assert!(res.verify(&a).unwrap());
    for d in res.diagonal() {
        assert_eq!(&m1 * &d.conj(), d);
    }
    assert!(!i.is_symmetric());
}

#[test]
fn quaternion_matrix_over_division_ring() {
    let ctx = quaternion_ctx(-1, -1);
    let h = ctx.presentation().algebra().clone();
    let std = Involution::quaternion_standard(&h).unwrap();
    let ring = AlgebraRingFor::new(&std);
    let (i, j) = (h.generator("i").unwrap(), h.generator("j").unwrap());
    let one = Element::one(&h);
    let q = &i + &j;
    let a = Matrix::from_rows(&ring, vec![vec![one.clone(), q.clone()], vec![std.apply(&q), one.scale(&q0().int(5))]]).unwrap();
    let res = diagonalize(&a, &ring.one()).unwrap();
    assert!(res.verify(&a).unwrap());
    assert_eq!(res.diagonal(), vec![one.clone(), one.scale(&q0().int(3))]);
}

struct AlgebraRingFor;

impl AlgebraRingFor {
    fn new(inv: &Involution) -> crate::matrix::AlgebraRing {
        let h = inv.algebra();
        let fix = Involution::new(h, vec![h.generator("i").unwrap(), h.generator("j").unwrap()]).unwrap();
        let pres = SubfieldPresentation::symbol_standard(&fix).unwrap();
        crate::matrix::AlgebraRing {
            involution: inv.clone(),
            rep: Arc::new(RepresentationContext::new(&pres).unwrap()),
        }
    }
}

#[test]
fn closure_finds_b_and_minus_b() {
    let f = Field::functions(&q0(), &["a", "b"]);
    let b = f.generator("b").unwrap();
    let ring = FieldRing(f.clone());
    let mut c = BoundedClosure::new(&ring, &[f.one(), b.clone(), -&b], &[f.one()], ClosureBounds::default());
    let cert = c.find_opposite().unwrap();
    assert!(cert.verify_opposite(&ring));
    assert_eq!(cert.target_values(), vec![b.clone(), -&b]);
}

#[test]
fn closure_reaches_minus_i_in_sqrt2() {
    // N contains 1, b = 3, i = sqrt 2 and the obstruction -b i
    let ctx = quaternion_ctx(2, 3);
    let k = ctx.presentation().k_field().clone();
    let i = k.top_generator().unwrap();
    let ring = FieldRing(k.clone());
    let gens = vec![k.one(), k.int(3), i.clone(), &k.int(-3) * &i];
    let pool = vec![k.one(), k.frac(1, 3)];
    let mut c = BoundedClosure::new(&ring, &gens, &pool, ClosureBounds::default());
    let idx = c.reach(&-&i).unwrap();
    let cert = c.certificate(&[idx]);
    assert!(cert.verify(&ring));
    assert_eq!(cert.target_values(), vec![-&i]);
    let mut tampered = cert.clone();
    tampered.steps.last_mut().unwrap().value = i.clone();
    assert!(!tampered.verify(&ring));
}

#[test]
fn quaternion_orderings_separate_i() {
    let ctx = quaternion_ctx(2, 3);
    let k = ctx.presentation().k_field().clone();
    let i = k.top_generator().unwrap();
    let emb = k.embeddings();
    assert_eq!(emb.len(), 2);
    let cones: Vec<OrderingCone> = emb.iter().map(|e| OrderingCone::new(&k, SignOracle::embedding(e))).collect();
    let pos: Vec<bool> = cones.iter().map(|c| c.contains(&i).unwrap() == Membership::Member).collect();
    assert_ne!(pos[0], pos[1]);
    for c in &cones {
        assert_eq!(c.contains(&k.int(3)).unwrap(), Membership::Member);
        assert_eq!(c.contains(&k.zero()).unwrap(), Membership::Member);
    }
}

#[test]
fn extension_on_k_matches_twisted_diagonal() {
    // A lambda(k) = diag(k, b k^sigma) for the quaternion presentation
    let ctx = quaternion_ctx(2, 3);
    let k = ctx.presentation().k_field().clone();
    let i = k.top_generator().unwrap();
    for e in k.embeddings() {
        let n: Arc<dyn Cone<Scalar>> = Arc::new(OrderingCone::new(&k, SignOracle::embedding(&e)));
        let ext = Extended::new(n.clone(), ctx.clone());
        for c in [k.one(), i.clone(), -&i, &k.int(2) + &i, &k.int(1) - &i] {
            let u = ctx.presentation().embed(&c).unwrap();
            let direct = n.contains(&c).unwrap().and(n.contains(&(&k.int(3) * &sigma(&c))).unwrap());
            assert_eq!(ext.contains(&u).unwrap(), direct, "k = {c}");
        }
    }
}

/// `p + q i -> p - q i`
fn sigma(c: &Scalar) -> Scalar {
    let cs = c.residue_coeffs().unwrap();
    let f = c.field();
    &f.coerce(&cs[0]).unwrap() - &(&f.coerce(&cs[1]).unwrap() * &f.top_generator().unwrap())
}

#[test]
fn lifted_and_restricted_are_inverse() {
    let ctx = quaternion_ctx(2, 3);
    let k = ctx.presentation().k_field().clone();
    let ring = FieldRing(k.clone());
    let i = k.top_generator().unwrap();
    let e = k.embeddings()[1].clone();
    let n: Arc<dyn Cone<Scalar>> = Arc::new(OrderingCone::new(&k, SignOracle::embedding(&e)));
    let lifted: Arc<dyn Cone<Matrix<FieldRing>>> = Arc::new(Lifted::<FieldRing>::new(n.clone(), &k.one()));
    let g = Restricted::new(lifted.clone(), &ring, 3);
    for c in [k.one(), -&i, &i - &k.int(1), &k.int(-2) * &i, k.zero()] {
        assert_eq!(g.contains(&c).unwrap(), n.contains(&c).unwrap());
    }
    let m = mat(&ring, &[&[k.one(), i.clone()], &[i.clone(), k.int(3)]]);
    // det = 3 - 2 > 0, diag entries 1 and 1
    assert_eq!(lifted.contains(&m).unwrap(), Membership::Member);
    assert_eq!(lifted.contains(&m.neg()).unwrap(), Membership::NonMember);
}

fn eisenstein_plane() -> (QuantumPlane, Scalar) {
    let k = eisenstein();
    let e = k.generator("e").unwrap();
    (QuantumPlane::new(&k, &e, ["x", "y"]).unwrap(), e)
}

fn anticommuting_plane() -> QuantumPlane {
    let q = q0();
    QuantumPlane::new(&q, &q.int(-1), ["i", "j"]).unwrap()
}

fn skew_sample(plane: QuantumPlane, coeff: Vec<Scalar>, max: u32) -> impl Strategy<Value = SkewPoly> {
    prop::collection::vec((0..=max, 0..=max, 0..coeff.len(), -3i64..=3), 1..4).prop_map(move |ts| {
        let f = plane.field().clone();
        let mut p = plane.zero();
        for (m, n, c, s) in ts {
            p = p.add(&plane.monomial(&(&coeff[c] * &f.int(s)), m, n));
        }
        p
    })
}

fn d3_cone() -> LeadingTermCone {
    let (plane, e) = eisenstein_plane();
    LeadingTermCone::new(&plane, LtRule::Power(e), SignOracle::Rational)
}

fn anticommuting_cones() -> (LeadingTermCone, LeadingTermCone) {
    let plane = anticommuting_plane();
    (
        LeadingTermCone::new(&plane, LtRule::HalfParity { shift_n: false }, SignOracle::Rational),
        LeadingTermCone::new(&plane, LtRule::HalfParity { shift_n: true }, SignOracle::Rational),
    )
}

#[test]
fn anticommuting_j_separates() {
    let (m1, m2) = anticommuting_cones();
    let j = anticommuting_plane().y();
    assert_eq!(m1.contains(&j).unwrap(), Membership::Member);
    assert_eq!(m2.contains(&j).unwrap(), Membership::NonMember);
    assert_eq!(m2.contains(&j.neg()).unwrap(), Membership::Member);
    assert_eq!(m1.contains(&anticommuting_plane().zero()).unwrap(), Membership::Member);
}

fn check_cone_axioms(cone: &LeadingTermCone, s: &SkewPoly, t: &SkewPoly, r: &SkewPoly) -> Result<(), TestCaseError> {
    let hs = s.add(&s.star());
    let ht = t.mul(&t.star());
    if hs.is_zero() {
        return Ok(());
    }
    let ms = cone.contains(&hs).unwrap();
    let mt = cone.contains(&ht).unwrap();
    prop_assert_eq!(mt, Membership::Member);
    let neg = cone.contains(&hs.neg()).unwrap();
    prop_assert!(ms != neg, "exactly one of s, -s is a member");
    if ms == Membership::Member {
        prop_assert_eq!(cone.contains(&hs.add(&ht)).unwrap(), Membership::Member);
        if !r.is_zero() {
            prop_assert_eq!(cone.contains(&r.mul(&hs).mul(&r.star())).unwrap(), Membership::Member);
            prop_assert_eq!(cone.contains(&r.star().mul(&hs).mul(r)).unwrap(), Membership::Member);
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn diagonalization_identity_over_q(v in prop::collection::vec(-3i64..=3, 10), zero_diag in any::<bool>()) {
        let q = q0();
        let ring = FieldRing(q.clone());
        let n = 4;
        let mut a = Matrix::zeros(&ring, n, n);
        let mut it = v.into_iter();
        for i in 0..n {
            for j in i..n {
                let x = it.next().unwrap();
                let x = if zero_diag && i == j { 0 } else { x };
                a.set(i, j, q.int(x));
                a.set(j, i, q.int(x));
            }
        }
        let res = diagonalize(&a, &q.one()).unwrap();
        prop_assert!(res.is_diagonal());
        prop_assert!(res.verify(&a).unwrap());
        prop_assert!(!res.p.det().unwrap().is_zero());
        prop_assert_eq!(res.diagonal().len(), a.rank());
    }

    #[test]
    fn diagonalization_over_gaussian(v in prop::collection::vec((-2i64..=2, -2i64..=2), 6), eps_idx in 0usize..3) {
        let k = gaussian();
        let i = k.generator("i").unwrap();
        let ring = FieldRing(k.clone());
        let eps = [k.one(), k.int(-1), i.clone()][eps_idx].clone();
        let n = 3;
        let mut a = Matrix::zeros(&ring, n, n);
        let mut it = v.into_iter();
        for r in 0..n {
            for c in r..n {
                let (p, q) = it.next().unwrap();
                let x = &k.int(p) + &(&k.int(q) * &i);
                if r == c {
                    // eps x* = x: take x + eps x*
                    a.set(r, r, &x + &(&eps * &x.conj()));
                } else {
                    a.set(r, c, x.clone());
                    a.set(c, r, &eps * &x.conj());
                }
            }
        }
        let res = diagonalize(&a, &eps).unwrap();
        prop_assert!(res.is_diagonal());
        prop_assert!(res.verify(&a).unwrap());
        for d in res.diagonal() {
            prop_assert_eq!(&eps * &d.conj(), d);
        }
    }

    #[test]
    fn alternating_witness_negates(v in prop::collection::vec(-3i64..=3, 6)) {
        let q = q0();
        let ring = FieldRing(q.clone());
        let mut c = Matrix::zeros(&ring, 4, 4);
        let mut it = v.into_iter();
        for i in 0..4 {
            for j in i + 1..4 {
                let x = it.next().unwrap();
                c.set(i, j, q.int(x));
                c.set(j, i, q.int(-x));
            }
        }
        let w = alternating_degenerate_witness(&c, &q.int(-1)).unwrap();
        prop_assert!(w.verify().unwrap());
        prop_assert_eq!(c.congruence(&w.p).unwrap(), w.normal_form.clone());
    }

    #[test]
    fn congruence_invariance_of_lift(v in prop::collection::vec(-3i64..=3, 3), p in prop::collection::vec(-2i64..=2, 4)) {
        let ctx = quaternion_ctx(2, 3);
        let k = ctx.presentation().k_field().clone();
        let ring = FieldRing(k.clone());
        let e = k.embeddings()[0].clone();
        let n: Arc<dyn Cone<Scalar>> = Arc::new(OrderingCone::new(&k, SignOracle::embedding(&e)));
        let lifted = Lifted::<FieldRing>::new(n, &k.one());
        let a = mat(&ring, &[&[k.int(v[0]), k.int(v[1])], &[k.int(v[1]), k.int(v[2])]]);
        let pm = mat(&ring, &[&[k.int(p[0]), k.int(p[1])], &[k.int(p[2]), k.int(p[3])]]);
        prop_assume!(!pm.det().unwrap().is_zero());
        prop_assert_eq!(lifted.contains(&a).unwrap(), lifted.contains(&a.congruence(&pm).unwrap()).unwrap());
    }

    #[test]
    fn d3_leading_term_cone_axioms(
        s in skew_sample(eisenstein_plane().0, vec![q0_in_e(1), e_in_e()], 3),
        t in skew_sample(eisenstein_plane().0, vec![q0_in_e(1), e_in_e()], 2),
        r in skew_sample(eisenstein_plane().0, vec![q0_in_e(1), e_in_e()], 2),
    ) {
        check_cone_axioms(&d3_cone(), &s, &t, &r)?;
    }

    #[test]
    fn anticommuting_cone_axioms(
        s in skew_sample(anticommuting_plane(), vec![q0().one()], 3),
        t in skew_sample(anticommuting_plane(), vec![q0().one()], 2),
        r in skew_sample(anticommuting_plane(), vec![q0().one()], 2),
    ) {
        let (m1, m2) = anticommuting_cones();
        check_cone_axioms(&m1, &s, &t, &r)?;
        check_cone_axioms(&m2, &s, &t, &r)?;
    }

    #[test]
    fn anticommuting_cones_agree_on_even_j(s in skew_sample(anticommuting_plane(), vec![q0().one()], 3)) {
        let plane = anticommuting_plane();
        let mut even = plane.zero();
        for (e, c) in s.terms() {
            even = even.add(&plane.monomial(c, e.0, 2 * e.1));
        }
        let h = even.add(&even.star());
        prop_assume!(!h.is_zero());
        let (m1, m2) = anticommuting_cones();
        prop_assert_eq!(m1.contains(&h).unwrap(), m2.contains(&h).unwrap());
    }
}

fn q0_in_e(n: i64) -> Scalar {
    eisenstein().int(n)
}

fn e_in_e() -> Scalar {
    eisenstein().generator("e").unwrap()
}
