use super::*;
use crate::algebra::Algebra;
use crate::projection::SubfieldPresentation;
use proptest::prelude::*;

fn quaternion_ctx(a: i64, b: i64) -> (RepresentationContext, Field) {
    let q0 = Field::rationals();
    let h = Algebra::quaternion(&q0, &q0.int(a), &q0.int(b)).unwrap();
    let i = h.generator("i").unwrap();
    let j = h.generator("j").unwrap();
    let inv = Involution::new(&h, vec![i, j]).unwrap();
    let pres = SubfieldPresentation::symbol_standard(&inv).unwrap();
    (RepresentationContext::new(&pres).unwrap(), q0)
}

fn eisenstein_ab() -> Field {
    let q0 = Field::rationals();
    let k = Field::algebraic(&q0, "e", &[q0.int(1), q0.int(1), q0.int(1)]).unwrap();
    let e = k.generator("e").unwrap();
    let k = k.with_involution(&(&e * &e)).unwrap();
    Field::functions(&k, &["a", "b"])
}

fn d3_ctx() -> RepresentationContext {
    let f = eisenstein_ab();
    let (a, b, e) = (
        f.generator("a").unwrap(),
        f.generator("b").unwrap(),
        f.generator("e").unwrap(),
    );
    let alg = Algebra::symbol(&f, 3, &a, &b, &e, ["x", "y"]).unwrap();
    let inv = Involution::fixing_generators(&alg).unwrap();
    let pres = SubfieldPresentation::symbol_standard(&inv).unwrap();
    RepresentationContext::new(&pres).unwrap()
}

#[test]
fn quaternion_lambda_matches_display() {
    let (ctx, q0) = quaternion_ctx(-1, -3);
    let h = ctx.presentation().algebra().clone();
    let k = ctx.presentation().k_field().clone();
    let t = k.top_generator().unwrap();
    let (al, be, ga, de) = (2, -1, 4, 3);
    let z = Element::from_coeffs(&h, &[q0.int(al), q0.int(ga), q0.int(be), q0.int(de)]);
    let kk = |p: i64, q: i64| &k.int(p) + &(&t * &k.int(q));
    let expected = Matrix::from_rows(
        ctx.ring(),
        vec![
            vec![kk(al, be), &k.int(-3) * &kk(ga, de)],
            vec![kk(ga, -de), kk(al, -be)],
        ],
    )
    .unwrap();
    assert_eq!(ctx.lambda(&z).unwrap(), expected);
    assert_eq!(*ctx.gram(), Matrix::diagonal(ctx.ring(), &[k.one(), k.int(-3)]));
    assert_eq!(ctx.lambda(&Element::one(&h)).unwrap(), Matrix::identity(ctx.ring(), 2));
}

#[test]
fn quaternion_sharp_formula() {
    let (ctx, _) = quaternion_ctx(2, 5);
    let k = ctx.presentation().k_field().clone();
    let t = k.top_generator().unwrap();
    let (x, y, u, v) = (&t + &k.int(1), &t * &k.int(3), k.int(-2), &t - &k.int(7));
    let m = Matrix::from_rows(ctx.ring(), vec![vec![x.clone(), y.clone()], vec![u.clone(), v.clone()]]).unwrap();
    let b = k.int(5);
    let expected = Matrix::from_rows(
        ctx.ring(),
        vec![
            vec![x.conj(), &b * &u.conj()],
            vec![&y.conj() / &b, v.conj()],
        ],
    )
    .unwrap();
    assert_eq!(ctx.sharp(&m).unwrap(), expected);
    let id = Matrix::identity(ctx.ring(), 2);
    assert_eq!(ctx.sharp(&id).unwrap(), id);
}

#[test]
fn d3_projection_and_gram() {
    let ctx = d3_ctx();
    let pres = ctx.presentation();
    let alg = pres.algebra();
    let y = alg.generator("y").unwrap();
    let f = alg.coeff_field();
    let b = f.generator("b").unwrap();
    let k = pres.k_field();
    assert!(pres.f(&Element::one(alg)).unwrap().is_one());
    for (p, val) in [(1, k.zero()), (2, k.zero()), (3, k.coerce(&b).unwrap()), (4, k.zero())] {
        assert_eq!(pres.f(&y.pow(p)).unwrap(), val, "f(y^{p})");
    }
    let bk = k.coerce(&b).unwrap();
    let expected = Matrix::from_rows(
        ctx.ring(),
        vec![
            vec![k.one(), k.zero(), k.zero()],
            vec![k.zero(), k.zero(), bk.clone()],
            vec![k.zero(), bk, k.zero()],
        ],
    )
    .unwrap();
    assert_eq!(*ctx.gram(), expected);
    let x = alg.generator("x").unwrap();
    assert_eq!(
        ctx.lambda(&(&x * &y)).unwrap(),
        ctx.lambda(&x).unwrap().checked_mul(&ctx.lambda(&y).unwrap()).unwrap()
    );
}

#[test]
fn quaternion_inverse_of_i() {
    let (ctx, q0) = quaternion_ctx(2, 5);
    let h = ctx.presentation().algebra().clone();
    let i = h.generator("i").unwrap();
    assert_eq!(ctx.solve_left(&i).unwrap(), i.scale(&q0.frac(1, 2)));
    assert!(ctx.solve_left(&Element::one(&h)).unwrap().is_one());
    assert!(ctx.solve_left(&Element::zero(&h)).is_err());
}

#[test]
fn bareiss_determinant() {
    let q0 = Field::rationals();
    let r = FieldRing(q0.clone());
    let m = Matrix::from_rows(
        &r,
        vec![
            vec![q0.int(0), q0.int(2), q0.int(1)],
            vec![q0.int(3), q0.int(1), q0.int(4)],
            vec![q0.int(5), q0.int(9), q0.int(2)],
        ],
    )
    .unwrap();
    // cofactor expansion along the first row
    assert_eq!(m.det().unwrap(), q0.int(-2 * (6 - 20) + (27 - 5)));
    assert_eq!(m.rank(), 3);
    let inv = m.inverse().unwrap();
    assert_eq!(m.checked_mul(&inv).unwrap(), Matrix::identity(&r, 3));
}

fn d3_ctx_shared() -> RepresentationContext {
    thread_local! { static CTX: RepresentationContext = d3_ctx(); }
    CTX.with(|c| c.clone())
}

fn d3_sample() -> impl Strategy<Value = Element> {
    d3_sample_with(true)
}

fn d3_sample_with(use_a: bool) -> impl Strategy<Value = Element> {
    prop::collection::vec((-2i64..=2, -2i64..=2), 9).prop_map(move |cs| {
        let ctx = d3_ctx_shared();
        let alg = ctx.presentation().algebra().clone();
        let f = alg.coeff_field().clone();
        let (a, e) = (f.generator("a").unwrap(), f.generator("e").unwrap());
        let c: Vec<Scalar> = cs
            .iter()
            .map(|(p, q)| {
                let t = &f.int(*q) * &e;
                &f.int(*p) + &(if use_a { &t * &a } else { t })
            })
            .collect();
        Element::from_coeffs(&alg, &c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lambda_is_multiplicative_and_hermitian(u in d3_sample(), v in d3_sample()) {
        let ctx = d3_ctx_shared();
        let inv = ctx.presentation().involution().clone();
        let lu = ctx.lambda(&u).unwrap();
        prop_assert_eq!(ctx.lambda(&(&u * &v)).unwrap(), lu.checked_mul(&ctx.lambda(&v).unwrap()).unwrap());
        prop_assert_eq!(ctx.lambda(&inv.apply(&u)).unwrap(), ctx.sharp(&lu).unwrap());
        prop_assert_eq!(ctx.unlambda(&lu).unwrap(), u);
    }

    #[test]
    fn solve_left_inverts(u in d3_sample_with(false)) {
        prop_assume!(!u.is_zero());
        let ctx = d3_ctx_shared();
        let w = ctx.solve_left(&u).unwrap();
        prop_assert!((&u * &w).is_one());
    }
}
