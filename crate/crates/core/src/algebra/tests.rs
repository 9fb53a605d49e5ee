use super::*;
use crate::scalars::Field;
use proptest::prelude::*;

fn eisenstein() -> Field {
    let q0 = Field::rationals();
    let k = Field::algebraic(&q0, "e", &[q0.int(1), q0.int(1), q0.int(1)]).unwrap();
    let e = k.generator("e").unwrap();
    k.with_involution(&(&e * &e)).unwrap()
}

thread_local! {
    static D3: (Algebra, Scalar) = build_d3();
}

/// D3 with a = 2, b = 3 over Q(e), shared so sampled elements share a host.
fn d3() -> (Algebra, Scalar) {
    D3.with(|d| d.clone())
}

fn build_d3() -> (Algebra, Scalar) {
    let k = eisenstein();
    let e = k.generator("e").unwrap();
    let alg = Algebra::symbol(&k, 3, &k.int(2), &k.int(3), &e, ["x", "y"]).unwrap();
    (alg, e)
}

fn d3_symbolic() -> Algebra {
    let f = Field::functions(&eisenstein(), &["a", "b"]);
    let a = f.generator("a").unwrap();
    let b = f.generator("b").unwrap();
    let e = f.generator("e").unwrap();
    Algebra::symbol(&f, 3, &a, &b, &e, ["x", "y"]).unwrap()
}

/// Independent oracle: words over {x, y} rewritten with yx -> eps xy,
/// x^n -> a, y^n -> b, taking redexes from the left or from the right.
fn rewrite(alg: &Algebra, coeff: &Scalar, word: &[u8], from_left: bool) -> Element {
    let s = alg.as_symbol().unwrap();
    let n = s.n();
    let mut c = coeff.clone();
    let mut w = word.to_vec();
    loop {
        let mut redexes = Vec::new();
        for p in 0..w.len() {
            if p + 1 < w.len() && w[p] == 1 && w[p + 1] == 0 {
                redexes.push((p, 0usize));
            }
            if p + n <= w.len() && w[p..p + n].iter().all(|&l| l == w[p]) {
                redexes.push((p, 1 + w[p] as usize));
            }
        }
        let Some(&(p, kind)) = (if from_left { redexes.first() } else { redexes.last() }) else {
            break;
        };
        match kind {
            0 => {
                w.swap(p, p + 1);
                c = &c * s.eps();
            }
            1 => {
                w.drain(p..p + n);
                c = &c * s.a();
            }
            _ => {
                w.drain(p..p + n);
                c = &c * s.b();
            }
        }
    }
    let i = w.iter().filter(|&&l| l == 0).count();
    let j = w.len() - i;
    assert!(w.iter().take(i).all(|&l| l == 0) && i < n && j < n);
    Element::from_terms(alg, [(s.index(i, j), c)].into_iter().collect())
}

fn word_of(s: &SymbolAlgebra, idx: usize) -> Vec<u8> {
    let (i, j) = s.exponents(idx);
    std::iter::repeat_n(0u8, i).chain(std::iter::repeat_n(1u8, j)).collect()
}

fn oracle_product(u: &Element, v: &Element, from_left: bool) -> Element {
    let alg = u.algebra();
    let s = alg.as_symbol().unwrap();
    let mut acc = Element::zero(alg);
    for (p, c) in u.terms() {
        for (q, d) in v.terms() {
            let mut w = word_of(s, *p);
            w.extend(word_of(s, *q));
            acc = &acc + &rewrite(alg, &(c * d), &w, from_left);
        }
    }
    acc
}

#[test]
fn y_times_x_is_eps_xy() {
    let (alg, e) = d3();
    let x = alg.generator("x").unwrap();
    let y = alg.generator("y").unwrap();
    assert_eq!(&y * &x, (&x * &y).scale(&e));
    let xy = &x * &y;
    let lhs = &xy * &xy;
    let x2y2 = Element::monomial(&alg, 2, 2, &alg.coeff_field().one());
    assert_eq!(lhs, x2y2.scale(&e));
    assert_eq!(lhs, oracle_product(&xy, &xy, true));
    assert_eq!(lhs, oracle_product(&xy, &xy, false));
    assert_eq!(x.pow(3), Element::scalar(&alg, &alg.coeff_field().int(2)));
}

#[test]
fn rewriting_is_confluent_on_long_words() {
    let (alg, _) = d3();
    let one = alg.coeff_field().one();
    let words: [&[u8]; 4] = [&[1, 1, 0, 1, 0, 0, 1], &[1, 0, 1, 0, 1, 0], &[0, 1, 1, 1, 1, 0, 0], &[1; 7]];
    let x = alg.generator("x").unwrap();
    let y = alg.generator("y").unwrap();
    for w in words {
        let prod = w
            .iter()
            .fold(Element::one(&alg), |acc, &l| &acc * if l == 0 { &x } else { &y });
        assert_eq!(rewrite(&alg, &one, w, true), prod);
        assert_eq!(rewrite(&alg, &one, w, false), prod);
    }
}

#[test]
fn quaternion_k_star_is_minus_k() {
    let q0 = Field::rationals();
    let h = Algebra::quaternion(&q0, &q0.int(-1), &q0.int(-1)).unwrap();
    let i = h.generator("i").unwrap();
    let j = h.generator("j").unwrap();
    let star = Involution::new(&h, vec![i.clone(), j.clone()]).unwrap();
    let k = &i * &j;
    assert_eq!(star.apply(&k), -&k);
    assert!(star.apply(&Element::one(&h)).is_one());
    let std = Involution::quaternion_standard(&h).unwrap();
    assert_eq!(std.apply(&k), -&k);
    assert_eq!(std.apply(&i), -&i);
}

#[test]
fn d3_xy_star() {
    let alg = d3_symbolic();
    let e = alg.coeff_field().generator("e").unwrap();
    let star = Involution::fixing_generators(&alg).unwrap();
    let x = alg.generator("x").unwrap();
    let y = alg.generator("y").unwrap();
    let xy = &x * &y;
    assert_eq!(star.apply(&xy), xy.scale(&e));
    assert_eq!(star.apply(&xy), oracle_product(&y, &x, true));
    let ex = x.scale(&e);
    assert_eq!(star.apply(&ex), x.scale(&(&e * &e)));
}

#[test]
fn invalid_involution_is_rejected() {
    let (alg, _) = d3();
    let x = alg.generator("x").unwrap();
    let y = alg.generator("y").unwrap();
    let err = Involution::new(&alg, vec![y.clone(), &x * &y]);
    assert!(matches!(err, Err(AlgebraError::InvalidInvolution(_))));
}

#[test]
fn host_mismatch() {
    let (a1, _) = build_d3();
    let (a2, _) = build_d3();
    let x1 = a1.generator("x").unwrap();
    let x2 = a2.generator("x").unwrap();
    assert_eq!(x1.checked_mul(&x2), Err(AlgebraError::HostMismatch));
}

fn gaussian() -> Field {
    let q0 = Field::rationals();
    let k = Field::algebraic(&q0, "i", &[q0.int(1), q0.int(0), q0.int(1)]).unwrap();
    let i = k.generator("i").unwrap();
    k.with_involution(&-&i).unwrap()
}

fn quaternion_crossed(phi: Vec<Vec<Scalar>>) -> Result<Algebra, AlgebraError> {
    let k = gaussian();
    let i = k.generator("i").unwrap();
    let sigma = Automorphism::new(&k, &[("i", -&i)]).unwrap();
    Algebra::crossed_unchecked(
        &k,
        &["1", "s"],
        vec![vec![0, 1], vec![1, 0]],
        vec![Automorphism::identity(&k), sigma],
        phi,
    )
}

#[test]
fn quaternion_cocycle_reports() {
    let k = gaussian();
    let (one, b) = (k.one(), k.int(-3));
    let good = quaternion_crossed(vec![vec![one.clone(), one.clone()], vec![one.clone(), b.clone()]]).unwrap();
    assert!(good.validate_cocycle().ok());
    let es = good.generator("e_s").unwrap();
    assert_eq!(&es * &es, Element::scalar(&good, &b));
    let ki = good.generator("i").unwrap();
    assert_eq!(&ki * &es, &es * &(-&ki));
    let bad = quaternion_crossed(vec![vec![one.clone(), one.clone()], vec![b.clone(), b.clone()]]).unwrap();
    let report = bad.validate_cocycle();
    assert!(!report.ok());
    assert!(report.normalization_failures.iter().any(|(g, h)| g == "s" && h == "1"));
}

#[test]
fn identity_basis_is_unit() {
    let k = gaussian();
    let one = k.one();
    let alg = quaternion_crossed(vec![vec![one.clone(), one.clone()], vec![one.clone(), k.int(2)]]).unwrap();
    let d = k.generator("i").unwrap();
    let u = Element::basis(&alg, 1).scale(&d);
    assert_eq!(&Element::basis(&alg, 0) * &u, u);
}

#[test]
fn trivial_action_all_ones_cocycle_is_valid() {
    let q0 = Field::rationals();
    let id = Automorphism::identity(&q0);
    let alg = Algebra::crossed(
        &q0,
        &["1", "g", "g2"],
        vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        vec![id.clone(), id.clone(), id],
        vec![vec![q0.one(); 3]; 3],
    );
    // a trivial action is not faithful, so the group data is refused
    assert!(matches!(alg, Err(AlgebraError::InvalidGroup(_))));
}

#[test]
fn symbol_to_crossed_round_trip() {
    let (alg, _) = d3();
    let star = Involution::fixing_generators(&alg).unwrap();
    let conv = SymbolToCrossed::new(&alg, Some(&alg.generator("x").unwrap())).unwrap();
    let x = alg.generator("x").unwrap();
    let y = alg.generator("y").unwrap();
    let u = &(&x * &y) + &y.pow(2).scale(&alg.coeff_field().int(5));
    let v = &x.pow(2) - &(&y * &x);
    let fu = conv.forward(&u).unwrap();
    let fv = conv.forward(&v).unwrap();
    assert_eq!(conv.backward(&fu).unwrap(), u);
    assert_eq!(conv.forward(&(&u * &v)).unwrap(), &fu * &fv);
    let cstar = conv.involution(&star).unwrap();
    assert_eq!(conv.forward(&star.apply(&u)).unwrap(), cstar.apply(&fu));
}

#[test]
fn leading_term_examples() {
    let (alg, e) = d3();
    let k = alg.coeff_field();
    let plane = QuantumPlane::new(k, &e, ["x", "y"]).unwrap();
    let lt1 = plane.one().leading_term().unwrap();
    assert_eq!((lt1.coeff.clone(), lt1.m, lt1.n), (k.one(), 0, 0));
    let p = plane
        .monomial(&k.int(2), 2, 1)
        .add(&plane.monomial(&k.one(), 1, 2));
    let lt = p.leading_term().unwrap();
    assert_eq!((lt.coeff, lt.m, lt.n), (k.int(2), 2, 1));
    let u = &Element::monomial(&alg, 2, 1, &k.int(2)) + &Element::monomial(&alg, 1, 2, &k.one());
    assert_eq!(symbol_leading_term(&u).unwrap().m, 2);
    assert_eq!(plane.zero().leading_term(), Err(AlgebraError::ZeroElement));
}

fn small_scalar(k: &Field) -> impl Strategy<Value = Scalar> {
    let k = k.clone();
    (-3i64..=3, -3i64..=3).prop_map(move |(p, q)| &k.int(p) + &(&k.int(q) * &k.generator("e").unwrap()))
}

fn d3_element() -> impl Strategy<Value = Element> {
    let (alg, _) = d3();
    let k = alg.coeff_field().clone();
    prop::collection::vec(small_scalar(&k), 9).prop_map(move |cs| Element::from_coeffs(&alg, &cs))
}

fn plane_poly() -> impl Strategy<Value = SkewPoly> {
    let (alg, e) = d3();
    let k = alg.coeff_field().clone();
    let plane = QuantumPlane::new(&k, &e, ["x", "y"]).unwrap();
    prop::collection::vec((small_scalar(&k), 0u32..4, 0u32..4), 1..5).prop_map(move |ts| {
        ts.iter()
            .fold(plane.zero(), |p, (c, m, n)| p.add(&plane.monomial(c, *m, *n)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn multiplication_matches_rewriting(u in d3_element(), v in d3_element()) {
        let prod = &u * &v;
        prop_assert_eq!(&prod, &oracle_product(&u, &v, true));
        prop_assert_eq!(&prod, &oracle_product(&u, &v, false));
    }

    #[test]
    fn symbol_associativity(u in d3_element(), v in d3_element(), w in d3_element()) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }

    #[test]
    fn involution_laws(u in d3_element(), v in d3_element()) {
        let alg = u.algebra().clone();
        let star = Involution::fixing_generators(&alg).unwrap();
        prop_assert_eq!(star.apply(&(&u * &v)), &star.apply(&v) * &star.apply(&u));
        prop_assert_eq!(star.apply(&star.apply(&u)), u.clone());
        prop_assert_eq!(star.apply(&(&u + &v)), &star.apply(&u) + &star.apply(&v));
    }

    #[test]
    fn crossed_associativity(cs in prop::collection::vec((-3i64..=3, -3i64..=3), 6)) {
        let k = gaussian();
        let one = k.one();
        let alg = quaternion_crossed(vec![vec![one.clone(), one.clone()], vec![one, k.int(-3)]]).unwrap();
        let i = k.generator("i").unwrap();
        let el = |p: &[(i64, i64)]| {
            let c: Vec<Scalar> = p.iter().map(|(a, b)| &k.int(*a) + &(&k.int(*b) * &i)).collect();
            Element::from_coeffs(&alg, &c)
        };
        let (u, v, w) = (el(&cs[0..2]), el(&cs[2..4]), el(&cs[4..6]));
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
    }

    #[test]
    fn leading_terms_multiply(p in plane_poly(), r in plane_poly()) {
        prop_assume!(!p.is_zero() && !r.is_zero());
        let (a, b) = (p.leading_term().unwrap(), r.leading_term().unwrap());
        let q = p.plane().q().clone();
        let lt = p.mul(&r).leading_term().unwrap();
        prop_assert_eq!((lt.m, lt.n), (a.m + b.m, a.n + b.n));
        prop_assert_eq!(lt.coeff, &(&a.coeff * &b.coeff) * &q.pow((a.n * b.m) as i64).unwrap());
        let ltdd = p.mul(&p.star()).leading_term().unwrap();
        let twist = q.pow((2 * a.m * a.n) as i64).unwrap();
        prop_assert_eq!(ltdd.coeff, &(&a.coeff * &a.coeff.conj()) * &twist);
    }
}
