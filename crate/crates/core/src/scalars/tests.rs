use super::*;
use num_rational::BigRational;
use proptest::prelude::*;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn eisenstein() -> Field {
    let q0 = Field::rationals();
    let k = Field::algebraic(&q0, "e", &[q0.int(1), q0.int(1), q0.int(1)]).unwrap();
    let e = k.generator("e").unwrap();
    k.with_involution(&(&e * &e)).unwrap()
}

fn eisenstein_ab() -> Field {
    Field::functions(&eisenstein(), &["a", "b"])
}

fn sqrt2() -> Field {
    let q0 = Field::rationals();
    Field::algebraic(&q0, "s", &[q0.int(-2), q0.int(0), q0.int(1)]).unwrap()
}

#[test]
fn root_of_unity_arithmetic() {
    let k = eisenstein();
    let e = k.generator("e").unwrap();
    assert!((&e * &(&e * &e)).is_one());
    assert_eq!(&e + &(&e * &e), k.int(-1));
    assert_eq!(e.conj(), &e * &e);
    assert_eq!(e.conj().conj(), e);
    assert_eq!(k.int(7).conj(), k.int(7));
}

#[test]
fn rational_functions_cancel() {
    let f = eisenstein_ab();
    let a = f.generator("a").unwrap();
    let b = f.generator("b").unwrap();
    let x = (&a / &b) * (&b / &a);
    assert!(x.is_one());
    let y = (&(&a * &a) - &(&b * &b)) / (&a - &b);
    assert_eq!(y, &a + &b);
    assert_eq!(y.to_string(), "a + b");
}

#[test]
fn coefficient_involution_fixes_variables() {
    let f = eisenstein_ab();
    let a = f.generator("a").unwrap();
    let e = f.generator("e").unwrap();
    assert_eq!((&a * &e).conj(), &a * &(&e * &e));
    assert_eq!(a.conj(), a);
}

#[test]
fn division_by_zero_and_mismatch() {
    let k = eisenstein();
    assert_eq!(k.one().checked_div(&k.zero()), Err(FieldError::DivisionByZero));
    let s = sqrt2();
    assert_eq!(k.one().checked_add(&s.one()), Err(FieldError::TowerMismatch));
    assert_eq!(
        field_arith(&k.int(2), &k.int(3), ArithOp::Mul).unwrap(),
        k.int(6)
    );
}

#[test]
fn signs_under_both_embeddings() {
    let k = sqrt2();
    let s = k.generator("s").unwrap();
    let x = &s - &k.int(1);
    let emb = k.embeddings();
    assert_eq!(emb.len(), 2);
    let pos = SignOracle::Embedding { lo: q(1, 1), hi: q(2, 1) };
    let neg = SignOracle::Embedding { lo: q(-2, 1), hi: q(-1, 1) };
    assert_eq!(sign_at(&x, &pos).unwrap(), Sign::Positive);
    assert_eq!(sign_at(&x, &neg).unwrap(), Sign::Negative);
    assert_eq!(sign_at(&k.int(-1), &pos).unwrap(), Sign::Negative);
    // 17/12 is just above sqrt 2
    let y = &s - &k.frac(17, 12);
    assert_eq!(sign_at(&y, &pos).unwrap(), Sign::Negative);
    let bad = SignOracle::Embedding { lo: q(2, 1), hi: q(3, 1) };
    assert!(sign_at(&x, &bad).is_err());
}

#[test]
fn eisenstein_has_no_ordering() {
    let k = eisenstein();
    let e = k.generator("e").unwrap();
    assert!(k.embeddings().is_empty());
    assert!(sign_at(&e, &SignOracle::Rational).is_err());
    assert_eq!(sign_at(&k.int(3), &SignOracle::Rational).unwrap(), Sign::Positive);
}

#[test]
fn leading_term_ordering() {
    let q0 = Field::rationals();
    let f = Field::functions(&q0, &["a", "b"]);
    let a = f.generator("a").unwrap();
    let b = f.generator("b").unwrap();
    let o = SignOracle::monomial(2);
    assert_eq!(sign_at(&(&a - &f.int(1000)), &o).unwrap(), Sign::Positive);
    assert_eq!(sign_at(&(&b - &(&a * &a)), &o).unwrap(), Sign::Negative);
    let flipped = SignOracle::Monomial {
        base: Box::new(SignOracle::Rational),
        flips: vec![true, false],
    };
    assert_eq!(sign_at(&(&a * &b), &flipped).unwrap(), Sign::Negative);
    assert_eq!(sign_at(&(&a * &a), &flipped).unwrap(), Sign::Positive);
}

#[test]
fn radical_ordering() {
    let q0 = Field::rationals();
    let f = Field::functions(&q0, &["a", "b"]);
    let a = f.generator("a").unwrap();
    let k = Field::algebraic(&f, "i", &[-&a, f.int(0), f.int(1)]).unwrap();
    let i = k.generator("i").unwrap();
    let pos = SignOracle::Radical {
        negative: false,
        inner: Box::new(SignOracle::monomial(2)),
    };
    let neg = SignOracle::Radical {
        negative: true,
        inner: Box::new(SignOracle::monomial(2)),
    };
    assert_eq!(sign_at(&i, &pos).unwrap(), Sign::Positive);
    assert_eq!(sign_at(&i, &neg).unwrap(), Sign::Negative);
    let ka = k.coerce(&a).unwrap();
    assert_eq!(sign_at(&ka, &neg).unwrap(), Sign::Positive);
}

#[test]
fn galois_action_on_cube_root() {
    let f = eisenstein_ab();
    let a = f.generator("a").unwrap();
    let k = Field::algebraic(&f, "x", &[-&a, f.int(0), f.int(0), f.int(1)]).unwrap();
    let x = k.generator("x").unwrap();
    let e = k.generator("e").unwrap();
    let sigma = Automorphism::new(&k, &[("x", &e * &x)]).unwrap();
    assert_eq!(sigma.apply(&x).unwrap(), &e * &x);
    let twice = sigma.then(&sigma).unwrap();
    assert_eq!(twice.apply(&x).unwrap(), &(&e * &e) * &x);
    let id = Automorphism::identity(&k);
    assert_eq!(id.apply(&(&x + &e)).unwrap(), &x + &e);
    assert!(Automorphism::new(&k, &[("x", &x + &k.int(1))]).is_err());
}

#[test]
fn invalid_involution_rejected() {
    let q0 = Field::rationals();
    let k = Field::algebraic(&q0, "e", &[q0.int(1), q0.int(1), q0.int(1)]).unwrap();
    let e = k.generator("e").unwrap();
    assert!(k.with_involution(&(&e + &k.int(1))).is_err());
}

#[test]
fn reducible_modulus_rejected() {
    let q0 = Field::rationals();
    assert!(Field::algebraic(&q0, "t", &[q0.int(-4), q0.int(0), q0.int(1)]).is_err());
}

fn small_poly(f: &Field, coeffs: &[i64]) -> Scalar {
    let a = f.generator("a").unwrap();
    let b = f.generator("b").unwrap();
    let e = f.generator("e").unwrap();
    let gens = [f.one(), a.clone(), b.clone(), e.clone(), &a * &b, &e * &a];
    let mut acc = f.zero();
    for (c, g) in coeffs.iter().zip(gens.iter()) {
        acc = &acc + &(&f.int(*c) * g);
    }
    acc
}

fn arb_elem() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (
        proptest::collection::vec(-3i64..4, 6),
        proptest::collection::vec(-3i64..4, 6),
    )
}

fn build(f: &Field, (n, d): &(Vec<i64>, Vec<i64>)) -> Scalar {
    let num = small_poly(f, n);
    let den = small_poly(f, d);
    if den.is_zero() {
        num
    } else {
        &num / &den
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn field_axioms(x in arb_elem(), y in arb_elem(), z in arb_elem()) {
        let f = eisenstein_ab();
        let (x, y, z) = (build(&f, &x), build(&f, &y), build(&f, &z));
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x + &y, &y + &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn involution_is_automorphism(x in arb_elem(), y in arb_elem()) {
        let f = eisenstein_ab();
        let (x, y) = (build(&f, &x), build(&f, &y));
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn sign_is_multiplicative(c in proptest::collection::vec(-5i64..6, 4)) {
        let k = sqrt2();
        let s = k.generator("s").unwrap();
        let x = &k.int(c[0]) + &(&k.int(c[1]) * &s);
        let y = &k.int(c[2]) + &(&k.int(c[3]) * &s);
        for iv in k.embeddings() {
            let o = SignOracle::embedding(&iv);
            let sx = sign_at(&x, &o).unwrap();
            let sy = sign_at(&y, &o).unwrap();
            prop_assert_eq!(sign_at(&(&x * &y), &o).unwrap(), sx.mul(sy));
            prop_assert!(sign_at(&(&x * &x), &o).unwrap().is_nonnegative());
        }
    }

    #[test]
    fn monomial_sign_is_multiplicative(x in arb_elem(), y in arb_elem()) {
        let q0 = Field::rationals();
        let f = Field::functions(&q0, &["a", "b"]);
        let a = f.generator("a").unwrap();
        let b = f.generator("b").unwrap();
        let mk = |c: &Vec<i64>| {
            &(&(&f.int(c[0]) + &(&f.int(c[1]) * &a)) + &(&f.int(c[2]) * &b)) + &(&f.int(c[3]) * &(&a * &b))
        };
        let (xn, yn) = (mk(&x.0), mk(&y.0));
        let o = SignOracle::Monomial { base: Box::new(SignOracle::Rational), flips: vec![true, false] };
        let sx = sign_at(&xn, &o).unwrap();
        let sy = sign_at(&yn, &o).unwrap();
        prop_assert_eq!(sign_at(&(&xn * &yn), &o).unwrap(), sx.mul(sy));
        if !yn.is_zero() {
            prop_assert_eq!(sign_at(&(&xn / &yn), &o).unwrap(), sx.mul(sy));
        }
    }
}
