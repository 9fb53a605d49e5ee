//! Ready-made algebras with involution used by the examples, the fixture
//! files and the tests.

use std::sync::Arc;

use crate::algebra::{Algebra, AlgebraError, Element, Involution, QuantumPlane, SymbolToCrossed};
use crate::hermitian::{LeadingTermCone, LtRule};
use crate::matrix::RepresentationContext;
use crate::projection::{ProjectionError, SubfieldPresentation};
use crate::scalars::{Automorphism, Field, Scalar, SignOracle};

#[derive(Clone)]
pub struct Fixture {
    pub name: &'static str,
    pub rep: Arc<RepresentationContext>,
}

impl Fixture {
    pub fn new(name: &'static str, pres: SubfieldPresentation) -> Result<Fixture, ProjectionError> {
        let rep = RepresentationContext::new(&pres).map_err(|e| ProjectionError::InvalidPresentation(e.to_string()))?;
        Ok(Fixture { name, rep: Arc::new(rep) })
    }

    pub fn presentation(&self) -> &SubfieldPresentation {
        self.rep.presentation()
    }

    pub fn involution(&self) -> &Involution {
        self.rep.presentation().involution()
    }

    pub fn algebra(&self) -> &Algebra {
        self.rep.presentation().algebra()
    }

    pub fn k_field(&self) -> &Field {
        self.rep.presentation().k_field()
    }

    pub fn gen(&self, name: &str) -> Element {
        self.algebra().generator(name).expect("generator")
    }
}

/// `Q(e)` with `e^2 + e + 1 = 0` and `e* = e^2`.
pub fn eisenstein() -> Field {
    let q = Field::rationals();
    let k = Field::algebraic(&q, "e", &[q.int(1), q.int(1), q.int(1)]).expect("irreducible");
    let e = k.generator("e").expect("e");
    k.with_involution(&(&e * &e)).expect("order two")
}

fn symbol_fixture(name: &'static str, alg: &Algebra, images: Vec<Element>) -> Result<Fixture, ProjectionError> {
    let inv = Involution::new(alg, images)?;
    Fixture::new(name, SubfieldPresentation::symbol_standard(&inv)?)
}

/// `(a, b)_F` with `i* = i`, `j* = j`, presented over `K = F(i)`.
pub fn quaternion_over(field: &Field, a: &Scalar, b: &Scalar) -> Result<Fixture, ProjectionError> {
    let h = Algebra::quaternion(field, a, b)?;
    let images = vec![h.generator("i")?, h.generator("j")?];
    symbol_fixture("quaternion", &h, images)
}

/// `(a, b)_Q` with `i* = i`, `j* = j`.
pub fn quaternion(a: i64, b: i64) -> Result<Fixture, ProjectionError> {
    let q = Field::rationals();
    quaternion_over(&q, &q.int(a), &q.int(b))
}

/// `(a, b)` over `Q(a, b)` with `i* = i`, `j* = j`.
pub fn quaternion_symbolic() -> Result<Fixture, ProjectionError> {
    let f = Field::functions(&Field::rationals(), &["a", "b"]);
    let (a, b) = (f.generator("a").expect("a"), f.generator("b").expect("b"));
    quaternion_over(&f, &a, &b)
}

/// `(a, b)_Q` with the canonical involution `i* = -i`, `j* = -j`.
pub fn quaternion_canonical(a: i64, b: i64) -> Result<Fixture, ProjectionError> {
    let q = Field::rationals();
    let h = Algebra::quaternion(&q, &q.int(a), &q.int(b))?;
    let inv = Involution::quaternion_standard(&h)?;
    Fixture::new("quaternion-canonical", SubfieldPresentation::symbol_standard(&inv)?)
}

/// `(a, b)_Q` as the crossed product `K + e_s K` with `K = Q(t)`,
/// `t^2 = a`, `t^s = -t`, `e_s^2 = b` and `e_s* = e_s`.
pub fn quaternion_crossed(a: i64, b: i64) -> Result<Fixture, ProjectionError> {
    let q = Field::rationals();
    let k = Field::algebraic(&q, "t", &[q.int(-a), q.zero(), q.one()])?;
    let t = k.generator("t").expect("t");
    let s = Automorphism::new(&k, &[("t", -&t)])?;
    let (one, bk) = (k.one(), k.int(b));
    let alg = Algebra::crossed(
        &k,
        &["1", "s"],
        vec![vec![0, 1], vec![1, 0]],
        vec![Automorphism::identity(&k), s],
        vec![vec![one.clone(), one.clone()], vec![one, bk]],
    )?;
    let inv = Involution::fixing_generators(&alg)?;
    Fixture::new("quaternion-crossed", SubfieldPresentation::crossed(&inv)?)
}

/// The degree 3 symbol algebra `x^3 = a`, `y^3 = b`, `yx = e xy` over
/// `field` (which must contain `e`) with `x* = x`, `y* = y`.
pub fn d3_over(field: &Field, a: &Scalar, b: &Scalar) -> Result<Fixture, ProjectionError> {
    let e = field.generator("e").expect("field contains e");
    let alg = Algebra::symbol(field, 3, a, b, &e, ["x", "y"])?;
    let inv = Involution::fixing_generators(&alg)?;
    Fixture::new("d3", SubfieldPresentation::symbol_standard(&inv)?)
}

/// D3 over `Q(e)(a, b)`.
pub fn d3_symbolic() -> Result<Fixture, ProjectionError> {
    let f = Field::functions(&eisenstein(), &["a", "b"]);
    let (a, b) = (f.generator("a").expect("a"), f.generator("b").expect("b"));
    d3_over(&f, &a, &b)
}

/// D3 over `Q(e)` with rational `a`, `b`.
pub fn d3(a: i64, b: i64) -> Result<Fixture, ProjectionError> {
    let f = eisenstein();
    d3_over(&f, &f.int(a), &f.int(b))
}

/// D3 rewritten as a cyclic crossed product over `K = F(x)`.
pub fn d3_crossed(d3: &Fixture) -> Result<Fixture, ProjectionError> {
    let conv = SymbolToCrossed::new(d3.algebra(), Some(&d3.gen("x")))?;
    let inv = conv.involution(d3.involution())?;
    Fixture::new("d3-crossed", SubfieldPresentation::crossed(&inv)?)
}

/// The four elements whose hermitian squares cancel in D3 with `a = b = 2`.
pub fn vanishing_squares(d3: &Fixture) -> Result<Vec<Element>, AlgebraError> {
    let alg = d3.algebra();
    let f = alg.coeff_field();
    let c = |n: i64| Element::scalar(alg, &f.int(n));
    let einv = Element::scalar(alg, &f.generator("e").expect("e").inv()?);
    let x = alg.generator("x")?;
    let y = alg.generator("y")?;
    let x2 = x.pow(2);
    let y2 = y.pow(2);
    Ok(vec![
        &(&(&einv * &x) + &x2) + &(&c(2) * &y),
        &(&c(1) - &(&(&einv * &x) * &y)) - &(&x2 * &y2),
        &(&(&c(2) * &x) - &x2) + &(&x * &y2),
        &(&c(3) - &x) - &x2,
    ])
}

/// `K = Q(th)`, `th^4 - 10 th^2 + 1 = 0`, with the Klein four group
/// `th -> 10 th - th^3`, `th -> th^3 - 10 th`, `th -> -th`, trivial cocycle
/// and `e_g* = e_g`.
pub fn biquaternion() -> Result<Fixture, ProjectionError> {
    let q = Field::rationals();
    let k = Field::algebraic(&q, "th", &[q.one(), q.zero(), q.int(-10), q.zero(), q.one()])?;
    let th = k.generator("th").expect("th");
    let th3 = th.pow(3)?;
    let s = &(&k.int(10) * &th) - &th3;
    let auto = |img: Scalar| Automorphism::new(&k, &[("th", img)]);
    let autos = vec![Automorphism::identity(&k), auto(s.clone())?, auto(-&s)?, auto(-&th)?];
    let table: Vec<Vec<usize>> = (0..4).map(|g| (0..4).map(|h| g ^ h).collect()).collect();
    let alg = Algebra::crossed(&k, &["1", "s", "t", "st"], table, autos, vec![vec![k.one(); 4]; 4])?;
    let inv = Involution::fixing_generators(&alg)?;
    Fixture::new("biquaternion", SubfieldPresentation::crossed(&inv)?)
}

/// The quantum plane `ji = -ij` over Q with `i* = i`, `j* = j`.
pub fn anticommuting_plane() -> QuantumPlane {
    let q = Field::rationals();
    QuantumPlane::new(&q, &q.int(-1), ["i", "j"]).expect("q = -1")
}

/// The two leading-term cones of the plane, differing in the sign of `j`.
pub fn anticommuting_cones() -> (LeadingTermCone, LeadingTermCone) {
    let plane = anticommuting_plane();
    (
        LeadingTermCone::new(&plane, LtRule::HalfParity { shift_n: false }, SignOracle::Rational),
        LeadingTermCone::new(&plane, LtRule::HalfParity { shift_n: true }, SignOracle::Rational),
    )
}

/// The quantum plane `yx = e xy` over `Q(e)` and the leading-term cone
/// whose sign rule is twisted by `e^(mn)`.
pub fn d3_plane_cone() -> (QuantumPlane, LeadingTermCone) {
    let k = eisenstein();
    let e = k.generator("e").expect("e");
    let plane = QuantumPlane::new(&k, &e, ["x", "y"]).expect("plane");
    let cone = LeadingTermCone::new(&plane, LtRule::Power(e), SignOracle::Rational);
    (plane, cone)
}
