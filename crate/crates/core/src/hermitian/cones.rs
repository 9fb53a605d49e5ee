use std::sync::Arc;

use crate::algebra::{Element, QuantumPlane, SkewPoly};
use crate::matrix::{FieldRing, Matrix, RepresentationContext, StarRing};
use crate::scalars::{sign_at, Automorphism, Field, Scalar, SignOracle};

use super::diag::{diagonalize, Block};
use super::{Cone, HermitianError, Membership};

/// Elements of a field whose sign under an ordering is nonnegative; the
/// elements tested must be symmetric.
#[derive(Clone, Debug)]
pub struct OrderingCone {
    field: Field,
    oracle: SignOracle,
}

impl OrderingCone {
    pub fn new(field: &Field, oracle: SignOracle) -> OrderingCone {
        OrderingCone {
            field: field.clone(),
            oracle,
        }
    }

    pub fn oracle(&self) -> &SignOracle {
        &self.oracle
    }
}

impl Cone<Scalar> for OrderingCone {
    fn contains(&self, e: &Scalar) -> Result<Membership, HermitianError> {
        let e = self.field.coerce(e)?;
        if !e.is_symmetric() {
            return Err(HermitianError::NotHermitian(e.to_string()));
        }
        Ok(Membership::from_bool(sign_at(&e, &self.oracle)?.is_nonnegative()))
    }

    fn describe(&self) -> String {
        format!("ordering: {}", self.oracle.describe())
    }
}

/// Weight `w(m, n)` multiplying the leading coefficient before its sign is
/// read.
#[derive(Clone, Debug, PartialEq)]
pub enum LtRule {
    /// `w = s^(mn)`
    Power(Scalar),
    /// `w = (-1)^(mn/2)`, times `(-1)^n` when `shift_n`; needs `mn` even.
    HalfParity { shift_n: bool },
}

impl LtRule {
    fn weight(&self, field: &Field, m: u32, n: u32) -> Option<Scalar> {
        match self {
            LtRule::Power(s) => s.pow((m * n) as i64).ok(),
            LtRule::HalfParity { shift_n } => {
                if (m * n) % 2 != 0 {
                    return None;
                }
                let e = m * n / 2 + if *shift_n { n } else { 0 };
                Some(field.int(if e % 2 == 0 { 1 } else { -1 }))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            LtRule::Power(s) => format!("c*({s})^(mn) >= 0"),
            LtRule::HalfParity { shift_n: false } => "c*(-1)^(mn/2) >= 0".into(),
            LtRule::HalfParity { shift_n: true } => "c*(-1)^(mn/2+n) >= 0".into(),
        }
    }
}

/// Symmetric elements of a quantum plane whose weighted leading coefficient
/// is nonnegative.
#[derive(Clone, Debug)]
pub struct LeadingTermCone {
    plane: QuantumPlane,
    rule: LtRule,
    oracle: SignOracle,
}

impl LeadingTermCone {
    pub fn new(plane: &QuantumPlane, rule: LtRule, oracle: SignOracle) -> LeadingTermCone {
        LeadingTermCone {
            plane: plane.clone(),
            rule,
            oracle,
        }
    }

    pub fn plane(&self) -> &QuantumPlane {
        &self.plane
    }
}

impl Cone<SkewPoly> for LeadingTermCone {
    fn contains(&self, s: &SkewPoly) -> Result<Membership, HermitianError> {
        if s.is_zero() {
            return Ok(Membership::Member);
        }
        if !s.is_symmetric() {
            return Err(HermitianError::NotHermitian(s.to_string()));
        }
        let lt = s.leading_term()?;
        let w = self
            .rule
            .weight(self.plane.field(), lt.m, lt.n)
            .ok_or_else(|| HermitianError::NotHermitian(lt.to_string()))?;
        let v = &lt.coeff * &w;
        if !v.is_symmetric() {
            return Err(HermitianError::NotHermitian(format!("weighted leading coefficient {v}")));
        }
        Ok(Membership::from_bool(sign_at(&v, &self.oracle)?.is_nonnegative()))
    }

    fn describe(&self) -> String {
        format!("leading term: {}", self.rule.describe())
    }
}

pub struct Intersection<T> {
    parts: Vec<Arc<dyn Cone<T>>>,
}

impl<T> Intersection<T> {
    pub fn new(parts: Vec<Arc<dyn Cone<T>>>) -> Intersection<T> {
        Intersection { parts }
    }
}

impl<T> Cone<T> for Intersection<T> {
    fn contains(&self, e: &T) -> Result<Membership, HermitianError> {
        let mut out = Membership::Member;
        for p in &self.parts {
            out = out.and(p.contains(e)?);
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        let parts: Vec<String> = self.parts.iter().map(|p| p.describe()).collect();
        format!("intersection of [{}]", parts.join("; "))
    }
}

/// `N_sigma`: `k` is a member iff `a_sigma k^sigma` is in `N`.
pub struct Acted {
    base: Arc<dyn Cone<Scalar>>,
    sigma: Automorphism,
    a_sigma: Scalar,
}

impl Acted {
    pub fn new(base: Arc<dyn Cone<Scalar>>, sigma: &Automorphism, a_sigma: &Scalar) -> Result<Acted, HermitianError> {
        if !sigma.commutes_with_involution()? {
            return Err(HermitianError::HypothesisViolated(
                "the automorphism does not commute with the involution".into(),
            ));
        }
        Ok(Acted {
            base,
            sigma: sigma.clone(),
            a_sigma: a_sigma.clone(),
        })
    }
}

impl Cone<Scalar> for Acted {
    fn contains(&self, k: &Scalar) -> Result<Membership, HermitianError> {
        self.base.contains(&(&self.a_sigma * &self.sigma.apply(k)?))
    }

    fn describe(&self) -> String {
        format!("({})_sigma with a_sigma = {}", self.base.describe(), self.a_sigma)
    }
}

/// `F(N)`: an eps-hermitian matrix is a member iff every diagonal entry of a
/// congruence normal form is in `N`; nonzero hyperbolic blocks never are.
pub struct Lifted<R: StarRing> {
    base: Arc<dyn Cone<R::Elem>>,
    eps: R::Elem,
}

impl<R: StarRing> Lifted<R> {
    pub fn new(base: Arc<dyn Cone<R::Elem>>, eps: &R::Elem) -> Lifted<R> {
        Lifted { base, eps: eps.clone() }
    }
}

impl<R: StarRing> Cone<Matrix<R>> for Lifted<R> {
    fn contains(&self, x: &Matrix<R>) -> Result<Membership, HermitianError> {
        let res = diagonalize(x, &self.eps)?;
        let mut out = Membership::Member;
        for b in &res.blocks {
            match b {
                Block::Scalar(e) => out = out.and(self.base.contains(e)?),
                Block::Hyperbolic(_) => return Ok(Membership::NonMember),
            }
            if out == Membership::NonMember {
                break;
            }
        }
        Ok(out)
    }

    fn describe(&self) -> String {
        format!("matrices over {}", self.base.describe())
    }
}

/// `G(M)`: `c` is a member iff `c E_11` is in `M`.
pub struct Restricted<R: StarRing> {
    base: Arc<dyn Cone<Matrix<R>>>,
    ring: R,
    size: usize,
}

impl<R: StarRing> Restricted<R> {
    pub fn new(base: Arc<dyn Cone<Matrix<R>>>, ring: &R, size: usize) -> Restricted<R> {
        Restricted {
            base,
            ring: ring.clone(),
            size,
        }
    }
}

impl<R: StarRing> Cone<R::Elem> for Restricted<R> {
    fn contains(&self, c: &R::Elem) -> Result<Membership, HermitianError> {
        let mut m = Matrix::zeros(&self.ring, self.size, self.size);
        m.set(0, 0, c.clone());
        self.base.contains(&m)
    }

    fn describe(&self) -> String {
        format!("corner of {}", self.base.describe())
    }
}

/// The transport `X -> A X`: `X` is a member iff `A X` is in `M`.
pub struct Twisted<R: StarRing> {
    a: Matrix<R>,
    base: Arc<dyn Cone<Matrix<R>>>,
}

impl<R: StarRing> Twisted<R> {
    pub fn new(a: &Matrix<R>, base: Arc<dyn Cone<Matrix<R>>>) -> Result<Twisted<R>, HermitianError> {
        if a.inverse().is_err() {
            return Err(HermitianError::SingularTwist);
        }
        Ok(Twisted { a: a.clone(), base })
    }

    pub fn transport(&self, x: &Matrix<R>) -> Result<Matrix<R>, HermitianError> {
        Ok(self.a.checked_mul(x)?)
    }
}

impl<R: StarRing> Cone<Matrix<R>> for Twisted<R> {
    fn contains(&self, x: &Matrix<R>) -> Result<Membership, HermitianError> {
        self.base.contains(&self.transport(x)?)
    }

    fn describe(&self) -> String {
        format!("A^-1 ({})", self.base.describe())
    }
}

/// `N^e = {u | f(d* u d) in N for every d}`, decided through
/// `A lambda(u) in F(N)`.
pub struct Extended {
    lifted: Lifted<FieldRing>,
    base: Arc<dyn Cone<Scalar>>,
    rep: Arc<RepresentationContext>,
}

impl Extended {
    pub fn new(base: Arc<dyn Cone<Scalar>>, rep: Arc<RepresentationContext>) -> Extended {
        let one = rep.presentation().k_field().one();
        Extended {
            lifted: Lifted::new(base.clone(), &one),
            base,
            rep,
        }
    }

    pub fn rep(&self) -> &RepresentationContext {
        &self.rep
    }

    /// `A lambda(u)`.
    pub fn twisted_matrix(&self, u: &Element) -> Result<Matrix<FieldRing>, HermitianError> {
        Ok(self.rep.gram().checked_mul(&self.rep.lambda(u)?)?)
    }

    /// A `d` from `pool` with `f(d* u d)` outside `N`.
    pub fn refute(&self, u: &Element, pool: &[Element]) -> Result<Option<Element>, HermitianError> {
        let pres = self.rep.presentation();
        let inv = pres.involution();
        for d in pool {
            let v = pres.f(&(&(&inv.apply(d) * u) * d))?;
            if self.base.contains(&v)? == Membership::NonMember {
                return Ok(Some(d.clone()));
            }
        }
        Ok(None)
    }
}

impl Cone<Element> for Extended {
    fn contains(&self, u: &Element) -> Result<Membership, HermitianError> {
        let inv = self.rep.presentation().involution();
        if inv.apply(u) != *u {
            return Err(HermitianError::NotHermitian(u.to_string()));
        }
        self.lifted.contains(&self.twisted_matrix(u)?)
    }

    fn describe(&self) -> String {
        format!("extension of {}", self.base.describe())
    }
}

/// `M^c = M cap K`.
pub struct Contracted {
    base: Arc<dyn Cone<Element>>,
    rep: Arc<RepresentationContext>,
}

impl Contracted {
    pub fn new(base: Arc<dyn Cone<Element>>, rep: Arc<RepresentationContext>) -> Contracted {
        Contracted { base, rep }
    }
}

impl Cone<Scalar> for Contracted {
    fn contains(&self, k: &Scalar) -> Result<Membership, HermitianError> {
        self.base.contains(&self.rep.presentation().embed(k)?)
    }

    fn describe(&self) -> String {
        format!("({}) cap K", self.base.describe())
    }
}
