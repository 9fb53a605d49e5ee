//! The projection `f: D -> K` onto a maximal subfield, the reduced trace and
//! the search for a symmetric or antisymmetric primitive element.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::{Algebra, AlgebraError, Element, Involution};
use crate::matrix::{FieldRing, Matrix};
use crate::scalars::{Field, FieldError, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProjectionError {
    #[error("{0} does not lie in the subfield K")]
    NotInK(String),
    #[error("invalid subfield presentation: {0}")]
    InvalidPresentation(String),
    #[error("no primitive symmetric or antisymmetric element found in {0} attempts")]
    SearchExhausted(usize),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Whether the chosen generator of K is fixed or negated by the involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum StarFlag {
    Symmetric,
    Antisymmetric,
}

#[derive(Clone)]
enum Kind {
    Symbol {
        x: Element,
        flag: StarFlag,
        /// Minimal polynomial over the center, constant term first, monic.
        chi: Vec<Scalar>,
        powers: Vec<Element>,
        coord_inv: Matrix<FieldRing>,
    },
    Crossed,
}

/// A maximal subfield `K` of `D` together with a right `K`-basis of `D`.
///
/// For a symbol algebra `K = F(x)` is presented by an element `x` with
/// `x* = x` or `x* = -x` and its minimal polynomial over the center; for a
/// crossed product `K` is the coefficient field and the basis is `(e_g)`.
#[derive(Clone)]
pub struct SubfieldPresentation {
    involution: Involution,
    k_field: Field,
    basis: Vec<Element>,
    kind: Kind,
}

impl SubfieldPresentation {
    /// Symbol-algebra presentation. `chi` is given constant term first;
    /// `basis[0]` must be 1. `k_name` names the generator of K.
    pub fn symbol(
        involution: &Involution,
        x: &Element,
        chi: &[Scalar],
        basis: &[Element],
        k_name: &str,
    ) -> Result<SubfieldPresentation, ProjectionError> {
        let alg = involution.algebra();
        let s = alg.as_symbol().ok_or_else(|| {
            ProjectionError::InvalidPresentation("not a symbol algebra".into())
        })?;
        let f = s.field();
        let n = s.n();
        if chi.len() != n + 1 {
            return Err(ProjectionError::InvalidPresentation(format!(
                "minimal polynomial must have degree {n}"
            )));
        }
        let chi: Vec<Scalar> = chi.iter().map(|c| f.coerce(c)).collect::<Result<_, _>>()?;
        let lead = chi[n].clone();
        if lead.is_zero() {
            return Err(ProjectionError::InvalidPresentation("leading coefficient is zero".into()));
        }
        let chi: Vec<Scalar> = chi.iter().map(|c| c / &lead).collect();
        if let Some(c) = chi.iter().find(|c| !c.is_symmetric()) {
            return Err(ProjectionError::InvalidPresentation(format!(
                "coefficient {c} of the minimal polynomial is not symmetric"
            )));
        }
        let mut powers = vec![Element::one(alg)];
        for l in 1..=n {
            powers.push(&powers[l - 1] * x);
        }
        let value = chi
            .iter()
            .zip(&powers)
            .fold(Element::zero(alg), |acc, (c, p)| &acc + &p.scale(c));
        if !value.is_zero() {
            return Err(ProjectionError::InvalidPresentation(format!(
                "minimal polynomial does not vanish at {x}"
            )));
        }
        powers.truncate(n);
        let xs = involution.apply(x);
        let flag = if xs == *x {
            StarFlag::Symmetric
        } else if xs == -x {
            StarFlag::Antisymmetric
        } else {
            return Err(ProjectionError::InvalidPresentation(format!(
                "{x} is neither symmetric nor antisymmetric"
            )));
        };
        if flag == StarFlag::Antisymmetric
            && chi.iter().enumerate().any(|(k, c)| (n - k) % 2 == 1 && !c.is_zero())
        {
            return Err(ProjectionError::InvalidPresentation(
                "an antisymmetric generator needs chi(-t) = (-1)^n chi(t)".into(),
            ));
        }
        let mut k_field = Field::algebraic(f, k_name, &chi)?;
        if flag == StarFlag::Antisymmetric {
            let t = k_field.top_generator().expect("algebraic");
            k_field = k_field.with_involution(&-&t)?;
        }
        if basis.len() != n || !basis[0].is_one() {
            return Err(ProjectionError::InvalidPresentation(format!(
                "the right K-basis must have {n} elements starting with 1"
            )));
        }
        if basis.iter().any(|b| b.algebra() != alg) {
            return Err(AlgebraError::HostMismatch.into());
        }
        let ring = FieldRing(f.clone());
        let mut cols = Vec::with_capacity(n * n);
        for b in basis {
            for p in &powers {
                cols.push((b * p).coeffs());
            }
        }
        let m = Matrix::from_rows(&ring, cols)
            .expect("square")
            .transpose();
        let coord_inv = m.inverse().map_err(|_| {
            ProjectionError::InvalidPresentation("the basis is not a right K-basis".into())
        })?;
        Ok(SubfieldPresentation {
            involution: involution.clone(),
            k_field,
            basis: basis.to_vec(),
            kind: Kind::Symbol {
                x: x.clone(),
                flag,
                chi,
                powers,
                coord_inv,
            },
        })
    }

    /// Standard presentation of a symbol algebra: `K = F(x)` with basis
    /// `1, y, ..., y^(n-1)`; `x` must be symmetric or antisymmetric.
    pub fn symbol_standard(involution: &Involution) -> Result<SubfieldPresentation, ProjectionError> {
        let alg = involution.algebra();
        let s = alg.as_symbol().ok_or_else(|| {
            ProjectionError::InvalidPresentation("not a symbol algebra".into())
        })?;
        let n = s.n();
        let f = s.field();
        let [xn, yn] = s.names();
        let x = alg.generator(xn)?;
        let y = alg.generator(yn)?;
        let mut chi = vec![f.zero(); n + 1];
        chi[0] = -s.a();
        chi[n] = f.one();
        let basis: Vec<Element> = (0..n).map(|j| y.pow(j as u32)).collect();
        SubfieldPresentation::symbol(involution, &x, &chi, &basis, xn)
    }

    /// Crossed-product presentation: K is the coefficient field and the
    /// basis is `(e_g)`.
    pub fn crossed(involution: &Involution) -> Result<SubfieldPresentation, ProjectionError> {
        let alg = involution.algebra();
        if !alg.is_crossed() {
            return Err(ProjectionError::InvalidPresentation("not a crossed product".into()));
        }
        Ok(SubfieldPresentation {
            involution: involution.clone(),
            k_field: alg.coeff_field().clone(),
            basis: (0..alg.basis_len()).map(|g| Element::basis(alg, g)).collect(),
            kind: Kind::Crossed,
        })
    }

    pub fn algebra(&self) -> &Algebra {
        self.involution.algebra()
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    pub fn k_field(&self) -> &Field {
        &self.k_field
    }

    /// Field over which K has degree n: the center of D.
    pub fn center(&self) -> Field {
        self.k_field.base().expect("K is an algebraic level")
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn generator(&self) -> Option<&Element> {
        match &self.kind {
            Kind::Symbol { x, .. } => Some(x),
            Kind::Crossed => None,
        }
    }

    pub fn flag(&self) -> Option<StarFlag> {
        match &self.kind {
            Kind::Symbol { flag, .. } => Some(*flag),
            Kind::Crossed => None,
        }
    }

    /// The image of a K-scalar in D.
    pub fn embed(&self, k: &Scalar) -> Result<Element, ProjectionError> {
        let k = self.k_field.coerce(k)?;
        match &self.kind {
            Kind::Crossed => Ok(Element::scalar(self.algebra(), &k)),
            Kind::Symbol { powers, .. } => {
                let cs = k.residue_coeffs().expect("algebraic level");
                Ok(powers
                    .iter()
                    .zip(&cs)
                    .fold(Element::zero(self.algebra()), |acc, (p, c)| &acc + &p.scale(c)))
            }
        }
    }

    /// Right K-coordinates: `z = sum basis_i k_i`.
    pub fn coords(&self, z: &Element) -> Result<Vec<Scalar>, ProjectionError> {
        if z.algebra() != self.algebra() {
            return Err(AlgebraError::HostMismatch.into());
        }
        match &self.kind {
            Kind::Crossed => Ok((0..self.dim()).map(|g| z.coeff(g)).collect()),
            Kind::Symbol { coord_inv, .. } => {
                let n = self.dim();
                let v = coord_inv
                    .checked_mul(&Matrix::column(coord_inv.ring(), &z.coeffs()))
                    .expect("dimensions")
                    .column_vec(0);
                v.chunks(n)
                    .map(|c| self.k_field.from_residue(c).map_err(ProjectionError::from))
                    .collect()
            }
        }
    }

    /// Inverse of [`SubfieldPresentation::coords`].
    pub fn compose(&self, coords: &[Scalar]) -> Result<Element, ProjectionError> {
        let mut acc = Element::zero(self.algebra());
        for (b, k) in self.basis.iter().zip(coords) {
            acc = &acc + &(b * &self.embed(k)?);
        }
        Ok(acc)
    }

    /// Reads an element of D lying in K as a K-scalar.
    pub fn to_k(&self, z: &Element) -> Result<Scalar, ProjectionError> {
        let c = self.coords(z)?;
        if c[1..].iter().any(|k| !k.is_zero()) {
            return Err(ProjectionError::NotInK(z.to_string()));
        }
        Ok(c[0].clone())
    }

    /// The unital, hermitian, K-K-bilinear projection `f: D -> K`.
    pub fn f(&self, z: &Element) -> Result<Scalar, ProjectionError> {
        if z.algebra() != self.algebra() {
            return Err(AlgebraError::HostMismatch.into());
        }
        match &self.kind {
            Kind::Crossed => Ok(z.coeff(0)),
            Kind::Symbol { chi, powers, .. } => {
                let n = self.dim();
                let t = self.k_field.top_generator().expect("algebraic");
                // chi'(t) t^n in K
                let mut dchi = self.k_field.zero();
                for (k, c) in chi.iter().enumerate().skip(1) {
                    dchi = &dchi + &(&self.k_field.coerce(c)? * &(&t.pow(k as i64 - 1)? * &self.k_field.int(k as i64)));
                }
                let c = (&dchi * &t.pow(n as i64)?).inv()?;
                let mut sum = Element::zero(self.algebra());
                for i in 0..n {
                    let mut yi = Element::zero(self.algebra());
                    for (k, a) in chi.iter().enumerate().take(i + 1) {
                        yi = &yi + &powers[n - 1 - i + k].scale(a);
                    }
                    sum = &sum + &(&(&powers[i] * z) * &yi);
                }
                let val = -&(&self.embed(&c)? * &sum);
                self.to_k(&val)
            }
        }
    }

    /// Reduced trace `tr = tr_{K/F} o f`, a scalar of the center.
    pub fn reduced_trace(&self, z: &Element) -> Result<Scalar, ProjectionError> {
        Ok(field_trace(&self.f(z)?))
    }
}

/// Trace of multiplication by `k` on its algebraic level over the base.
pub fn field_trace(k: &Scalar) -> Scalar {
    let field = k.field();
    let base = field.base().expect("algebraic level");
    let t = field.top_generator().expect("algebraic level");
    let n = field.level_degree();
    let mut acc = base.zero();
    let mut p = k.clone();
    for i in 0..n {
        acc = &acc + &p.residue_coeffs().expect("algebraic")[i];
        p = &p * &t;
    }
    acc
}

/// Finds `theta'` with `theta'* = +-theta'` and `K = F(theta')` following the
/// construction `theta - theta*`, `(theta - theta*)(theta + theta*)`, then
/// random combinations with coefficient bound doubling. When the base has a
/// nontrivial involution an antisymmetric result is multiplied by an
/// antisymmetric element of the base, giving a symmetric generator.
pub fn primitive_star_generator(
    k: &Field,
    seed: u64,
    attempts: usize,
) -> Result<(Scalar, StarFlag), ProjectionError> {
    let theta = k.top_generator().ok_or_else(|| {
        ProjectionError::InvalidPresentation("K must be an algebraic level".into())
    })?;
    let base = k.base().expect("algebraic level");
    let n = k.level_degree();
    let generates = |c: &Scalar| -> bool {
        let ring = FieldRing(base.clone());
        let mut rows = Vec::with_capacity(n);
        let mut p = k.one();
        for _ in 0..n {
            rows.push(p.residue_coeffs().expect("algebraic"));
            p = &p * c;
        }
        Matrix::from_rows(&ring, rows).expect("square").rank() == n
    };
    let classify = |c: &Scalar| -> Option<StarFlag> {
        let cs = c.conj();
        if cs == *c {
            Some(StarFlag::Symmetric)
        } else if cs == -c {
            Some(StarFlag::Antisymmetric)
        } else {
            None
        }
    };
    let ts = theta.conj();
    let mut candidates = vec![
        theta.clone(),
        &theta - &ts,
        &(&theta - &ts) * &(&theta + &ts),
        &theta + &ts,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bound = 2i64;
    let mut tried = 0;
    loop {
        for c in candidates.drain(..) {
            tried += 1;
            if c.is_zero() {
                continue;
            }
            if let Some(flag) = classify(&c) {
                if generates(&c) {
                    return Ok(symmetrize(&base, c, flag));
                }
            }
        }
        if tried >= attempts {
            return Err(ProjectionError::SearchExhausted(tried));
        }
        for _ in 0..8 {
            let mut c = k.zero();
            let mut p = k.one();
            for _ in 0..n {
                c = &c + &(&p * &k.int(rng.gen_range(-bound..=bound)));
                p = &p * &theta;
            }
            candidates.push(&c + &c.conj());
            candidates.push(&c - &c.conj());
        }
        bound *= 2;
    }
}

fn symmetrize(base: &Field, c: Scalar, flag: StarFlag) -> (Scalar, StarFlag) {
    if flag == StarFlag::Symmetric || base.involution_is_trivial() {
        return (c, flag);
    }
    for name in base.generator_names() {
        let g = base.generator(&name).expect("declared");
        let a = &g - &g.conj();
        if !a.is_zero() {
            let a = c.field().coerce(&a).expect("base of K");
            return (&a * &c, StarFlag::Symmetric);
        }
    }
    (c, flag)
}
