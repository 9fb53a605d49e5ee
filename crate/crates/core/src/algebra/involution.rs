use std::collections::BTreeMap;

use crate::scalars::Scalar;

use super::{Algebra, AlgebraError, AlgebraKind, Element};

/// Involution of an algebra determined by generator images; scalars are
/// moved by the tower involution of the coefficient field.
///
/// For a symbol algebra the images are `[x*, y*]`, for a crossed product the
/// images of `e_g` in group order.
#[derive(Clone)]
pub struct Involution {
    alg: Algebra,
    images: Vec<Element>,
    /// Image of every basis symbol.
    basis_star: Vec<Element>,
}

/// Failures found while validating an involution on a spanning set.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InvolutionReport {
    pub antimultiplicative_failures: Vec<(String, String)>,
    pub order_two_failures: Vec<String>,
}

impl InvolutionReport {
    pub fn ok(&self) -> bool {
        self.antimultiplicative_failures.is_empty() && self.order_two_failures.is_empty()
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            return "valid".into();
        }
        let mut parts: Vec<String> = self
            .antimultiplicative_failures
            .iter()
            .map(|(u, v)| format!("({u} * {v})* != {v}* {u}*"))
            .collect();
        parts.extend(self.order_two_failures.iter().map(|u| format!("{u}** != {u}")));
        parts.join("; ")
    }
}

impl Involution {
    /// Builds and validates the involution.
    pub fn new(alg: &Algebra, images: Vec<Element>) -> Result<Involution, AlgebraError> {
        let inv = Involution::unchecked(alg, images)?;
        let report = inv.validate();
        if !report.ok() {
            return Err(AlgebraError::InvalidInvolution(report.summary()));
        }
        Ok(inv)
    }

    /// Builds without validation; [`Involution::validate`] reports failures.
    pub fn unchecked(alg: &Algebra, images: Vec<Element>) -> Result<Involution, AlgebraError> {
        if images.iter().any(|e| e.algebra() != alg) {
            return Err(AlgebraError::HostMismatch);
        }
        let basis_star = match &*alg.0 {
            AlgebraKind::Symbol(s) => {
                if images.len() != 2 {
                    return Err(AlgebraError::InvalidInvolution(
                        "a symbol algebra needs the images of both generators".into(),
                    ));
                }
                let mut out = Vec::with_capacity(s.n * s.n);
                for idx in 0..s.n * s.n {
                    let (i, j) = s.exponents(idx);
                    out.push(&images[1].pow(j as u32) * &images[0].pow(i as u32));
                }
                out
            }
            AlgebraKind::Crossed(c) => {
                if images.len() != c.order() {
                    return Err(AlgebraError::InvalidInvolution(
                        "a crossed product needs the image of every basis symbol".into(),
                    ));
                }
                images.clone()
            }
        };
        Ok(Involution {
            alg: alg.clone(),
            images,
            basis_star,
        })
    }

    /// Standard (canonical) involution of a quaternion algebra.
    pub fn quaternion_standard(alg: &Algebra) -> Result<Involution, AlgebraError> {
        let i = alg.generator("i")?;
        let j = alg.generator("j")?;
        Involution::new(alg, vec![-&i, -&j])
    }

    /// Involution fixing the given generators (`x* = x`, `y* = y` or
    /// `e_g* = e_g`).
    pub fn fixing_generators(alg: &Algebra) -> Result<Involution, AlgebraError> {
        let images = match &*alg.0 {
            AlgebraKind::Symbol(s) => vec![
                Element::basis(alg, s.index(1, 0)),
                Element::basis(alg, s.index(0, 1)),
            ],
            AlgebraKind::Crossed(c) => (0..c.order()).map(|g| Element::basis(alg, g)).collect(),
        };
        Involution::new(alg, images)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn images(&self) -> &[Element] {
        &self.images
    }

    /// Whether the involution is the identity on the coefficient field.
    pub fn is_identity_on_scalars(&self) -> bool {
        self.alg.coeff_field().involution_is_trivial()
    }

    pub fn apply(&self, u: &Element) -> Element {
        let mut acc = Element::zero(&self.alg);
        match &*self.alg.0 {
            AlgebraKind::Symbol(_) => {
                for (idx, c) in u.terms() {
                    acc = &acc + &self.basis_star[*idx].scale(&c.conj());
                }
            }
            AlgebraKind::Crossed(_) => {
                for (g, c) in u.terms() {
                    let left = Element::scalar(&self.alg, &c.conj());
                    acc = &acc + &(&left * &self.basis_star[*g]);
                }
            }
        }
        acc
    }

    /// Checks `(uv)* = v* u*` and `u** = u` on a spanning set: all basis
    /// pairs of a symbol algebra; basis symbols and coefficient generators of
    /// a crossed product.
    pub fn validate(&self) -> InvolutionReport {
        let mut report = InvolutionReport::default();
        let alg = &self.alg;
        let mut span: Vec<Element> = (0..alg.basis_len()).map(|i| Element::basis(alg, i)).collect();
        if alg.is_crossed() {
            let k = alg.coeff_field();
            for name in k.generator_names() {
                span.push(Element::scalar(alg, &k.generator(&name).expect("declared")));
            }
        }
        for u in &span {
            for v in &span {
                let lhs = self.apply(&(u * v));
                let rhs = &self.apply(v) * &self.apply(u);
                if lhs != rhs {
                    report
                        .antimultiplicative_failures
                        .push((u.to_string(), v.to_string()));
                }
            }
            if self.apply(&self.apply(u)) != *u {
                report.order_two_failures.push(u.to_string());
            }
        }
        report
    }

    /// `u* = eps u`.
    pub fn is_eps_hermitian(&self, u: &Element, eps: &Scalar) -> bool {
        self.apply(u).scale(eps) == *u
    }

    /// Symmetric and antisymmetric parts by basis symbol, for diagnostics.
    pub fn basis_images(&self) -> BTreeMap<String, String> {
        (0..self.alg.basis_len())
            .map(|i| (self.alg.basis_name(i), self.basis_star[i].to_string()))
            .collect()
    }
}

impl std::fmt::Debug for Involution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.basis_images()).finish()
    }
}
