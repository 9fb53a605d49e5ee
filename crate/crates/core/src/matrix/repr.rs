use crate::algebra::Element;
use crate::projection::SubfieldPresentation;
use crate::scalars::Scalar;

use super::{FieldRing, Matrix, MatrixError};

/// Left regular representation `lambda: D -> M_n(K)` in a right K-basis,
/// with Gram matrix `A = [f(e_i* e_j)]` and the extended involution
/// `X# = A^-1 X* A`.
#[derive(Clone)]
pub struct RepresentationContext {
    pres: SubfieldPresentation,
    ring: FieldRing,
    gram: Matrix<FieldRing>,
    gram_inv: Matrix<FieldRing>,
}

impl RepresentationContext {
    pub fn new(pres: &SubfieldPresentation) -> Result<RepresentationContext, MatrixError> {
        let ring = FieldRing(pres.k_field().clone());
        let inv = pres.involution();
        let basis = pres.basis();
        let stars: Vec<Element> = basis.iter().map(|e| inv.apply(e)).collect();
        let mut rows = Vec::with_capacity(basis.len());
        for si in &stars {
            let mut row = Vec::with_capacity(basis.len());
            for ej in basis {
                row.push(pres.f(&(si * ej))?);
            }
            rows.push(row);
        }
        let gram = Matrix::from_rows(&ring, rows)?;
        if gram.star() != gram {
            return Err(MatrixError::BasisDecomposition(format!(
                "Gram matrix {gram} is not hermitian"
            )));
        }
        let gram_inv = gram.inverse_field().map_err(|_| MatrixError::SingularGram)?;
        Ok(RepresentationContext {
            pres: pres.clone(),
            ring,
            gram,
            gram_inv,
        })
    }

    pub fn presentation(&self) -> &SubfieldPresentation {
        &self.pres
    }

    pub fn ring(&self) -> &FieldRing {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.pres.dim()
    }

    pub fn gram(&self) -> &Matrix<FieldRing> {
        &self.gram
    }

    pub fn gram_inv(&self) -> &Matrix<FieldRing> {
        &self.gram_inv
    }

    /// `a e_j = sum_i e_i lambda(a)_ij`.
    pub fn lambda(&self, a: &Element) -> Result<Matrix<FieldRing>, MatrixError> {
        let n = self.dim();
        let mut m = Matrix::zeros(&self.ring, n, n);
        for (j, e) in self.pres.basis().iter().enumerate() {
            for (i, c) in self.pres.coords(&(a * e))?.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }

    /// The element whose representation is `x`, read from the first column
    /// (the first basis vector is 1); fails when `x` is not in the image.
    pub fn unlambda(&self, x: &Matrix<FieldRing>) -> Result<Element, MatrixError> {
        let a = self.pres.compose(&x.column_vec(0))?;
        if self.lambda(&a)? != *x {
            return Err(MatrixError::BasisDecomposition(format!(
                "{x} is not the matrix of an element"
            )));
        }
        Ok(a)
    }

    /// `lambda(k)` for a scalar of K.
    pub fn lambda_k(&self, k: &Scalar) -> Result<Matrix<FieldRing>, MatrixError> {
        self.lambda(&self.pres.embed(k)?)
    }

    /// `X# = A^-1 X* A`.
    pub fn sharp(&self, x: &Matrix<FieldRing>) -> Result<Matrix<FieldRing>, MatrixError> {
        self.gram_inv.checked_mul(&x.star().checked_mul(&self.gram)?)
    }

    /// `u^-1`, from `lambda(u) w = coords(1)`.
    pub fn solve_left(&self, u: &Element) -> Result<Element, MatrixError> {
        if u.is_zero() {
            return Err(MatrixError::NotInvertible(u.to_string()));
        }
        let l = self.lambda(u)?;
        let one = self.pres.coords(&Element::one(self.pres.algebra()))?;
        let w = l
            .inverse_field()
            .map_err(|_| MatrixError::NotInvertible(u.to_string()))?
            .checked_mul(&Matrix::column(&self.ring, &one))?
            .column_vec(0);
        Ok(self.pres.compose(&w)?)
    }

    /// Matrix trace of `lambda(z)`, a scalar of the center.
    pub fn lambda_trace(&self, z: &Element) -> Result<Scalar, MatrixError> {
        let t = self.lambda(z)?.trace();
        let center = self.pres.center();
        let cs = t.residue_coeffs().expect("algebraic");
        if cs[1..].iter().any(|c| !c.is_zero()) {
            return Err(MatrixError::BasisDecomposition(format!("trace {t} is not central")));
        }
        Ok(center.coerce(&cs[0])?)
    }
}
