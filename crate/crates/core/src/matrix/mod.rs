//! Matrices over rings with involution, exact linear algebra over fields, and
//! the left regular representation of an algebra over a maximal subfield.

mod repr;

use std::fmt;

use thiserror::Error;

use crate::algebra::{AlgebraError, Element, Involution};
use crate::projection::ProjectionError;
use crate::scalars::{Field, FieldError, Scalar};

pub use repr::RepresentationContext;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("element {0} is not invertible")]
    NotInvertible(String),
    #[error("basis decomposition failed: {0}")]
    BasisDecomposition(String),
    #[error("Gram matrix is singular")]
    SingularGram,
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

/// A ring with involution whose elements are handled through the ring value.
pub trait StarRing: Clone {
    type Elem: Clone + PartialEq + fmt::Display + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn star(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// Two-sided inverse, `None` for zero or non-units.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn int(&self, n: i64) -> Self::Elem;
    /// Whether the involution is the identity.
    fn star_is_trivial(&self) -> bool;
    /// A few elements tried in turn when a nonzero value of `k + eps k*` is
    /// needed.
    fn probes(&self) -> Vec<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

/// A field with its tower involution.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldRing(pub Field);

impl StarRing for FieldRing {
    type Elem = Scalar;

    fn zero(&self) -> Scalar {
        self.0.zero()
    }
    fn one(&self) -> Scalar {
        self.0.one()
    }
    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn star(&self, a: &Scalar) -> Scalar {
        a.conj()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Scalar) -> Option<Scalar> {
        a.inv().ok()
    }
    fn int(&self, n: i64) -> Scalar {
        self.0.int(n)
    }
    fn star_is_trivial(&self) -> bool {
        self.0.involution_is_trivial()
    }
    fn probes(&self) -> Vec<Scalar> {
        let mut out = vec![self.0.one()];
        for name in self.0.generator_names() {
            let g = self.0.generator(&name).expect("declared");
            out.push(&g - &g.conj());
            out.push(g);
        }
        out
    }
}

/// An algebra with involution; inverses come from the regular
/// representation.
#[derive(Clone)]
pub struct AlgebraRing {
    pub involution: Involution,
    pub rep: std::sync::Arc<RepresentationContext>,
}

impl StarRing for AlgebraRing {
    type Elem = Element;

    fn zero(&self) -> Element {
        Element::zero(self.involution.algebra())
    }
    fn one(&self) -> Element {
        Element::one(self.involution.algebra())
    }
    fn add(&self, a: &Element, b: &Element) -> Element {
        a + b
    }
    fn mul(&self, a: &Element, b: &Element) -> Element {
        a * b
    }
    fn neg(&self, a: &Element) -> Element {
        -a
    }
    fn star(&self, a: &Element) -> Element {
        self.involution.apply(a)
    }
    fn is_zero(&self, a: &Element) -> bool {
        a.is_zero()
    }
    fn inv(&self, a: &Element) -> Option<Element> {
        self.rep.solve_left(a).ok()
    }
    fn int(&self, n: i64) -> Element {
        let alg = self.involution.algebra();
        Element::scalar(alg, &alg.coeff_field().int(n))
    }
    fn star_is_trivial(&self) -> bool {
        false
    }
    fn probes(&self) -> Vec<Element> {
        let alg = self.involution.algebra();
        let mut out = vec![Element::one(alg)];
        for name in alg.generator_names() {
            out.push(alg.generator(&name).expect("declared"));
        }
        out
    }
}

/// Dense row-major matrix over a [`StarRing`].
#[derive(Clone)]
pub struct Matrix<R: StarRing> {
    ring: R,
    rows: usize,
    cols: usize,
    data: Vec<R::Elem>,
}

impl<R: StarRing> PartialEq for Matrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.data == other.data
    }
}

impl<R: StarRing> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<R: StarRing> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{self}")
    }
}

impl<R: StarRing> Matrix<R> {
    pub fn zeros(ring: &R, rows: usize, cols: usize) -> Self {
        Matrix {
            ring: ring.clone(),
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &R, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn from_rows(ring: &R, rows: Vec<Vec<R::Elem>>) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(MatrixError::Dimension("ragged rows".into()));
        }
        Ok(Matrix {
            ring: ring.clone(),
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn diagonal(ring: &R, entries: &[R::Elem]) -> Self {
        let mut m = Self::zeros(ring, entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    pub fn column(ring: &R, entries: &[R::Elem]) -> Self {
        Matrix {
            ring: ring.clone(),
            rows: entries.len(),
            cols: 1,
            data: entries.to_vec(),
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[R::Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column_vec(&self, j: usize) -> Vec<R::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn diagonal_entries(&self) -> Vec<R::Elem> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.ring.is_zero(e))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.ring.is_zero(self.get(i, j))))
    }

    pub fn map(&self, f: impl Fn(&R::Elem) -> R::Elem) -> Self {
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, MatrixError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatrixError::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| self.ring.add(a, b))
                .collect(),
        })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, MatrixError> {
        self.checked_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|e| self.ring.neg(e))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = Self::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if r.is_zero(b) {
                        continue;
                    }
                    let v = r.add(out.get(i, j), &r.mul(a, b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Left scalar multiplication `cX`.
    pub fn scale_left(&self, c: &R::Elem) -> Self {
        self.map(|e| self.ring.mul(c, e))
    }

    /// Right scalar multiplication `Xc`.
    pub fn scale_right(&self, c: &R::Elem) -> Self {
        self.map(|e| self.ring.mul(e, c))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Conjugate transpose `X*`.
    pub fn star(&self) -> Self {
        let mut out = Self::zeros(&self.ring, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.ring.star(self.get(i, j)));
            }
        }
        out
    }

    /// `eps X* = X`.
    pub fn is_eps_hermitian(&self, eps: &R::Elem) -> bool {
        self.is_square() && self.star().scale_left(eps) == *self
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Congruence `P* X P`.
    pub fn congruence(&self, p: &Self) -> Result<Self, MatrixError> {
        p.star().checked_mul(&self.checked_mul(p)?)
    }

    pub fn block_diagonal(ring: &R, blocks: &[Self]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(ring, n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(r0 + i, c0 + j, b.get(i, j).clone());
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Inverse by Gauss-Jordan with left row operations; valid over division
    /// rings.
    pub fn inverse(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let r = &self.ring;
        let mut a = self.clone();
        let mut inv = Self::identity(r, n);
        for k in 0..n {
            let p = (k..n).find(|&i| !r.is_zero(a.get(i, k))).ok_or(MatrixError::Singular)?;
            a.swap_rows(k, p);
            inv.swap_rows(k, p);
            let pinv = r.inv(a.get(k, k)).ok_or(MatrixError::Singular)?;
            for j in 0..n {
                a.set(k, j, r.mul(&pinv, a.get(k, j)));
                inv.set(k, j, r.mul(&pinv, inv.get(k, j)));
            }
            for i in 0..n {
                if i == k || r.is_zero(a.get(i, k)) {
                    continue;
                }
                let f = a.get(i, k).clone();
                for j in 0..n {
                    let v = r.sub(a.get(i, j), &r.mul(&f, a.get(k, j)));
                    a.set(i, j, v);
                    let w = r.sub(inv.get(i, j), &r.mul(&f, inv.get(k, j)));
                    inv.set(i, j, w);
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * w = rhs` for a column `w`.
    pub fn solve(&self, rhs: &[R::Elem]) -> Result<Vec<R::Elem>, MatrixError> {
        let inv = self.inverse()?;
        Ok(inv.checked_mul(&Self::column(&self.ring, rhs))?.column_vec(0))
    }
}

/// Size up to which determinants and inverses use cofactor expansion, which
/// needs no division in the entry field.
const LAPLACE_MAX: usize = 4;

impl Matrix<FieldRing> {
    /// Determinant: cofactor expansion for small sizes, fraction-free
    /// (Bareiss) elimination otherwise.
    pub fn det(&self) -> Result<Scalar, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Dimension("determinant of a non-square matrix".into()));
        }
        if self.rows <= LAPLACE_MAX {
            return Ok(self.det_laplace());
        }
        self.det_bareiss()
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let rows: Vec<Vec<Scalar>> = (0..self.rows)
            .filter(|&i| i != skip_row)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != skip_col)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        Matrix {
            ring: self.ring.clone(),
            rows: self.rows - 1,
            cols: self.cols - 1,
            data: rows.into_iter().flatten().collect(),
        }
    }

    fn det_laplace(&self) -> Scalar {
        let f = &self.ring.0;
        match self.rows {
            0 => f.one(),
            1 => self.get(0, 0).clone(),
            _ => {
                let mut acc = f.zero();
                for j in 0..self.cols {
                    let a = self.get(0, j);
                    if a.is_zero() {
                        continue;
                    }
                    let term = a * &self.minor(0, j).det_laplace();
                    acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
                }
                acc
            }
        }
    }

    /// Classical adjugate, `adj(X) X = det(X) I`.
    pub fn adjugate(&self) -> Result<Self, MatrixError> {
        if !self.is_square() {
            return Err(MatrixError::Dimension("adjugate of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut out = Self::zeros(&self.ring, n, n);
        if n == 1 {
            out.set(0, 0, self.ring.0.one());
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                let m = self.minor(j, i).det()?;
                out.set(i, j, if (i + j) % 2 == 0 { m } else { -&m });
            }
        }
        Ok(out)
    }

    /// Inverse avoiding divisions in the entry field for small sizes: only
    /// the determinant is inverted.
    pub fn inverse_field(&self) -> Result<Self, MatrixError> {
        if !self.is_square() || self.rows > LAPLACE_MAX {
            return self.inverse();
        }
        let adj = self.adjugate()?;
        let d = (0..self.cols).fold(self.ring.0.zero(), |acc, j| &acc + &(self.get(0, j) * adj.get(j, 0)));
        let dinv = central_inverse(&d).ok_or(MatrixError::Singular)?;
        Ok(adj.scale_right(&dinv))
    }

    fn det_bareiss(&self) -> Result<Scalar, MatrixError> {
        let n = self.rows;
        let f = &self.ring.0;
        if n == 0 {
            return Ok(f.one());
        }
        let mut a = self.clone();
        let mut prev = f.one();
        let mut sign = false;
        for k in 0..n - 1 {
            let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(f.zero());
            };
            if p != k {
                a.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(a.get(k, k) * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    a.set(i, j, v.checked_div(&prev)?);
                }
            }
            prev = a.get(k, k).clone();
        }
        let d = a.get(n - 1, n - 1).clone();
        Ok(if sign { -&d } else { d })
    }

    pub fn trace(&self) -> Scalar {
        self.diagonal_entries()
            .iter()
            .fold(self.ring.0.zero(), |acc, e| &acc + e)
    }

    /// Rank by row reduction.
    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for c in 0..a.cols {
            let Some(p) = (rank..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            let pinv = a.get(rank, c).inv().expect("nonzero pivot");
            for i in rank + 1..a.rows {
                if a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c) * &pinv;
                for j in c..a.cols {
                    let v = a.get(i, j) - &(&f * a.get(rank, j));
                    a.set(i, j, v);
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn field(&self) -> &Field {
        &self.ring.0
    }
}

/// Inverse of a field element, computed in the base level when the element
/// lies there (no polynomial inversion needed).
fn central_inverse(d: &Scalar) -> Option<Scalar> {
    if d.is_zero() {
        return None;
    }
    if let (Some(cs), Some(base)) = (d.residue_coeffs(), d.field().base()) {
        if cs[1..].iter().all(Scalar::is_zero) {
            let inv = central_inverse(&cs[0])?;
            return d.field().coerce(&base.coerce(&inv).ok()?).ok();
        }
    }
    d.inv().ok()
}

#[cfg(test)]
mod tests;
