//! Symbol algebras, crossed products, their involutions and leading terms.

mod crossed;
mod element;
mod involution;
mod skew;
mod symbol;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::scalars::{Automorphism, Field, FieldError, Scalar};

pub use crossed::{CocycleReport, CrossedProduct, SymbolToCrossed};
pub use element::Element;
pub use involution::{Involution, InvolutionReport};
pub use skew::{symbol_leading_term, Exps, LeadingTerm, QuantumPlane, SkewPoly};
pub use symbol::SymbolAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("elements belong to different algebras")]
    HostMismatch,
    #[error("invalid algebra parameters: {0}")]
    InvalidParameters(String),
    #[error("invalid group data: {0}")]
    InvalidGroup(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("leading term of zero")]
    ZeroElement,
    #[error(transparent)]
    Field(#[from] FieldError),
}

pub(crate) enum AlgebraKind {
    Symbol(SymbolAlgebra),
    Crossed(CrossedProduct),
}

/// Shared handle to an algebra. Elements remember their host and refuse to
/// mix with elements of another host.
#[derive(Clone)]
pub struct Algebra(pub(crate) Arc<AlgebraKind>);

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

impl Algebra {
    /// Symbol algebra with `x^n = a`, `y^n = b`, `yx = eps xy` over `field`.
    pub fn symbol(
        field: &Field,
        n: usize,
        a: &Scalar,
        b: &Scalar,
        eps: &Scalar,
        names: [&str; 2],
    ) -> Result<Algebra, AlgebraError> {
        Ok(Algebra(Arc::new(AlgebraKind::Symbol(SymbolAlgebra::new(
            field, n, a, b, eps, names,
        )?))))
    }

    /// Quaternion algebra `(a, b)` with generators `i`, `j`.
    pub fn quaternion(field: &Field, a: &Scalar, b: &Scalar) -> Result<Algebra, AlgebraError> {
        Algebra::symbol(field, 2, a, b, &field.int(-1), ["i", "j"])
    }

    /// Crossed product with validated group action and cocycle.
    pub fn crossed(
        field: &Field,
        group: &[&str],
        table: Vec<Vec<usize>>,
        autos: Vec<Automorphism>,
        cocycle: Vec<Vec<Scalar>>,
    ) -> Result<Algebra, AlgebraError> {
        let cp = CrossedProduct::new(field, group, table, autos, cocycle)?;
        let report = cp.validate_cocycle();
        if !report.ok() {
            return Err(AlgebraError::InvalidCocycle(report.summary()));
        }
        Ok(Algebra(Arc::new(AlgebraKind::Crossed(cp))))
    }

    /// Crossed product whose cocycle is not checked; use
    /// [`Algebra::validate_cocycle`] for a report.
    pub fn crossed_unchecked(
        field: &Field,
        group: &[&str],
        table: Vec<Vec<usize>>,
        autos: Vec<Automorphism>,
        cocycle: Vec<Vec<Scalar>>,
    ) -> Result<Algebra, AlgebraError> {
        let cp = CrossedProduct::new(field, group, table, autos, cocycle)?;
        Ok(Algebra(Arc::new(AlgebraKind::Crossed(cp))))
    }

    pub fn as_symbol(&self) -> Option<&SymbolAlgebra> {
        match &*self.0 {
            AlgebraKind::Symbol(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_crossed(&self) -> Option<&CrossedProduct> {
        match &*self.0 {
            AlgebraKind::Crossed(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_crossed(&self) -> bool {
        self.as_crossed().is_some()
    }

    /// Associativity and normalization report for a crossed product; a symbol
    /// algebra always passes.
    pub fn validate_cocycle(&self) -> CocycleReport {
        match &*self.0 {
            AlgebraKind::Crossed(c) => c.validate_cocycle(),
            AlgebraKind::Symbol(_) => CocycleReport::default(),
        }
    }

    /// Field holding the coefficients of the normal form: the center for a
    /// symbol algebra, the maximal subfield K for a crossed product.
    pub fn coeff_field(&self) -> &Field {
        match &*self.0 {
            AlgebraKind::Symbol(s) => &s.field,
            AlgebraKind::Crossed(c) => &c.field,
        }
    }

    /// Number of basis symbols.
    pub fn basis_len(&self) -> usize {
        match &*self.0 {
            AlgebraKind::Symbol(s) => s.n * s.n,
            AlgebraKind::Crossed(c) => c.order(),
        }
    }

    /// Square root of the dimension over the center.
    pub fn degree(&self) -> usize {
        match &*self.0 {
            AlgebraKind::Symbol(s) => s.n,
            AlgebraKind::Crossed(c) => c.order(),
        }
    }

    pub fn basis_name(&self, idx: usize) -> String {
        match &*self.0 {
            AlgebraKind::Symbol(s) => s.monomial_name(idx),
            AlgebraKind::Crossed(c) => c.basis_name(idx),
        }
    }

    pub fn describe(&self) -> String {
        match &*self.0 {
            AlgebraKind::Symbol(s) => format!(
                "symbol algebra of degree {} over {} ({}^{} = {}, {}^{} = {})",
                s.n,
                s.field.describe(),
                s.names[0],
                s.n,
                s.a,
                s.names[1],
                s.n,
                s.b
            ),
            AlgebraKind::Crossed(c) => format!(
                "crossed product over {} with group of order {}",
                c.field.describe(),
                c.order()
            ),
        }
    }

    /// A named generator: `x`, `y` of a symbol algebra, `e_<g>` of a crossed
    /// product, or any generator of the coefficient tower.
    pub fn generator(&self, name: &str) -> Result<Element, AlgebraError> {
        match &*self.0 {
            AlgebraKind::Symbol(s) => {
                let n = s.n;
                if name == s.names[0] {
                    return Ok(Element::basis(self, n));
                }
                if name == s.names[1] {
                    return Ok(Element::basis(self, 1));
                }
            }
            AlgebraKind::Crossed(c) => {
                if let Some(g) = name.strip_prefix("e_") {
                    if let Some(idx) = c.group.iter().position(|h| h == g) {
                        return Ok(Element::basis(self, idx));
                    }
                }
            }
        }
        let k = self
            .coeff_field()
            .generator(name)
            .ok_or_else(|| AlgebraError::UnknownGenerator(name.to_string()))?;
        Ok(Element::scalar(self, &k))
    }

    /// Names accepted by [`Algebra::generator`] beyond the coefficient tower.
    pub fn generator_names(&self) -> Vec<String> {
        match &*self.0 {
            AlgebraKind::Symbol(s) => s.names.to_vec(),
            AlgebraKind::Crossed(c) => c.group.iter().map(|g| format!("e_{g}")).collect(),
        }
    }
}

#[cfg(test)]
mod tests;
