//! Exact scalars: rationals, number fields, rational function fields, field
//! involutions, Galois automorphisms and signs under orderings.

mod field;
mod galois;
pub(crate) mod mpoly;
pub mod qpoly;
mod sign;

pub use field::{field_arith, ArithOp, Field, Scalar};
pub use galois::Automorphism;
pub use sign::{sign_at, Sign, SignOracle};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different field towers")]
    TowerMismatch,
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("not real embeddable: {0}")]
    NotRealEmbeddable(String),
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
}

#[cfg(test)]
mod tests;
