//! Eps-hermitian matrices: congruence diagonalization and hermitian cones
//! with their lifts, restrictions, twists, actions and extensions.

mod closure;
mod cones;
mod diag;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::matrix::MatrixError;
use crate::projection::ProjectionError;
use crate::scalars::FieldError;

pub use closure::{BoundedClosure, ClosureBounds, ClosureCertificate, Derivation, SohsClosure, Step};
pub use cones::{
    Acted, Contracted, Extended, Intersection, LeadingTermCone, Lifted, LtRule, OrderingCone, Restricted, Twisted,
};
pub use diag::{
    alternating_degenerate_witness, congruent_scalars, diagonalize, match_diagonal, repair_allowed, Block,
    CongruenceResult, DegenerateWitness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HermitianError {
    #[error("not eps-hermitian: {0}")]
    NotHermitian(String),
    #[error("{0} is not invertible")]
    NotInvertible(String),
    #[error("wrong case: {0}")]
    WrongCase(String),
    #[error("twisting matrix is singular")]
    SingularTwist,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Projection(#[from] ProjectionError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Membership {
    Member,
    NonMember,
    Unknown,
}

impl Membership {
    pub fn from_bool(b: bool) -> Membership {
        if b {
            Membership::Member
        } else {
            Membership::NonMember
        }
    }

    /// Membership in an intersection.
    pub fn and(self, other: Membership) -> Membership {
        use Membership::*;
        match (self, other) {
            (NonMember, _) | (_, NonMember) => NonMember,
            (Unknown, _) | (_, Unknown) => Unknown,
            _ => Member,
        }
    }
}

/// A membership oracle for an eps-hermitian cone.
pub trait Cone<T> {
    fn contains(&self, e: &T) -> Result<Membership, HermitianError>;
    fn describe(&self) -> String;
}

#[cfg(test)]
mod tests;
