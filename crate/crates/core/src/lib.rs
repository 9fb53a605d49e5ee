//! Exact arithmetic for central simple algebras with involution.

pub mod scalars;
pub mod algebra;
pub mod matrix;
pub mod projection;
pub mod hermitian;
pub mod reality;
pub mod catalog;
pub mod sample;
pub mod spec;
