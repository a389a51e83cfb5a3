//! Exact dense linear algebra: row reduction, kernels, determinants, minors,
//! solving, and canonical subspaces.

mod matrix;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use subspace::{unit, Subspace};
