//! Exact computations on finite-dimensional evolution algebras over ℚ and
//! GF(p).
//!
//! An evolution algebra is stored through its structure matrix relative to a
//! natural basis `e_1, …, e_n`: column `i` holds the coordinates of `e_i²`.
//! All arithmetic is exact.

pub mod adjoint;
pub mod algebra;
pub mod cli;
pub mod error;
pub mod field;
pub mod graph;
pub mod ideals;
pub mod io;
pub mod linalg;
pub mod natural;
pub mod nilpotency;
pub mod oracle;
pub mod random;
pub mod report;
pub mod verdict;

pub use algebra::{BasisCandidate, Element, EvolutionAlgebra};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use linalg::{Matrix, Subspace};
pub use verdict::Verdict;
