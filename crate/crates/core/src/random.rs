//! Seeded random algebras and elements.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;

/// Integer entries over ℚ are drawn from `-RATIONAL_RANGE..=RATIONAL_RANGE`.
pub const RATIONAL_RANGE: i64 = 3;
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Constraints {
    pub perfect: bool,
    pub nondegenerate: bool,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform over GF(p), uniform small integer over ℚ.
pub fn scalar<R: Rng + ?Sized>(rng: &mut R, field: Field) -> Scalar {
    match field.modulus() {
        Some(p) => field.from_i64(rng.random_range(0..p) as i64),
        None => field.from_i64(rng.random_range(-RATIONAL_RANGE..=RATIONAL_RANGE)),
    }
}

pub fn element<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize) -> Element {
    Element::new((0..n).map(|_| scalar(rng, field)).collect())
}

/// A random algebra meeting the constraints, by rejection sampling.
pub fn algebra<R: Rng + ?Sized>(rng: &mut R, field: Field, n: usize, c: Constraints) -> Result<EvolutionAlgebra> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let data = (0..n * n).map(|_| scalar(rng, field)).collect();
        let a = EvolutionAlgebra::new(Matrix::new(field, n, n, data)?)?;
        if (!c.perfect || a.is_perfect()) && (!c.nondegenerate || a.is_nondegenerate()) {
            return Ok(a);
        }
    }
    Err(Error::InvalidArgument(format!(
        "no {n}-dimensional algebra over {field} met the constraints in {MAX_ATTEMPTS} draws"
    )))
}
