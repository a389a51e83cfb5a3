use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

use super::Matrix;

/// A linear subspace of `field^n`, stored as the nonzero rows of its reduced
/// row echelon basis. Two subspaces are equal iff their RREF bases coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, n: usize) -> Self {
        Subspace {
            ambient: n,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of arbitrary generators (each of length `n`).
    pub fn span<I, V>(field: Field, n: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let rows: Vec<Vec<Scalar>> = vectors.into_iter().map(|v| v.as_ref().to_vec()).collect();
        if rows.is_empty() {
            return Subspace::zero(field, n);
        }
        let m = Matrix::from_rows(field, n, &rows).expect("generator length matches ambient");
        Subspace::from_matrix_rows(&m)
    }

    /// Row space of `m`.
    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let r = m.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        let all: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient: m.cols(),
            basis: r.matrix.submatrix(&keep, &all).expect("in range"),
            pivots: r.pivots,
        }
    }

    /// `span{e_i : i ∈ indices}`.
    pub fn coordinate(field: Field, n: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors: Vec<Vec<Scalar>> = indices
            .into_iter()
            .map(|i| unit(field, n, i))
            .collect();
        Subspace::span(field, n, vectors)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Scalar>> {
        self.basis.row_vectors()
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::ShapeMismatch(format!(
                "subspaces of dimension-{} and dimension-{} spaces",
                self.ambient, other.ambient
            )));
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: other.field().to_string(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        if v.len() != self.ambient {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} in a {}-dimensional space",
                v.len(),
                self.ambient
            )));
        }
        // reduce v against the RREF rows; membership iff the residue vanishes
        let mut r = v.to_vec();
        for (row, &pc) in self.pivots.iter().enumerate() {
            let c = r[pc].clone();
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.basis.row(row).iter().enumerate() {
                if !b.is_zero() {
                    r[j] = &r[j] - &(&c * b);
                }
            }
        }
        Ok(r.iter().all(Scalar::is_zero))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        for v in self.basis_vectors() {
            if !other.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let vectors = self.basis_vectors().into_iter().chain(other.basis_vectors());
        Ok(Subspace::span(self.field(), self.ambient, vectors))
    }

    pub fn with_vectors<I, V>(&self, vectors: I) -> Subspace
    where
        I: IntoIterator<Item = V>,
        V: AsRef<[Scalar]>,
    {
        let extra: Vec<Vec<Scalar>> = vectors.into_iter().map(|v| v.as_ref().to_vec()).collect();
        Subspace::span(
            self.field(),
            self.ambient,
            self.basis_vectors().into_iter().chain(extra),
        )
    }

    /// Intersection via the kernel of the stacked bases: `x = a·B1 = b·B2`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let field = self.field();
        let (d1, d2) = (self.dim(), other.dim());
        if d1 == 0 || d2 == 0 {
            return Ok(Subspace::zero(field, self.ambient));
        }
        // columns: B1^T | -B2^T, an n × (d1 + d2) system
        let mut m = Matrix::zeros(field, self.ambient, d1 + d2);
        for k in 0..d1 {
            for j in 0..self.ambient {
                m.set(j, k, self.basis.get(k, j).clone());
            }
        }
        for k in 0..d2 {
            for j in 0..self.ambient {
                m.set(j, d1 + k, -other.basis.get(k, j));
            }
        }
        let vectors: Vec<Vec<Scalar>> = m
            .kernel()
            .basis_vectors()
            .into_iter()
            .map(|coeffs| {
                let mut x = vec![field.zero(); self.ambient];
                for (k, c) in coeffs.iter().take(d1).enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for (j, xj) in x.iter_mut().enumerate() {
                        *xj = &*xj + &(c * self.basis.get(k, j));
                    }
                }
                x
            })
            .collect();
        Ok(Subspace::span(field, self.ambient, vectors))
    }

    /// Union of the supports of the basis vectors.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|&j| (0..self.dim()).any(|i| !self.basis.get(i, j).is_zero()))
            .collect()
    }

    /// Whether the subspace equals `span{e_i : i ∈ support}`.
    pub fn is_coordinate(&self) -> bool {
        self.support().len() == self.dim()
    }
}

/// Standard basis vector `e_i` of `field^n`.
pub fn unit(field: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}
