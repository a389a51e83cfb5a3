use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// Dense row-major matrix over a single [`Field`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of Gauss–Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|s| s.field() != field) {
            return Err(Error::FieldMismatch {
                left: field.to_string(),
                right: bad.field().to_string(),
            });
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn diagonal(field: Field, diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Build from rows; all rows must have length `cols`.
    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().cloned());
        }
        Matrix::new(field, rows.len(), cols, data)
    }

    /// Build from columns; all columns must have length `rows`.
    pub fn from_columns(field: Field, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        Ok(Matrix::from_rows(field, rows, cols)?.transpose())
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged integer matrix");
                r.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Matrix {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> Field {
        self.field
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        assert_eq!(value.field(), self.field, "scalar field mismatch");
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column_vectors(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_row_zero(&self, i: usize) -> bool {
        self.row(i).iter().all(Scalar::is_zero)
    }

    pub fn is_column_zero(&self, j: usize) -> bool {
        (0..self.rows).all(|i| self.get(i, j).is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        self.check_field(other.field)?;
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        if let Some(x) = v.first() {
            self.check_field(x.field())?;
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    fn check_field(&self, other: Field) -> Result<()> {
        if self.field == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.to_string(),
            })
        }
    }

    /// The submatrix on the given (ordered) row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        if let Some(&bad) = rows.iter().find(|&&i| i >= self.rows) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: self.rows,
            });
        }
        if let Some(&bad) = cols.iter().find(|&&j| j >= self.cols) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                n: self.cols,
            });
        }
        let data = rows
            .iter()
            .flat_map(|&i| cols.iter().map(move |&j| self.get(i, j).clone()))
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: rows.len(),
            cols: cols.len(),
            data,
        })
    }

    /// Reduced row echelon form by exact Gauss–Jordan elimination. The pivot in
    /// each column is the first nonzero entry at or below the current row.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let idx = r * m.cols + j;
                m.data[idx] = &m.data[idx] * &inv;
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &factor * m.get(r, j);
                    if !sub.is_zero() {
                        let idx = i * m.cols + j;
                        m.data[idx] = &m.data[idx] - &sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Right null space as RREF basis rows.
    pub fn kernel(&self) -> super::Subspace {
        let Rref { matrix, pivots, .. } = self.rref();
        let n = self.cols;
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let vectors = free.iter().map(|&f| {
            let mut v = vec![self.field.zero(); n];
            v[f] = self.field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -matrix.get(row, f);
            }
            v
        });
        super::Subspace::span(self.field, n, vectors)
    }

    /// Exact determinant: fraction-free Bareiss elimination over ℚ, Gaussian
    /// elimination over GF(p).
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Ok(self.field.one());
        }
        if self.field.is_rationals() {
            Ok(Scalar::Rational(self.bareiss()))
        } else {
            Ok(self.gauss_det())
        }
    }

    fn gauss_det(&self) -> Scalar {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let pivot = m.get(c, c).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("pivot is nonzero");
            for i in c + 1..n {
                let factor = m.get(i, c) * &inv;
                if factor.is_zero() {
                    continue;
                }
                for j in c..n {
                    let sub = &factor * m.get(c, j);
                    let idx = i * n + j;
                    m.data[idx] = &m.data[idx] - &sub;
                }
            }
        }
        det
    }

    fn bareiss(&self) -> BigRational {
        let n = self.rows;
        // clear denominators row by row
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let row: Vec<&BigRational> = self
                .row(i)
                .iter()
                .map(|s| s.as_rational().expect("rational entry"))
                .collect();
            let l = row.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
            scale *= &l;
            a.push(
                row.iter()
                    .map(|r| r.numer() * (&l / r.denom()))
                    .collect(),
            );
        }
        let mut sign = 1;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigRational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        let det = &a[n - 1][n - 1] * BigInt::from(sign);
        BigRational::new(det, scale)
    }

    /// Determinant of the submatrix on `rowset` × `colset`.
    pub fn minor(&self, rowset: &[usize], colset: &[usize]) -> Result<Scalar> {
        if rowset.len() != colset.len() {
            return Err(Error::ShapeMismatch(format!(
                "minor with {} rows and {} columns",
                rowset.len(),
                colset.len()
            )));
        }
        self.submatrix(rowset, colset)?.det()
    }

    /// Some solution of `self · x = b`, or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if b.len() != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            if bi.field() != self.field {
                return Err(Error::FieldMismatch {
                    left: self.field.to_string(),
                    right: bi.field().to_string(),
                });
            }
            aug.set(i, self.cols, bi.clone());
        }
        let Rref { matrix, pivots, .. } = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![self.field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = matrix.get(row, self.cols).clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, self.field.one());
        }
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) || r.rank < n {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        let rows: Vec<usize> = (0..n).collect();
        r.matrix.submatrix(&rows, &cols).ok()
    }

    /// Reorder rows and columns simultaneously: entry (i, j) of the result is
    /// entry (order[i], order[j]) of `self`.
    pub fn permute_symmetric(&self, order: &[usize]) -> Result<Matrix> {
        self.submatrix(order, order)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
