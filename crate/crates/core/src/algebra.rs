//! The evolution algebra value type and its elementary operations.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{unit, Matrix, Subspace};

/// A finite-dimensional evolution algebra given by its structure matrix
/// relative to a natural basis `e_1, …, e_n`.
///
/// Column `i` of the structure matrix holds the coordinates of `e_i²`, i.e.
/// `e_i² = Σ_j ω_{ji} e_j` with `ω_{ji}` stored at row `j`, column `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvolutionAlgebra {
    matrix: Matrix,
    labels: Option<Vec<String>>,
}

/// Coordinates of an algebra element relative to the ambient natural basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element(Vec<Scalar>);

impl Element {
    pub fn new(coords: Vec<Scalar>) -> Self {
        Element(coords)
    }

    pub fn zero(field: Field, n: usize) -> Self {
        Element(vec![field.zero(); n])
    }

    pub fn unit(field: Field, n: usize, i: usize) -> Self {
        Element(unit(field, n, i))
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> BTreeSet<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn add(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Element) -> Element {
        Element(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Element {
        Element(self.0.iter().map(|a| a * c).collect())
    }

    /// The same element scaled so that its first nonzero coordinate is 1.
    pub fn normalized(&self) -> Element {
        match self.0.iter().find(|c| !c.is_zero()) {
            Some(lead) => self.scale(&lead.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

impl AsRef<[Scalar]> for Element {
    fn as_ref(&self) -> &[Scalar] {
        &self.0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A candidate basis: `n` elements given by their ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCandidate {
    pub vectors: Vec<Element>,
}

impl BasisCandidate {
    pub fn new(vectors: Vec<Element>) -> Self {
        BasisCandidate { vectors }
    }

    pub fn standard(field: Field, n: usize) -> Self {
        BasisCandidate {
            vectors: (0..n).map(|i| Element::unit(field, n, i)).collect(),
        }
    }

    /// Change-of-basis matrix: column `k` holds the coordinates of vector `k`.
    pub fn matrix(&self, field: Field, n: usize) -> Result<Matrix> {
        let cols: Vec<Vec<Scalar>> = self.vectors.iter().map(|v| v.coords().to_vec()).collect();
        Matrix::from_columns(field, n, &cols)
    }
}

/// Indices are 0-based throughout the library.
pub type IndexSet = BTreeSet<usize>;

impl EvolutionAlgebra {
    /// From a square structure matrix (column `i` = coordinates of `e_i²`).
    pub fn new(matrix: Matrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NonSquareMatrix(format!(
                "{}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if matrix.rows() == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        Ok(EvolutionAlgebra {
            matrix,
            labels: None,
        })
    }

    /// From the rows of the structure matrix, as displayed.
    pub fn from_rows_i64(field: Field, rows: &[&[i64]]) -> Result<Self> {
        EvolutionAlgebra::new(Matrix::from_i64(field, rows))
    }

    /// From the squares of the basis vectors: `squares[i]` = coordinates of `e_i²`.
    pub fn from_squares(field: Field, squares: &[Vec<Scalar>]) -> Result<Self> {
        EvolutionAlgebra::new(Matrix::from_columns(field, squares.len(), squares)?)
    }

    pub fn from_squares_i64(field: Field, squares: &[&[i64]]) -> Result<Self> {
        EvolutionAlgebra::new(Matrix::from_i64(field, squares).transpose())
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "{} labels for dimension {}",
                labels.len(),
                self.dim()
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn field(&self) -> Field {
        self.matrix.field()
    }

    pub fn structure_matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Entry `ω_{ij}`: coefficient of `e_i` in `e_j²` (0-based).
    pub fn omega(&self, i: usize, j: usize) -> &Scalar {
        self.matrix.get(i, j)
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{}", i + 1),
        }
    }

    pub fn basis_vector(&self, i: usize) -> Element {
        Element::unit(self.field(), self.dim(), i)
    }

    /// `e_i²`, i.e. column `i` of the structure matrix.
    pub fn basis_square(&self, i: usize) -> Element {
        Element(self.matrix.column(i))
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<Element> {
        let e = Element(coords);
        self.check(&e)?;
        Ok(e)
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<Element> {
        self.element(coords.iter().map(|&c| self.field().from_i64(c)).collect())
    }

    pub fn zero_element(&self) -> Element {
        Element::zero(self.field(), self.dim())
    }

    fn check(&self, u: &Element) -> Result<()> {
        if u.len() != self.dim() {
            return Err(Error::AlgebraMismatch(format!(
                "element of length {} in a {}-dimensional algebra",
                u.len(),
                self.dim()
            )));
        }
        if let Some(bad) = u.coords().iter().find(|c| c.field() != self.field()) {
            return Err(Error::AlgebraMismatch(format!(
                "coordinate over {} in an algebra over {}",
                bad.field(),
                self.field()
            )));
        }
        Ok(())
    }

    /// `uv = M_B · (α_1 β_1, …, α_n β_n)^T`.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.multiply_unchecked(u.coords(), v.coords()))
    }

    pub(crate) fn multiply_unchecked(&self, u: &[Scalar], v: &[Scalar]) -> Element {
        let n = self.dim();
        let mut out = vec![self.field().zero(); n];
        for k in 0..n {
            if u[k].is_zero() || v[k].is_zero() {
                continue;
            }
            let c = &u[k] * &v[k];
            for (j, o) in out.iter_mut().enumerate() {
                let w = self.matrix.get(j, k);
                if !w.is_zero() {
                    *o = &*o + &(&c * w);
                }
            }
        }
        Element(out)
    }

    pub fn square(&self, u: &Element) -> Result<Element> {
        self.multiply(u, u)
    }

    /// Left-normed principal power `u^k = u · u^{k-1}`, `u^1 = u`.
    pub fn power_plenary(&self, u: &Element, k: usize) -> Result<Element> {
        if k == 0 {
            return Err(Error::InvalidArgument("powers start at 1".into()));
        }
        self.check(u)?;
        let mut acc = u.clone();
        for _ in 1..k {
            acc = self.multiply_unchecked(u.coords(), acc.coords());
        }
        Ok(acc)
    }

    /// Indices `i` with `e_i² = 0`.
    pub fn zero_square_indices(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.matrix.is_column_zero(i))
            .collect()
    }

    /// `ann(A)`, spanned by the basis vectors whose square vanishes.
    pub fn annihilator(&self) -> Subspace {
        Subspace::coordinate(self.field(), self.dim(), self.zero_square_indices())
    }

    /// `{x : x e_j = 0 for all j}`, computed directly as a kernel.
    pub fn annihilator_by_definition(&self) -> Subspace {
        let n = self.dim();
        // x e_j = x_j e_j², so stack the linear maps x ↦ x e_j
        let mut m = Matrix::zeros(self.field(), n * n, n);
        for j in 0..n {
            for r in 0..n {
                m.set(j * n + r, j, self.matrix.get(r, j).clone());
            }
        }
        m.kernel()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.zero_square_indices().is_empty()
    }

    /// `A² = A`, equivalently a nonsingular structure matrix.
    pub fn is_perfect(&self) -> bool {
        self.matrix.rank() == self.dim()
    }

    /// `A² = span{e_i²}`.
    pub fn square_space(&self) -> Subspace {
        Subspace::from_matrix_rows(&self.matrix.transpose())
    }

    /// `S·T`: span of the products of basis vectors of `s` and `t`.
    pub fn product_space(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let (bs, bt) = (s.basis_vectors(), t.basis_vectors());
        let products = bs
            .iter()
            .flat_map(|x| bt.iter().map(move |y| (x, y)))
            .map(|(x, y)| self.multiply_unchecked(x, y));
        Subspace::span(self.field(), self.dim(), products)
    }

    fn span_of(&self, xs: &[Element]) -> Result<Subspace> {
        for x in xs {
            self.check(x)?;
        }
        Ok(Subspace::span(self.field(), self.dim(), xs))
    }

    /// `alg(X)`: the least subalgebra containing `X`.
    pub fn subalgebra_closure(&self, xs: &[Element]) -> Result<Subspace> {
        let mut s = self.span_of(xs)?;
        loop {
            let next = s.sum(&self.product_space(&s, &s))?;
            if next.dim() == s.dim() {
                return Ok(s);
            }
            s = next;
        }
    }

    /// `⟨X⟩`: the least ideal containing `X`.
    pub fn ideal_closure(&self, xs: &[Element]) -> Result<Subspace> {
        let mut s = self.span_of(xs)?;
        let whole = Subspace::full(self.field(), self.dim());
        loop {
            let next = s.sum(&self.product_space(&whole, &s))?;
            if next.dim() == s.dim() {
                return Ok(s);
            }
            s = next;
        }
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.product_space(s, s).is_subspace_of(s)
    }

    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        let whole = Subspace::full(self.field(), self.dim());
        self.product_space(&whole, s).is_subspace_of(s)
    }

    /// Pairwise products vanish and the vectors form a basis.
    pub fn verify_natural_basis(&self, c: &BasisCandidate) -> Result<bool> {
        if c.vectors.len() != self.dim() {
            return Ok(false);
        }
        for v in &c.vectors {
            self.check(v)?;
        }
        for i in 0..c.vectors.len() {
            for j in i + 1..c.vectors.len() {
                if !self.multiply(&c.vectors[i], &c.vectors[j])?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(c.matrix(self.field(), self.dim())?.rank() == self.dim())
    }

    /// The algebra's structure matrix relative to the natural basis `c`.
    pub fn change_basis(&self, c: &BasisCandidate) -> Result<EvolutionAlgebra> {
        if c.vectors.len() != self.dim() {
            return Err(Error::NotANaturalBasis(format!(
                "{} vectors for dimension {}",
                c.vectors.len(),
                self.dim()
            )));
        }
        if !self.verify_natural_basis(c)? {
            return Err(Error::NotANaturalBasis(
                "vectors are not pairwise orthogonal and independent".into(),
            ));
        }
        let p = c.matrix(self.field(), self.dim())?;
        let p_inv = p.inverse().expect("verified basis is invertible");
        let squares: Vec<Vec<Scalar>> = c
            .vectors
            .iter()
            .map(|v| p_inv.mul_vec(self.square(v).expect("checked").coords()))
            .collect::<Result<_>>()?;
        EvolutionAlgebra::from_squares(self.field(), &squares)
    }

    /// Whether the linear map `f` (column `i` = image of `e_i` in `target`
    /// coordinates) is an algebra homomorphism. Bilinearity reduces the check
    /// to `f(e_i²) = f(e_i)²` and `f(e_i) f(e_j) = 0` for `i ≠ j`.
    pub fn check_algebra_homomorphism(&self, target: &EvolutionAlgebra, f: &Matrix) -> Result<bool> {
        if f.rows() != target.dim() || f.cols() != self.dim() {
            return Err(Error::ShapeMismatch(format!(
                "map is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                target.dim(),
                self.dim()
            )));
        }
        if f.field() != self.field() || target.field() != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: f.field().to_string(),
            });
        }
        let images: Vec<Element> = (0..self.dim()).map(|i| Element(f.column(i))).collect();
        for i in 0..self.dim() {
            let lhs = f.mul_vec(self.basis_square(i).coords())?;
            let rhs = target.square(&images[i])?;
            if lhs != rhs.coords() {
                return Ok(false);
            }
            for j in i + 1..self.dim() {
                if !target.multiply(&images[i], &images[j])?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Structure matrix relative to the reordered basis
    /// `(e_{order[0]}, e_{order[1]}, …)`.
    pub fn reorder(&self, order: &[usize]) -> Result<EvolutionAlgebra> {
        let mut seen = vec![false; self.dim()];
        if order.len() != self.dim() || order.iter().any(|&i| i >= self.dim() || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::InvalidArgument("not a permutation of the basis".into()));
        }
        let mut a = EvolutionAlgebra::new(self.matrix.permute_symmetric(order)?)?;
        if let Some(l) = &self.labels {
            a.labels = Some(order.iter().map(|&i| l[i].clone()).collect());
        }
        Ok(a)
    }

    /// The algebra spanned by `{e_i : i ∈ indices}` with products truncated
    /// to those coordinates.
    pub fn restrict(&self, indices: &[usize]) -> Result<EvolutionAlgebra> {
        let mut a = EvolutionAlgebra::new(self.matrix.submatrix(indices, indices)?)?;
        a.labels = Some(indices.iter().map(|&i| self.label(i)).collect());
        Ok(a)
    }

    /// Embed coordinates of the restricted algebra on `indices` back into `A`.
    pub fn embed(&self, indices: &[usize], local: &[Scalar]) -> Element {
        let mut v = vec![self.field().zero(); self.dim()];
        for (k, &i) in indices.iter().enumerate() {
            v[i] = local[k].clone();
        }
        Element(v)
    }
}

/// Serialized form of an element, with exact scalars as strings.
#[derive(Clone, Debug, Serialize)]
pub struct ElementView(pub Vec<String>);

impl From<&Element> for ElementView {
    fn from(e: &Element) -> Self {
        ElementView(e.coords().iter().map(ToString::to_string).collect())
    }
}
