//! Natural vectors, Property (2LI), the rank-one decomposition and extension
//! of orthogonal families to natural bases.

use crate::algebra::{BasisCandidate, Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::linalg::{Matrix, Subspace};
use crate::verdict::Verdict;

/// Basis indices whose nonzero squares span the same line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareClass {
    pub indices: Vec<usize>,
    /// Generator of the common line, first nonzero coordinate 1.
    pub line: Element,
    /// `e_i² = λ_i · line`, parallel to `indices`.
    pub lambdas: Vec<Scalar>,
}

impl SquareClass {
    pub fn contains(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    /// The bilinear form `b(x, y) = Σ λ_i x_i y_i` on coordinates over `indices`.
    fn form(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let f = self.line.coords()[0].field();
        self.lambdas
            .iter()
            .zip(x.iter().zip(y))
            .fold(f.zero(), |acc, (l, (a, b))| &acc + &(&(l * a) * b))
    }
}

/// Zero-square indices and the square-line classes of the nonzero squares,
/// classes ordered by smallest index.
pub fn square_classes(a: &EvolutionAlgebra) -> (Vec<usize>, Vec<SquareClass>) {
    let mut zero = Vec::new();
    let mut classes: Vec<SquareClass> = Vec::new();
    for i in 0..a.dim() {
        let sq = a.basis_square(i);
        if sq.is_zero() {
            zero.push(i);
            continue;
        }
        let line = sq.normalized();
        let lead = line.coords().iter().position(|c| !c.is_zero()).expect("nonzero");
        let lambda = sq.coords()[lead].clone();
        match classes.iter_mut().find(|c| c.line == line) {
            Some(c) => {
                c.indices.push(i);
                c.lambdas.push(lambda);
            }
            None => classes.push(SquareClass {
                indices: vec![i],
                line,
                lambdas: vec![lambda],
            }),
        }
    }
    (zero, classes)
}

/// Whether `u` belongs to some natural basis.
///
/// Outside characteristic 2 this is the support-rank test: if `u² ≠ 0` the
/// squares `e_i²`, `i ∈ supp(u)`, must span a line; if `u² = 0` they must all
/// vanish. Over GF(2) the rank test is necessary but not sufficient: the
/// restriction of a natural basis to a square class `K` is an orthonormal
/// basis for the dot product, so `u` is natural only if `|K| = 1` or `u` does
/// not cover all of `K`.
pub fn is_natural_vector(a: &EvolutionAlgebra, u: &Element) -> Result<bool> {
    let sq = a.square(u)?;
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    let supp = u.support();
    if sq.is_zero() {
        return Ok(supp.iter().all(|&i| a.basis_square(i).is_zero()));
    }
    let squares: Vec<Element> = supp.iter().map(|&i| a.basis_square(i)).collect();
    if Subspace::span(a.field(), a.dim(), &squares).dim() != 1 {
        return Ok(false);
    }
    if a.field().characteristic() != 2 {
        return Ok(true);
    }
    let (_, classes) = square_classes(a);
    let class = classes
        .iter()
        .find(|c| supp.iter().any(|&i| c.contains(i)))
        .expect("u² ≠ 0 meets a class");
    Ok(class.indices.len() == 1 || !class.indices.iter().all(|i| supp.contains(i)))
}

/// Squares of any two distinct basis vectors are linearly independent.
pub fn has_property_2li(a: &EvolutionAlgebra) -> bool {
    if a.dim() <= 1 {
        return true;
    }
    let (zero, classes) = square_classes(a);
    zero.is_empty() && classes.iter().all(|c| c.indices.len() == 1)
}

/// Whether the natural basis is unique up to reordering and rescaling.
pub fn has_unique_natural_basis(a: &EvolutionAlgebra) -> Verdict {
    if a.dim() == 1 {
        return Verdict::True;
    }
    if !a.is_nondegenerate() {
        // e_i + e_z with e_z² = 0 replaces e_i in a second natural basis
        return Verdict::False;
    }
    if has_property_2li(a) {
        return Verdict::True;
    }
    match a.field().order() {
        Some(q) if q <= 3 => Verdict::Unknown,
        _ => Verdict::False,
    }
}

/// One rank-one summand `E_i` of the decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    /// Positions in the basis the decomposition was computed from.
    pub indices: Vec<usize>,
    pub span: Subspace,
    /// Generator of `E_i²`, first nonzero coordinate 1.
    pub square_line: Element,
}

/// `A = ann(A) ⊕ E_1 ⊕ … ⊕ E_k` read off from a natural basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub ann_indices: Vec<usize>,
    pub ann_part: Subspace,
    pub components: Vec<Component>,
    /// `dim A²`, reported next to the class count.
    pub square_dim: usize,
}

impl Decomposition {
    pub fn class_count_matches(&self) -> bool {
        self.components.len() == self.square_dim
    }

    /// Failed structural invariants, empty when all hold.
    pub fn violations(&self, a: &EvolutionAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        let n = a.dim();
        let total: usize = self.ann_part.dim() + self.components.iter().map(|c| c.span.dim()).sum::<usize>();
        let mut sum = self.ann_part.clone();
        for c in &self.components {
            sum = sum.sum(&c.span).expect("same ambient");
        }
        if total != n || !sum.is_full() {
            out.push(format!("summands do not form a direct sum of A (dims add to {total})"));
        }
        if self.ann_part != a.annihilator() {
            out.push("ann part differs from ann(A)".into());
        }
        let squares: Vec<Subspace> = self
            .components
            .iter()
            .map(|c| a.product_space(&c.span, &c.span))
            .collect();
        for (k, (c, sq)) in self.components.iter().zip(&squares).enumerate() {
            if sq.dim() != 1 || !sq.contains(c.square_line.coords()).unwrap_or(false) {
                out.push(format!("component {} does not have evolution rank 1", k + 1));
            }
        }
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                if !a.product_space(&self.components[i].span, &self.components[j].span).is_zero() {
                    out.push(format!("components {} and {} are not orthogonal", i + 1, j + 1));
                }
                if squares[i].sum(&squares[j]).map(|s| s.dim()).unwrap_or(0) != 2 {
                    out.push(format!("components {} and {} have dependent squares", i + 1, j + 1));
                }
            }
        }
        out
    }
}

/// Decomposition relative to the algebra's own natural basis.
pub fn decompose(a: &EvolutionAlgebra) -> Decomposition {
    let (f, n) = (a.field(), a.dim());
    let (zero, classes) = square_classes(a);
    Decomposition {
        ann_part: Subspace::coordinate(f, n, zero.iter().copied()),
        ann_indices: zero,
        components: classes
            .into_iter()
            .map(|c| Component {
                span: Subspace::coordinate(f, n, c.indices.iter().copied()),
                indices: c.indices,
                square_line: c.line,
            })
            .collect(),
        square_dim: a.square_space().dim(),
    }
}

/// Decomposition relative to the natural basis `c`, in ambient coordinates.
pub fn decompose_in_basis(a: &EvolutionAlgebra, c: &BasisCandidate) -> Result<Decomposition> {
    let local = a.change_basis(c)?;
    let p = c.matrix(a.field(), a.dim())?;
    let d = decompose(&local);
    let (f, n) = (a.field(), a.dim());
    let span = |idx: &[usize]| Subspace::span(f, n, idx.iter().map(|&i| &c.vectors[i]));
    Ok(Decomposition {
        ann_part: span(&d.ann_indices),
        components: d
            .components
            .iter()
            .map(|comp| -> Result<Component> {
                Ok(Component {
                    span: span(&comp.indices),
                    indices: comp.indices.clone(),
                    square_line: Element::new(p.mul_vec(comp.square_line.coords())?).normalized(),
                })
            })
            .collect::<Result<_>>()?,
        ann_indices: d.ann_indices,
        square_dim: d.square_dim,
    })
}

/// Whether the change of basis between the natural bases `b1` and `b2` has
/// the block form: after matching components by their square lines, each
/// vector of `b1`'s annihilator part lies in the span of `b2`'s annihilator
/// part, and each vector of a component lies in the span of `b2`'s
/// annihilator part and the matching component.
pub fn verify_block_form(a: &EvolutionAlgebra, b1: &BasisCandidate, b2: &BasisCandidate) -> Result<bool> {
    let d1 = decompose_in_basis(a, b1)?;
    let d2 = decompose_in_basis(a, b2)?;
    if d1.components.len() != d2.components.len() || d1.ann_part != d2.ann_part {
        return Ok(false);
    }
    let contains_all = |target: &Subspace, idx: &[usize]| -> Result<bool> {
        for &i in idx {
            if !target.contains(b1.vectors[i].coords())? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if !contains_all(&d2.ann_part, &d1.ann_indices)? {
        return Ok(false);
    }
    for c in &d1.components {
        let Some(partner) = d2.components.iter().find(|c2| c2.square_line == c.square_line) else {
            return Ok(false);
        };
        let target = d2.ann_part.sum(&partner.span)?;
        if !contains_all(&target, &c.indices)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A natural basis whose first vectors are a given orthogonal family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionResult {
    pub completed_basis: BasisCandidate,
    pub added_vectors: Vec<Element>,
}

/// Largest square class handled by the characteristic-2 search.
pub const CHAR_TWO_SEARCH_LIMIT: usize = 16;

/// Extend a family of pairwise orthogonal natural vectors of a
/// non-degenerate algebra to a natural basis.
pub fn extend_family(a: &EvolutionAlgebra, family: &[Element]) -> Result<ExtensionResult> {
    if !a.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    for (k, u) in family.iter().enumerate() {
        match is_natural_vector(a, u) {
            Ok(true) => {}
            Ok(false) | Err(Error::ZeroVector) => return Err(Error::NotNaturalVector(k)),
            Err(e) => return Err(e),
        }
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !a.multiply(&family[i], &family[j])?.is_zero() {
                return Err(Error::NotOrthogonal(i, j));
            }
        }
    }
    let (_, classes) = square_classes(a);
    let mut added = Vec::new();
    for class in &classes {
        let members: Vec<Vec<Scalar>> = family
            .iter()
            .filter(|u| class.contains(*u.support().iter().next().expect("nonzero")))
            .map(|u| class.indices.iter().map(|&i| u.coords()[i].clone()).collect())
            .collect();
        if members.is_empty() {
            added.extend(class.indices.iter().map(|&i| a.basis_vector(i)));
            continue;
        }
        let local = if a.field().characteristic() == 2 {
            complete_char_two(class, &members)?
        } else {
            complete_orthogonal(class, &members)
        };
        added.extend(local.iter().map(|v| a.embed(&class.indices, v)));
    }
    let mut vectors = family.to_vec();
    vectors.extend(added.iter().cloned());
    let completed = BasisCandidate::new(vectors);
    if !a.verify_natural_basis(&completed)? {
        return Err(Error::NotANaturalBasis("completion failed verification".into()));
    }
    Ok(ExtensionResult {
        completed_basis: completed,
        added_vectors: added,
    })
}

/// Orthogonal basis of the `b`-complement of the members, characteristic ≠ 2.
fn complete_orthogonal(class: &SquareClass, members: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let f = class.line.coords()[0].field();
    let k = class.indices.len();
    let rows: Vec<Vec<Scalar>> = members
        .iter()
        .map(|u| u.iter().zip(&class.lambdas).map(|(x, l)| x * l).collect())
        .collect();
    let mut w = Matrix::from_rows(f, k, &rows).expect("rows of length k").kernel();
    let mut out = Vec::new();
    while !w.is_zero() {
        let basis = w.basis_vectors();
        let x = anisotropic(class, &basis);
        let bxx_inv = class.form(&x, &x).inv().expect("anisotropic");
        // project W onto x^⊥ along x
        let projected: Vec<Vec<Scalar>> = basis
            .iter()
            .map(|y| {
                let c = &class.form(y, &x) * &bxx_inv;
                y.iter().zip(&x).map(|(yi, xi)| yi - &(&c * xi)).collect()
            })
            .collect();
        w = Subspace::span(f, k, projected);
        out.push(x);
    }
    out
}

/// First anisotropic basis vector, else `x + y` for the first pair with
/// `b(x, y) ≠ 0`.
fn anisotropic(class: &SquareClass, basis: &[Vec<Scalar>]) -> Vec<Scalar> {
    if let Some(x) = basis.iter().find(|x| !class.form(x, x).is_zero()) {
        return x.clone();
    }
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !class.form(&basis[i], &basis[j]).is_zero() {
                return basis[i].iter().zip(&basis[j]).map(|(a, b)| a + b).collect();
            }
        }
    }
    unreachable!("b is non-degenerate on the complement")
}

/// Over GF(2) every `λ_i = 1`, so `b` is the dot product: search for an
/// orthonormal completion by backtracking over bit masks.
fn complete_char_two(class: &SquareClass, members: &[Vec<Scalar>]) -> Result<Vec<Vec<Scalar>>> {
    let k = class.indices.len();
    if k > CHAR_TWO_SEARCH_LIMIT {
        return Err(Error::DimensionTooLarge {
            n: k,
            max: CHAR_TWO_SEARCH_LIMIT,
        });
    }
    let mask = |v: &[Scalar]| {
        v.iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0u32, |m, (i, _)| m | (1 << i))
    };
    let chosen: Vec<u32> = members.iter().map(|v| mask(v)).collect();
    let candidates: Vec<u32> = (1u32..(1 << k)).filter(|m| m.count_ones() % 2 == 1).collect();
    let mut picked = Vec::new();
    if !search_orthonormal(k, &candidates, &chosen, &mut picked, 0) {
        return Err(Error::CharTwoUnsupported);
    }
    let f = class.line.coords()[0].field();
    Ok(picked
        .iter()
        .map(|m| (0..k).map(|i| f.from_i64(i64::from((m >> i) & 1))).collect())
        .collect())
}

fn search_orthonormal(k: usize, candidates: &[u32], base: &[u32], picked: &mut Vec<u32>, start: usize) -> bool {
    if base.len() + picked.len() == k {
        return true;
    }
    for (pos, &c) in candidates.iter().enumerate().skip(start) {
        let orthogonal = base
            .iter()
            .chain(picked.iter())
            .all(|&m| (m & c).count_ones() % 2 == 0);
        // odd self-products and pairwise orthogonality force independence
        if orthogonal {
            picked.push(c);
            if search_orthonormal(k, candidates, base, picked, pos + 1) {
                return true;
            }
            picked.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    fn q() -> Field {
        Field::rationals()
    }

    fn alg(f: Field, squares: &[&[i64]]) -> EvolutionAlgebra {
        EvolutionAlgebra::from_squares_i64(f, squares).unwrap()
    }

    #[test]
    fn natural_vectors() {
        let a = alg(q(), &[&[1, 0, 0], &[1, 0, 0], &[0, 0, 0]]);
        assert!(is_natural_vector(&a, &a.element_i64(&[1, 1, 0]).unwrap()).unwrap());
        assert!(is_natural_vector(&a, &a.element_i64(&[1, -1, 0]).unwrap()).unwrap());
        assert!(is_natural_vector(&a, &a.element_i64(&[0, 0, 1]).unwrap()).unwrap());
        assert!(is_natural_vector(&a, &a.element_i64(&[1, 0, 1]).unwrap()).unwrap());

        let b = alg(q(), &[&[1, 1], &[-1, -1]]);
        assert!(!is_natural_vector(&b, &b.element_i64(&[1, 1]).unwrap()).unwrap());
        assert!(is_natural_vector(&b, &b.basis_vector(0)).unwrap());
        assert_eq!(
            is_natural_vector(&b, &b.zero_element()),
            Err(Error::ZeroVector)
        );
    }

    #[test]
    fn char_two_refinement() {
        let f2 = Field::prime(2).unwrap();
        let a = alg(f2, &[&[1, 0, 0], &[1, 0, 0], &[1, 0, 0]]);
        // rank one, u² = e1 ≠ 0, but no natural basis contains it
        assert!(!is_natural_vector(&a, &a.element_i64(&[1, 1, 1]).unwrap()).unwrap());
        // even weight squares to zero
        assert!(!is_natural_vector(&a, &a.element_i64(&[1, 1, 0]).unwrap()).unwrap());
        let b = alg(f2, &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0]]);
        let u = b.element_i64(&[1, 1, 1, 0]).unwrap();
        assert!(is_natural_vector(&b, &u).unwrap());
        let ext = extend_family(&b, &[u]).unwrap();
        assert!(b.verify_natural_basis(&ext.completed_basis).unwrap());
    }

    #[test]
    fn property_2li() {
        let ex = alg(
            q(),
            &[
                &[1, 0, 0, 0, 0],
                &[0, 1, 0, 0, 0],
                &[1, 3, 0, 0, 0],
                &[1, 4, 0, 0, 0],
                &[1, 5, 0, 0, 0],
            ],
        );
        assert!(has_property_2li(&ex));
        assert_eq!(ex.square_space().dim(), 2);
        let ones = alg(q(), &[&[1, 1], &[1, 1]]);
        assert!(!has_property_2li(&ones));
        let m = EvolutionAlgebra::from_rows_i64(q(), &[&[1, 1, 2], &[1, 1, 4], &[1, 1, 7]]).unwrap();
        assert!(!has_property_2li(&m));
        let t = EvolutionAlgebra::new(m.structure_matrix().transpose()).unwrap();
        assert!(has_property_2li(&t));
    }

    #[test]
    fn uniqueness() {
        let perfect = EvolutionAlgebra::from_rows_i64(q(), &[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(has_unique_natural_basis(&perfect), Verdict::True);
        let ej = alg(q(), &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(has_unique_natural_basis(&ej), Verdict::False);
        assert_eq!(has_unique_natural_basis(&alg(q(), &[&[1]])), Verdict::True);
        let ones = alg(q(), &[&[1, 1], &[1, 1]]);
        assert_eq!(has_unique_natural_basis(&ones), Verdict::False);
        let ones3 = alg(Field::prime(3).unwrap(), &[&[1, 1], &[1, 1]]);
        assert_eq!(has_unique_natural_basis(&ones3), Verdict::Unknown);
    }

    #[test]
    fn decompositions() {
        let a = alg(q(), &[&[0, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let d = decompose(&a);
        assert_eq!(d.ann_part, Subspace::coordinate(q(), 3, [0]));
        assert_eq!(d.components.len(), 2);
        assert_eq!(d.components[0].span, Subspace::coordinate(q(), 3, [1]));
        assert_eq!(d.components[1].span, Subspace::coordinate(q(), 3, [2]));
        assert!(d.violations(&a).is_empty());

        let c = BasisCandidate::new(vec![
            a.element_i64(&[1, 0, 0]).unwrap(),
            a.element_i64(&[1, 1, 0]).unwrap(),
            a.element_i64(&[0, 0, 1]).unwrap(),
        ]);
        let d2 = decompose_in_basis(&a, &c).unwrap();
        assert_eq!(d2.ann_part, d.ann_part);
        assert_eq!(d2.components.len(), 2);
        assert_eq!(d2.components[0].span, Subspace::span(q(), 3, [a.element_i64(&[1, 1, 0]).unwrap()]));
        assert_ne!(d2.components[0].span, d.components[0].span);
        assert!(d2.violations(&a).is_empty());
        assert!(verify_block_form(&a, &BasisCandidate::standard(q(), 3), &c).unwrap());
        assert!(verify_block_form(&a, &c, &c).unwrap());
        let bad = BasisCandidate::new(vec![a.basis_vector(1); 3]);
        assert!(matches!(verify_block_form(&a, &bad, &c), Err(Error::NotANaturalBasis(_))));
    }

    #[test]
    fn extensions() {
        let a = alg(q(), &[&[1, 0, 0], &[1, 0, 0], &[0, 0, 1]]);
        let u = a.element_i64(&[1, 1, 0]).unwrap();
        let ext = extend_family(&a, std::slice::from_ref(&u)).unwrap();
        assert_eq!(ext.completed_basis.vectors[0], u);
        assert_eq!(ext.completed_basis.vectors.len(), 3);
        assert!(a.verify_natural_basis(&ext.completed_basis).unwrap());

        let empty = extend_family(&a, &[]).unwrap();
        assert_eq!(empty.completed_basis, BasisCandidate::standard(q(), 3));

        let b = alg(q(), &[&[1, 1], &[-1, -1]]);
        assert_eq!(
            extend_family(&b, &[b.element_i64(&[1, 1]).unwrap()]),
            Err(Error::NotNaturalVector(0))
        );
        let ej = alg(q(), &[&[0, 0], &[0, 1]]);
        assert_eq!(extend_family(&ej, &[]), Err(Error::Degenerate));
        let e1 = a.basis_vector(0);
        assert_eq!(extend_family(&a, &[e1, u]), Err(Error::NotOrthogonal(0, 1)));
    }

    #[test]
    fn isotropic_start() {
        // b = x1² + x2² − x3² over ℚ: the complement of e1 is spanned by
        // vectors that include isotropic ones
        let a = alg(q(), &[&[1, 0, 0], &[1, 0, 0], &[-1, 0, 0]]);
        let u = a.element_i64(&[0, 1, 1]).unwrap();
        assert_eq!(a.square(&u).unwrap(), a.zero_element());
        let v = a.element_i64(&[1, 1, 1]).unwrap();
        let ext = extend_family(&a, &[v]).unwrap();
        assert!(a.verify_natural_basis(&ext.completed_basis).unwrap());
    }

    #[test]
    fn char_two_failure() {
        let f2 = Field::prime(2).unwrap();
        let a = alg(f2, &[&[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0], &[1, 0, 0, 0]]);
        let u1 = a.element_i64(&[1, 1, 1, 0]).unwrap();
        let u2 = a.element_i64(&[0, 0, 0, 1]).unwrap();
        assert_eq!(extend_family(&a, &[u1, u2]), Err(Error::CharTwoUnsupported));
    }
}
