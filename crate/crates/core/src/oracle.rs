//! Exhaustive reference computations over small finite fields.
//!
//! These enumerate vectors, bases and subspaces outright and share nothing
//! with the fast paths beyond scalar arithmetic and the product. They are
//! exponential and refuse inputs whose search space exceeds
//! [`MAX_SEARCH`] vectors.

use std::collections::HashSet;

use crate::algebra::{BasisCandidate, Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Subspace};

pub const MAX_SEARCH: u64 = 1 << 16;

fn field_size(field: Field, n: usize) -> Result<u64> {
    let q = field
        .order()
        .ok_or_else(|| Error::InvalidArgument("exhaustive search needs a finite field".into()))?;
    match q.checked_pow(n as u32) {
        Some(total) if total <= MAX_SEARCH => Ok(q),
        _ => Err(Error::DimensionTooLarge {
            n,
            max: (MAX_SEARCH as f64).log(q as f64) as usize,
        }),
    }
}

/// Every vector of `field^n` in lexicographic residue order (zero first).
pub fn all_vectors(field: Field, n: usize) -> Result<Vec<Element>> {
    field_size(field, n)?;
    let elems = field.elements().expect("finite");
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                elems.iter().map(move |e| {
                    let mut w = v.clone();
                    w.push(e.clone());
                    w
                })
            })
            .collect();
    }
    Ok(out.into_iter().map(Element::new).collect())
}

/// One representative per line: nonzero vectors whose first nonzero
/// coordinate is 1.
pub fn projective_points(field: Field, n: usize) -> Result<Vec<Element>> {
    Ok(all_vectors(field, n)?
        .into_iter()
        .filter(|v| v.coords().iter().find(|c| !c.is_zero()).is_some_and(Scalar::is_one))
        .collect())
}

/// All natural bases up to reordering and rescaling, as sorted lists of
/// projective points.
pub fn natural_bases(a: &EvolutionAlgebra) -> Result<Vec<BasisCandidate>> {
    let points = projective_points(a.field(), a.dim())?;
    let m = points.len();
    let mut orth = vec![vec![false; m]; m];
    for i in 0..m {
        for j in i + 1..m {
            let z = a.multiply(&points[i], &points[j])?.is_zero();
            orth[i][j] = z;
            orth[j][i] = z;
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_bases(a, &points, &orth, &mut chosen, 0, &mut out);
    Ok(out)
}

fn extend_bases(
    a: &EvolutionAlgebra,
    points: &[Element],
    orth: &[Vec<bool>],
    chosen: &mut Vec<usize>,
    start: usize,
    out: &mut Vec<BasisCandidate>,
) {
    if chosen.len() == a.dim() {
        out.push(BasisCandidate::new(chosen.iter().map(|&i| points[i].clone()).collect()));
        return;
    }
    let span = Subspace::span(a.field(), a.dim(), chosen.iter().map(|&i| &points[i]));
    for p in start..points.len() {
        if chosen.iter().all(|&c| orth[c][p]) && !span.contains(points[p].coords()).expect("length") {
            chosen.push(p);
            extend_bases(a, points, orth, chosen, p + 1, out);
            chosen.pop();
        }
    }
}

/// Projective points that occur in some natural basis.
pub fn natural_vector_set(a: &EvolutionAlgebra) -> Result<HashSet<Element>> {
    Ok(natural_bases(a)?
        .into_iter()
        .flat_map(|b| b.vectors)
        .collect())
}

/// Whether the nonzero `u` lies on a line spanned by a natural-basis vector.
pub fn is_natural_vector(a: &EvolutionAlgebra, u: &Element) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(natural_vector_set(a)?.contains(&u.normalized()))
}

/// Least (in enumeration order) nonzero `u, v, w` with
/// `supp(v) = supp(w)` and `u(vw) = 0`.
pub fn find_triple(a: &EvolutionAlgebra) -> Result<Option<(Element, Element, Element)>> {
    let vectors: Vec<Element> = all_vectors(a.field(), a.dim())?
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    let mut products = Vec::new();
    for v in &vectors {
        for w in &vectors {
            if v.support() == w.support() {
                products.push((v, w, a.multiply(v, w)?));
            }
        }
    }
    for u in &vectors {
        for (v, w, vw) in &products {
            if a.multiply(u, vw)?.is_zero() {
                return Ok(Some((u.clone(), (*v).clone(), (*w).clone())));
            }
        }
    }
    Ok(None)
}

/// Least nonzero `u` with `u³ = u·u² = 0`.
pub fn find_cube_zero(a: &EvolutionAlgebra) -> Result<Option<Element>> {
    for u in all_vectors(a.field(), a.dim())? {
        if !u.is_zero() && a.power_plenary(&u, 3)?.is_zero() {
            return Ok(Some(u));
        }
    }
    Ok(None)
}

/// Whether every element satisfies `u^k = 0` for some `k`. The powers
/// `u^k = L_u^{k-1} u` iterate one linear map, so `k = n + 1` suffices.
pub fn is_nil(a: &EvolutionAlgebra) -> Result<bool> {
    for u in all_vectors(a.field(), a.dim())? {
        if !a.power_plenary(&u, a.dim() + 1)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every subspace of `field^n`, enumerated through reduced echelon forms.
pub fn all_subspaces(field: Field, n: usize) -> Result<Vec<Subspace>> {
    let vectors = all_vectors(field, n)?;
    let mut seen = HashSet::new();
    let mut frontier = vec![Subspace::zero(field, n)];
    seen.insert(frontier[0].clone());
    // grow by one vector at a time; every subspace is reached
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if !s.contains(v.coords())? {
                let t = s.with_vectors([v]);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
    }
    let mut out: Vec<Subspace> = seen.into_iter().collect();
    out.sort_by(|x, y| {
        x.dim()
            .cmp(&y.dim())
            .then_with(|| x.basis().to_string().cmp(&y.basis().to_string()))
    });
    Ok(out)
}

/// All ideals, by filtering every subspace.
pub fn all_ideals(a: &EvolutionAlgebra) -> Result<Vec<Subspace>> {
    let mut out = Vec::new();
    for s in all_subspaces(a.field(), a.dim())? {
        if a.is_ideal(&s)? {
            out.push(s);
        }
    }
    Ok(out)
}

/// `A² ≠ 0` and the only ideals are `0` and `A`.
pub fn is_simple(a: &EvolutionAlgebra) -> Result<bool> {
    Ok(!a.square_space().is_zero() && all_ideals(a)?.len() == 2)
}

/// No natural basis admits a proper nonzero ideal spanned by a subset of it.
pub fn is_basic_simple(a: &EvolutionAlgebra) -> Result<bool> {
    if a.structure_matrix().is_zero() {
        return Ok(false);
    }
    for b in natural_bases(a)? {
        let n = a.dim();
        for mask in 1u32..(1 << n) - 1 {
            let s = Subspace::span(
                a.field(),
                n,
                (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &b.vectors[i]),
            );
            if a.is_ideal(&s)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Reachability `i ⇝ j` (paths of length ≥ 1) by boolean matrix powers of
/// the support pattern `j ∈ supp(e_i²)`.
pub fn reachability(a: &EvolutionAlgebra) -> Vec<Vec<bool>> {
    let n = a.dim();
    let m: &Matrix = a.structure_matrix();
    let step: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| !m.get(j, i).is_zero()).collect())
        .collect();
    let mut reach = step.clone();
    for _ in 0..n {
        let mut next = reach.clone();
        for i in 0..n {
            for k in 0..n {
                if reach[i][k] {
                    for j in 0..n {
                        next[i][j] |= step[k][j];
                    }
                }
            }
        }
        reach = next;
    }
    reach
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(all_vectors(f3, 2).unwrap().len(), 9);
        assert_eq!(projective_points(f3, 2).unwrap().len(), 4);
        // Gaussian binomials over GF(3), n = 3: 1 + 13 + 13 + 1
        assert_eq!(all_subspaces(f3, 3).unwrap().len(), 28);
        let f2 = Field::prime(2).unwrap();
        assert_eq!(all_subspaces(f2, 3).unwrap().len(), 16);
        assert!(all_vectors(Field::rationals(), 2).is_err());
    }

    #[test]
    fn bases_of_small_algebras() {
        let f5 = Field::prime(5).unwrap();
        let diag = EvolutionAlgebra::from_squares_i64(f5, &[&[1, 0], &[0, 1]]).unwrap();
        assert_eq!(natural_bases(&diag).unwrap().len(), 1);
        // over GF(5), e1² = e2² = e1: u = e1 + αe2 pairs with e1 − α⁻¹e2
        let ones = EvolutionAlgebra::from_squares_i64(f5, &[&[1, 0], &[1, 0]]).unwrap();
        assert!(natural_bases(&ones).unwrap().len() > 1);
        // zero algebra over GF(3), n = 2: |GL2(3)| / (2² · 2!) = 48 / 8
        let f3 = Field::prime(3).unwrap();
        let zero = EvolutionAlgebra::from_squares_i64(f3, &[&[0, 0], &[0, 0]]).unwrap();
        assert_eq!(natural_bases(&zero).unwrap().len(), 6);
    }
}
