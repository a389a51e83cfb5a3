//! Powers of the algebra, annihilator chains, the `A³ = 0` test and the
//! vanishing-minor searches.

use rayon::prelude::*;

use crate::algebra::{Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Subspace;

/// `A^k`, `A^⟨k⟩` and `A^[k]` for one `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSpaces {
    pub plenary: Subspace,
    pub right: Subspace,
    pub solvable: Subspace,
}

/// `A^{k+1} = Σ_{i=1}^{k} A^i A^{k+1-i}`, `A^⟨k+1⟩ = A^⟨k⟩ A`,
/// `A^[k+1] = A^[k] A^[k]`.
pub fn power_spaces(a: &EvolutionAlgebra, k: usize) -> Result<PowerSpaces> {
    if k == 0 {
        return Err(Error::InvalidArgument("powers start at 1".into()));
    }
    let whole = Subspace::full(a.field(), a.dim());
    let mut plenary = vec![whole.clone()];
    let mut right = whole.clone();
    let mut solvable = whole;
    for m in 2..=k {
        let mut next = Subspace::zero(a.field(), a.dim());
        for i in 1..m {
            next = next.sum(&a.product_space(&plenary[i - 1], &plenary[m - i - 1]))?;
        }
        plenary.push(next);
        right = a.product_space(&right, &plenary[0]);
        solvable = a.product_space(&solvable, &solvable);
    }
    Ok(PowerSpaces {
        plenary: plenary.pop().expect("k ≥ 1"),
        right,
        solvable,
    })
}

/// The `ann^i` chain and everything read off from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub is_nilpotent: bool,
    /// `ann¹ ⊊ ann² ⊊ …` up to stabilization (a single zero space when
    /// `ann(A) = 0`).
    pub ann_chain: Vec<Subspace>,
    /// Basis indices first reaching each `ann^i`.
    pub strata: Vec<Vec<usize>>,
    pub type_sequence: Option<Vec<usize>>,
    pub right_nilpotency_index: Option<usize>,
    /// Basis order making the structure matrix strictly upper triangular.
    pub triangular_order: Option<Vec<usize>>,
}

/// `ann^i = span{e_j : e_j² ∈ ann^{i-1}}`, tracked as index sets.
pub fn nilpotency_report(a: &EvolutionAlgebra) -> NilpotencyReport {
    let (f, n) = (a.field(), a.dim());
    let m = a.structure_matrix();
    let mut inside = vec![false; n];
    let mut strata: Vec<Vec<usize>> = Vec::new();
    loop {
        let layer: Vec<usize> = (0..n)
            .filter(|&j| !inside[j] && (0..n).all(|r| m.get(r, j).is_zero() || inside[r]))
            .collect();
        if layer.is_empty() {
            break;
        }
        for &j in &layer {
            inside[j] = true;
        }
        strata.push(layer);
    }
    let mut ann_chain = Vec::new();
    let mut acc: Vec<usize> = Vec::new();
    for layer in &strata {
        acc.extend(layer);
        ann_chain.push(Subspace::coordinate(f, n, acc.iter().copied()));
    }
    if ann_chain.is_empty() {
        ann_chain.push(Subspace::zero(f, n));
    }
    let is_nilpotent = inside.iter().all(|&b| b);
    NilpotencyReport {
        is_nilpotent,
        type_sequence: is_nilpotent.then(|| strata.iter().map(Vec::len).collect()),
        right_nilpotency_index: is_nilpotent.then(|| strata.len() + 1),
        triangular_order: is_nilpotent.then(|| strata.iter().flatten().copied().collect()),
        ann_chain,
        strata,
    }
}

/// `A³ = 0` iff each basis index has a zero row or a zero column.
pub fn is_cube_zero(a: &EvolutionAlgebra) -> bool {
    let m = a.structure_matrix();
    (0..a.dim()).all(|i| m.is_row_zero(i) || m.is_column_zero(i))
}

/// Nonempty subsets of `0..n` with at most `max` elements, ordered by size
/// and then lexicographically.
pub fn subsets_by_size(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for size in 1..=max.min(n) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.clone());
            // next combination in lexicographic order
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < n - size + p) else {
                break;
            };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

pub fn default_max_subset_size(n: usize) -> usize {
    n.min(12)
}

/// Witness for the vanishing-minor condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorWitness {
    pub gamma: Vec<usize>,
    /// `Ω` after dropping indices where the kernel vector vanishes.
    pub omega: Vec<usize>,
    /// The pair `(Γ, Ω)` as found, before shrinking.
    pub omega_searched: Vec<usize>,
    pub u: Element,
    pub v: Element,
    pub w: Element,
}

impl MinorWitness {
    pub fn verify(&self, a: &EvolutionAlgebra) -> Result<bool> {
        let vw = a.multiply(&self.v, &self.w)?;
        Ok(a.multiply(&self.u, &vw)?.is_zero()
            && self.u.support().into_iter().eq(self.gamma.iter().copied())
            && self.v.support().into_iter().eq(self.omega.iter().copied())
            && self.w.support().into_iter().eq(self.omega.iter().copied()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSearch {
    pub witness: Option<MinorWitness>,
    /// Some subsets were beyond the size cap and never examined.
    pub truncated: bool,
}

/// Every `|Δ|`-minor of `M[Γ, Ω]` vanishes, where `|Δ| = min(|Γ|, |Ω|)`;
/// equivalently `rank M[Γ, Ω] < min(|Γ|, |Ω|)`.
pub fn minor_condition(a: &EvolutionAlgebra, gamma: &[usize], omega: &[usize]) -> Result<bool> {
    let sub = a.structure_matrix().submatrix(gamma, omega)?;
    Ok(sub.rank() < gamma.len().min(omega.len()))
}

/// Search pairs `(Γ, Ω)` in size-then-lexicographic order for the
/// vanishing-minor condition and build `u, v, w` with `u(vw) = 0`.
pub fn find_orthogonality_witness(a: &EvolutionAlgebra, max_subset_size: usize) -> Result<WitnessSearch> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let n = a.dim();
    let subsets = subsets_by_size(n, max_subset_size);
    let hit = subsets.par_iter().find_map_first(|gamma| {
        subsets
            .iter()
            .find(|omega| minor_condition(a, gamma, omega).unwrap_or(false))
            .map(|omega| (gamma.clone(), omega.clone()))
    });
    let truncated = max_subset_size < n;
    let Some((gamma, omega)) = hit else {
        return Ok(WitnessSearch {
            witness: None,
            truncated,
        });
    };
    let witness = build_witness(a, gamma, omega)?;
    if !witness.verify(a)? {
        return Err(Error::InvalidArgument("constructed witness failed verification".into()));
    }
    Ok(WitnessSearch {
        witness: Some(witness),
        truncated,
    })
}

fn build_witness(a: &EvolutionAlgebra, gamma: Vec<usize>, omega: Vec<usize>) -> Result<MinorWitness> {
    let (f, n) = (a.field(), a.dim());
    let sub = a.structure_matrix().submatrix(&gamma, &omega)?;
    let alpha = sub.kernel().basis_vectors().into_iter().next().expect("rank deficient");
    let kept: Vec<usize> = (0..omega.len()).filter(|&j| !alpha[j].is_zero()).collect();
    let shrunk: Vec<usize> = kept.iter().map(|&j| omega[j]).collect();
    let mut u = vec![f.zero(); n];
    for &t in &gamma {
        u[t] = f.one();
    }
    let mut v = vec![f.zero(); n];
    let mut w = vec![f.zero(); n];
    for &j in &kept {
        v[omega[j]] = alpha[j].clone();
        w[omega[j]] = f.one();
    }
    Ok(MinorWitness {
        gamma,
        omega: shrunk,
        omega_searched: omega,
        u: Element::new(u),
        v: Element::new(v),
        w: Element::new(w),
    })
}

/// Result of the `u³ = 0` search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CubeOutcome {
    /// `u³ = 0`, built from the vanishing principal minor on `gamma`.
    Found { gamma: Vec<usize>, element: Element },
    /// Some principal minor vanishes, but no scanned kernel vector has
    /// entries that are all squares.
    NeedsSquareRoots { gamma: Vec<usize> },
    NoVanishingMinor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeSearch {
    pub outcome: CubeOutcome,
    pub truncated: bool,
}

/// Largest number of kernel vectors tried per vanishing minor.
const KERNEL_SCAN_LIMIT: usize = 1 << 16;

/// Kernel vectors to try: the RREF basis, then combinations with
/// coefficients in `{-2..2}` (all of GF(p) when `p ≤ 7`).
fn kernel_candidates(field: Field, basis: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut out: Vec<Vec<Scalar>> = basis.to_vec();
    let coeffs: Vec<Scalar> = match field.modulus() {
        Some(p) if p <= 7 => field.elements().expect("finite"),
        _ => {
            let mut c: Vec<Scalar> = (-2..=2).map(|k| field.from_i64(k)).collect();
            c.dedup();
            c
        }
    };
    let d = basis.len();
    let total = (coeffs.len() as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
    let limit = total.min(KERNEL_SCAN_LIMIT as u64);
    let k = basis.first().map_or(0, Vec::len);
    for code in 0..limit {
        let mut c = code;
        let mut v = vec![field.zero(); k];
        for b in basis {
            let coef = &coeffs[(c % coeffs.len() as u64) as usize];
            c /= coeffs.len() as u64;
            if !coef.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x + &(coef * y);
                }
            }
        }
        if v.iter().any(|x| !x.is_zero()) {
            out.push(v);
        }
    }
    out
}

/// Try to turn the vanishing principal minor on `gamma` into `u` with
/// `u³ = 0`; `None` when no scanned kernel vector has square entries.
pub fn cube_nilpotent_from_minor(a: &EvolutionAlgebra, gamma: &[usize]) -> Result<Option<Element>> {
    let sub = a.structure_matrix().submatrix(gamma, gamma)?;
    let basis = sub.kernel().basis_vectors();
    if basis.is_empty() {
        return Ok(None);
    }
    for beta in kernel_candidates(a.field(), &basis) {
        let roots: Option<Vec<Scalar>> = beta.iter().map(Scalar::sqrt).collect();
        if let Some(alpha) = roots {
            let u = a.embed(gamma, &alpha);
            if a.power_plenary(&u, 3)?.is_zero() {
                return Ok(Some(u));
            }
        }
    }
    Ok(None)
}

/// Scan principal minors by size, then lexicographically, for a vanishing
/// one that yields `u ≠ 0` with `u³ = 0`.
pub fn find_cube_nilpotent(a: &EvolutionAlgebra, max_subset_size: usize) -> Result<CubeSearch> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let truncated = max_subset_size < a.dim();
    let mut first_vanishing = None;
    for gamma in subsets_by_size(a.dim(), max_subset_size) {
        if !a.structure_matrix().minor(&gamma, &gamma)?.is_zero() {
            continue;
        }
        if let Some(u) = cube_nilpotent_from_minor(a, &gamma)? {
            return Ok(CubeSearch {
                outcome: CubeOutcome::Found { gamma, element: u },
                truncated,
            });
        }
        first_vanishing.get_or_insert(gamma);
    }
    Ok(CubeSearch {
        outcome: match first_vanishing {
            Some(gamma) => CubeOutcome::NeedsSquareRoots { gamma },
            None => CubeOutcome::NoVanishingMinor,
        },
        truncated,
    })
}
