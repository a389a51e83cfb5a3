//! Basic ideals, descendant-closed index sets, simplicity and basic
//! simplicity.

use crate::algebra::{BasisCandidate, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::linalg::{Matrix, Subspace};
use crate::natural::square_classes;
use crate::oracle;
use crate::verdict::Verdict;

pub fn is_ideal(a: &EvolutionAlgebra, s: &Subspace) -> Result<bool> {
    a.is_ideal(s)
}

/// An ideal spanned by standard basis vectors.
pub fn is_basic_ideal(a: &EvolutionAlgebra, s: &Subspace) -> Result<bool> {
    Ok(a.is_ideal(s)? && s.is_coordinate())
}

/// An ideal spanned by a subset of the natural basis `c`.
pub fn is_basic_ideal_in_basis(a: &EvolutionAlgebra, s: &Subspace, c: &BasisCandidate) -> Result<bool> {
    if !a.verify_natural_basis(c)? {
        return Err(Error::NotANaturalBasis("basis candidate is not natural".into()));
    }
    if !a.is_ideal(s)? {
        return Ok(false);
    }
    let mut inside = 0;
    for v in &c.vectors {
        if s.contains(v.coords())? {
            inside += 1;
        }
    }
    Ok(inside == s.dim())
}

/// Largest number of closed sets enumerated.
pub const MAX_CLOSED_SETS: usize = 1 << 20;

/// Index sets `Γ` with `supp(e_j²) ⊆ Γ` for every `j ∈ Γ`, i.e. unions of
/// the closures `{i} ∪ D(i)`, sorted by size and then lexicographically.
pub fn descendant_closed_sets(a: &EvolutionAlgebra) -> Result<Vec<Vec<usize>>> {
    let n = a.dim();
    if n > 64 {
        return Err(Error::DimensionTooLarge { n, max: 64 });
    }
    let g = Digraph::of_algebra(a);
    let closures: Vec<u64> = (0..n)
        .map(|i| g.closure(i).into_iter().fold(0u64, |m, j| m | 1 << j))
        .collect();
    let mut seen = std::collections::HashSet::new();
    let mut stack = vec![0u64];
    seen.insert(0u64);
    while let Some(m) = stack.pop() {
        for (i, &c) in closures.iter().enumerate() {
            if m >> i & 1 == 0 && seen.insert(m | c) {
                if seen.len() > MAX_CLOSED_SETS {
                    return Err(Error::DimensionTooLarge { n, max: 20 });
                }
                stack.push(m | c);
            }
        }
    }
    let mut sets: Vec<Vec<usize>> = seen
        .into_iter()
        .map(|m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    sets.sort_by(|x: &Vec<usize>, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    Ok(sets)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealLattice {
    pub ideals: Vec<Subspace>,
    pub basic_flags: Vec<bool>,
    /// `Γ` for each basic ideal `span{e_i : i ∈ Γ}`.
    pub generators: Vec<Option<Vec<usize>>>,
}

/// In a perfect algebra every ideal is basic, so the ideals are exactly the
/// coordinate spans of descendant-closed sets.
pub fn ideal_lattice_perfect(a: &EvolutionAlgebra) -> Result<IdealLattice> {
    if !a.is_perfect() {
        return Err(Error::NotPerfect);
    }
    let sets = descendant_closed_sets(a)?;
    Ok(IdealLattice {
        ideals: sets
            .iter()
            .map(|s| Subspace::coordinate(a.field(), a.dim(), s.iter().copied()))
            .collect(),
        basic_flags: vec![true; sets.len()],
        generators: sets.into_iter().map(Some).collect(),
    })
}

/// Nonsingular structure matrix whose digraph is strongly connected (no
/// reordering into block upper-triangular form).
pub fn is_simple(a: &EvolutionAlgebra) -> bool {
    a.is_perfect() && Digraph::of_algebra(a).is_strongly_connected()
}

/// Both simplicity signals: the matrix test and, for perfect algebras, the
/// count of ideals in the lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicityReport {
    pub matrix_test: bool,
    pub perfect: bool,
    pub strongly_connected: bool,
    /// `Some(true)` when the ideal lattice is `{0, A}`; `None` when not perfect.
    pub lattice_test: Option<bool>,
}

impl SimplicityReport {
    pub fn agree(&self) -> bool {
        self.lattice_test.is_none_or(|t| t == self.matrix_test)
    }
}

pub fn simplicity_report(a: &EvolutionAlgebra) -> Result<SimplicityReport> {
    let lattice_test = if a.is_perfect() {
        Some(ideal_lattice_perfect(a)?.ideals.len() == 2)
    } else {
        None
    };
    Ok(SimplicityReport {
        matrix_test: is_simple(a),
        perfect: a.is_perfect(),
        strongly_connected: Digraph::of_algebra(a).is_strongly_connected(),
        lattice_test,
    })
}

/// No proper nonzero ideal spanned by standard basis vectors, and `A² ≠ 0`.
pub fn is_basic_simple_relative(a: &EvolutionAlgebra) -> bool {
    !a.structure_matrix().is_zero() && Digraph::of_algebra(a).is_strongly_connected()
}

/// No proper nonzero basic ideal relative to any natural basis.
///
/// Perfect algebras reduce to the relative test. A degenerate algebra is
/// never basic simple, since a zero-square basis vector spans an ideal.
/// For a non-degenerate algebra outside characteristic 2 the natural bases
/// are the orthogonal bases of the square classes `K_s` under
/// `b_s = diag(λ_i)`, and a basic ideal is a choice of non-degenerate
/// subspaces `V_s ⊆ E_s` containing the `K_s`-parts of every square line
/// it meets. With a strongly connected class digraph every class takes part,
/// and the least non-degenerate subspace over `W_s` (the span of those
/// parts) has dimension `dim W_s + dim rad W_s`; the algebra is basic simple
/// iff that fills every `E_s`. Characteristic 2 falls back to enumerating
/// natural bases when that is small enough.
pub fn is_basic_simple(a: &EvolutionAlgebra) -> Verdict {
    if !is_basic_simple_relative(a) || !a.is_nondegenerate() {
        return Verdict::False;
    }
    if a.is_perfect() {
        return Verdict::True;
    }
    if a.field().characteristic() == 2 {
        return match oracle::is_basic_simple(a) {
            Ok(b) => b.into(),
            Err(_) => Verdict::Unknown,
        };
    }
    let (_, classes) = square_classes(a);
    let class_graph = Digraph::from_edges(
        classes.len(),
        classes.iter().enumerate().flat_map(|(t, ct)| {
            classes
                .iter()
                .enumerate()
                .filter(move |(_, cs)| cs.indices.iter().any(|&i| !ct.line.coords()[i].is_zero()))
                .map(move |(s, _)| (t, s))
        }),
    );
    if !class_graph.is_strongly_connected() {
        return Verdict::False;
    }
    let f = a.field();
    for cs in &classes {
        let k = cs.indices.len();
        let parts: Vec<Vec<_>> = classes
            .iter()
            .map(|ct| cs.indices.iter().map(|&i| ct.line.coords()[i].clone()).collect())
            .collect();
        let w = Subspace::span(f, k, &parts);
        // rad W = {x ∈ W : b(x, y) = 0 for all y ∈ W}
        let basis = w.basis_vectors();
        let gram_rows: Vec<Vec<_>> = basis
            .iter()
            .map(|y| y.iter().zip(&cs.lambdas).map(|(c, l)| c * l).collect())
            .collect();
        let gram = Matrix::from_rows(f, k, &gram_rows)
            .and_then(|g| Matrix::from_rows(f, k, &basis).and_then(|b| b.mul(&g.transpose())))
            .expect("shapes agree");
        let rad_dim = gram.kernel().dim();
        if w.dim() + rad_dim != k {
            return Verdict::False;
        }
    }
    Verdict::True
}
