//! The adjoint algebra, descendants, persistent and transient generators,
//! the 0th decomposition and the hierarchy built from it.
//!
//! Everything here is relative to the basis in which the algebra is stored.
//! To work relative to another natural basis, pass through
//! [`EvolutionAlgebra::change_basis`] or use the `_in_basis` variants.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::{BasisCandidate, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::ideals::{descendant_closed_sets, is_basic_simple, is_basic_simple_relative, is_simple};
use crate::linalg::Subspace;
use crate::nilpotency::nilpotency_report;
use crate::verdict::Verdict;

/// `A*`: same basis, transposed structure matrix. Labels are kept.
pub fn adjoint(a: &EvolutionAlgebra) -> EvolutionAlgebra {
    let t = EvolutionAlgebra::new(a.structure_matrix().transpose()).expect("transpose of a square matrix");
    match a.labels() {
        Some(l) => t.with_labels(l.to_vec()).expect("same length"),
        None => t,
    }
}

/// `D^k(i)` for `k = Some(k)`, where `D⁰(i) = {i}`, `D¹(i) = supp(e_i²)` and
/// `D^k(i)` collects the supports of `e_j²` over `j ∈ D^{k-1}(i)`. With
/// `k = None`, the union `D(i)` over all `k ≥ 1`.
pub fn descendants(a: &EvolutionAlgebra, i: usize, k: Option<usize>) -> Result<BTreeSet<usize>> {
    let n = a.dim();
    if i >= n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    let step = |gen: &BTreeSet<usize>| -> BTreeSet<usize> {
        gen.iter().flat_map(|&j| a.basis_square(j).support()).collect()
    };
    let mut gen = BTreeSet::from([i]);
    match k {
        Some(k) => {
            for _ in 0..k {
                gen = step(&gen);
            }
            Ok(gen)
        }
        None => {
            let mut all = BTreeSet::new();
            // the union stabilizes after at most n generations
            for _ in 0..n {
                gen = step(&gen);
                let before = all.len();
                all.extend(gen.iter().copied());
                if all.len() == before {
                    break;
                }
            }
            Ok(all)
        }
    }
}

/// Indices that are nobody's descendant.
pub fn adjoint_annihilator_indices(a: &EvolutionAlgebra) -> Vec<usize> {
    let n = a.dim();
    let mut reached = vec![false; n];
    for j in 0..n {
        for d in descendants(a, j, None).expect("in range") {
            reached[d] = true;
        }
    }
    (0..n).filter(|&i| !reached[i]).collect()
}

/// `ann(A*) = span{e_i : i ∉ D(j) for all j}`.
pub fn adjoint_annihilator(a: &EvolutionAlgebra) -> Subspace {
    Subspace::coordinate(a.field(), a.dim(), adjoint_annihilator_indices(a))
}

/// The two facts checked about [`adjoint_annihilator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnnihilatorCheck {
    /// The descendant formula equals the annihilator of `A*`.
    pub matches_adjoint: bool,
    /// `A² · ann(A*) = 0` under the product of `A`.
    pub killed_by_square: bool,
}

impl AnnihilatorCheck {
    pub fn holds(&self) -> bool {
        self.matches_adjoint && self.killed_by_square
    }
}

pub fn check_adjoint_annihilator(a: &EvolutionAlgebra) -> AnnihilatorCheck {
    let ann = adjoint_annihilator(a);
    let matches_adjoint = adjoint(a).annihilator_by_definition() == ann;
    let square = a.square_space();
    let killed_by_square = a.product_space(&square, &ann).is_zero();
    AnnihilatorCheck {
        matches_adjoint,
        killed_by_square,
    }
}

/// The properties preserved by passing to the adjoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct InvariantFlags {
    pub irreducible: bool,
    pub simple: bool,
    pub basic_simple_relative: bool,
    pub nilpotent: bool,
}

impl InvariantFlags {
    pub fn of(a: &EvolutionAlgebra) -> Self {
        InvariantFlags {
            irreducible: Digraph::of_algebra(a).is_weakly_connected(),
            simple: is_simple(a),
            basic_simple_relative: is_basic_simple_relative(a),
            nilpotent: nilpotency_report(a).is_nilpotent,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjointInvariants {
    pub algebra: InvariantFlags,
    pub adjoint: InvariantFlags,
    /// Number of index sets `Γ` whose span is a subalgebra of `A`.
    pub subalgebras_checked: usize,
    /// Those `Γ` whose complement does not span a subalgebra of `A*`.
    /// `None` when there were too many sets to enumerate.
    pub complement_failures: Option<Vec<Vec<usize>>>,
}

impl AdjointInvariants {
    pub fn agree(&self) -> bool {
        self.algebra == self.adjoint && self.complement_failures.as_ref().is_none_or(Vec::is_empty)
    }
}

/// Flags for `A` and `A*`, and the complement check: if `span{e_i : i ∈ Γ}`
/// is a subalgebra of `A` then `span{e_i : i ∉ Γ}` is one of `A*`.
pub fn adjoint_invariants(a: &EvolutionAlgebra) -> AdjointInvariants {
    let star = adjoint(a);
    let (f, n) = (a.field(), a.dim());
    let (subalgebras_checked, complement_failures) = match descendant_closed_sets(a) {
        Ok(sets) => {
            let mut failures = Vec::new();
            for s in &sets {
                let rest: Vec<usize> = (0..n).filter(|i| !s.contains(i)).collect();
                let ok = star
                    .is_subalgebra(&Subspace::coordinate(f, n, rest))
                    .expect("same ambient space");
                if !ok {
                    failures.push(s.clone());
                }
            }
            (sets.len(), Some(failures))
        }
        Err(_) => (0, None),
    };
    AdjointInvariants {
        algebra: InvariantFlags::of(a),
        adjoint: InvariantFlags::of(&star),
        subalgebras_checked,
        complement_failures,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Persistent,
    Transient,
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GeneratorKind::Persistent => "persistent",
            GeneratorKind::Transient => "transient",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorClass {
    pub index: usize,
    pub kind: GeneratorKind,
    /// `alg(e_i)`.
    pub closure: Subspace,
    /// Whether `alg(e_i)` is spanned by basis vectors.
    pub coordinate_spanned: bool,
    /// Basic simplicity of `alg(e_i)` on its induced basis; `None` when the
    /// closure is not coordinate-spanned.
    pub basic_simple: Option<Verdict>,
}

impl GeneratorClass {
    /// Classified transient only because basic simplicity was undecided.
    pub fn undecided(&self) -> bool {
        self.basic_simple == Some(Verdict::Unknown)
    }
}

/// `e_i` is persistent when `alg(e_i)` is coordinate-spanned and basic simple,
/// transient otherwise.
pub fn classify_generator(a: &EvolutionAlgebra, i: usize) -> Result<GeneratorClass> {
    if i >= a.dim() {
        return Err(Error::IndexOutOfRange { index: i, n: a.dim() });
    }
    let closure = a.subalgebra_closure(&[a.basis_vector(i)])?;
    let coordinate_spanned = closure.is_coordinate();
    let basic_simple = coordinate_spanned.then(|| is_basic_simple(&a.restrict(&closure.support()).expect("in range")));
    let kind = if basic_simple == Some(Verdict::True) {
        GeneratorKind::Persistent
    } else {
        GeneratorKind::Transient
    };
    Ok(GeneratorClass {
        index: i,
        kind,
        closure,
        coordinate_spanned,
        basic_simple,
    })
}

pub fn classify_generators(a: &EvolutionAlgebra) -> Vec<GeneratorClass> {
    (0..a.dim())
        .into_par_iter()
        .map(|i| classify_generator(a, i).expect("in range"))
        .collect()
}

/// Classification relative to the natural basis `c`, indexed by position
/// in `c`. Closures are expressed in the coordinates of `c`.
pub fn classify_generators_in_basis(a: &EvolutionAlgebra, c: &BasisCandidate) -> Result<Vec<GeneratorClass>> {
    Ok(classify_generators(&a.change_basis(c)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PersistentComponent {
    /// Persistent generators whose closure is this component.
    pub generators: Vec<usize>,
    /// Basis indices spanning the component.
    pub indices: Vec<usize>,
    pub span: Subspace,
}

/// `A = A_1 ⊕ … ⊕ A_m ∔ E`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZerothDecomposition {
    pub generators: Vec<GeneratorClass>,
    pub persistent_components: Vec<PersistentComponent>,
    /// Transient generators lying outside every component.
    pub transient_indices: Vec<usize>,
    /// Transient generators already inside a component.
    pub absorbed_indices: Vec<usize>,
    /// The 0th transient space `E`.
    pub transient_span: Subspace,
    /// Component bases followed by the basis of `E`.
    pub basis_used: BasisCandidate,
    /// Pairs of components whose closures overlap without coinciding.
    pub overlaps: Vec<(usize, usize)>,
    /// Whether `E ∩ (⊕ A_i) = 0`.
    pub direct: bool,
}

impl ZerothDecomposition {
    pub fn components_sum(&self) -> Subspace {
        let f = self.transient_span.field();
        let n = self.transient_span.ambient_dim();
        Subspace::coordinate(f, n, self.persistent_components.iter().flat_map(|c| c.indices.iter().copied()))
    }

    /// Any `classify` verdict was left undecided.
    pub fn undecided(&self) -> bool {
        self.generators.iter().any(GeneratorClass::undecided)
    }

    /// Broken invariants, empty when the decomposition is sound.
    pub fn violations(&self, a: &EvolutionAlgebra) -> Vec<String> {
        let mut out = Vec::new();
        if !self.direct {
            out.push("E meets the sum of the components".into());
        }
        for (k, c) in self.persistent_components.iter().enumerate() {
            if !c.span.is_coordinate() || !a.is_subalgebra(&c.span).unwrap_or(false) {
                out.push(format!("component {k} is not a coordinate-spanned subalgebra"));
            }
            let sub = a.restrict(&c.indices).expect("in range");
            if !is_basic_simple_relative(&sub) || is_basic_simple(&sub) != Verdict::True {
                out.push(format!("component {k} is not basic simple"));
            }
        }
        let total = self.transient_span.dim() + self.persistent_components.iter().map(|c| c.indices.len()).sum::<usize>();
        if total != a.dim() || self.basis_used.vectors.len() != a.dim() {
            out.push("components and E do not fill the algebra".into());
        }
        out
    }
}

/// Groups persistent generators by equal closures; `E` is spanned by the
/// transient generators outside every component.
pub fn zeroth_decomposition(a: &EvolutionAlgebra) -> ZerothDecomposition {
    let (f, n) = (a.field(), a.dim());
    let generators = classify_generators(a);
    let mut components: Vec<PersistentComponent> = Vec::new();
    let mut overlaps = Vec::new();
    for g in generators.iter().filter(|g| g.kind == GeneratorKind::Persistent) {
        if let Some(c) = components.iter_mut().find(|c| c.span == g.closure) {
            c.generators.push(g.index);
            continue;
        }
        let indices = g.closure.support();
        for (k, c) in components.iter().enumerate() {
            if c.indices.iter().any(|i| indices.contains(i)) {
                overlaps.push((k, components.len()));
            }
        }
        components.push(PersistentComponent {
            generators: vec![g.index],
            indices,
            span: g.closure.clone(),
        });
    }
    let covered: BTreeSet<usize> = components.iter().flat_map(|c| c.indices.iter().copied()).collect();
    let (absorbed_indices, transient_indices): (Vec<usize>, Vec<usize>) = generators
        .iter()
        .filter(|g| g.kind == GeneratorKind::Transient)
        .map(|g| g.index)
        .partition(|i| covered.contains(i));
    let transient_span = Subspace::coordinate(f, n, transient_indices.iter().copied());
    let sum = Subspace::coordinate(f, n, covered.iter().copied());
    let direct = transient_span.intersect(&sum).expect("same ambient space").is_zero();
    // overlapping components list shared indices once, under the first
    let mut order: Vec<usize> = Vec::new();
    for c in &components {
        for &i in &c.indices {
            if !order.contains(&i) {
                order.push(i);
            }
        }
    }
    order.extend(&transient_indices);
    let basis_used = BasisCandidate::new(order.iter().map(|&i| a.basis_vector(i)).collect());
    ZerothDecomposition {
        generators,
        persistent_components: components,
        transient_indices,
        absorbed_indices,
        transient_span,
        basis_used,
        overlaps,
        direct,
    }
}

/// The 0th decomposition relative to the natural basis `c`. Subspaces and
/// `basis_used` are mapped back to the coordinates of `a`; index sets refer
/// to positions in `c`.
pub fn zeroth_decomposition_in_basis(a: &EvolutionAlgebra, c: &BasisCandidate) -> Result<ZerothDecomposition> {
    let local = zeroth_decomposition(&a.change_basis(c)?);
    let p = c.matrix(a.field(), a.dim())?;
    let map = |s: &Subspace| -> Result<Subspace> {
        let images = s
            .basis_vectors()
            .iter()
            .map(|v| p.mul_vec(v))
            .collect::<Result<Vec<_>>>()?;
        Ok(Subspace::span(a.field(), a.dim(), images))
    };
    let mut out = local.clone();
    for (dst, src) in out.persistent_components.iter_mut().zip(&local.persistent_components) {
        dst.span = map(&src.span)?;
    }
    for g in out.generators.iter_mut() {
        g.closure = map(&g.closure)?;
    }
    out.transient_span = map(&local.transient_span)?;
    out.basis_used = BasisCandidate::new(
        local
            .basis_used
            .vectors
            .iter()
            .map(|v| p.mul_vec(v.coords()).map(crate::algebra::Element::new))
            .collect::<Result<_>>()?,
    );
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HierarchyLevel {
    /// Indices of the original basis spanning this level's algebra.
    pub indices: Vec<usize>,
    /// Some square of this level's generators left the span of `indices`,
    /// so the level's algebra is the projection along the components found
    /// so far.
    pub projected: bool,
    /// Decomposition of the level's algebra, in its own coordinates.
    pub decomposition: ZerothDecomposition,
}

impl HierarchyLevel {
    /// Map a level-local index to the original basis.
    pub fn global(&self, local: usize) -> usize {
        self.indices[local]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Termination {
    /// The last transient space was zero.
    Exhausted,
    /// The last level found no persistent component.
    Stabilized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hierarchy {
    pub levels: Vec<HierarchyLevel>,
    pub termination: Termination,
}

/// Level `k + 1` is the 0th decomposition of level `k`'s transient span,
/// taken as the evolution algebra on its generators with squares projected
/// onto it.
pub fn hierarchy(a: &EvolutionAlgebra) -> Hierarchy {
    let mut levels = Vec::new();
    let mut indices: Vec<usize> = (0..a.dim()).collect();
    let mut projected = false;
    loop {
        let current = a.restrict(&indices).expect("in range");
        let decomposition = zeroth_decomposition(&current);
        let next: Vec<usize> = decomposition.transient_indices.iter().map(|&i| indices[i]).collect();
        let stalled = decomposition.persistent_components.is_empty();
        levels.push(HierarchyLevel {
            indices: indices.clone(),
            projected,
            decomposition,
        });
        if next.is_empty() {
            return Hierarchy {
                levels,
                termination: Termination::Exhausted,
            };
        }
        if stalled {
            return Hierarchy {
                levels,
                termination: Termination::Stabilized,
            };
        }
        projected = next
            .iter()
            .any(|&i| a.basis_square(i).support().iter().any(|j| !next.contains(j)));
        indices = next;
    }
}

/// For irreducible `A` with `ann(A*) ≠ 0`, whether `ann(A*)` lies in the 0th
/// transient space. `None` when the hypotheses fail.
pub fn adjoint_annihilator_in_transient_space(a: &EvolutionAlgebra, z: &ZerothDecomposition) -> Option<bool> {
    let ann = adjoint_annihilator(a);
    if ann.is_zero() || !Digraph::of_algebra(a).is_weakly_connected() {
        return None;
    }
    Some(ann.is_subspace_of(&z.transient_span).expect("same ambient space"))
}
