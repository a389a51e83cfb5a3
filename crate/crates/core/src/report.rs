//! Structured reports for each command, as ordered JSON values, plus a
//! plain-text rendering of them.
//!
//! Basis indices in reports are 1-based. Scalars are exact strings. Every
//! witness is re-verified before it is written; a witness that fails
//! re-verification is an error, never a report.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::adjoint::{
    adjoint, adjoint_annihilator_in_transient_space, adjoint_annihilator_indices, adjoint_invariants,
    check_adjoint_annihilator, hierarchy, zeroth_decomposition, zeroth_decomposition_in_basis,
    GeneratorClass, InvariantFlags, Termination, ZerothDecomposition,
};
use crate::algebra::{BasisCandidate, Element, EvolutionAlgebra};
use crate::error::{Error, Result};
use crate::graph::Digraph;
use crate::ideals::{
    descendant_closed_sets, ideal_lattice_perfect, is_basic_simple, is_basic_simple_relative, is_simple,
    simplicity_report,
};
use crate::io::AlgebraFile;
use crate::linalg::Subspace;
use crate::natural::{
    decompose, decompose_in_basis, extend_family, has_property_2li, has_unique_natural_basis, is_natural_vector,
    square_classes,
};
use crate::nilpotency::{
    find_cube_nilpotent, find_orthogonality_witness, is_cube_zero, minor_condition, nilpotency_report, power_spaces,
    CubeOutcome,
};
use crate::oracle;
use crate::verdict::Verdict;

/// A command's result. `holds` is the predicate answer used by `--check`.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub body: Value,
    pub holds: Option<bool>,
}

impl Report {
    fn new(body: Value) -> Self {
        Report { body, holds: None }
    }

    fn with_check(body: Value, holds: bool) -> Self {
        Report {
            body,
            holds: Some(holds),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.body).expect("values serialize") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render(&self.body, 0, &mut out);
        out
    }
}

fn one_based(indices: &[usize]) -> Value {
    json!(indices.iter().map(|i| i + 1).collect::<Vec<_>>())
}

fn element(e: &Element) -> Value {
    json!(e.coords().iter().map(ToString::to_string).collect::<Vec<_>>())
}

fn subspace(s: &Subspace) -> Value {
    let basis: Vec<Value> = s
        .basis_vectors()
        .iter()
        .map(|v| json!(v.iter().map(ToString::to_string).collect::<Vec<_>>()))
        .collect();
    json!({ "dim": s.dim(), "basis": basis })
}

fn basis(c: &BasisCandidate) -> Value {
    json!(c.vectors.iter().map(element).collect::<Vec<_>>())
}

fn matrix_rows(a: &EvolutionAlgebra) -> Value {
    json!(a
        .structure_matrix()
        .row_vectors()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
        .collect::<Vec<_>>())
}

fn header(a: &EvolutionAlgebra, command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("field".into(), json!(a.field().to_string()));
    m.insert("dim".into(), json!(a.dim()));
    m
}

fn reject(what: &str) -> Error {
    Error::WitnessRejected(what.to_string())
}

pub fn analyze(a: &EvolutionAlgebra) -> Report {
    let mut m = header(a, "analyze");
    let nil = nilpotency_report(a);
    m.insert("perfect".into(), json!(a.is_perfect()));
    m.insert("nondegenerate".into(), json!(a.is_nondegenerate()));
    m.insert("property_2li".into(), json!(has_property_2li(a)));
    m.insert("unique_natural_basis".into(), json!(has_unique_natural_basis(a)));
    m.insert("nilpotent".into(), json!(nil.is_nilpotent));
    m.insert("simple".into(), json!(is_simple(a)));
    m.insert("irreducible".into(), json!(Digraph::of_algebra(a).is_weakly_connected()));
    m.insert("basic_simple_relative".into(), json!(is_basic_simple_relative(a)));
    m.insert("basic_simple".into(), json!(is_basic_simple(a)));
    m.insert("square_dim".into(), json!(a.square_space().dim()));
    m.insert("annihilator_dim".into(), json!(a.annihilator().dim()));
    Report::new(Value::Object(m))
}

pub fn natural(a: &EvolutionAlgebra, u: &Element) -> Result<Report> {
    let mut m = header(a, "natural");
    let verdict = is_natural_vector(a, u)?;
    m.insert("vector".into(), element(u));
    m.insert("natural".into(), json!(verdict));
    let square = a.square(u)?;
    m.insert("square".into(), element(&square));
    let (zero, classes) = square_classes(a);
    let class = classes.iter().position(|c| {
        !square.is_zero() && c.line == square.normalized()
    });
    m.insert(
        "square_class".into(),
        match class {
            Some(k) => one_based(&classes[k].indices),
            None if square.is_zero() => one_based(&zero),
            None => Value::Null,
        },
    );
    Ok(Report::with_check(Value::Object(m), verdict))
}

pub fn extend(a: &EvolutionAlgebra, family: &[Element]) -> Result<Report> {
    let mut m = header(a, "extend");
    let r = extend_family(a, family)?;
    if !a.verify_natural_basis(&r.completed_basis)? || r.completed_basis.vectors[..family.len()] != *family {
        return Err(reject("completed basis is not a natural basis extending the family"));
    }
    m.insert("family".into(), json!(family.iter().map(element).collect::<Vec<_>>()));
    m.insert("added_vectors".into(), json!(r.added_vectors.iter().map(element).collect::<Vec<_>>()));
    m.insert("completed_basis".into(), basis(&r.completed_basis));
    m.insert("verified".into(), json!(true));
    Ok(Report::new(Value::Object(m)))
}

pub fn decomposition(a: &EvolutionAlgebra, c: Option<&BasisCandidate>) -> Result<Report> {
    let mut m = header(a, "decompose");
    let d = match c {
        Some(c) => decompose_in_basis(a, c)?,
        None => decompose(a),
    };
    m.insert("annihilator_indices".into(), one_based(&d.ann_indices));
    m.insert("annihilator".into(), subspace(&d.ann_part));
    m.insert(
        "components".into(),
        json!(d
            .components
            .iter()
            .map(|c| json!({
                "indices": one_based(&c.indices),
                "dim": c.span.dim(),
                "square_line": element(&c.square_line),
            }))
            .collect::<Vec<_>>()),
    );
    m.insert("component_count".into(), json!(d.components.len()));
    m.insert("square_dim".into(), json!(d.square_dim));
    m.insert("class_count_matches".into(), json!(d.class_count_matches()));
    m.insert("violations".into(), json!(d.violations(a)));
    Ok(Report::new(Value::Object(m)))
}

pub fn nilpotency(a: &EvolutionAlgebra) -> Result<Report> {
    let mut m = header(a, "nilpotency");
    let r = nilpotency_report(a);
    m.insert("nilpotent".into(), json!(r.is_nilpotent));
    m.insert(
        "annihilator_chain_dims".into(),
        json!(r.ann_chain.iter().map(Subspace::dim).collect::<Vec<_>>()),
    );
    m.insert(
        "strata".into(),
        json!(r.strata.iter().map(|s| one_based(s)).collect::<Vec<_>>()),
    );
    m.insert("type".into(), json!(r.type_sequence));
    m.insert("right_nilpotency_index".into(), json!(r.right_nilpotency_index));
    m.insert("triangular_order".into(), r.triangular_order.as_deref().map_or(Value::Null, one_based));
    let mut powers = Vec::new();
    for k in 1..=a.dim() + 1 {
        let p = power_spaces(a, k)?;
        powers.push(json!({
            "k": k,
            "plenary_dim": p.plenary.dim(),
            "right_dim": p.right.dim(),
            "solvable_dim": p.solvable.dim(),
        }));
    }
    m.insert("powers".into(), json!(powers));
    m.insert("cube_zero".into(), json!(is_cube_zero(a)));
    Ok(Report::with_check(Value::Object(m), r.is_nilpotent))
}

pub fn minors(a: &EvolutionAlgebra, max_size: usize) -> Result<Report> {
    let mut m = header(a, "minors");
    m.insert("max_subset_size".into(), json!(max_size));
    if !a.is_perfect() {
        m.insert("applicable".into(), json!(false));
        m.insert("reason".into(), json!("not perfect"));
        return Ok(Report::with_check(Value::Object(m), false));
    }
    let s = find_orthogonality_witness(a, max_size)?;
    m.insert("applicable".into(), json!(true));
    m.insert("truncated".into(), json!(s.truncated));
    let found = s.witness.is_some();
    match &s.witness {
        Some(w) => {
            if !w.verify(a)? || !minor_condition(a, &w.gamma, &w.omega_searched)? {
                return Err(reject("orthogonality witness"));
            }
            m.insert(
                "witness".into(),
                json!({
                    "gamma": one_based(&w.gamma),
                    "omega": one_based(&w.omega),
                    "omega_searched": one_based(&w.omega_searched),
                    "u": element(&w.u),
                    "v": element(&w.v),
                    "w": element(&w.w),
                    "verified": true,
                }),
            );
        }
        None => {
            m.insert("witness".into(), Value::Null);
        }
    }
    Ok(Report::with_check(Value::Object(m), found))
}

pub fn cube_nilpotent(a: &EvolutionAlgebra, max_size: usize) -> Result<Report> {
    let mut m = header(a, "cube-nilpotent");
    m.insert("max_subset_size".into(), json!(max_size));
    if !a.is_perfect() {
        m.insert("applicable".into(), json!(false));
        m.insert("reason".into(), json!("not perfect"));
        return Ok(Report::with_check(Value::Object(m), false));
    }
    m.insert("applicable".into(), json!(true));
    let s = find_cube_nilpotent(a, max_size)?;
    m.insert("truncated".into(), json!(s.truncated));
    let found = match &s.outcome {
        CubeOutcome::Found { gamma, element: u } => {
            if u.is_zero() || !a.power_plenary(u, 3)?.is_zero() {
                return Err(reject("cube-nilpotent element"));
            }
            m.insert("outcome".into(), json!("found"));
            m.insert("gamma".into(), one_based(gamma));
            m.insert("element".into(), element(u));
            m.insert("verified".into(), json!(true));
            true
        }
        CubeOutcome::NeedsSquareRoots { gamma } => {
            m.insert("outcome".into(), json!("needs_square_roots"));
            m.insert("gamma".into(), one_based(gamma));
            false
        }
        CubeOutcome::NoVanishingMinor => {
            m.insert("outcome".into(), json!("no_vanishing_minor"));
            false
        }
    };
    Ok(Report::with_check(Value::Object(m), found))
}

pub fn ideals(a: &EvolutionAlgebra) -> Result<Report> {
    let mut m = header(a, "ideals");
    m.insert("perfect".into(), json!(a.is_perfect()));
    if a.is_perfect() {
        let l = ideal_lattice_perfect(a)?;
        m.insert("complete".into(), json!(true));
        m.insert(
            "ideals".into(),
            json!(l
                .ideals
                .iter()
                .zip(&l.generators)
                .map(|(s, g)| json!({
                    "indices": g.as_deref().map_or(Value::Null, one_based),
                    "dim": s.dim(),
                    "basic": true,
                }))
                .collect::<Vec<_>>()),
        );
    } else {
        // only the basic ideals relative to the stored basis
        let sets = descendant_closed_sets(a)?;
        m.insert("complete".into(), json!(false));
        m.insert(
            "ideals".into(),
            json!(sets
                .iter()
                .map(|g| json!({ "indices": one_based(g), "dim": g.len(), "basic": true }))
                .collect::<Vec<_>>()),
        );
    }
    Ok(Report::new(Value::Object(m)))
}

pub fn simple(a: &EvolutionAlgebra) -> Result<Report> {
    let mut m = header(a, "simple");
    let r = simplicity_report(a)?;
    m.insert("simple".into(), json!(r.matrix_test));
    m.insert("perfect".into(), json!(r.perfect));
    m.insert("strongly_connected".into(), json!(r.strongly_connected));
    m.insert("lattice_test".into(), json!(r.lattice_test));
    m.insert("tests_agree".into(), json!(r.agree()));
    m.insert("basic_simple_relative".into(), json!(is_basic_simple_relative(a)));
    m.insert("basic_simple".into(), json!(is_basic_simple(a)));
    Ok(Report::with_check(Value::Object(m), r.matrix_test))
}

fn flags(f: &InvariantFlags) -> Value {
    json!({
        "irreducible": f.irreducible,
        "simple": f.simple,
        "basic_simple_relative": f.basic_simple_relative,
        "nilpotent": f.nilpotent,
    })
}

pub fn adjoint_report(a: &EvolutionAlgebra) -> Report {
    let mut m = header(a, "adjoint");
    let star = adjoint(a);
    let inv = adjoint_invariants(a);
    let check = check_adjoint_annihilator(a);
    m.insert("adjoint_matrix".into(), matrix_rows(&star));
    m.insert("algebra".into(), flags(&inv.algebra));
    m.insert("adjoint".into(), flags(&inv.adjoint));
    m.insert("subalgebras_checked".into(), json!(inv.subalgebras_checked));
    m.insert(
        "complement_failures".into(),
        inv.complement_failures
            .as_ref()
            .map_or(Value::Null, |f| json!(f.iter().map(|s| one_based(s)).collect::<Vec<_>>())),
    );
    m.insert("invariants_agree".into(), json!(inv.agree()));
    m.insert("adjoint_annihilator_indices".into(), one_based(&adjoint_annihilator_indices(a)));
    m.insert("annihilator_formula_matches".into(), json!(check.matches_adjoint));
    m.insert("square_kills_adjoint_annihilator".into(), json!(check.killed_by_square));
    m.insert("property_2li".into(), json!(has_property_2li(a)));
    m.insert("adjoint_property_2li".into(), json!(has_property_2li(&star)));
    Report::with_check(Value::Object(m), inv.agree() && check.holds())
}

fn generator(a: &EvolutionAlgebra, g: &GeneratorClass) -> Value {
    json!({
        "index": g.index + 1,
        "label": a.label(g.index),
        "kind": g.kind.to_string(),
        "coordinate_spanned": g.coordinate_spanned,
        "basic_simple": g.basic_simple,
        "undecided": g.undecided(),
        "closure": subspace(&g.closure),
    })
}

fn zeroth(z: &ZerothDecomposition, global: impl Fn(usize) -> usize) -> Value {
    let map = |xs: &[usize]| json!(xs.iter().map(|&i| global(i) + 1).collect::<Vec<_>>());
    json!({
        "components": z.persistent_components.iter().map(|c| json!({
            "generators": map(&c.generators),
            "indices": map(&c.indices),
            "dim": c.span.dim(),
        })).collect::<Vec<_>>(),
        "transient_indices": map(&z.transient_indices),
        "absorbed_indices": map(&z.absorbed_indices),
        "transient_dim": z.transient_span.dim(),
        "direct": z.direct,
        "overlaps": z.overlaps.iter().map(|(x, y)| json!([x + 1, y + 1])).collect::<Vec<_>>(),
        "undecided": z.undecided(),
    })
}

/// Per-generator classification and the 0th decomposition, relative to the
/// stored basis or to the natural basis `c`.
pub fn classify(a: &EvolutionAlgebra, c: Option<&BasisCandidate>) -> Result<Report> {
    let mut m = header(a, "classify");
    let (local, z) = match c {
        Some(c) => (a.change_basis(c)?, zeroth_decomposition_in_basis(a, c)?),
        None => (a.clone(), zeroth_decomposition(a)),
    };
    let gens = &z.generators;
    m.insert("basis".into(), c.map_or(json!("standard"), basis));
    m.insert(
        "generators".into(),
        json!(gens.iter().map(|g| generator(&local, g)).collect::<Vec<_>>()),
    );
    m.insert("undecided".into(), json!(z.undecided()));
    m.insert("decomposition".into(), zeroth(&z, |i| i));
    m.insert("basis_used".into(), basis(&z.basis_used));
    m.insert(
        "adjoint_annihilator_in_transient_space".into(),
        json!(adjoint_annihilator_in_transient_space(&local, &zeroth_decomposition(&local))),
    );
    Ok(Report::new(Value::Object(m)))
}

pub fn hierarchy_report(a: &EvolutionAlgebra) -> Report {
    let mut m = header(a, "hierarchy");
    let h = hierarchy(a);
    m.insert(
        "levels".into(),
        json!(h
            .levels
            .iter()
            .enumerate()
            .map(|(k, l)| json!({
                "level": k,
                "indices": one_based(&l.indices),
                "projected": l.projected,
                "decomposition": zeroth(&l.decomposition, |i| l.global(i)),
            }))
            .collect::<Vec<_>>()),
    );
    m.insert(
        "termination".into(),
        json!(match h.termination {
            Termination::Exhausted => "exhausted",
            Termination::Stabilized => "stabilized",
        }),
    );
    Report::new(Value::Object(m))
}

pub fn algebra(a: &EvolutionAlgebra) -> Report {
    Report::new(AlgebraFile::from_algebra(a).to_json())
}

/// Brute-force checks available to `oracle`.
pub const ORACLES: &[&str] = &[
    "natural-vectors",
    "basic-simple",
    "simple",
    "triples",
    "cube-zero",
    "nil",
    "ideals",
];

fn unknown_oracle(name: &str) -> Error {
    Error::InvalidArgument(format!("unknown oracle `{name}` (expected one of {})", ORACLES.join(", ")))
}

/// One comparison: `Ok(None)` agree, `Ok(Some(detail))` differ,
/// `Err` skipped (outside the oracle's reach or the fast path's domain).
fn compare(name: &str, a: &EvolutionAlgebra) -> Result<Option<String>> {
    let skip = |why: &str| Err(Error::InvalidArgument(why.to_string()));
    match name {
        "natural-vectors" => {
            let set = oracle::natural_vector_set(a)?;
            for p in oracle::projective_points(a.field(), a.dim())? {
                let fast = is_natural_vector(a, &p)?;
                if fast != set.contains(&p) {
                    return Ok(Some(format!("vector {:?}: fast {fast}", element(&p))));
                }
            }
            Ok(None)
        }
        "basic-simple" => match is_basic_simple(a) {
            Verdict::Unknown => skip("undecided"),
            v => {
                let slow = oracle::is_basic_simple(a)?;
                Ok((v.as_bool() != Some(slow)).then(|| format!("fast {v}, oracle {slow}")))
            }
        },
        "simple" => {
            let (fast, slow) = (is_simple(a), oracle::is_simple(a)?);
            Ok((fast != slow).then(|| format!("fast {fast}, oracle {slow}")))
        }
        "triples" => {
            if !a.is_perfect() {
                return skip("not perfect");
            }
            let fast = find_orthogonality_witness(a, a.dim())?.witness.is_some();
            let slow = oracle::find_triple(a)?.is_some();
            Ok((fast != slow).then(|| format!("minor condition {fast}, triple exists {slow}")))
        }
        "cube-zero" => {
            if !a.is_perfect() {
                return skip("not perfect");
            }
            let fast = match find_cube_nilpotent(a, a.dim())?.outcome {
                CubeOutcome::Found { .. } => true,
                CubeOutcome::NoVanishingMinor => false,
                CubeOutcome::NeedsSquareRoots { .. } => return skip("needs square roots"),
            };
            let slow = oracle::find_cube_zero(a)?.is_some();
            Ok((fast != slow).then(|| format!("minor search {fast}, oracle {slow}")))
        }
        "nil" => {
            let (fast, slow) = (nilpotency_report(a).is_nilpotent, oracle::is_nil(a)?);
            Ok((fast != slow).then(|| format!("ann chain {fast}, oracle {slow}")))
        }
        "ideals" => {
            if !a.is_perfect() {
                return skip("not perfect");
            }
            let fast = ideal_lattice_perfect(a)?.ideals;
            let slow = oracle::all_ideals(a)?;
            let same = fast.len() == slow.len() && fast.iter().all(|s| slow.contains(s));
            Ok((!same).then(|| format!("{} basic ideals, {} ideals", fast.len(), slow.len())))
        }
        other => Err(unknown_oracle(other)),
    }
}

/// Run the oracle `name` against every algebra and list disagreements.
pub fn oracle_report(name: &str, corpus: &[(String, EvolutionAlgebra)]) -> Result<Report> {
    if !ORACLES.contains(&name) {
        return Err(unknown_oracle(name));
    }
    let results: Vec<Result<Option<String>>> = corpus.par_iter().map(|(_, a)| compare(name, a)).collect();
    let mut diffs = Vec::new();
    let mut skipped = Vec::new();
    let mut compared = 0;
    for ((source, _), r) in corpus.iter().zip(results) {
        match r {
            Ok(None) => compared += 1,
            Ok(Some(detail)) => {
                compared += 1;
                diffs.push(json!({ "algebra": source, "detail": detail }));
            }
            Err(Error::DimensionTooLarge { .. }) => skipped.push(json!({ "algebra": source, "reason": "too large" })),
            Err(Error::InvalidArgument(why)) => skipped.push(json!({ "algebra": source, "reason": why })),
            Err(e) => return Err(e),
        }
    }
    let ok = diffs.is_empty();
    Ok(Report::with_check(
        json!({
            "command": "oracle",
            "oracle": name,
            "algebras": corpus.len(),
            "compared": compared,
            "skipped": skipped.len(),
            "skipped_detail": skipped,
            "diff_count": diffs.len(),
            "diffs": diffs,
        }),
        ok,
    ))
}

fn is_inline(v: &Value) -> bool {
    match v {
        Value::Object(m) => m.is_empty(),
        Value::Array(xs) => xs.iter().all(|x| match x {
            Value::Array(ys) => ys.iter().all(|y| !y.is_array() && !y.is_object()),
            Value::Object(_) => false,
            _ => true,
        }),
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        Value::Array(xs) => format!("[{}]", xs.iter().map(inline).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

fn render(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if is_inline(x) {
                    out.push_str(&format!("{pad}{k}: {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        Value::Array(xs) => {
            for x in xs {
                if is_inline(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render(x, depth + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}
