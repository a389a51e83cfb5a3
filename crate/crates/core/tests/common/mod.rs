#![allow(dead_code)]

use evoalg::random::{self, Constraints};
use evoalg::{Element, EvolutionAlgebra, Field, Scalar};
use rand::Rng;

/// Squares drawn from one or two random lines, so that square classes with
/// several members (and zero squares) are common.
pub fn clustered<R: Rng>(rng: &mut R, f: Field, n: usize, zero_squares: bool) -> EvolutionAlgebra {
    let lines: Vec<Element> = (0..rng.random_range(1..=2usize))
        .map(|_| loop {
            let v = random::element(rng, f, n);
            if !v.is_zero() {
                break v;
            }
        })
        .collect();
    let squares: Vec<Vec<Scalar>> = (0..n)
        .map(|_| {
            if zero_squares && rng.random_range(0..6) == 0 {
                return vec![f.zero(); n];
            }
            let c = loop {
                let c = random::scalar(rng, f);
                if !c.is_zero() {
                    break c;
                }
            };
            lines[rng.random_range(0..lines.len())].scale(&c).into_coords()
        })
        .collect();
    EvolutionAlgebra::from_squares(f, &squares).unwrap()
}

/// Half uniform, half clustered.
pub fn mixed<R: Rng>(rng: &mut R, f: Field, n: usize) -> EvolutionAlgebra {
    if rng.random_bool(0.5) {
        random::algebra(rng, f, n, Constraints::default()).unwrap()
    } else {
        clustered(rng, f, n, true)
    }
}

/// Every algebra of dimension `n` over GF(p), in a fixed order.
pub fn all_algebras(f: Field, n: usize) -> Vec<EvolutionAlgebra> {
    let vectors = evoalg::oracle::all_vectors(f, n * n).unwrap();
    vectors
        .into_iter()
        .map(|v| {
            let m = evoalg::Matrix::new(f, n, n, v.into_coords()).unwrap();
            EvolutionAlgebra::new(m).unwrap()
        })
        .collect()
}

/// A strictly upper triangular structure matrix with random entries, under a
/// random relabelling of the basis.
pub fn nilpotent<R: Rng>(rng: &mut R, f: Field, n: usize) -> EvolutionAlgebra {
    let mut rows = vec![vec![f.zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        for x in row.iter_mut().skip(i + 1) {
            *x = random::scalar(rng, f);
        }
    }
    let a = EvolutionAlgebra::new(evoalg::Matrix::from_rows(f, n, &rows).unwrap()).unwrap();
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, rng.random_range(0..=i));
    }
    a.reorder(&order).unwrap()
}

/// Uniform, clustered or nilpotent with equal odds.
pub fn varied<R: Rng>(rng: &mut R, f: Field, n: usize) -> EvolutionAlgebra {
    match rng.random_range(0..3) {
        0 => nilpotent(rng, f, n),
        _ => mixed(rng, f, n),
    }
}

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Argument lists covering every subcommand on the fixture corpus.
pub fn regression_commands() -> Vec<Vec<String>> {
    let mut out: Vec<Vec<String>> = Vec::new();
    let files = [
        "ideal_closure.evo",
        "image_not_natural.evo",
        "two_decompositions.evo",
        "nilpotent_dim4.evo",
        "type_ones.evo",
        "nonperfect_triple.evo",
        "basic_simple_not_simple.evo",
        "relative_not_absolute.evo",
        "transient_count.evo",
        "adjoint_2li.evo",
        "no_extension.evo",
        "two_minimal.evo",
        "simple_gf3.evo",
        "perfect_gf7.json",
        "gf2_cube.evo",
    ];
    let commands = [
        "analyze",
        "decompose",
        "nilpotency",
        "minors",
        "cube-nilpotent",
        "ideals",
        "simple",
        "adjoint",
        "classify",
        "hierarchy",
    ];
    for file in files {
        for cmd in commands {
            for format in ["text", "json"] {
                out.push(vec![cmd.into(), fixture(file), "--format".into(), format.into()]);
            }
        }
    }
    let s = |xs: &[&str]| xs.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    out.push(s(&["natural", &fixture("image_not_natural.evo"), "--vector", "1,1"]));
    out.push(s(&["extend", &fixture("relative_not_absolute.evo"), "--vectors", "1,-1,0"]));
    out.push(s(&["decompose", &fixture("two_decompositions.evo"), "--basis", &fixture("two_decompositions.basis")]));
    out.push(s(&["classify", &fixture("transient_count.evo"), "--basis", &fixture("plus_minus.basis")]));
    out.push(s(&["random", "--dim", "4", "--field", "gf5", "--perfect", "--seed", "42"]));
    out.push(s(&["random", "--dim", "3", "--field", "q", "--nondegenerate", "--seed", "7", "--format", "json"]));
    for name in evoalg::report::ORACLES {
        out.push(s(&["oracle", name, "--field", "gf3", "--dim", "2", "--format", "json"]));
        out.push(s(&["oracle", name, "--field", "gf2", "--dim", "3", "--sample", "200", "--seed", "3"]));
    }
    out
}
