mod common;

use evoalg::natural::{
    decompose, decompose_in_basis, extend_family, has_property_2li, has_unique_natural_basis, is_natural_vector,
    square_classes, verify_block_form,
};
use evoalg::random::{self, Constraints};
use evoalg::{oracle, BasisCandidate, Element, Error, EvolutionAlgebra, Field, Subspace, Verdict};
use rand::Rng;

#[test]
fn natural_vectors_match_enumeration() {
    let mut rng = random::rng(11);
    for (p, n, count) in [(2, 4, 150), (2, 5, 40), (3, 3, 150), (5, 3, 60), (3, 4, 20)] {
        let f = Field::prime(p).unwrap();
        for _ in 0..count {
            let a = common::mixed(&mut rng, f, n);
            let set = oracle::natural_vector_set(&a).unwrap();
            for u in oracle::projective_points(f, n).unwrap() {
                assert_eq!(
                    is_natural_vector(&a, &u).unwrap(),
                    set.contains(&u),
                    "u = {u} in\n{}",
                    a.structure_matrix()
                );
            }
        }
    }
}

#[test]
fn decompositions_hold_their_invariants() {
    let mut rng = random::rng(23);
    for f in [Field::rationals(), Field::prime(5).unwrap()] {
        for n in 1..=5 {
            for _ in 0..60 {
                let a = common::mixed(&mut rng, f, n);
                let d = decompose(&a);
                assert!(d.violations(&a).is_empty(), "{:?}\n{}", d.violations(&a), a.structure_matrix());
            }
        }
    }
}

fn summands(a: &EvolutionAlgebra, c: &BasisCandidate) -> (Subspace, Vec<Subspace>) {
    let d = decompose_in_basis(a, c).unwrap();
    assert!(d.violations(a).is_empty());
    let mut comps: Vec<Subspace> = d.components.into_iter().map(|c| c.span).collect();
    comps.sort_by_key(|s| s.basis().to_string());
    (d.ann_part, comps)
}

#[test]
fn every_natural_basis_gives_the_same_components() {
    let mut rng = random::rng(29);
    let f = Field::prime(5).unwrap();
    let mut checked = 0;
    while checked < 150 {
        let n = rng.random_range(2..=3);
        let a = common::clustered(&mut rng, f, n, false);
        if !a.is_nondegenerate() {
            continue;
        }
        checked += 1;
        let standard = BasisCandidate::standard(f, n);
        let reference = summands(&a, &standard);
        for b in oracle::natural_bases(&a).unwrap() {
            assert_eq!(summands(&a, &b), reference, "\n{}", a.structure_matrix());
            assert!(verify_block_form(&a, &standard, &b).unwrap());
        }
    }
}

/// Draw natural vectors supported on single square classes until `k`
/// pairwise orthogonal independent ones are found.
fn orthogonal_family<R: Rng>(rng: &mut R, a: &EvolutionAlgebra, k: usize) -> Vec<Element> {
    let (f, n) = (a.field(), a.dim());
    let (_, classes) = square_classes(a);
    let mut family: Vec<Element> = Vec::new();
    for _ in 0..200 {
        if family.len() == k {
            break;
        }
        let class = &classes[rng.random_range(0..classes.len())];
        let mut coords = vec![f.zero(); n];
        for &i in &class.indices {
            if rng.random_bool(0.6) {
                coords[i] = random::scalar(rng, f);
            }
        }
        let u = Element::new(coords);
        if u.is_zero() || !is_natural_vector(a, &u).unwrap() {
            continue;
        }
        let orthogonal = family.iter().all(|v| a.multiply(v, &u).unwrap().is_zero());
        let span = Subspace::span(f, n, &family);
        if orthogonal && !span.contains(u.coords()).unwrap() {
            family.push(u);
        }
    }
    family
}

#[test]
fn orthogonal_families_extend() {
    let mut rng = random::rng(31);
    let mut extended = 0;
    for f in [Field::rationals(), Field::prime(3).unwrap(), Field::prime(5).unwrap(), Field::prime(7).unwrap()] {
        for _ in 0..60 {
            let n = rng.random_range(2..=5);
            let a = common::clustered(&mut rng, f, n, false);
            if !a.is_nondegenerate() {
                continue;
            }
            let k = rng.random_range(1..=n);
            let family = orthogonal_family(&mut rng, &a, k);
            if family.is_empty() {
                continue;
            }
            let r = extend_family(&a, &family).unwrap();
            assert!(a.verify_natural_basis(&r.completed_basis).unwrap(), "\n{}", a.structure_matrix());
            assert_eq!(r.completed_basis.vectors[..family.len()], family[..]);
            assert_eq!(r.added_vectors.len(), n - family.len());
            extended += 1;
        }
    }
    assert!(extended > 150, "{extended}");
}

#[test]
fn extension_errors() {
    let q = Field::rationals();
    let degenerate = EvolutionAlgebra::from_squares_i64(q, &[&[1, 0], &[0, 0]]).unwrap();
    let e1 = degenerate.basis_vector(0);
    assert_eq!(extend_family(&degenerate, &[e1]), Err(Error::Degenerate));
    let a = EvolutionAlgebra::from_squares_i64(q, &[&[1, 0], &[0, 1]]).unwrap();
    let mixed = a.element_i64(&[1, 1]).unwrap();
    assert_eq!(extend_family(&a, &[mixed]), Err(Error::NotNaturalVector(0)));
    let b = EvolutionAlgebra::from_squares_i64(q, &[&[1, 0], &[1, 0]]).unwrap();
    let (u, v) = (b.element_i64(&[1, 1]).unwrap(), b.element_i64(&[1, 0]).unwrap());
    assert_eq!(extend_family(&b, &[u, v]), Err(Error::NotOrthogonal(0, 1)));
}

#[test]
fn property_2li_is_basis_independent() {
    let mut rng = random::rng(37);
    for p in [3, 5] {
        let f = Field::prime(p).unwrap();
        for _ in 0..150 {
            let n = rng.random_range(2..=3);
            let a = common::mixed(&mut rng, f, n);
            let bases = oracle::natural_bases(&a).unwrap();
            let flag = has_property_2li(&a);
            for b in &bases {
                assert_eq!(has_property_2li(&a.change_basis(b).unwrap()), flag);
            }
            match has_unique_natural_basis(&a) {
                Verdict::Unknown => {}
                v => assert_eq!(v, (bases.len() == 1).into(), "\n{}", a.structure_matrix()),
            }
            if flag {
                assert_eq!(bases.len(), 1);
            }
        }
    }
}

#[test]
fn random_generator_respects_constraints() {
    let mut rng = random::rng(41);
    for f in [Field::rationals(), Field::prime(2).unwrap(), Field::prime(5).unwrap()] {
        for n in 1..=4 {
            let c = Constraints {
                perfect: true,
                nondegenerate: true,
            };
            let a = random::algebra(&mut rng, f, n, c).unwrap();
            assert!(!a.structure_matrix().det().unwrap().is_zero());
            assert!((0..n).all(|i| !a.structure_matrix().is_column_zero(i)));
        }
    }
}
