use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use permsplit::lpm::{lpfm_interval, LpfmFlag};
use permsplit::matroid::SetMatroid;
use permsplit::perm::{BruhatInterval, Permutation};
use permsplit::polytope::{
    enumerate_vertices, faces_2d, flag_polytope_vertices, is_bip, permutahedron_edges, permutahedron_facets, LinearConstraint,
    RationalPoint, Sense, VertexStatus,
};
use permsplit::rational::int;
use permsplit::subset::ElementSet;

#[test]
fn edges_lie_in_two_faces() {
    for n in 3..=5 {
        let edges = permutahedron_edges(n);
        let fact: usize = (1..=n).product();
        assert_eq!(edges.len(), fact * (n - 1) / 2);
        let faces = faces_2d(n);
        let face_sets: Vec<BTreeSet<&Permutation>> = faces.iter().map(|f| f.vertices.iter().collect()).collect();
        for (a, b) in &edges {
            assert!(face_sets.iter().any(|f| f.contains(a) && f.contains(b)), "{a} {b}");
        }
    }
}

#[test]
fn uniform_flag_polytope_is_permutahedron() {
    for n in 2..=5 {
        let flag: Vec<SetMatroid> = (1..=n).map(|k| SetMatroid::uniform(k, n)).collect();
        let pts: BTreeSet<RationalPoint> = flag_polytope_vertices(&flag).unwrap().into_iter().collect();
        let all: BTreeSet<RationalPoint> = Permutation::all(n).iter().map(RationalPoint::from_permutation).collect();
        assert_eq!(pts, all);
    }
}

#[test]
fn every_interval_is_a_bip() {
    for n in 2..=4 {
        let perms = Permutation::all(n);
        for u in &perms {
            for v in perms.iter().filter(|v| u.bruhat_le(v)) {
                let i = BruhatInterval::new(u.clone(), v.clone()).unwrap();
                assert_eq!(is_bip(&i.elements()), Some(i));
            }
        }
    }
    let not_interval = [Permutation::new(vec![1, 2, 3]).unwrap(), Permutation::new(vec![3, 2, 1]).unwrap()];
    assert_eq!(is_bip(&not_interval), None);
}

#[test]
fn random_lpfm_polytopes_are_interval_polytopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..60 {
        let f = LpfmFlag::random(5, &mut rng);
        let pts: BTreeSet<RationalPoint> = flag_polytope_vertices(&f.matroids()).unwrap().into_iter().collect();
        let expected: BTreeSet<RationalPoint> =
            lpfm_interval(&f).unwrap().elements().iter().map(RationalPoint::from_permutation).collect();
        assert_eq!(pts, expected, "{f:?}");
    }
}

#[test]
fn vertex_enumeration_statuses() {
    let half = LinearConstraint::new(ElementSet::singleton(1), Sense::Ge, int(0)).unwrap();
    assert_eq!(enumerate_vertices(std::slice::from_ref(&half), 1).status, VertexStatus::Unbounded);
    assert_eq!(enumerate_vertices(&[half], 2).status, VertexStatus::NotPointed);
    let mut empty = permutahedron_facets(3);
    empty.push(LinearConstraint::new(ElementSet::singleton(1), Sense::Ge, int(4)).unwrap());
    assert_eq!(enumerate_vertices(&empty, 3).status, VertexStatus::Empty);
}

fn cut() -> impl Strategy<Value = (usize, ElementSet, i64, i64, bool)> {
    (3usize..=4)
        .prop_flat_map(|n| (Just(n), 1..(1u64 << n) - 1, 1i64..=2 * (n * (n + 1) / 2) as i64, 1i64..=2, any::<bool>()))
        .prop_map(|(n, bits, num, den, ge)| (n, ElementSet::from_bits(bits), num, den, ge))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Vertices of a cut permutahedron are feasible, and its permutation vertices are
    /// exactly the permutations on the kept side.
    #[test]
    fn cut_vertices_are_feasible((n, s, num, den, ge) in cut()) {
        let level = num_rational::BigRational::new(num.into(), den.into());
        let mut cons = permutahedron_facets(n);
        let Ok(c) = LinearConstraint::new(s, if ge { Sense::Ge } else { Sense::Le }, level) else { return Ok(()) };
        cons.push(c);
        let e = enumerate_vertices(&cons, n);
        for v in &e.vertices {
            prop_assert!(cons.iter().all(|c| c.satisfied_by(v)));
            let sum: num_rational::BigRational = v.coordinates().iter().cloned().sum();
            prop_assert_eq!(sum, int((n * (n + 1) / 2) as i64));
        }
        let perms: Vec<&RationalPoint> = e.vertices.iter().filter(|v| v.as_permutation().is_some()).collect();
        let expected = Permutation::all(n).iter().map(RationalPoint::from_permutation).filter(|p| cons.iter().all(|c| c.satisfied_by(p))).count();
        prop_assert_eq!(perms.len(), expected);
    }
}
