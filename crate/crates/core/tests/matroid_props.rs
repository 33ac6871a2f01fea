use proptest::prelude::*;

use permsplit::lpm::{gale_leq, is_lpm, LatticePathMatroid};
use permsplit::matroid::{is_quotient, QuotientCriterion, SetMatroid};
use permsplit::rational::RationalMatrix;
use permsplit::subset::ElementSet;

fn matrix(max_n: usize) -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 1..=n))
        .prop_flat_map(|(n, r)| (Just(n), prop::collection::vec(prop::collection::vec(-2i64..=2, n), r)))
}

fn gale_pair(max_n: usize) -> impl Strategy<Value = (usize, ElementSet, ElementSet)> {
    (1..=max_n)
        .prop_flat_map(|n| (Just(n), 0..=n))
        .prop_flat_map(|(n, k)| {
            let set = prop::sample::subsequence((1..=n).collect::<Vec<_>>(), k).prop_map(|v| v.into_iter().collect::<ElementSet>());
            (Just(n), set.clone(), set)
        })
        .prop_filter_map("Gale-comparable", |(n, a, b)| {
            if gale_leq(a, b) {
                Some((n, a, b))
            } else if gale_leq(b, a) {
                Some((n, b, a))
            } else {
                None
            }
        })
}

/// Brute force over all `k`-subsets.
fn gale_between(n: usize, u: ElementSet, l: ElementSet) -> usize {
    ElementSet::k_subsets(n, u.len()).into_iter().filter(|&b| gale_leq(u, b) && gale_leq(b, l)).count()
}

/// Lattice paths between the two boundary paths.
fn path_count(n: usize, u: &[usize], l: &[usize]) -> u64 {
    let k = u.len();
    let mut f = vec![vec![0u64; k + 1]; n + 1];
    f[0][0] = 1;
    for i in 1..=n {
        for j in 0..=k {
            f[i][j] = f[i - 1][j];
            if j > 0 && u[j - 1] <= i && i <= l[j - 1] {
                f[i][j] += f[i - 1][j - 1];
            }
        }
    }
    f[n][k]
}

fn exchange_holds(m: &SetMatroid) -> bool {
    m.bases().iter().all(|&a| {
        m.bases().iter().all(|&b| a.difference(b).iter().all(|x| b.difference(a).iter().any(|y| m.is_basis(a.without(x).with(y)))))
    })
}

proptest! {
    #[test]
    fn matrix_matroids_are_matroids((n, rows) in matrix(6)) {
        let a = RationalMatrix::from_integers(&rows).unwrap();
        let m = SetMatroid::from_rational_matrix(&a).unwrap();
        prop_assert_eq!(m.rank(), a.rank());
        prop_assert_eq!(m.n(), n);
        prop_assert!(exchange_holds(&m));
        prop_assert!(m.bases().iter().all(|b| a.column_subset_rank(&b.iter().map(|e| e - 1).collect::<Vec<_>>()) == b.len()));
    }

    #[test]
    fn top_rows_give_quotients((_, rows) in matrix(6), k in 0usize..6) {
        let a = RationalMatrix::from_integers(&rows).unwrap();
        let small = SetMatroid::from_rational_matrix(&a.top_rows(k.min(rows.len()))).unwrap();
        let big = SetMatroid::from_rational_matrix(&a).unwrap();
        for c in QuotientCriterion::ALL {
            prop_assert!(is_quotient(&small, &big, c).unwrap());
        }
    }

    #[test]
    fn delete_contract_duality((_, rows) in matrix(6), pick in 0usize..6) {
        let m = SetMatroid::from_rational_matrix(&RationalMatrix::from_integers(&rows).unwrap()).unwrap();
        prop_assume!(m.n() >= 2);
        let e = pick % m.n() + 1;
        prop_assert_eq!(m.delete(e).unwrap().dual(), m.dual().contract(e).unwrap());
        prop_assert_eq!(m.dual().dual(), m);
    }

    #[test]
    fn circuits_and_flats_agree_with_rank((_, rows) in matrix(5)) {
        let m = SetMatroid::from_rational_matrix(&RationalMatrix::from_integers(&rows).unwrap()).unwrap();
        for &c in m.circuits() {
            prop_assert_eq!(m.rank_of(c), c.len() - 1);
            prop_assert!(c.iter().all(|x| m.is_independent(c.without(x))));
        }
        for &f in m.flats() {
            prop_assert!(f.complement(m.n()).iter().all(|x| m.rank_of(f.with(x)) > m.rank_of(f)));
        }
    }

    #[test]
    fn lpm_bases_match_brute_force((n, u, l) in gale_pair(9)) {
        let m = LatticePathMatroid::new(n, u, l).unwrap();
        let bases = m.bases();
        prop_assert_eq!(bases.len(), gale_between(n, u, l));
        prop_assert_eq!(bases.len() as u64, path_count(n, &u.to_vec(), &l.to_vec()));
        prop_assert!(bases.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn lpms_are_recognised((n, u, l) in gale_pair(7)) {
        let m = LatticePathMatroid::new(n, u, l).unwrap();
        let sm = m.to_matroid();
        prop_assert!(exchange_holds(&sm));
        prop_assert_eq!(is_lpm(&sm), Some(m));
    }

    #[test]
    fn good_pairs_give_quotients((n, u, l) in gale_pair(7)) {
        let m = LatticePathMatroid::new(n, u, l).unwrap();
        for p in m.good_pairs() {
            let q = m.elementary_quotient(p.u, p.l).unwrap();
            prop_assert_eq!(q.rank() + 1, m.rank());
            prop_assert!(is_quotient(&q.to_matroid(), &m.to_matroid(), QuotientCriterion::Circuits).unwrap());
        }
    }
}

#[test]
fn non_lpm_is_rejected() {
    // Two parallel classes {1,3} and {2,4} interleave, so no ordering of [4] fits a lattice path.
    let m = SetMatroid::from_base_lists(4, &[vec![1, 2], vec![1, 3], vec![2, 4], vec![3, 4], vec![1, 4], vec![2, 3]]).unwrap();
    assert!(is_lpm(&m).is_some());
    let parallel = SetMatroid::from_base_lists(4, &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]).unwrap();
    assert!(is_lpm(&parallel).is_some());
    let cross = SetMatroid::from_base_lists(4, &[vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]).unwrap();
    assert_eq!(is_lpm(&cross), None);
}
