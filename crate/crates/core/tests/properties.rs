//! Randomized cross-module invariants.

use proptest::prelude::*;

use positroid::perm::perm_leq;
use positroid::positroid::{member, member_via_juggling, u_perm, v_word};
use positroid::transversal::pattern_mw;
use positroid::tutte::{j_r, rank_in_pw};
use positroid::{Permutation, SetFamily, Subset};

fn perm_and_set(max_n: usize) -> impl Strategy<Value = (Permutation, Subset)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
            0u64..1 << (2 * n),
        )
            .prop_map(|(entries, bits)| {
                (Permutation::new(entries).unwrap(), Subset::from_bits(bits))
            })
    })
}

fn perm_and_n_set(max_n: usize) -> impl Strategy<Value = (Permutation, Subset)> {
    (1..=max_n).prop_flat_map(|n| {
        let sets = SetFamily::all_of_size(2 * n, n).members().to_vec();
        (
            Just((1..=n).collect::<Vec<usize>>()).prop_shuffle(),
            proptest::sample::select(sets),
        )
            .prop_map(|(entries, set)| (Permutation::new(entries).unwrap(), set))
    })
}

proptest! {
    #[test]
    fn rank_agrees_with_matching((w, set) in perm_and_set(6)) {
        prop_assert_eq!(rank_in_pw(&w, set).unwrap(), pattern_mw(&w).rank_of(set));
    }

    #[test]
    fn membership_routes_agree((w, set) in perm_and_n_set(6)) {
        let expected = pattern_mw(&w).rank_of(set) == w.len();
        prop_assert_eq!(member(&w, set).unwrap(), expected);
        prop_assert_eq!(member_via_juggling(&w, set).unwrap(), expected);
    }

    #[test]
    fn u_is_maximal((w, set) in perm_and_n_set(6)) {
        let n = w.len();
        let u = u_perm(set, n).unwrap();
        prop_assert!(u.avoids_123());
        // I ∈ P_w exactly when w ≤ u_I, and I ∈ P_{u_I} always.
        prop_assert_eq!(member(&w, set).unwrap(), perm_leq(&w, &u));
        prop_assert!(member(&u, set).unwrap());
        prop_assert_eq!(v_word(set, n).unwrap().len(), n);
    }

    #[test]
    fn j_r_meets_set_in_r((w, set) in perm_and_set(6), r in 0usize..=6) {
        let n = w.len();
        let r = r.min(set.len()).min(n);
        let j = j_r(set, r, n).unwrap();
        prop_assert_eq!(j.len(), n);
        prop_assert!(j.intersection(set).len() >= r);
    }
}
