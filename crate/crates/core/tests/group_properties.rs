//! Cross-operation laws for the group setting: the stabilization/periodicity
//! equivalence, three-way decider agreement at small scale, and transfer
//! properties of certificates. The heavier exhaustive runs live in the
//! acceptance suite of the command-line crate.

use matchcert_core::group::{
    all_subgroups, element_order, is_union_of_cosets, maximal_periodic_part,
    n0_group, product_set, subgroup_generated, FiniteAbelianGroup, GroupElement,
    GroupSubset,
};
use matchcert_core::group_matching::{
    construct_unmatchable_group, exists_unmatchable_group, find_certificate,
    find_matching, find_matching_in_quotient, is_chowla_set,
    naive_unmatchability_witness, quotient_project, verify_certificate,
    QuotientGuarantee,
};
use proptest::prelude::*;

fn groups_under_test() -> Vec<FiniteAbelianGroup> {
    vec![
        FiniteAbelianGroup::cyclic(5).unwrap(),
        FiniteAbelianGroup::cyclic(8).unwrap(),
        FiniteAbelianGroup::cyclic(12).unwrap(),
        FiniteAbelianGroup::new(vec![2, 2]).unwrap(),
        FiniteAbelianGroup::new(vec![2, 6]).unwrap(),
        FiniteAbelianGroup::new(vec![3, 3]).unwrap(),
    ]
}

fn subset_from_mask(g: &FiniteAbelianGroup, mask: u64) -> GroupSubset {
    GroupSubset::new(
        (0..g.order())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| g.element_at(i))
            .collect(),
    )
}

proptest! {
    /// Stabilization is periodicity: `S + R = S` iff `S` is a union of
    /// cosets of the subgroup generated by `R`.
    #[test]
    fn stabilization_equals_periodicity(
        which in 0usize..6,
        s_mask in 1u64..(1 << 12),
        r_mask in 1u64..(1 << 12),
    ) {
        let g = groups_under_test()[which].clone();
        let full = (1u64 << g.order()) - 1;
        let s = subset_from_mask(&g, s_mask & full);
        let r = subset_from_mask(&g, r_mask & full);
        prop_assume!(!s.is_empty() && !r.is_empty());

        let stabilized = product_set(&g, &s, &r).unwrap() == s;
        let h = subgroup_generated(&g, &r).unwrap();
        let periodic = is_union_of_cosets(&g, &s, &h).is_some();
        prop_assert_eq!(stabilized, periodic);
    }

    /// The maximal periodic part is periodic (or empty), sits inside `A`,
    /// and absorbs every coset of `H` contained in `A`.
    #[test]
    fn maximal_periodic_part_is_maximal(
        which in 0usize..6,
        a_mask in 1u64..(1 << 12),
        gen_index in 0u64..12,
    ) {
        let g = groups_under_test()[which].clone();
        let full = (1u64 << g.order()) - 1;
        let a = subset_from_mask(&g, a_mask & full);
        prop_assume!(!a.is_empty());
        let x = g.element_at(gen_index % g.order());
        let h = subgroup_generated(&g, &GroupSubset::singleton(x)).unwrap();

        let part = maximal_periodic_part(&g, &a, &h);
        prop_assert!(part.is_subset_of(&a));
        if !part.is_empty() {
            prop_assert!(is_union_of_cosets(&g, &part, &h).is_some());
        }
        for start in a.elements() {
            let coset = GroupSubset::new(
                h.carrier().elements().iter().map(|k| g.add(start, k)).collect(),
            );
            if coset.is_subset_of(&a) {
                prop_assert!(coset.is_subset_of(&part));
            }
        }
    }

    /// Element orders divide the group order and detect the identity.
    #[test]
    fn element_order_divides_group_order(which in 0usize..6, idx in 0u64..12) {
        let g = groups_under_test()[which].clone();
        let x = g.element_at(idx % g.order());
        let order = element_order(&g, &x).unwrap();
        prop_assert_eq!(g.order() % order, 0);
        prop_assert_eq!(order == 1, x == g.identity());
    }
}

/// All three deciders agree on every identity-free pair of sizes 1..=3 in a
/// small group sample.
#[test]
fn three_way_agreement_small_exhaustive() {
    for g in [
        FiniteAbelianGroup::cyclic(6).unwrap(),
        FiniteAbelianGroup::cyclic(7).unwrap(),
        FiniteAbelianGroup::new(vec![2, 4]).unwrap(),
    ] {
        for n in 1..=3usize {
            for (a, b) in matchcert_core::census::group_pairs_exhaustive(&g, n) {
                let matched = find_matching(&g, &a, &b).unwrap();
                let cert = find_certificate(&g, &a, &b).unwrap();
                let naive = naive_unmatchability_witness(&g, &a, &b).unwrap();
                assert_eq!(
                    matched.is_some(),
                    cert.is_none(),
                    "matching vs certificate disagree on {a} {b} in {g}"
                );
                assert_eq!(
                    matched.is_some(),
                    naive.is_none(),
                    "matching vs oracle disagree on {a} {b} in {g}"
                );
                if let Some(w) = matched {
                    assert!(w.verify(&g, &a, &b));
                }
                if let Some(c) = cert {
                    assert!(verify_certificate(&c, &g, &a, &b));
                }
            }
        }
    }
}

/// Identity-free sets match themselves; Chowla sets match everything.
#[test]
fn symmetric_and_chowla_sufficiency_small() {
    let g = FiniteAbelianGroup::cyclic(9).unwrap();
    for a in matchcert_core::census::subsets_of_size(&g, 3, true) {
        assert!(find_matching(&g, &a, &a).unwrap().is_some(), "A = {a}");
    }
    for b in matchcert_core::census::subsets_of_size(&g, 2, false) {
        if !is_chowla_set(&g, &b).unwrap() {
            continue;
        }
        for a in matchcert_core::census::subsets_of_size(&g, 2, false) {
            assert!(find_matching(&g, &a, &b).unwrap().is_some());
        }
    }
}

/// Constructed pairs verify, are refuted by the matcher, and the boundary
/// predicate matches a brute-force census on a tiny group.
#[test]
fn boundary_construction_round_trip() {
    let g = FiniteAbelianGroup::cyclic(9).unwrap();
    for n in 3..9usize {
        let exists = exists_unmatchable_group(&g, n).unwrap();
        let census_hit = matchcert_core::census::group_pairs_exhaustive(&g, n)
            .any(|(a, b)| find_matching(&g, &a, &b).unwrap().is_none());
        assert_eq!(exists, census_hit, "n = {n}");
        if exists {
            let (a, b, cert) = construct_unmatchable_group(&g, n).unwrap();
            assert!(verify_certificate(&cert, &g, &a, &b));
            assert!(find_matching(&g, &a, &b).unwrap().is_none());
        }
    }
}

/// Whenever the transfer hypothesis holds, the projected pair is unmatchable
/// in the quotient (by size or by the matcher).
#[test]
fn quotient_transfer_preserves_unmatchability() {
    let g = FiniteAbelianGroup::cyclic(12).unwrap();
    let (a, b, cert) = construct_unmatchable_group(&g, 5).unwrap();
    for h in all_subgroups(&g).unwrap() {
        let proj = quotient_project(&g, &h, &a, &b, &cert).unwrap();
        match proj.guarantee {
            QuotientGuarantee::NoGuarantee => {}
            QuotientGuarantee::SizeMismatch => {
                assert_ne!(proj.projected_a.len(), proj.projected_b.len());
            }
            QuotientGuarantee::Certificate { .. } => {
                let matched = find_matching_in_quotient(
                    &proj.quotient,
                    &proj.projected_a,
                    &proj.projected_b,
                )
                .unwrap();
                assert!(matched.is_none(), "H = {h}");
            }
        }
    }
}

/// The congruence specialization of the boundary predicate.
#[test]
fn congruence_specialization() {
    for g in groups_under_test() {
        let Some(n0) = n0_group(&g) else { continue };
        for n in (n0 as usize)..(g.order() as usize) {
            if n as u64 % n0 != n0 - 1 {
                assert!(
                    exists_unmatchable_group(&g, n).unwrap(),
                    "expected existence for {g}, n = {n}"
                );
            }
        }
    }
}

/// Element orders also certify the subgroup lattice: n0 equals the smallest
/// nontrivial element order.
#[test]
fn n0_is_the_least_element_order_above_one() {
    for g in groups_under_test() {
        let min_order = g
            .elements()
            .into_iter()
            .map(|x: GroupElement| element_order(&g, &x).unwrap())
            .filter(|&o| o > 1)
            .min();
        let expected = min_order.filter(|&o| o < g.order());
        assert_eq!(n0_group(&g), expected, "{g}");
    }
}
