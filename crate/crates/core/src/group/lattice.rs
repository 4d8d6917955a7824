//! Subgroup generation and whole-lattice enumeration.

use std::collections::BTreeSet;

use super::{FiniteAbelianGroup, GroupElement, GroupSubset, Subgroup};
use crate::error::{Error, Result};

/// Default cap on the group order for full lattice enumeration.
pub const DEFAULT_SUBGROUP_ENUMERATION_BOUND: u64 = 4096;

/// Smallest subgroup containing `x`; the empty set generates the trivial
/// subgroup.
pub fn subgroup_generated(
    group: &FiniteAbelianGroup,
    x: &GroupSubset,
) -> Result<Subgroup> {
    group.check_subset(x)?;
    Ok(Subgroup::from_closed_carrier(closure(group, x.elements())))
}

/// Closure of a generating set under repeated addition. In a finite group
/// this already contains negatives, so it is the generated subgroup.
fn closure(group: &FiniteAbelianGroup, generators: &[GroupElement]) -> GroupSubset {
    let mut carrier: BTreeSet<GroupElement> = BTreeSet::new();
    carrier.insert(group.identity());
    let mut frontier: Vec<GroupElement> = vec![group.identity()];
    while let Some(a) = frontier.pop() {
        for g in generators {
            let b = group.add(&a, g);
            if carrier.insert(b.clone()) {
                frontier.push(b);
            }
        }
    }
    GroupSubset::new(carrier.into_iter().collect())
}

/// Every subgroup of `group`, deterministically ordered by size and then by
/// the lexicographic carrier, under the default order bound.
pub fn all_subgroups(group: &FiniteAbelianGroup) -> Result<Vec<Subgroup>> {
    all_subgroups_with_bound(group, DEFAULT_SUBGROUP_ENUMERATION_BOUND)
}

/// Same as [`all_subgroups`], with a caller-supplied bound on the group
/// order.
///
/// Computed as the closure of all cyclic subgroups under pairwise join;
/// complete because every subgroup of a finite group is a join of finitely
/// many cyclic subgroups.
pub fn all_subgroups_with_bound(
    group: &FiniteAbelianGroup,
    max_order: u64,
) -> Result<Vec<Subgroup>> {
    if group.order() > max_order {
        return Err(Error::InvalidInput(format!(
            "group order {} exceeds the subgroup enumeration bound {}",
            group.order(),
            max_order
        )));
    }
    let mut found: BTreeSet<GroupSubset> = BTreeSet::new();
    for x in group.elements() {
        found.insert(closure(group, &[x]));
    }
    loop {
        let snapshot: Vec<GroupSubset> = found.iter().cloned().collect();
        let mut grew = false;
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                if snapshot[i].is_subset_of(&snapshot[j])
                    || snapshot[j].is_subset_of(&snapshot[i])
                {
                    continue;
                }
                let union = snapshot[i].union(&snapshot[j]);
                let join = closure(group, union.elements());
                if found.insert(join) {
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let mut subgroups: Vec<Subgroup> = found
        .into_iter()
        .map(Subgroup::from_closed_carrier)
        .collect();
    subgroups.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.carrier().cmp(b.carrier()))
    });
    Ok(subgroups)
}

/// Minimum order of a nontrivial proper subgroup, or `None` when none exists
/// (trivial groups and groups of prime order).
///
/// By Cauchy's theorem this is the least prime divisor of the group order;
/// the lattice enumeration cross-checks this in tests.
pub fn n0_group(group: &FiniteAbelianGroup) -> Option<u64> {
    let order = group.order();
    if order == 1 {
        return None;
    }
    let p = least_prime_factor(order);
    if p == order {
        // cyclic of prime order: the only subgroups are trivial and improper
        None
    } else {
        Some(p)
    }
}

fn least_prime_factor(n: u64) -> u64 {
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return d;
        }
        d += 1;
    }
    n
}
