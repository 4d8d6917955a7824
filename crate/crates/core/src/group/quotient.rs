//! Quotients represented by least coset representatives.
//!
//! The quotient keeps the parent group's element type: each coset is named by
//! its lexicographically least member and the induced law is
//! `a + b := rep(a + b)`. This gives the projection homomorphism and the
//! quotient law without recomputing invariant factors.

use std::collections::BTreeSet;

use super::{FiniteAbelianGroup, GroupElement, GroupSubset, Subgroup};
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientGroup {
    parent: FiniteAbelianGroup,
    subgroup: Subgroup,
    representatives: GroupSubset,
}

/// The quotient of `group` by a verified subgroup.
pub fn quotient_group(group: &FiniteAbelianGroup, h: &Subgroup) -> Result<QuotientGroup> {
    group.check_subset(h.carrier())?;
    let mut reps = Vec::new();
    let mut covered: BTreeSet<GroupElement> = BTreeSet::new();
    for x in group.elements() {
        if covered.contains(&x) {
            continue;
        }
        for k in h.carrier().elements() {
            covered.insert(group.add(&x, k));
        }
        reps.push(x);
    }
    Ok(QuotientGroup {
        parent: group.clone(),
        subgroup: h.clone(),
        representatives: GroupSubset::new(reps),
    })
}

impl QuotientGroup {
    pub fn parent(&self) -> &FiniteAbelianGroup {
        &self.parent
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    /// Least coset representatives, in canonical order.
    pub fn representatives(&self) -> &GroupSubset {
        &self.representatives
    }

    pub fn order(&self) -> usize {
        self.representatives.len()
    }

    /// Projection: the least element of `x + H`.
    pub fn project(&self, x: &GroupElement) -> GroupElement {
        self.subgroup
            .carrier()
            .elements()
            .iter()
            .map(|k| self.parent.add(x, k))
            .min()
            .expect("subgroup carrier is nonempty")
    }

    pub fn project_set(&self, s: &GroupSubset) -> GroupSubset {
        GroupSubset::new(s.elements().iter().map(|x| self.project(x)).collect())
    }

    /// The induced law on representatives.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.project(&self.parent.add(a, b))
    }

    pub fn identity(&self) -> GroupElement {
        // 0 is the least element of H, so it represents the identity coset
        self.parent.identity()
    }

    pub fn is_representative(&self, x: &GroupElement) -> bool {
        self.representatives.contains(x)
    }

    /// Closure of a set of representatives under the quotient law: the
    /// subgroup of the quotient generated by `x`.
    pub fn generated_in_quotient(&self, x: &GroupSubset) -> GroupSubset {
        let mut carrier: BTreeSet<GroupElement> = BTreeSet::new();
        carrier.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(a) = frontier.pop() {
            for g in x.elements() {
                let b = self.add(&a, &self.project(g));
                if carrier.insert(b.clone()) {
                    frontier.push(b);
                }
            }
        }
        GroupSubset::new(carrier.into_iter().collect())
    }

    /// True when `s` (a set of representatives) is a union of cosets of the
    /// quotient subgroup with carrier `k` (also representatives).
    pub fn is_union_of_quotient_cosets(&self, s: &GroupSubset, k: &GroupSubset) -> bool {
        if s.is_empty() {
            return false;
        }
        s.elements()
            .iter()
            .all(|x| k.elements().iter().all(|h| s.contains(&self.add(x, h))))
    }
}
