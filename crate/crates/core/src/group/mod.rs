//! Finite abelian groups in invariant-factor form, their elements, subsets
//! and subgroups, plus the sumset and periodicity primitives the matching
//! deciders are built on.
//!
//! Everything is written additively: the identity is the all-zero residue
//! vector and the sumset `S + R` plays the role the product set plays in
//! multiplicative notation.

mod lattice;
mod quotient;

pub use lattice::{
    all_subgroups, all_subgroups_with_bound, n0_group, subgroup_generated,
    DEFAULT_SUBGROUP_ENUMERATION_BOUND,
};
pub use quotient::{quotient_group, QuotientGroup};

use std::fmt;

use crate::error::{Error, Result};

/// A finite abelian group `Z/n_1 x ... x Z/n_k` with `n_i | n_{i+1}` and every
/// `n_i >= 2`. The empty factor list is the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroup {
    /// Builds a group from its invariant factors, which must be in canonical
    /// divisibility order.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        let mut order: u64 = 1;
        for (i, &n) in invariant_factors.iter().enumerate() {
            if n < 2 {
                return Err(Error::InvalidInput(format!(
                    "invariant factor {n} is below 2"
                )));
            }
            if i > 0 && invariant_factors[i] % invariant_factors[i - 1] != 0 {
                return Err(Error::InvalidInput(format!(
                    "invariant factor {} does not divide {}",
                    invariant_factors[i - 1],
                    invariant_factors[i]
                )));
            }
            order = order.checked_mul(n).ok_or_else(|| {
                Error::InvalidInput("group order overflows u64".to_string())
            })?;
        }
        Ok(Self { invariant_factors })
    }

    /// The cyclic group `Z/n`.
    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(vec![n])
    }

    pub fn trivial() -> Self {
        Self {
            invariant_factors: Vec::new(),
        }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of invariant factors.
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.invariant_factors.len()],
        }
    }

    /// Builds an element after a componentwise range check.
    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement> {
        if residues.len() != self.invariant_factors.len() {
            return Err(Error::InvalidInput(format!(
                "element has {} residues, group has {} factors",
                residues.len(),
                self.invariant_factors.len()
            )));
        }
        for (r, n) in residues.iter().zip(&self.invariant_factors) {
            if r >= n {
                return Err(Error::InvalidInput(format!(
                    "residue {r} out of range for factor {n}"
                )));
            }
        }
        Ok(GroupElement { residues })
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.residues.len() == self.invariant_factors.len()
            && x.residues
                .iter()
                .zip(&self.invariant_factors)
                .all(|(r, n)| r < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.invariant_factors)
            .map(|((x, y), n)| (x + y) % n)
            .collect();
        GroupElement { residues }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let residues = a
            .residues
            .iter()
            .zip(&self.invariant_factors)
            .map(|(x, n)| (n - x) % n)
            .collect();
        GroupElement { residues }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn scalar_mul(&self, k: u64, x: &GroupElement) -> GroupElement {
        let residues = x
            .residues
            .iter()
            .zip(&self.invariant_factors)
            .map(|(r, n)| (r % n).checked_mul(k % n).map(|v| v % n).unwrap_or_else(|| {
                // fall back to u128 when k * r overflows
                ((*r as u128 * k as u128) % *n as u128) as u64
            }))
            .collect();
        GroupElement { residues }
    }

    /// Element at a given mixed-radix index; indices enumerate the group in
    /// lexicographic residue order.
    pub fn element_at(&self, mut index: u64) -> GroupElement {
        let mut residues = vec![0; self.invariant_factors.len()];
        for i in (0..self.invariant_factors.len()).rev() {
            residues[i] = index % self.invariant_factors[i];
            index /= self.invariant_factors[i];
        }
        GroupElement { residues }
    }

    /// All elements in lexicographic order. Intended for desk-scale orders;
    /// callers enforce their own bounds.
    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element_at(i)).collect()
    }

    pub fn check_subset(&self, s: &GroupSubset) -> Result<()> {
        for x in s.elements() {
            if !self.contains(x) {
                return Err(Error::InvalidInput(format!(
                    "element {x} out of range for group {self}"
                )));
            }
        }
        Ok(())
    }

    /// Builds a canonical subset after range-checking every element.
    pub fn subset(&self, elements: Vec<GroupElement>) -> Result<GroupSubset> {
        let s = GroupSubset::new(elements);
        self.check_subset(&s)?;
        Ok(s)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|n| format!("Z{n}"))
            .collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// A group element as a residue vector, componentwise `0 <= r_i < n_i`.
///
/// The derived ordering is lexicographic on the residue vector, which is the
/// canonical element order used throughout.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.residues.len() {
            1 => write!(f, "{}", self.residues[0]),
            _ => {
                let parts: Vec<String> =
                    self.residues.iter().map(|r| r.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    }
}

/// A canonical finite subset: strictly increasing residue vectors, so equality
/// of subsets is structural equality.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupSubset {
    elements: Vec<GroupElement>,
}

impl GroupSubset {
    /// Sorts and deduplicates, establishing the canonical form.
    pub fn new(mut elements: Vec<GroupElement>) -> Self {
        elements.sort();
        elements.dedup();
        Self { elements }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn singleton(x: GroupElement) -> Self {
        Self { elements: vec![x] }
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut elements = self.elements.clone();
        elements.extend(other.elements.iter().cloned());
        Self::new(elements)
    }

    pub fn difference(&self, other: &Self) -> Self {
        let elements = self
            .elements
            .iter()
            .filter(|x| !other.contains(x))
            .cloned()
            .collect();
        Self { elements }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let elements = self
            .elements
            .iter()
            .filter(|x| other.contains(x))
            .cloned()
            .collect();
        Self { elements }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.elements.iter().all(|x| !other.contains(x))
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }
}

impl fmt::Display for GroupSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// A verified subgroup, stored by its full (canonical) carrier set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    carrier: GroupSubset,
}

impl Subgroup {
    /// Checks that `carrier` contains the identity and is closed under
    /// addition and negation.
    pub fn verify(group: &FiniteAbelianGroup, carrier: GroupSubset) -> Result<Self> {
        group.check_subset(&carrier)?;
        if !carrier.contains(&group.identity()) {
            return Err(Error::InvalidInput(
                "subgroup carrier does not contain the identity".to_string(),
            ));
        }
        for a in carrier.elements() {
            if !carrier.contains(&group.neg(a)) {
                return Err(Error::InvalidInput(format!(
                    "subgroup carrier is not closed under negation at {a}"
                )));
            }
            for b in carrier.elements() {
                if !carrier.contains(&group.add(a, b)) {
                    return Err(Error::InvalidInput(format!(
                        "subgroup carrier is not closed under addition at {a} + {b}"
                    )));
                }
            }
        }
        Ok(Self { carrier })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self {
            carrier: GroupSubset::singleton(group.identity()),
        }
    }

    pub(crate) fn from_closed_carrier(carrier: GroupSubset) -> Self {
        Self { carrier }
    }

    pub fn carrier(&self) -> &GroupSubset {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.carrier.len()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        self.carrier.contains(x)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.carrier)
    }
}

/// Least `t > 0` with `t * x = 0`, i.e. `lcm_i(n_i / gcd(n_i, x_i))`.
pub fn element_order(group: &FiniteAbelianGroup, x: &GroupElement) -> Result<u64> {
    if !group.contains(x) {
        return Err(Error::InvalidInput(format!(
            "element {x} out of range for group {group}"
        )));
    }
    let mut order = 1u64;
    for (r, n) in x.residues.iter().zip(group.invariant_factors()) {
        order = lcm(order, n / gcd(*n, *r));
    }
    Ok(order)
}

/// The sumset `{s + r : s in S, r in R}` in canonical form.
pub fn product_set(
    group: &FiniteAbelianGroup,
    s: &GroupSubset,
    r: &GroupSubset,
) -> Result<GroupSubset> {
    group.check_subset(s)?;
    group.check_subset(r)?;
    if s.is_empty() || r.is_empty() {
        return Err(Error::InvalidInput(
            "product set requires both operands nonempty".to_string(),
        ));
    }
    let mut out = Vec::with_capacity(s.len() * r.len());
    for a in s.elements() {
        for b in r.elements() {
            out.push(group.add(a, b));
        }
    }
    Ok(GroupSubset::new(out))
}

/// If `s` is a union of cosets of `h`, returns the least representative of
/// each coset; otherwise `None`. The empty set is not considered periodic.
pub fn is_union_of_cosets(
    group: &FiniteAbelianGroup,
    s: &GroupSubset,
    h: &Subgroup,
) -> Option<GroupSubset> {
    if s.is_empty() {
        return None;
    }
    let mut reps = Vec::new();
    let mut covered = GroupSubset::empty();
    for x in s.elements() {
        if covered.contains(x) {
            continue;
        }
        // x is the least element of its coset not seen yet; the whole coset
        // must lie inside s.
        let coset: Vec<GroupElement> =
            h.carrier().elements().iter().map(|k| group.add(x, k)).collect();
        if coset.iter().any(|y| !s.contains(y)) {
            return None;
        }
        covered = covered.union(&GroupSubset::new(coset));
        reps.push(x.clone());
    }
    Some(GroupSubset::new(reps))
}

/// Union of all `h`-cosets entirely contained in `a` (possibly empty). This
/// is the largest `h`-periodic subset of `a`.
pub fn maximal_periodic_part(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    h: &Subgroup,
) -> GroupSubset {
    let mut kept = Vec::new();
    let mut seen = GroupSubset::empty();
    for x in a.elements() {
        if seen.contains(x) {
            continue;
        }
        let coset: Vec<GroupElement> =
            h.carrier().elements().iter().map(|k| group.add(x, k)).collect();
        let coset = GroupSubset::new(coset);
        if coset.elements().iter().all(|y| a.contains(y)) {
            kept.extend(coset.elements().iter().cloned());
        }
        seen = seen.union(&coset);
    }
    GroupSubset::new(kept)
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}
