//! Matchability deciders for pairs of finite subsets of a finite abelian
//! group, together with the certificate machinery that explains unmatchable
//! pairs.
//!
//! Three independent routes are provided and cross-checked in the test
//! suites:
//!
//! * [`find_matching`] — maximum bipartite matching on the delta relation
//!   (the definition),
//! * [`naive_unmatchability_witness`] — exhaustive search for a stabilized
//!   pair `(S, R)` with `S + R = S` and `|S| > |B \ R|` (the criterion;
//!   exponential, test-oracle only),
//! * [`find_certificate`] — subgroup-indexed search for a nearly periodic
//!   decomposition (the structural route).

mod bipartite;

use crate::error::{Error, Result};
use crate::group::{
    all_subgroups, element_order, is_union_of_cosets, maximal_periodic_part,
    product_set, quotient_group, subgroup_generated, FiniteAbelianGroup,
    GroupElement, GroupSubset, QuotientGroup, Subgroup,
};

/// Default cap on `|A|` for the exhaustive subset-pair search.
pub const DEFAULT_NAIVE_ENUMERATION_BOUND: usize = 7;

/// The bipartite relation `{(a, b) in A x B : a + b not in A}`; a matching of
/// the pair is exactly a perfect matching of this relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaRelation {
    pairs: Vec<(GroupElement, GroupElement)>,
}

impl DeltaRelation {
    pub fn pairs(&self) -> &[(GroupElement, GroupElement)] {
        &self.pairs
    }

    pub fn contains(&self, a: &GroupElement, b: &GroupElement) -> bool {
        self.pairs
            .binary_search_by(|(x, y)| (x, y).cmp(&(a, b)))
            .is_ok()
    }
}

/// Builds the delta relation of a size-matched pair.
pub fn delta_relation(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<DeltaRelation> {
    check_pair(group, a, b)?;
    let mut pairs = Vec::new();
    for x in a.elements() {
        for y in b.elements() {
            if !a.contains(&group.add(x, y)) {
                pairs.push((x.clone(), y.clone()));
            }
        }
    }
    Ok(DeltaRelation { pairs })
}

/// A bijection `A -> B` with `a + f(a)` outside `A`, stored as pairs in
/// ascending order of the first component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingWitness {
    assignment: Vec<(GroupElement, GroupElement)>,
}

impl MatchingWitness {
    pub fn assignment(&self) -> &[(GroupElement, GroupElement)] {
        &self.assignment
    }

    /// Builds a witness from pairs already sorted by first component;
    /// `None` when the order is broken or a first component repeats.
    pub fn from_assignment(
        assignment: Vec<(GroupElement, GroupElement)>,
    ) -> Option<Self> {
        if assignment.windows(2).all(|w| w[0].0 < w[1].0) {
            Some(Self { assignment })
        } else {
            None
        }
    }

    /// Checks the witness invariants against a concrete pair.
    pub fn verify(
        &self,
        group: &FiniteAbelianGroup,
        a: &GroupSubset,
        b: &GroupSubset,
    ) -> bool {
        let firsts = GroupSubset::new(
            self.assignment.iter().map(|(x, _)| x.clone()).collect(),
        );
        let seconds = GroupSubset::new(
            self.assignment.iter().map(|(_, y)| y.clone()).collect(),
        );
        firsts == *a
            && seconds == *b
            && self.assignment.len() == a.len()
            && seconds.len() == self.assignment.len()
            && self
                .assignment
                .iter()
                .all(|(x, y)| !a.contains(&group.add(x, y)))
    }
}

/// A nearly periodic decomposition `A = S ∪ Y`, `B = R ∪ Z` (disjoint) with
/// `S` a union of `⟨R⟩`-cosets and `|Y| < |R|`; its existence certifies that
/// the pair is unmatchable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearlyPeriodicCertificate {
    pub r: GroupSubset,
    pub s: GroupSubset,
    pub y: GroupSubset,
    pub z: GroupSubset,
    /// The subgroup generated by `r`.
    pub h: Subgroup,
}

/// Outcome of the group decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupVerdict {
    Matchable(MatchingWitness),
    Unmatchable(NearlyPeriodicCertificate),
}

fn check_pair(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<()> {
    group.check_subset(a)?;
    group.check_subset(b)?;
    if a.is_empty() || b.is_empty() {
        return Err(Error::InvalidInput(
            "both sets of the pair must be nonempty".to_string(),
        ));
    }
    if a.len() != b.len() {
        return Err(Error::InvalidInput(format!(
            "size mismatch: |A| = {}, |B| = {}",
            a.len(),
            b.len()
        )));
    }
    Ok(())
}

/// A matching of the pair if one exists. Among all matchings the returned
/// witness has the lexicographically least image sequence in canonical `A`
/// order.
pub fn find_matching(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<Option<MatchingWitness>> {
    check_pair(group, a, b)?;
    let adj: Vec<Vec<usize>> = a
        .elements()
        .iter()
        .map(|x| {
            b.elements()
                .iter()
                .enumerate()
                .filter(|(_, y)| !a.contains(&group.add(x, y)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(bipartite::lex_least_perfect_matching(&adj, b.len()).map(|assig| {
        MatchingWitness {
            assignment: a
                .elements()
                .iter()
                .cloned()
                .zip(assig.into_iter().map(|j| b.elements()[j].clone()))
                .collect(),
        }
    }))
}

/// Existence-only variant of [`find_matching`], skipping the witness
/// refinement. Used by censuses.
pub fn is_matchable(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<bool> {
    check_pair(group, a, b)?;
    let adj: Vec<Vec<usize>> = a
        .elements()
        .iter()
        .map(|x| {
            b.elements()
                .iter()
                .enumerate()
                .filter(|(_, y)| !a.contains(&group.add(x, y)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(bipartite::has_perfect_matching(&adj, b.len()))
}

/// [`find_matching`] under the induced law of a quotient; both sets must
/// consist of canonical coset representatives.
pub fn find_matching_in_quotient(
    quotient: &QuotientGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<Option<MatchingWitness>> {
    for x in a.elements().iter().chain(b.elements()) {
        if !quotient.is_representative(x) {
            return Err(Error::InvalidInput(format!(
                "{x} is not a canonical coset representative"
            )));
        }
    }
    if a.is_empty() || b.is_empty() || a.len() != b.len() {
        return Err(Error::InvalidInput(
            "quotient pair must be nonempty and size-matched".to_string(),
        ));
    }
    let adj: Vec<Vec<usize>> = a
        .elements()
        .iter()
        .map(|x| {
            b.elements()
                .iter()
                .enumerate()
                .filter(|(_, y)| !a.contains(&quotient.add(x, y)))
                .map(|(j, _)| j)
                .collect()
        })
        .collect();
    Ok(bipartite::lex_least_perfect_matching(&adj, b.len()).map(|assig| {
        MatchingWitness {
            assignment: a
                .elements()
                .iter()
                .cloned()
                .zip(assig.into_iter().map(|j| b.elements()[j].clone()))
                .collect(),
        }
    }))
}

/// Exhaustive search for `(S ⊆ A, R ⊆ B ∪ {0})` with `S + R = S` and
/// `|S| > |B \ R|`. Such a pair exists if and only if `(A, B)` is
/// unmatchable, so this is the brute-force oracle for the other deciders.
///
/// `S` is scanned smallest-first and `R` largest-first, so the reported `R`
/// is maximal for the reported `S`; the identity is stripped from `R` before
/// returning (the stabilization and the deficiency are unchanged by it).
pub fn naive_unmatchability_witness(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<Option<(GroupSubset, GroupSubset)>> {
    naive_unmatchability_witness_with_bound(group, a, b, DEFAULT_NAIVE_ENUMERATION_BOUND)
}

/// [`naive_unmatchability_witness`] with a caller-supplied size cap.
pub fn naive_unmatchability_witness_with_bound(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
    max_size: usize,
) -> Result<Option<(GroupSubset, GroupSubset)>> {
    check_pair(group, a, b)?;
    let identity = group.identity();
    if b.contains(&identity) {
        return Err(Error::PreconditionViolated(
            "the identity must not lie in B".to_string(),
        ));
    }
    if a.len() > max_size {
        return Err(Error::InvalidInput(format!(
            "|A| = {} exceeds the exhaustive search bound {max_size}",
            a.len()
        )));
    }

    let a_el = a.elements();
    // R ranges over subsets of B ∪ {0}; 0 sorts first, so the pool stays
    // canonical.
    let mut pool: Vec<GroupElement> = Vec::with_capacity(b.len() + 1);
    pool.push(identity.clone());
    pool.extend(b.elements().iter().cloned());

    for s_size in 1..=a_el.len() {
        for s_mask in 1u32..(1 << a_el.len()) {
            if s_mask.count_ones() as usize != s_size {
                continue;
            }
            let s: Vec<GroupElement> = pick(a_el, s_mask);
            for r_size in (1..=pool.len()).rev() {
                for r_mask in 1u32..(1 << pool.len()) {
                    if r_mask.count_ones() as usize != r_size {
                        continue;
                    }
                    let r: Vec<GroupElement> = pick(&pool, r_mask);
                    // |B \ R| = |B| - |R ∩ B|; only the identity can lie
                    // outside B
                    let r_in_b = r_size - usize::from(r_mask & 1 == 1);
                    if s_size <= b.len() - r_in_b {
                        continue;
                    }
                    if stabilizes(group, &s, &r) {
                        let s_set = GroupSubset::new(s);
                        let r_set = GroupSubset::new(
                            r.into_iter().filter(|x| *x != identity).collect(),
                        );
                        return Ok(Some((s_set, r_set)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn pick(pool: &[GroupElement], mask: u32) -> Vec<GroupElement> {
    pool.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, x)| x.clone())
        .collect()
}

/// `S + R = S` for sorted `s`. Since translation by a fixed `r` is injective,
/// `S + r ⊆ S` already forces `S + r = S`, so membership of every pairwise
/// sum is the whole condition.
fn stabilizes(group: &FiniteAbelianGroup, s: &[GroupElement], r: &[GroupElement]) -> bool {
    r.iter().all(|y| {
        s.iter()
            .all(|x| s.binary_search(&group.add(x, y)).is_ok())
    })
}

/// Searches for a nearly periodic decomposition, scanning the subgroup
/// lattice smallest-first: for each subgroup `H`, take `R := B ∩ H`,
/// `K := ⟨R⟩`, `S :=` the maximal `K`-periodic part of `A`, and accept as
/// soon as `S` is nonempty with `|A \ S| < |R|`.
///
/// A certificate is returned exactly when the pair is unmatchable. When the
/// identity lies in `B` the trivial decomposition `S = A`, `R = {0}` is
/// returned directly.
pub fn find_certificate(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<Option<NearlyPeriodicCertificate>> {
    let subgroups = all_subgroups(group)?;
    find_certificate_with_subgroups(group, a, b, &subgroups)
}

/// [`find_certificate`] against a precomputed subgroup lattice; censuses use
/// this to amortize the lattice enumeration.
pub fn find_certificate_with_subgroups(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
    subgroups: &[Subgroup],
) -> Result<Option<NearlyPeriodicCertificate>> {
    check_pair(group, a, b)?;
    let identity = group.identity();
    if b.contains(&identity) {
        let r = GroupSubset::singleton(identity);
        return Ok(Some(NearlyPeriodicCertificate {
            z: b.difference(&r),
            r,
            s: a.clone(),
            y: GroupSubset::empty(),
            h: Subgroup::trivial(group),
        }));
    }
    for h in subgroups {
        let r = b.intersection(h.carrier());
        if r.is_empty() {
            continue;
        }
        let k = subgroup_generated(group, &r)?;
        let s = maximal_periodic_part(group, a, &k);
        if s.is_empty() {
            continue;
        }
        if a.len() - s.len() < r.len() {
            let y = a.difference(&s);
            let z = b.difference(&r);
            return Ok(Some(NearlyPeriodicCertificate { r, s, y, z, h: k }));
        }
    }
    Ok(None)
}

/// Checks every certificate invariant against the pair. A `true` answer
/// means the pair is unmatchable.
pub fn verify_certificate(
    cert: &NearlyPeriodicCertificate,
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> bool {
    for set in [&cert.r, &cert.s, &cert.y, &cert.z, cert.h.carrier(), a, b] {
        if group.check_subset(set).is_err() {
            return false;
        }
    }
    if cert.r.is_empty() || cert.s.is_empty() {
        return false;
    }
    // disjoint recompositions of both sides
    if !cert.s.is_disjoint(&cert.y) || cert.s.union(&cert.y) != *a {
        return false;
    }
    if !cert.r.is_disjoint(&cert.z) || cert.r.union(&cert.z) != *b {
        return false;
    }
    // h must be the subgroup generated by r
    match subgroup_generated(group, &cert.r) {
        Ok(h) if h == cert.h => {}
        _ => return false,
    }
    if is_union_of_cosets(group, &cert.s, &cert.h).is_none() {
        return false;
    }
    cert.y.len() < cert.r.len()
}

/// Every element of `b` has order exceeding `|B|`.
pub fn is_chowla_set(
    group: &FiniteAbelianGroup,
    b: &GroupSubset,
) -> Result<bool> {
    group.check_subset(b)?;
    if b.is_empty() {
        return Err(Error::InvalidInput(
            "Chowla condition is defined for nonempty sets".to_string(),
        ));
    }
    let size = b.len() as u64;
    for x in b.elements() {
        if element_order(group, x)? <= size {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Sufficient matchability test: `|⟨R⟩ ∩ A| >= |R|` for every nonempty
/// `R ⊆ B`. Checked per subgroup: for each `H` meeting `B`, compare
/// `|H ∩ A|` with `|B ∩ H|` (the largest `R` generating inside `H`).
///
/// `true` implies the pair is matchable; `false` is inconclusive.
pub fn generalized_symmetric_sufficient(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<bool> {
    check_pair(group, a, b)?;
    if a.contains(&group.identity()) {
        return Err(Error::PreconditionViolated(
            "the identity must not lie in A".to_string(),
        ));
    }
    for h in all_subgroups(group)? {
        let bh = b.intersection(h.carrier());
        if bh.is_empty() {
            continue;
        }
        if h.carrier().intersection(a).len() < bh.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn boundary_preconditions(
    group: &FiniteAbelianGroup,
    n: usize,
) -> Result<()> {
    let n0 = n0_group_required(group)?;
    if (n as u64) < n0 || n as u64 >= group.order() {
        return Err(Error::InvalidInput(format!(
            "n = {n} outside the range n0 = {n0} <= n < |G| = {}",
            group.order()
        )));
    }
    Ok(())
}

fn n0_group_required(group: &FiniteAbelianGroup) -> Result<u64> {
    crate::group::n0_group(group).ok_or_else(|| {
        Error::InvalidInput(format!(
            "{group} has no finite nontrivial proper subgroup"
        ))
    })
}

/// True exactly when some subgroup `H` has `|H| <= n` and `|H|` not dividing
/// `n + 1`; equivalently, when an unmatchable pair of size `n` with the
/// identity outside `B` exists.
pub fn exists_unmatchable_group(group: &FiniteAbelianGroup, n: usize) -> Result<bool> {
    boundary_preconditions(group, n)?;
    Ok(all_subgroups(group)?
        .iter()
        .any(|h| h.order() > 1 && h.order() <= n && (n + 1) % h.order() != 0))
}

/// Deterministic construction of an unmatchable pair of size `n`, together
/// with its certificate: the least suitable subgroup `H` is used, `S` takes
/// the lexicographically first `q` cosets of `H`, and `Y`, `Z` take the least
/// available elements.
pub fn construct_unmatchable_group(
    group: &FiniteAbelianGroup,
    n: usize,
) -> Result<(GroupSubset, GroupSubset, NearlyPeriodicCertificate)> {
    boundary_preconditions(group, n)?;
    let subgroups = all_subgroups(group)?;
    let h = subgroups
        .iter()
        .find(|h| h.order() > 1 && h.order() <= n && (n + 1) % h.order() != 0)
        .ok_or_else(|| {
            Error::NoSuitableSubgroup(format!(
                "no subgroup H with |H| <= {n} and |H| not dividing {}",
                n + 1
            ))
        })?;
    let m = h.order();
    let q = n / m;
    let rem = n % m;
    // m does not divide n + 1, so the remainder is at most m - 2 and q >= 1
    debug_assert!(q >= 1 && rem <= m - 2);

    let r = h.carrier().difference(&GroupSubset::singleton(group.identity()));

    let mut s_elems: Vec<GroupElement> = Vec::with_capacity(m * q);
    let mut covered = GroupSubset::empty();
    for x in group.elements() {
        if s_elems.len() == m * q {
            break;
        }
        if covered.contains(&x) {
            continue;
        }
        let coset: Vec<GroupElement> = h
            .carrier()
            .elements()
            .iter()
            .map(|k| group.add(&x, k))
            .collect();
        let coset = GroupSubset::new(coset);
        covered = covered.union(&coset);
        s_elems.extend(coset.elements().iter().cloned());
    }
    let s = GroupSubset::new(s_elems);

    let y = GroupSubset::new(
        group
            .elements()
            .into_iter()
            .filter(|x| !s.contains(x))
            .take(rem)
            .collect(),
    );
    let z = GroupSubset::new(
        group
            .elements()
            .into_iter()
            .filter(|x| !h.contains(x))
            .take(n - m + 1)
            .collect(),
    );

    let a = s.union(&y);
    let b = r.union(&z);
    let cert = NearlyPeriodicCertificate {
        h: subgroup_generated(group, &r)?,
        r,
        s,
        y,
        z,
    };
    debug_assert!(verify_certificate(&cert, group, &a, &b));
    Ok((a, b, cert))
}

/// What a quotient projection guarantees about the projected pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuotientGuarantee {
    /// The projected sets have different sizes, so the projected pair is
    /// unmatchable outright.
    SizeMismatch,
    /// A nearly periodic decomposition of the projected pair, expressed in
    /// canonical coset representatives under the quotient law.
    Certificate {
        r: GroupSubset,
        s: GroupSubset,
        y: GroupSubset,
        z: GroupSubset,
    },
    /// The transfer hypothesis failed; nothing is claimed about the
    /// projected pair.
    NoGuarantee,
}

/// Result of pushing an unmatchable pair through a quotient map.
#[derive(Debug, Clone)]
pub struct QuotientProjection {
    pub quotient: QuotientGroup,
    pub projected_a: GroupSubset,
    pub projected_b: GroupSubset,
    pub guarantee: QuotientGuarantee,
}

/// Projects a certified unmatchable pair into `G/H`. When
/// `H ∩ ((S - S) ∪ (R - R)) = {0}` the projected pair is guaranteed
/// unmatchable, by size mismatch or by the projected decomposition; otherwise
/// the projection is returned with no guarantee.
pub fn quotient_project(
    group: &FiniteAbelianGroup,
    h: &Subgroup,
    a: &GroupSubset,
    b: &GroupSubset,
    cert: &NearlyPeriodicCertificate,
) -> Result<QuotientProjection> {
    if !verify_certificate(cert, group, a, b) {
        return Err(Error::InvalidInput(
            "certificate does not verify against the pair".to_string(),
        ));
    }
    group.check_subset(h.carrier())?;

    let neg = |s: &GroupSubset| {
        GroupSubset::new(s.elements().iter().map(|x| group.neg(x)).collect())
    };
    let diff_s = product_set(group, &cert.s, &neg(&cert.s))?;
    let diff_r = product_set(group, &cert.r, &neg(&cert.r))?;
    let differences = diff_s.union(&diff_r);
    let hypothesis = h.carrier().intersection(&differences).len() == 1;

    let quotient = quotient_group(group, h)?;
    let projected_a = quotient.project_set(a);
    let projected_b = quotient.project_set(b);

    let guarantee = if !hypothesis {
        QuotientGuarantee::NoGuarantee
    } else if projected_a.len() != projected_b.len() {
        QuotientGuarantee::SizeMismatch
    } else {
        let s = quotient.project_set(&cert.s);
        let r = quotient.project_set(&cert.r);
        let y = projected_a.difference(&s);
        let z = projected_b.difference(&r);
        let generated = quotient.generated_in_quotient(&r);
        let valid = quotient.is_union_of_quotient_cosets(&s, &generated)
            && y.len() < r.len();
        if !valid {
            return Err(Error::InternalInconsistency(
                "projected decomposition failed to verify in the quotient".to_string(),
            ));
        }
        QuotientGuarantee::Certificate { r, s, y, z }
    };

    Ok(QuotientProjection {
        quotient,
        projected_a,
        projected_b,
        guarantee,
    })
}

/// Runs both the matching search and the certificate search and returns the
/// combined verdict, failing loudly if they ever disagree.
pub fn decide(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
) -> Result<GroupVerdict> {
    decide_with_bound(
        group,
        a,
        b,
        crate::group::DEFAULT_SUBGROUP_ENUMERATION_BOUND,
    )
}

/// [`decide`] with a caller-supplied cap on the group order for the
/// certificate search's lattice enumeration.
pub fn decide_with_bound(
    group: &FiniteAbelianGroup,
    a: &GroupSubset,
    b: &GroupSubset,
    max_subgroup_order: u64,
) -> Result<GroupVerdict> {
    let matching = find_matching(group, a, b)?;
    let subgroups = crate::group::all_subgroups_with_bound(group, max_subgroup_order)?;
    let certificate = find_certificate_with_subgroups(group, a, b, &subgroups)?;
    match (matching, certificate) {
        (Some(w), None) => Ok(GroupVerdict::Matchable(w)),
        (None, Some(c)) => Ok(GroupVerdict::Unmatchable(c)),
        (Some(_), Some(_)) => Err(Error::InternalInconsistency(
            "matching and certificate both found for the same pair".to_string(),
        )),
        (None, None) => Err(Error::InternalInconsistency(
            "neither matching nor certificate found for the pair".to_string(),
        )),
    }
}
