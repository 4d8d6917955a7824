//! Deterministic enumeration and seeded sampling of subset and subspace
//! pairs. Census runs and the differential test suites both build on these,
//! so ordering is canonical everywhere: subsets ascend in lexicographic
//! order, subspaces in (dimension, canonical basis) order, and sampling is a
//! pure function of the RNG stream.

use rand::Rng;

use crate::error::Result;
use crate::fq::{ExtensionField, FieldElement, FqSubspace};
use crate::group::{FiniteAbelianGroup, GroupSubset};

/// Binomial coefficient as u128; saturates only far beyond census scale.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of pairs the exhaustive group census of size `n` visits:
/// every size-`n` subset for `A`, identity-free size-`n` subsets for `B`.
pub fn group_pair_count(group: &FiniteAbelianGroup, n: usize) -> u128 {
    binomial(group.order(), n as u64) * binomial(group.order() - 1, n as u64)
}

/// All size-`n` subsets in ascending lexicographic order, optionally
/// excluding the identity from the roster.
pub fn subsets_of_size(
    group: &FiniteAbelianGroup,
    n: usize,
    exclude_identity: bool,
) -> impl Iterator<Item = GroupSubset> {
    let roster: Vec<_> = if exclude_identity {
        (1..group.order()).map(|i| group.element_at(i)).collect()
    } else {
        group.elements()
    };
    CombinationIndices::new(roster.len(), n).map(move |indices| {
        GroupSubset::new(indices.iter().map(|&i| roster[i].clone()).collect())
    })
}

/// All ordered pairs `(A, B)` with `|A| = |B| = n` and the identity outside
/// `B`, in canonical `(A, B)` order.
pub fn group_pairs_exhaustive(
    group: &FiniteAbelianGroup,
    n: usize,
) -> impl Iterator<Item = (GroupSubset, GroupSubset)> {
    let g = group.clone();
    let b_list: Vec<GroupSubset> = subsets_of_size(group, n, true).collect();
    subsets_of_size(&g, n, false).flat_map(move |a| {
        b_list
            .clone()
            .into_iter()
            .map(move |b| (a.clone(), b))
    })
}

/// A uniformly random size-`n` subset, drawn from the RNG stream alone.
pub fn sample_group_subset<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    n: usize,
    exclude_identity: bool,
) -> GroupSubset {
    let lo = u64::from(exclude_identity);
    assert!(
        (n as u64) <= group.order() - lo,
        "subset size exceeds the roster"
    );
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < n {
        picked.insert(rng.gen_range(lo..group.order()));
    }
    GroupSubset::new(picked.into_iter().map(|i| group.element_at(i)).collect())
}

/// A random pair for the group census: any `A`, identity-free `B`.
pub fn sample_group_pair<R: Rng>(
    rng: &mut R,
    group: &FiniteAbelianGroup,
    n: usize,
) -> (GroupSubset, GroupSubset) {
    let a = sample_group_subset(rng, group, n, false);
    let b = sample_group_subset(rng, group, n, true);
    (a, b)
}

/// All `n`-dimensional subspaces of the field, canonical order.
pub fn subspaces_of_dim(l: &ExtensionField, n: usize) -> Result<Vec<FqSubspace>> {
    l.full_subspace().enumerate_subspaces(Some(&[n]))
}

/// All ordered pairs `(A, B)` of `n`-dimensional subspaces with `1` outside
/// `B`, in canonical order.
pub fn field_pairs_exhaustive(
    l: &ExtensionField,
    n: usize,
) -> Result<Vec<(FqSubspace, FqSubspace)>> {
    let all = subspaces_of_dim(l, n)?;
    let one = l.one();
    let b_list: Vec<&FqSubspace> = all.iter().filter(|b| !b.contains(&one)).collect();
    let mut out = Vec::with_capacity(all.len() * b_list.len());
    for a in &all {
        for &b in &b_list {
            out.push((a.clone(), b.clone()));
        }
    }
    Ok(out)
}

/// A uniformly random `n`-dimensional subspace, by rejection on random
/// spanning sets.
pub fn sample_subspace<R: Rng>(
    rng: &mut R,
    l: &ExtensionField,
    n: usize,
) -> FqSubspace {
    assert!(n <= l.degree(), "dimension exceeds the field degree");
    loop {
        let vectors: Vec<FieldElement> = (0..n)
            .map(|_| l.element_at(rng.gen_range(0..l.order())))
            .collect();
        let span = l.span(&vectors);
        if span.dim() == n {
            return span;
        }
    }
}

/// A random pair for the field census: any `A`, `B` avoiding `1`.
pub fn sample_field_pair<R: Rng>(
    rng: &mut R,
    l: &ExtensionField,
    n: usize,
) -> (FqSubspace, FqSubspace) {
    let a = sample_subspace(rng, l, n);
    let one = l.one();
    loop {
        let b = sample_subspace(rng, l, n);
        if !b.contains(&one) {
            return (a, b);
        }
    }
}

/// Lexicographic `k`-combinations of `0..n`.
struct CombinationIndices {
    n: usize,
    k: usize,
    current: Option<Vec<usize>>,
}

impl CombinationIndices {
    fn new(n: usize, k: usize) -> Self {
        let current = (k <= n).then(|| (0..k).collect());
        Self { n, k, current }
    }
}

impl Iterator for CombinationIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.current.take()?;
        let out = current.clone();
        let mut next = current;
        let mut i = self.k;
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if next[i] + 1 <= self.n - (self.k - i) {
                next[i] += 1;
                for j in i + 1..self.k {
                    next[j] = next[j - 1] + 1;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}
