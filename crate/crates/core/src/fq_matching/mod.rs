//! Matchability deciders for pairs of `F_p`-subspaces of `F_{p^m}`,
//! mirroring the group setting: direct sums replace disjoint unions, the
//! Minkowski span replaces the sumset, and subfields replace subgroups.
//!
//! Three routes, cross-checked in the test suites:
//!
//! * [`definitional_oracle`] — brute force over ordered bases (the
//!   definition; tightly bounded),
//! * [`criterion_verdict`] — exhaustive search for nonzero `S ⊆ A`,
//!   `R ⊆ B ⊕ K` with `⟨SR⟩ = S` and `dim S > dim B - dim(R ∩ B)` (the
//!   criterion),
//! * [`find_linear_certificate`] — divisor-indexed search for a
//!   decomposition through a subfield (the structural route).

mod dense;

use crate::error::{Error, Result};
use crate::fq::{
    ExtensionField, FieldElement, FqSubspace, DEFAULT_SUBSPACE_ENUMERATION_BOUND,
};

/// An unmatchability certificate: direct sums `A = S ⊕ Y`, `B = R ⊕ Z` with
/// `S` nonzero and stable under multiplication by `R`, and `dim Y < dim R`.
/// `d` is the degree of the subfield generated by `R`; `dim S` is always a
/// multiple of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCertificate {
    pub r: FqSubspace,
    pub s: FqSubspace,
    pub y: FqSubspace,
    pub z: FqSubspace,
    /// Degree of the subfield generated by `r`.
    pub d: usize,
}

/// Ordered bases `(a_i)` of `A` and `(b_i)` of `B` with
/// `a_i^{-1} A ∩ B ⊆ ⟨b_j : j ≠ i⟩` for every `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisMatchingWitness {
    pub a_basis: Vec<FieldElement>,
    pub b_basis: Vec<FieldElement>,
}

impl BasisMatchingWitness {
    /// Checks the witness invariants against a concrete pair.
    pub fn verify(&self, l: &ExtensionField, a: &FqSubspace, b: &FqSubspace) -> bool {
        let n = a.dim();
        if self.a_basis.len() != n || self.b_basis.len() != n {
            return false;
        }
        if l.span(&self.a_basis) != *a || l.span(&self.b_basis) != *b {
            return false;
        }
        for (i, ai) in self.a_basis.iter().enumerate() {
            let Ok(inv) = l.inv(ai) else { return false };
            let reachable = a.scale(&inv).intersect(b);
            let others: Vec<FieldElement> = self
                .b_basis
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != i)
                .map(|(_, bj)| bj.clone())
                .collect();
            if !reachable.is_subspace_of(&l.span(&others)) {
                return false;
            }
        }
        true
    }
}

/// Outcome of the linear decision procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearOutcome {
    Matchable,
    Unmatchable(LinearCertificate),
}

/// Verdict plus, when the definitional oracle ran, its per-basis witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearVerdict {
    pub outcome: LinearOutcome,
    pub basis_witnesses: Option<Vec<BasisMatchingWitness>>,
}

fn check_pair(l: &ExtensionField, a: &FqSubspace, b: &FqSubspace) -> Result<()> {
    if a.field() != l || b.field() != l {
        return Err(Error::InvalidInput(
            "subspaces do not belong to the given field".to_string(),
        ));
    }
    if a.dim() == 0 || b.dim() == 0 {
        return Err(Error::InvalidInput(
            "both subspaces of the pair must be nonzero".to_string(),
        ));
    }
    if a.dim() != b.dim() {
        return Err(Error::InvalidInput(format!(
            "dimension mismatch: dim A = {}, dim B = {}",
            a.dim(),
            b.dim()
        )));
    }
    Ok(())
}

fn divisors(m: usize) -> Vec<usize> {
    (1..=m).filter(|d| m % d == 0).collect()
}

fn enumeration_points(p: u64, dim: usize) -> Result<u64> {
    p.checked_pow(dim as u32)
        .filter(|&n| n <= DEFAULT_SUBSPACE_ENUMERATION_BOUND)
        .ok_or_else(|| {
            Error::InvalidInput(format!(
                "subspace enumeration bound exceeded: p^dim = {p}^{dim} > {}",
                DEFAULT_SUBSPACE_ENUMERATION_BOUND
            ))
        })
}

/// Exhaustive criterion: a violating pair of nonzero subspaces `S ⊆ A`,
/// `R ⊆ B ⊕ K` with `⟨SR⟩ = S` and `dim S > dim B - dim(R ∩ B)`, if one
/// exists. Such a pair exists exactly when `(A, B)` is unmatchable.
///
/// `S` is scanned smallest-first and `R` largest-first, so the reported `R`
/// is the full stabilizer of the reported `S` inside `B ⊕ K`.
pub fn criterion_verdict(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> Result<Option<(FqSubspace, FqSubspace)>> {
    check_pair(l, a, b)?;
    if b.contains(&l.one()) {
        return Err(Error::PreconditionViolated(
            "1 must not lie in B".to_string(),
        ));
    }
    let bk = b.sum(&l.one_subspace());
    enumeration_points(l.p(), a.dim())?;
    enumeration_points(l.p(), bk.dim())?;
    match dense::dense_tables(l)? {
        Some(tables) => criterion_scan_dense(l, a, b, &bk, &tables),
        None => criterion_scan_general(a, b, &bk),
    }
}

pub(crate) fn criterion_scan_general(
    a: &FqSubspace,
    b: &FqSubspace,
    bk: &FqSubspace,
) -> Result<Option<(FqSubspace, FqSubspace)>> {
    let s_candidates = a.enumerate_subspaces(None)?;
    let r_candidates = bk.enumerate_subspaces(None)?;
    for s in s_candidates.iter().filter(|s| !s.is_zero()) {
        for r_dim in (1..=bk.dim()).rev() {
            for r in r_candidates.iter().filter(|r| r.dim() == r_dim) {
                if s.minkowski_span(r)? != *s {
                    continue;
                }
                if s.dim() > b.dim() - r.intersect(b).dim() {
                    return Ok(Some((s.clone(), r.clone())));
                }
            }
        }
    }
    Ok(None)
}

pub(crate) fn criterion_scan_dense(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
    bk: &FqSubspace,
    tables: &dense::DenseTables,
) -> Result<Option<(FqSubspace, FqSubspace)>> {
    let a_mask = tables.mask_of(a);
    let b_mask = tables.mask_of(b);
    let bk_mask = tables.mask_of(bk);
    let p = l.p();
    for s_dim in 1..=a.dim() {
        for s in tables.subspaces_of_dim(s_dim) {
            if s.mask & !a_mask != 0 {
                continue;
            }
            for r_dim in (1..=bk.dim()).rev() {
                for r in tables.subspaces_of_dim(r_dim) {
                    if r.mask & !bk_mask != 0 {
                        continue;
                    }
                    let stabilized = s.basis_ranks.iter().all(|&sb| {
                        r.basis_ranks.iter().all(|&rb| {
                            s.mask >> tables.product_rank(sb, rb) & 1 == 1
                        })
                    });
                    if !stabilized {
                        continue;
                    }
                    let overlap = (r.mask & b_mask).count_ones();
                    let r_in_b = tables.dim_of_point_count(p, overlap);
                    if s.dim > b.dim() - r_in_b {
                        return Ok(Some((s.space.clone(), r.space.clone())));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Divisor-indexed certificate search: for each degree `d > 1` dividing `m`,
/// take `F = F_{p^d}`, `R = B ∩ F`, `S =` the `F`-stable core of `A`, and
/// accept as soon as `S` is nonzero with `dim A - dim S < dim R`.
///
/// A certificate is returned exactly when the pair is unmatchable; `1 ∈ B`
/// short-circuits into the trivial decomposition `S = A`, `R = K`.
pub fn find_linear_certificate(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> Result<Option<LinearCertificate>> {
    check_pair(l, a, b)?;
    if b.contains(&l.one()) {
        let r = l.one_subspace();
        let z = r.complement_in(b)?;
        return Ok(Some(LinearCertificate {
            r,
            s: a.clone(),
            y: l.zero_subspace(),
            z,
            d: 1,
        }));
    }
    for d in divisors(l.degree()).into_iter().skip(1) {
        let f = l.subfield_subspace(d)?;
        let r = b.intersect(&f);
        if r.is_zero() {
            continue;
        }
        let s = a.stable_core(&f);
        if s.is_zero() {
            continue;
        }
        if a.dim() - s.dim() < r.dim() {
            let y = s.complement_in(a)?;
            let z = r.complement_in(b)?;
            debug_assert_eq!(r.generated_subfield()?, d);
            return Ok(Some(LinearCertificate { r, s, y, z, d }));
        }
    }
    Ok(None)
}

/// Checks every certificate invariant against the pair. A `true` answer
/// means the pair is unmatchable.
pub fn verify_linear_certificate(
    cert: &LinearCertificate,
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> bool {
    for space in [&cert.r, &cert.s, &cert.y, &cert.z, a, b] {
        if space.field() != l {
            return false;
        }
    }
    if a.dim() == 0 || a.dim() != b.dim() {
        return false;
    }
    if cert.r.is_zero() || cert.s.is_zero() {
        return false;
    }
    // direct sums recomposing both sides
    if !cert.s.intersect(&cert.y).is_zero() || cert.s.sum(&cert.y) != *a {
        return false;
    }
    if !cert.r.intersect(&cert.z).is_zero() || cert.r.sum(&cert.z) != *b {
        return false;
    }
    // stability of s under multiplication by r, on basis products
    for x in cert.r.basis() {
        for v in cert.s.basis() {
            if !cert.s.contains(&l.mul(x, v)) {
                return false;
            }
        }
    }
    if cert.y.dim() >= cert.r.dim() {
        return false;
    }
    match cert.r.generated_subfield() {
        Ok(d) if d == cert.d && l.degree() % d == 0 && cert.s.dim() % d == 0 => {}
        _ => return false,
    }
    true
}

/// Brute force over ordered bases, straight from the definition: `A` is
/// matched to `B` when every ordered basis of `A` matches some ordered basis
/// of `B`. Returns one witness per `A`-basis on success, `None` on failure.
///
/// Bounded to `p = 2`, `n <= 3`, `m <= 6` (at most 168 ordered bases per
/// side).
pub fn definitional_oracle(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> Result<Option<Vec<BasisMatchingWitness>>> {
    check_pair(l, a, b)?;
    if l.p() != 2 || a.dim() > 3 || l.degree() > 6 {
        return Err(Error::InvalidInput(
            "the definitional oracle is bounded to p = 2, n <= 3, m <= 6".to_string(),
        ));
    }
    let n = a.dim();
    let a_points: Vec<FieldElement> =
        a.elements().into_iter().filter(|x| !x.is_zero()).collect();
    let b_points: Vec<FieldElement> =
        b.elements().into_iter().filter(|x| !x.is_zero()).collect();

    // reachable sets a^{-1} A ∩ B, one per nonzero a
    let reachable: Vec<FqSubspace> = a_points
        .iter()
        .map(|x| {
            let inv = l.inv(x).expect("nonzero by construction");
            a.scale(&inv).intersect(b)
        })
        .collect();

    let a_bases = ordered_bases(l, &a_points, n);
    let b_bases = ordered_bases(l, &b_points, n);

    let mut witnesses = Vec::with_capacity(a_bases.len());
    for a_basis in &a_bases {
        let mut matched = None;
        'b_search: for b_basis in &b_bases {
            for (i, &ai) in a_basis.iter().enumerate() {
                let others: Vec<FieldElement> = b_basis
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, &bj)| b_points[bj].clone())
                    .collect();
                let span = l.span(&others);
                if !reachable[ai].is_subspace_of(&span) {
                    continue 'b_search;
                }
            }
            matched = Some(b_basis);
            break;
        }
        match matched {
            Some(b_basis) => witnesses.push(BasisMatchingWitness {
                a_basis: a_basis.iter().map(|&i| a_points[i].clone()).collect(),
                b_basis: b_basis.iter().map(|&i| b_points[i].clone()).collect(),
            }),
            None => return Ok(None),
        }
    }
    Ok(Some(witnesses))
}

/// Index tuples of ordered bases (length-`n` independent tuples of nonzero
/// points), in lexicographic index order.
fn ordered_bases(l: &ExtensionField, points: &[FieldElement], n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = Vec::with_capacity(n);
    fn recurse(
        l: &ExtensionField,
        points: &[FieldElement],
        n: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for i in 0..points.len() {
            if current.contains(&i) {
                continue;
            }
            current.push(i);
            let chosen: Vec<FieldElement> =
                current.iter().map(|&j| points[j].clone()).collect();
            if l.span(&chosen).dim() == current.len() {
                recurse(l, points, n, current, out);
            }
            current.pop();
        }
    }
    recurse(l, points, n, &mut current, &mut out);
    out
}

/// Every nonzero element of `b` generates an extension of degree at least
/// `dim B + 1`. Implies `1 ∉ B`.
pub fn is_chowla_subspace(l: &ExtensionField, b: &FqSubspace) -> Result<bool> {
    if b.field() != l {
        return Err(Error::InvalidInput(
            "subspace does not belong to the given field".to_string(),
        ));
    }
    if b.is_zero() {
        return Err(Error::InvalidInput(
            "the Chowla condition is defined for nonzero subspaces".to_string(),
        ));
    }
    enumeration_points(l.p(), b.dim())?;
    let threshold = b.dim() + 1;
    for x in b.elements() {
        if x.is_zero() {
            continue;
        }
        if l.minimal_degree(&x)? < threshold {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Least degree `d > 1` of an intermediate extension `F_p ⊊ F ⊆ L`; this is
/// the least prime factor of `m` (`m` itself when `m` is prime).
pub fn n0_linear(l: &ExtensionField) -> Result<usize> {
    if l.degree() == 1 {
        return Err(Error::InvalidInput(
            "the extension is trivial: no intermediate field exists".to_string(),
        ));
    }
    Ok(divisors(l.degree())
        .into_iter()
        .find(|&d| d > 1)
        .expect("m > 1 has a divisor above 1"))
}

fn boundary_preconditions_linear(l: &ExtensionField, n: usize) -> Result<usize> {
    let m = l.degree();
    let n0 = n0_linear(l)?;
    if n0 == m {
        return Err(Error::InvalidInput(format!(
            "the extension degree {m} is prime; composite degree required"
        )));
    }
    if n < n0 || n >= m {
        return Err(Error::InvalidInput(format!(
            "n = {n} outside the range n0 = {n0} <= n < m = {m}"
        )));
    }
    Ok(n0)
}

/// True exactly when some divisor `d` of `m` has `1 < d <= n` and `d` not
/// dividing `n + 1`; equivalently, when an unmatchable pair of dimension `n`
/// with `1` outside `B` exists.
pub fn exists_unmatchable_linear(l: &ExtensionField, n: usize) -> Result<bool> {
    boundary_preconditions_linear(l, n)?;
    Ok(divisors(l.degree())
        .into_iter()
        .any(|d| d > 1 && d <= n && (n + 1) % d != 0))
}

/// Deterministic construction of an unmatchable pair of dimension `n` with
/// its certificate: least suitable divisor `d`, `R` a canonical complement
/// of `⟨1⟩` in `F_{p^d}`, the `a_i` greedily chosen in canonical element
/// order outside the growing `F`-span, and `Y`, `Z` extended greedily by
/// monomials.
pub fn construct_unmatchable_linear(
    l: &ExtensionField,
    n: usize,
) -> Result<(FqSubspace, FqSubspace, LinearCertificate)> {
    boundary_preconditions_linear(l, n)?;
    let d = divisors(l.degree())
        .into_iter()
        .find(|&d| d > 1 && d <= n && (n + 1) % d != 0)
        .ok_or_else(|| {
            Error::NoSuitableField(format!(
                "no divisor d of {} with d <= {n} and d not dividing {}",
                l.degree(),
                n + 1
            ))
        })?;
    let f = l.subfield_subspace(d)?;
    let r = l.one_subspace().complement_in(&f)?;
    let q = n / d;
    let rem = n % d;
    // d does not divide n + 1, so rem <= d - 2 and q >= 1
    debug_assert!(q >= 1 && rem <= d - 2);

    // a_i F-independent: seed the accumulator with F itself, so candidates
    // inside F (in particular 1) are never taken
    let mut accumulated = f.clone();
    let mut s = l.zero_subspace();
    let mut picks = 0;
    for rank in 0..l.order() {
        if picks == q {
            break;
        }
        let x = l.element_at(rank);
        if accumulated.contains(&x) {
            continue;
        }
        let translate = f.scale(&x);
        s = s.sum(&translate);
        accumulated = accumulated.sum(&translate);
        picks += 1;
    }
    debug_assert_eq!(picks, q);

    let y = greedy_monomial_extension(l, &s, rem);
    let a = s.sum(&y);
    let z = greedy_monomial_extension(l, &f, n - d + 1);
    let b = r.sum(&z);
    let cert = LinearCertificate { r, s, y, z, d };
    debug_assert!(verify_linear_certificate(&cert, l, &a, &b));
    Ok((a, b, cert))
}

/// Span of the first `count` monomials `t^j` independent of `base`.
fn greedy_monomial_extension(
    l: &ExtensionField,
    base: &FqSubspace,
    count: usize,
) -> FqSubspace {
    let mut acc = base.clone();
    let mut picked = Vec::with_capacity(count);
    for j in 0..l.degree() {
        if picked.len() == count {
            break;
        }
        let e = l.monomial(j);
        if !acc.contains(&e) {
            acc = acc.sum(&l.span(&[e.clone()]));
            picked.push(e);
        }
    }
    debug_assert_eq!(picked.len(), count);
    l.span(&picked)
}

/// Sufficient matchability test: `dim(K(R) ∩ A) >= dim R` for every nonzero
/// `R ⊆ B`. Checked per divisor `d` of `m`: compare `dim(F_{p^d} ∩ A)` with
/// `dim(B ∩ F_{p^d})`, the largest `R` generating inside that subfield.
///
/// `true` implies the pair is matchable; `false` is inconclusive.
pub fn generalized_symmetric_sufficient_linear(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> Result<bool> {
    check_pair(l, a, b)?;
    if a.contains(&l.one()) {
        return Err(Error::PreconditionViolated(
            "1 must not lie in A".to_string(),
        ));
    }
    for d in divisors(l.degree()) {
        let f = l.subfield_subspace(d)?;
        let bf = b.intersect(&f);
        if bf.is_zero() {
            continue;
        }
        if f.intersect(a).dim() < bf.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the structural certificate search and wraps the result as a verdict.
pub fn decide_linear(
    l: &ExtensionField,
    a: &FqSubspace,
    b: &FqSubspace,
) -> Result<LinearVerdict> {
    let outcome = match find_linear_certificate(l, a, b)? {
        Some(cert) => LinearOutcome::Unmatchable(cert),
        None => LinearOutcome::Matchable,
    };
    Ok(LinearVerdict {
        outcome,
        basis_witnesses: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f16() -> ExtensionField {
        ExtensionField::with_default_modulus(2, 4).unwrap()
    }

    fn el(l: &ExtensionField, coeffs: &[u64]) -> FieldElement {
        l.element(coeffs.to_vec()).unwrap()
    }

    /// The reference pair in F_16: A = t F_4, B = <t, t^2>.
    fn f16_pair() -> (ExtensionField, FqSubspace, FqSubspace) {
        let l = f16();
        let a = l.span(&[l.gen_t(), el(&l, &[0, 0, 1, 1])]);
        let b = l.span(&[el(&l, &[0, 1, 1, 0]), l.gen_t()]);
        (l, a, b)
    }

    #[test]
    fn criterion_on_the_f16_pair_finds_s_equal_a() {
        let (l, a, b) = f16_pair();
        let (s, r) = criterion_verdict(&l, &a, &b).unwrap().unwrap();
        assert_eq!(s, a);
        assert_eq!(r, l.subfield_subspace(2).unwrap());
    }

    #[test]
    fn criterion_absent_on_a_matchable_line() {
        let l = ExtensionField::with_default_modulus(2, 2).unwrap();
        let a = l.span(&[l.gen_t()]);
        assert!(criterion_verdict(&l, &a, &a).unwrap().is_none());
    }

    #[test]
    fn criterion_rejects_one_in_b() {
        let l = f16();
        let a = l.span(&[l.gen_t()]);
        let b = l.one_subspace();
        assert!(matches!(
            criterion_verdict(&l, &a, &b),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn dense_and_general_scans_agree() {
        let l = ExtensionField::with_default_modulus(2, 3).unwrap();
        let tables = dense::dense_tables(&l).unwrap().unwrap();
        let all_2dim = l.full_subspace().enumerate_subspaces(Some(&[2])).unwrap();
        for a in &all_2dim {
            for b in &all_2dim {
                if b.contains(&l.one()) {
                    continue;
                }
                let bk = b.sum(&l.one_subspace());
                let dense_hit = criterion_scan_dense(&l, a, b, &bk, &tables).unwrap();
                let general_hit = criterion_scan_general(a, b, &bk).unwrap();
                assert_eq!(dense_hit, general_hit, "A = {a}, B = {b}");
            }
        }
    }

    #[test]
    fn certificate_on_the_f16_pair() {
        let (l, a, b) = f16_pair();
        let cert = find_linear_certificate(&l, &a, &b).unwrap().unwrap();
        assert_eq!(cert.r, l.span(&[el(&l, &[0, 1, 1, 0])]));
        assert_eq!(cert.s, a);
        assert!(cert.y.is_zero());
        assert_eq!(cert.z, l.span(&[l.gen_t()]));
        assert_eq!(cert.d, 2);
        assert!(verify_linear_certificate(&cert, &l, &a, &b));
    }

    #[test]
    fn trivial_certificate_when_one_in_b() {
        let l = f16();
        let a = l.span(&[l.gen_t(), l.monomial(2)]);
        let b = l.span(&[l.one(), l.monomial(3)]);
        let cert = find_linear_certificate(&l, &a, &b).unwrap().unwrap();
        assert_eq!(cert.r, l.one_subspace());
        assert_eq!(cert.s, a);
        assert!(cert.y.is_zero());
        assert_eq!(cert.d, 1);
        assert!(verify_linear_certificate(&cert, &l, &a, &b));
    }

    #[test]
    fn certificate_absent_on_a_matchable_line() {
        let l = ExtensionField::with_default_modulus(2, 2).unwrap();
        let a = l.span(&[l.gen_t()]);
        assert!(find_linear_certificate(&l, &a, &a).unwrap().is_none());
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let (l, a, b) = f16_pair();
        let cert = find_linear_certificate(&l, &a, &b).unwrap().unwrap();

        // recomposition failure: z replaced by a vector outside b
        let mut broken = cert.clone();
        broken.z = l.span(&[l.monomial(3)]);
        assert!(!verify_linear_certificate(&broken, &l, &a, &b));

        // gap violated: y grown to the dimension of r
        let mut grown = cert.clone();
        grown.s = l.span(&[l.gen_t()]);
        grown.y = grown.s.complement_in(&a).unwrap();
        assert!(!verify_linear_certificate(&grown, &l, &a, &b));

        // wrong subfield degree
        let mut relabeled = cert;
        relabeled.d = 1;
        assert!(!verify_linear_certificate(&relabeled, &l, &a, &b));
    }

    #[test]
    fn oracle_on_the_f4_line() {
        let l = ExtensionField::with_default_modulus(2, 2).unwrap();
        let a = l.span(&[l.gen_t()]);
        let witnesses = definitional_oracle(&l, &a, &a).unwrap().unwrap();
        assert_eq!(witnesses.len(), 1);
        assert!(witnesses[0].verify(&l, &a, &a));
    }

    #[test]
    fn oracle_rejects_pairs_with_one_in_b() {
        let l = f16();
        let a = l.span(&[l.gen_t()]);
        let b = l.one_subspace();
        assert!(definitional_oracle(&l, &a, &b).unwrap().is_none());
    }

    #[test]
    fn oracle_refutes_the_f16_pair() {
        let (l, a, b) = f16_pair();
        assert!(definitional_oracle(&l, &a, &b).unwrap().is_none());
    }

    #[test]
    fn oracle_bounds() {
        let l27 = ExtensionField::new(3, 3, vec![1, 2, 0, 1]).unwrap();
        let a = l27.span(&[l27.gen_t()]);
        assert!(definitional_oracle(&l27, &a, &a).is_err());
    }

    #[test]
    fn chowla_subspace_examples() {
        let l = f16();
        let b = l.span(&[l.gen_t(), l.monomial(3)]);
        assert!(is_chowla_subspace(&l, &b).unwrap());

        let with_one = l.span(&[l.one(), l.monomial(3)]);
        assert!(!is_chowla_subspace(&l, &with_one).unwrap());

        // every 3-dimensional subspace of F_16 meets F_4, so none is Chowla
        for b3 in l.full_subspace().enumerate_subspaces(Some(&[3])).unwrap() {
            assert!(!is_chowla_subspace(&l, &b3).unwrap());
        }

        assert!(is_chowla_subspace(&l, &l.zero_subspace()).is_err());
    }

    #[test]
    fn n0_linear_examples() {
        assert_eq!(n0_linear(&f16()).unwrap(), 2);
        let l8 = ExtensionField::with_default_modulus(2, 3).unwrap();
        assert_eq!(n0_linear(&l8).unwrap(), 3);
        // degree 12: first irreducible modulus found by scanning ranks
        let l12 = (0u64..)
            .find_map(|code| {
                let mut coeffs: Vec<u64> =
                    (0..12).map(|i| code >> i & 1).collect();
                coeffs.push(1);
                ExtensionField::new(2, 12, coeffs).ok()
            })
            .unwrap();
        assert_eq!(n0_linear(&l12).unwrap(), 2);
        let l2 = ExtensionField::new(2, 1, vec![0, 1]).unwrap();
        assert!(n0_linear(&l2).is_err());
    }

    #[test]
    fn boundary_existence_examples() {
        let l = f16();
        assert!(exists_unmatchable_linear(&l, 2).unwrap());
        assert!(!exists_unmatchable_linear(&l, 3).unwrap());
        let l64 = ExtensionField::with_default_modulus(2, 6).unwrap();
        assert!(exists_unmatchable_linear(&l64, 3).unwrap());
        assert!(!exists_unmatchable_linear(&l64, 5).unwrap());

        let l8 = ExtensionField::with_default_modulus(2, 3).unwrap();
        assert!(exists_unmatchable_linear(&l8, 2).is_err());
        assert!(exists_unmatchable_linear(&l, 1).is_err());
        assert!(exists_unmatchable_linear(&l, 4).is_err());
    }

    #[test]
    fn construction_in_f16_reproduces_the_reference_pair() {
        let (l, expected_a, expected_b) = f16_pair();
        let (a, b, cert) = construct_unmatchable_linear(&l, 2).unwrap();
        assert_eq!(a, expected_a);
        assert_eq!(b, expected_b);
        assert_eq!(cert.d, 2);
        assert!(verify_linear_certificate(&cert, &l, &a, &b));
        assert!(criterion_verdict(&l, &a, &b).unwrap().is_some());
        assert!(definitional_oracle(&l, &a, &b).unwrap().is_none());
    }

    #[test]
    fn construction_refuses_f16_dimension_3() {
        assert!(matches!(
            construct_unmatchable_linear(&f16(), 3),
            Err(Error::NoSuitableField(_))
        ));
    }

    #[test]
    fn construction_in_f64_dimension_3() {
        let l = ExtensionField::with_default_modulus(2, 6).unwrap();
        let (a, b, cert) = construct_unmatchable_linear(&l, 3).unwrap();
        assert_eq!(cert.d, 3);
        let f8 = l.subfield_subspace(3).unwrap();
        assert_eq!(cert.s, f8.scale(&l.gen_t()));
        assert!(cert.y.is_zero());
        assert_eq!(cert.r.dim(), 2);
        assert_eq!(cert.z.dim(), 1);
        assert!(verify_linear_certificate(&cert, &l, &a, &b));
        assert!(!b.contains(&l.one()));
    }

    #[test]
    fn generalized_symmetric_linear_examples() {
        let (l, a, b) = f16_pair();
        // self-pair without 1 is always sufficient
        assert!(generalized_symmetric_sufficient_linear(&l, &a, &a).unwrap());
        // the unmatchable pair fails the subfield comparison at d = 2
        assert!(!generalized_symmetric_sufficient_linear(&l, &a, &b).unwrap());

        let with_one = l.span(&[l.one(), l.gen_t()]);
        assert!(matches!(
            generalized_symmetric_sufficient_linear(&l, &with_one, &b),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn decide_linear_wraps_the_certificate() {
        let (l, a, b) = f16_pair();
        let verdict = decide_linear(&l, &a, &b).unwrap();
        assert!(matches!(verdict.outcome, LinearOutcome::Unmatchable(_)));
        let line = l.span(&[l.gen_t()]);
        let verdict = decide_linear(&l, &line, &line).unwrap();
        assert!(matches!(verdict.outcome, LinearOutcome::Matchable));
    }
}
