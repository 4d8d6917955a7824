//! `F_p`-subspaces of an extension field in reduced-row-echelon canonical
//! form, with the lattice operations, Minkowski spans, subfields, stable
//! cores, and full subspace enumeration.

use std::cmp::Ordering;
use std::fmt;

use super::linalg::{in_span, kernel_basis, rref};
use super::{ExtensionField, FieldElement};
use crate::error::{Error, Result};
use crate::group::{gcd as gcd_u64, lcm as lcm_u64};

/// Default cap on the point count `p^dim` of a space whose subspaces are
/// enumerated: dimension 6 over `F_2`, dimension 4 over `F_3`.
pub const DEFAULT_SUBSPACE_ENUMERATION_BOUND: u64 = 81;

/// A subspace in canonical form: basis rows in reduced row echelon form over
/// `F_p`, so structural equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqSubspace {
    field: ExtensionField,
    basis: Vec<FieldElement>,
}

impl ExtensionField {
    /// The span of arbitrary vectors, canonicalized.
    pub fn span(&self, vectors: &[FieldElement]) -> FqSubspace {
        let rows = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
        FqSubspace {
            field: self.clone(),
            basis: rref(rows, self.p())
                .into_iter()
                .map(|coeffs| self.element(coeffs).expect("rref keeps coefficients reduced"))
                .collect(),
        }
    }

    pub fn zero_subspace(&self) -> FqSubspace {
        FqSubspace {
            field: self.clone(),
            basis: Vec::new(),
        }
    }

    /// The whole field as a subspace over `F_p`.
    pub fn full_subspace(&self) -> FqSubspace {
        let basis = (0..self.degree()).map(|j| self.monomial(j)).collect();
        FqSubspace {
            field: self.clone(),
            basis,
        }
    }

    /// The span of `1`.
    pub fn one_subspace(&self) -> FqSubspace {
        self.span(&[self.one()])
    }

    /// The fixed space of `x -> x^(p^d)`: the subfield `F_{p^d}`, of
    /// dimension `d`, for any divisor `d` of `m`.
    pub fn subfield_subspace(&self, d: usize) -> Result<FqSubspace> {
        if d == 0 || self.degree() % d != 0 {
            return Err(Error::InvalidInput(format!(
                "{d} does not divide the extension degree {}",
                self.degree()
            )));
        }
        let m = self.degree();
        // row i of the operator matrix: coefficients of frobenius^d(t^i)
        let mut op = Vec::with_capacity(m);
        for i in 0..m {
            let mut x = self.monomial(i);
            for _ in 0..d {
                x = self.frobenius(&x);
            }
            op.push(x.coeffs().to_vec());
        }
        // fixed rows c satisfy c (M - I) = 0: right kernel of the transpose
        let mut transposed = vec![vec![0u64; m]; m];
        for (i, row) in op.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let subtract = u64::from(i == j);
                transposed[j][i] = (v + self.p() - subtract) % self.p();
            }
        }
        let fixed = kernel_basis(transposed, m, self.p());
        let space = FqSubspace {
            field: self.clone(),
            basis: fixed
                .into_iter()
                .map(|coeffs| self.element(coeffs).expect("kernel rows are reduced"))
                .collect(),
        };
        debug_assert_eq!(space.dim(), d);
        Ok(space)
    }
}

impl FqSubspace {
    pub fn field(&self) -> &ExtensionField {
        &self.field
    }

    /// Canonical basis rows (RREF, pivots ascending).
    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let rows: Vec<Vec<u64>> = self.basis.iter().map(|b| b.coeffs().to_vec()).collect();
        in_span(x.coeffs(), &rows, self.field.p())
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    /// All points of the subspace, in ascending canonical order.
    pub fn elements(&self) -> Vec<FieldElement> {
        let p = self.field.p();
        let count = p.pow(self.dim() as u32);
        let mut out = Vec::with_capacity(count as usize);
        for code in 0..count {
            let mut acc = self.field.zero();
            let mut c = code;
            for b in &self.basis {
                acc = self.field.add(&acc, &self.field.scalar_mul(c % p, b));
                c /= p;
            }
            out.push(acc);
        }
        out.sort();
        out
    }

    fn assert_same_field(&self, other: &Self) {
        assert_eq!(
            self.field, other.field,
            "subspace operands must live in the same field"
        );
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let vectors: Vec<FieldElement> = self
            .basis
            .iter()
            .chain(&other.basis)
            .cloned()
            .collect();
        self.field.span(&vectors)
    }

    /// Intersection by the Zassenhaus double-block reduction.
    pub fn intersect(&self, other: &Self) -> Self {
        self.assert_same_field(other);
        let m = self.field.degree();
        let mut rows = Vec::with_capacity(self.dim() + other.dim());
        for u in &self.basis {
            let mut row = u.coeffs().to_vec();
            row.extend_from_slice(u.coeffs());
            rows.push(row);
        }
        for v in &other.basis {
            let mut row = v.coeffs().to_vec();
            row.extend(std::iter::repeat(0).take(m));
            rows.push(row);
        }
        let reduced = rref(rows, self.field.p());
        let vectors: Vec<FieldElement> = reduced
            .into_iter()
            .filter(|row| row[..m].iter().all(|&x| x == 0))
            .map(|row| {
                self.field
                    .element(row[m..].to_vec())
                    .expect("reduced rows stay in range")
            })
            .collect();
        self.field.span(&vectors)
    }

    /// A canonical complement of `self` inside `w`: extends the basis
    /// greedily by `w`'s canonical basis rows in ascending pivot order.
    pub fn complement_in(&self, w: &Self) -> Result<Self> {
        self.assert_same_field(w);
        if !self.is_subspace_of(w) {
            return Err(Error::InvalidInput(
                "complement requires the first space inside the second".to_string(),
            ));
        }
        let p = self.field.p();
        let mut acc: Vec<Vec<u64>> = self.basis.iter().map(|b| b.coeffs().to_vec()).collect();
        let mut picked = Vec::new();
        for candidate in &w.basis {
            if !in_span(candidate.coeffs(), &acc, p) {
                picked.push(candidate.clone());
                acc.push(candidate.coeffs().to_vec());
                acc = rref(acc, p);
            }
        }
        Ok(self.field.span(&picked))
    }

    /// Multiplies every vector by a nonzero scalar from the field:
    /// `{c x : x in self}`.
    pub fn scale(&self, c: &FieldElement) -> Self {
        assert!(!c.is_zero(), "scaling a subspace by zero collapses it");
        let vectors: Vec<FieldElement> =
            self.basis.iter().map(|b| self.field.mul(c, b)).collect();
        self.field.span(&vectors)
    }

    /// The span of all pairwise products `{s r}`; by bilinearity, products of
    /// basis vectors suffice.
    pub fn minkowski_span(&self, r: &Self) -> Result<Self> {
        self.assert_same_field(r);
        if self.is_zero() || r.is_zero() {
            return Err(Error::InvalidInput(
                "Minkowski span requires nonzero operands".to_string(),
            ));
        }
        let mut products = Vec::with_capacity(self.dim() * r.dim());
        for s in &self.basis {
            for x in &r.basis {
                products.push(self.field.mul(s, x));
            }
        }
        Ok(self.field.span(&products))
    }

    /// The largest `F`-submodule of `self` for a subfield subspace `F`,
    /// computed as the intersection of `f^{-1} self` over the basis of `F`.
    pub fn stable_core(&self, f: &Self) -> Self {
        self.assert_same_field(f);
        assert!(
            f.contains(&self.field.one()),
            "stable core expects a subfield subspace"
        );
        let mut core = self.clone();
        for fb in &f.basis {
            if *fb == self.field.one() {
                continue;
            }
            let inv = self.field.inv(fb).expect("basis rows are nonzero");
            core = core.intersect(&self.scale(&inv));
        }
        core
    }

    /// The least subfield `F_{p^d}` containing this nonzero subspace,
    /// reported by its degree: the lcm of the minimal degrees of a basis.
    pub fn generated_subfield(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidInput(
                "the zero subspace generates no subfield".to_string(),
            ));
        }
        let mut d = 1u64;
        for b in &self.basis {
            d = lcm_u64(d, self.field.minimal_degree(b)? as u64);
        }
        debug_assert_eq!(gcd_u64(d, self.field.degree() as u64), d);
        Ok(d as usize)
    }

    /// All subspaces of `self` (optionally filtered by dimension), in
    /// deterministic order: dimension ascending, then canonical basis order.
    /// The count per dimension is the Gaussian binomial.
    pub fn enumerate_subspaces(&self, dims: Option<&[usize]>) -> Result<Vec<FqSubspace>> {
        self.enumerate_subspaces_with_bound(dims, DEFAULT_SUBSPACE_ENUMERATION_BOUND)
    }

    /// [`Self::enumerate_subspaces`] with a caller-supplied cap on the point
    /// count `p^dim` of this space.
    pub fn enumerate_subspaces_with_bound(
        &self,
        dims: Option<&[usize]>,
        max_points: u64,
    ) -> Result<Vec<FqSubspace>> {
        let p = self.field.p();
        let k = self.dim();
        let points = p
            .checked_pow(k as u32)
            .filter(|&n| n <= max_points)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "subspace enumeration bound exceeded: p^dim = {p}^{k} > {max_points}"
                ))
            })?;
        let _ = points;

        let mut out = Vec::new();
        for r in 0..=k {
            if let Some(filter) = dims {
                if !filter.contains(&r) {
                    continue;
                }
            }
            for pivots in combinations(k, r) {
                // free positions: (row i, col j) with j > pivots[i], j not a pivot
                let free: Vec<(usize, usize)> = (0..r)
                    .flat_map(|i| {
                        let pivots = &pivots;
                        ((pivots[i] + 1)..k)
                            .filter(move |j| !pivots.contains(j))
                            .map(move |j| (i, j))
                    })
                    .collect();
                let assignments = p.pow(free.len() as u32);
                for code in 0..assignments {
                    let mut coords = vec![vec![0u64; k]; r];
                    for (i, &col) in pivots.iter().enumerate() {
                        coords[i][col] = 1;
                    }
                    let mut c = code;
                    for &(i, j) in &free {
                        coords[i][j] = c % p;
                        c /= p;
                    }
                    let vectors: Vec<FieldElement> = coords
                        .iter()
                        .map(|row| {
                            let mut acc = self.field.zero();
                            for (c, b) in row.iter().zip(&self.basis) {
                                acc = self.field.add(&acc, &self.field.scalar_mul(*c, b));
                            }
                            acc
                        })
                        .collect();
                    let sub = self.field.span(&vectors);
                    debug_assert_eq!(sub.dim(), r);
                    out.push(sub);
                }
            }
        }
        out.sort();
        Ok(out)
    }
}

/// Canonical total order on same-field subspaces: dimension first, then basis
/// rows in canonical element order.
impl Ord for FqSubspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.basis
            .len()
            .cmp(&other.basis.len())
            .then_with(|| self.basis.cmp(&other.basis))
    }
}

impl PartialOrd for FqSubspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FqSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.basis.iter().map(|b| b.to_string()).collect();
        write!(f, "<{}>", rows.join(", "))
    }
}

/// `r`-subsets of `0..k` in lexicographic order.
fn combinations(k: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if r > k {
        return out;
    }
    let mut current: Vec<usize> = (0..r).collect();
    loop {
        out.push(current.clone());
        // advance odometer
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] + 1 <= k - (r - i) {
                current[i] += 1;
                for j in i + 1..r {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}
