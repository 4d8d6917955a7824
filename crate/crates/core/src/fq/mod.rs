//! Arithmetic in `F_{p^m} = F_p[t]/(f)` for a prime `p` and a monic
//! irreducible modulus `f`, plus subfield computation and the subspace
//! lattice over `F_p`.
//!
//! The base field is always the prime field: elements are coefficient
//! vectors of length `m` in the basis `1, t, ..., t^{m-1}`. The canonical
//! element order is by base-`p` rank `sum c_i p^i`, i.e. highest-degree
//! coefficient most significant.

pub(crate) mod linalg;
mod subspace;

pub use subspace::{FqSubspace, DEFAULT_SUBSPACE_ENUMERATION_BOUND};

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Moduli used when the caller does not pin one. All are re-verified
/// irreducible at construction time.
const DEFAULT_MODULI: &[(u64, usize, &[u64])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[1, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
];

/// The extension `F_{p^m}` over `F_p`, described by a monic irreducible
/// modulus polynomial (ascending coefficients, length `m + 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionField {
    p: u64,
    m: usize,
    modulus: Vec<u64>,
}

impl ExtensionField {
    /// Validates primality of `p`, shape of the modulus, and its
    /// irreducibility (trial division by all monic polynomials of degree at
    /// most `m / 2`; adequate at desk scale).
    pub fn new(p: u64, m: usize, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        if m == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".to_string()));
        }
        if modulus.len() != m + 1 {
            return Err(Error::InvalidInput(format!(
                "modulus has {} coefficients, expected {}",
                modulus.len(),
                m + 1
            )));
        }
        if modulus[m] != 1 {
            return Err(Error::InvalidInput("modulus must be monic".to_string()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidInput(
                "modulus coefficients must be reduced mod p".to_string(),
            ));
        }
        p.checked_pow(m as u32).ok_or_else(|| {
            Error::InvalidInput("field order overflows u64".to_string())
        })?;
        if let Some(divisor) = find_nontrivial_divisor(&modulus, p) {
            return Err(Error::InvalidInput(format!(
                "modulus is reducible: divisible by {}",
                poly_to_string(&divisor)
            )));
        }
        Ok(Self { p, m, modulus })
    }

    /// A field with a built-in modulus for the given parameters.
    pub fn with_default_modulus(p: u64, m: usize) -> Result<Self> {
        let (_, _, coeffs) = DEFAULT_MODULI
            .iter()
            .find(|(dp, dm, _)| *dp == p && *dm == m)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "no built-in modulus for p = {p}, m = {m}; supply one explicitly"
                ))
            })?;
        Self::new(p, m, coeffs.to_vec())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Extension degree `m = [L : F_p]`.
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.m],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        coeffs[0] = 1;
        FieldElement { coeffs }
    }

    /// The residue of `t`, the generator of the polynomial basis.
    pub fn gen_t(&self) -> FieldElement {
        self.monomial(1)
    }

    /// The residue of `t^j`.
    pub fn monomial(&self, j: usize) -> FieldElement {
        if j < self.m {
            let mut coeffs = vec![0; self.m];
            coeffs[j] = 1;
            FieldElement { coeffs }
        } else {
            let mut poly = vec![0; j + 1];
            poly[j] = 1;
            self.from_poly(poly)
        }
    }

    pub fn element(&self, coeffs: Vec<u64>) -> Result<FieldElement> {
        if coeffs.len() != self.m {
            return Err(Error::InvalidInput(format!(
                "element has {} coefficients, field has degree {}",
                coeffs.len(),
                self.m
            )));
        }
        if coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidInput(
                "element coefficients must be reduced mod p".to_string(),
            ));
        }
        Ok(FieldElement { coeffs })
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        x.coeffs.len() == self.m && x.coeffs.iter().all(|&c| c < self.p)
    }

    fn from_poly(&self, poly: Vec<u64>) -> FieldElement {
        let rem = poly_rem(poly, &self.modulus, self.p);
        let mut coeffs = vec![0; self.m];
        coeffs[..rem.len()].copy_from_slice(&rem);
        FieldElement { coeffs }
    }

    pub fn add(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let coeffs = x
            .coeffs
            .iter()
            .zip(&y.coeffs)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, x: &FieldElement) -> FieldElement {
        let coeffs = x.coeffs.iter().map(|a| (self.p - a) % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn scalar_mul(&self, c: u64, x: &FieldElement) -> FieldElement {
        let c = c % self.p;
        let coeffs = x.coeffs.iter().map(|a| a * c % self.p).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, x: &FieldElement, y: &FieldElement) -> FieldElement {
        let prod = poly_mul(&x.coeffs, &y.coeffs, self.p);
        self.from_poly(prod)
    }

    /// Multiplicative inverse; zero is rejected.
    pub fn inv(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Err(Error::InvalidInput("cannot invert zero".to_string()));
        }
        let (g, u, _) = poly_ext_gcd(x.coeffs.clone(), self.modulus.clone(), self.p);
        // the modulus is irreducible, so the gcd is a nonzero constant
        debug_assert_eq!(poly_degree(&g), Some(0));
        let scale = linalg::inv_mod(g[0], self.p);
        let scaled: Vec<u64> = u.iter().map(|&c| c * scale % self.p).collect();
        Ok(self.from_poly(scaled))
    }

    pub fn pow(&self, x: &FieldElement, mut exp: u64) -> FieldElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// The Frobenius map `x -> x^p`.
    pub fn frobenius(&self, x: &FieldElement) -> FieldElement {
        self.pow(x, self.p)
    }

    /// `[F_p(x) : F_p]`: the least divisor `d` of `m` with `x^(p^d) = x`.
    pub fn minimal_degree(&self, x: &FieldElement) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::InvalidInput(
                "element does not belong to this field".to_string(),
            ));
        }
        if x.is_zero() {
            return Err(Error::InvalidInput(
                "the minimal degree of zero is not defined here".to_string(),
            ));
        }
        for d in 1..=self.m {
            if self.m % d != 0 {
                continue;
            }
            let mut y = x.clone();
            for _ in 0..d {
                y = self.frobenius(&y);
            }
            if y == *x {
                return Ok(d);
            }
        }
        unreachable!("every element is fixed by the m-fold Frobenius")
    }

    /// Rank of an element in the canonical order, `sum c_i p^i`.
    pub fn element_rank(&self, x: &FieldElement) -> u64 {
        x.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * self.p + c)
    }

    pub fn element_at(&self, mut rank: u64) -> FieldElement {
        let mut coeffs = vec![0; self.m];
        for c in coeffs.iter_mut() {
            *c = rank % self.p;
            rank /= self.p;
        }
        FieldElement { coeffs }
    }

    /// All field elements in ascending canonical order. Intended for
    /// desk-scale fields; callers enforce their own bounds.
    pub fn elements(&self) -> Vec<FieldElement> {
        (0..self.order()).map(|r| self.element_at(r)).collect()
    }
}

impl fmt::Display for ExtensionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {}", self.p, self.m, poly_to_string(&self.modulus))
    }
}

/// An element of an [`ExtensionField`] as a coefficient vector over `F_p`.
///
/// Ordering is by canonical rank: coefficient vectors compared from the
/// highest degree down.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", poly_to_string(&self.coeffs))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn poly_degree(poly: &[u64]) -> Option<usize> {
    poly.iter().rposition(|&c| c != 0)
}

fn poly_trim(mut poly: Vec<u64>) -> Vec<u64> {
    let len = poly_degree(&poly).map_or(0, |d| d + 1);
    poly.truncate(len);
    poly
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

/// Remainder of `num` modulo `den`.
fn poly_rem(num: Vec<u64>, den: &[u64], p: u64) -> Vec<u64> {
    poly_divrem(num, den, p).1
}

fn poly_divrem(num: Vec<u64>, den: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem = poly_trim(num);
    let den = poly_trim(den.to_vec());
    let d = poly_degree(&den).expect("division by the zero polynomial");
    let lead_inv = linalg::inv_mod(den[d], p);
    let mut quot = vec![0u64; rem.len().saturating_sub(d).max(1)];
    while let Some(rd) = poly_degree(&rem) {
        if rd < d {
            break;
        }
        let factor = rem[rd] * lead_inv % p;
        let shift = rd - d;
        quot[shift] = factor;
        for (i, &c) in den.iter().enumerate() {
            let sub = factor * c % p;
            rem[i + shift] = (rem[i + shift] + p - sub) % p;
        }
        rem = poly_trim(rem);
    }
    (poly_trim(quot), rem)
}

/// Extended Euclid: returns `(g, u, v)` with `u a + v b = g`.
fn poly_ext_gcd(a: Vec<u64>, b: Vec<u64>, p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let mut r0 = poly_trim(a);
    let mut r1 = poly_trim(b);
    let mut u0 = vec![1u64];
    let mut u1 = Vec::new();
    let mut v0 = Vec::new();
    let mut v1 = vec![1u64];
    while !r1.is_empty() {
        let (q, r) = poly_divrem(r0.clone(), &r1, p);
        let next_u = poly_sub(&u0, &poly_mul(&q, &u1, p), p);
        let next_v = poly_sub(&v0, &poly_mul(&q, &v1, p), p);
        r0 = r1;
        r1 = r;
        u0 = u1;
        u1 = next_u;
        v0 = v1;
        v1 = next_v;
    }
    (r0, u0, v0)
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out = vec![0u64; len];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    poly_trim(out)
}

/// Trial division: a monic divisor of degree in `1..=deg/2` if one exists.
fn find_nontrivial_divisor(modulus: &[u64], p: u64) -> Option<Vec<u64>> {
    let deg = poly_degree(modulus).unwrap_or(0);
    for d in 1..=deg / 2 {
        // all monic polynomials of degree d, low coefficients in odometer order
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut candidate = vec![0u64; d + 1];
            let mut c = code;
            for coeff in candidate.iter_mut().take(d) {
                *coeff = c % p;
                c /= p;
            }
            candidate[d] = 1;
            if poly_rem(modulus.to_vec(), &candidate, p).is_empty() {
                return Some(candidate);
            }
        }
    }
    None
}

fn poly_to_string(poly: &[u64]) -> String {
    let terms: Vec<String> = poly
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".to_string(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        })
        .collect();
    if terms.is_empty() {
        "0".to_string()
    } else {
        terms.join("+")
    }
}
