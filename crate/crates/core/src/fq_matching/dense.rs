//! Bitset tables for small fields (`p^m <= 128`): elements are indexed by
//! canonical rank, subspaces carry a characteristic mask over those indices,
//! and multiplication is a table lookup. The exhaustive criterion scan uses
//! these to stay inside its runtime budget on census workloads; results are
//! identical to the vector path and cross-checked in tests.

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::fq::{ExtensionField, FqSubspace};

const MAX_POINTS: u64 = 128;
const CACHE_CAPACITY: usize = 16;

pub(crate) struct DenseTables {
    size: usize,
    /// `mult[a * size + b]` = rank of the product of the elements with ranks
    /// `a` and `b`.
    mult: Vec<u16>,
    /// Every subspace of the full space, sorted by (dimension, canonical
    /// basis order).
    subspaces: Vec<DenseSubspace>,
    /// Half-open index ranges into `subspaces`, one per dimension.
    dim_ranges: Vec<(usize, usize)>,
}

pub(crate) struct DenseSubspace {
    pub mask: u128,
    pub dim: usize,
    /// Ranks of the canonical basis rows.
    pub basis_ranks: Vec<u16>,
    pub space: FqSubspace,
}

impl DenseTables {
    pub fn product_rank(&self, a: u16, b: u16) -> u16 {
        self.mult[a as usize * self.size + b as usize]
    }

    pub fn subspaces_of_dim(&self, dim: usize) -> &[DenseSubspace] {
        let (lo, hi) = self.dim_ranges[dim];
        &self.subspaces[lo..hi]
    }

    pub fn mask_of(&self, space: &FqSubspace) -> u128 {
        mask_of(space)
    }

    /// log_p of a point count that is a power of p.
    pub fn dim_of_point_count(&self, p: u64, count: u32) -> usize {
        let mut d = 0;
        let mut acc = 1u64;
        while acc < count as u64 {
            acc *= p;
            d += 1;
        }
        d
    }
}

fn mask_of(space: &FqSubspace) -> u128 {
    let field = space.field();
    let mut mask = 0u128;
    for x in space.elements() {
        mask |= 1u128 << field.element_rank(&x);
    }
    mask
}

/// Tables for `field`, memoized process-wide; `None` when the field is too
/// large for the dense representation.
pub(crate) fn dense_tables(field: &ExtensionField) -> Result<Option<Arc<DenseTables>>> {
    if field.order() > MAX_POINTS {
        return Ok(None);
    }
    static CACHE: OnceLock<Mutex<Vec<(ExtensionField, Arc<DenseTables>)>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    {
        let guard = cache.lock().expect("dense table cache poisoned");
        if let Some((_, tables)) = guard.iter().find(|(f, _)| f == field) {
            return Ok(Some(Arc::clone(tables)));
        }
    }
    let built = Arc::new(build(field)?);
    let mut guard = cache.lock().expect("dense table cache poisoned");
    if guard.len() == CACHE_CAPACITY {
        guard.remove(0);
    }
    guard.push((field.clone(), Arc::clone(&built)));
    Ok(Some(built))
}

fn build(field: &ExtensionField) -> Result<DenseTables> {
    let size = field.order() as usize;
    let mut mult = vec![0u16; size * size];
    let elements = field.elements();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            mult[i * size + j] = field.element_rank(&field.mul(x, y)) as u16;
        }
    }
    let all = field
        .full_subspace()
        .enumerate_subspaces_with_bound(None, MAX_POINTS)?;
    let subspaces: Vec<DenseSubspace> = all
        .into_iter()
        .map(|space| DenseSubspace {
            mask: mask_of(&space),
            dim: space.dim(),
            basis_ranks: space
                .basis()
                .iter()
                .map(|b| field.element_rank(b) as u16)
                .collect(),
            space,
        })
        .collect();
    let mut dim_ranges = vec![(0usize, 0usize); field.degree() + 1];
    for (i, sub) in subspaces.iter().enumerate() {
        let entry = &mut dim_ranges[sub.dim];
        if entry.1 == 0 {
            entry.0 = i;
        }
        entry.1 = i + 1;
    }
    Ok(DenseTables {
        size,
        mult,
        subspaces,
        dim_ranges,
    })
}
