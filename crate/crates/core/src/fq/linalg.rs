//! Row reduction over a prime field, shared by the subspace code. Vectors
//! are coefficient rows `Vec<u64>` with entries in `[0, p)`.

/// Inverse of `a` modulo a prime `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduced row echelon form: nonzero rows only, unit pivots in strictly
/// increasing columns, pivot columns cleared elsewhere. This is the canonical
/// form used for subspace equality.
pub(crate) fn rref(mut rows: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..cols {
        let Some(found) = (pivot_row..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = inv_mod(rows[pivot_row][col], p);
        for x in rows[pivot_row].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..rows.len() {
            if r != pivot_row && rows[r][col] != 0 {
                let factor = rows[r][col];
                for c in 0..cols {
                    let sub = factor * rows[pivot_row][c] % p;
                    rows[r][c] = (rows[r][c] + p - sub) % p;
                }
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Residual of `v` after elimination against RREF `rows`; zero exactly when
/// `v` lies in their span.
pub(crate) fn reduce_against(mut v: Vec<u64>, rows: &[Vec<u64>], p: u64) -> Vec<u64> {
    for row in rows {
        let pivot = row
            .iter()
            .position(|&x| x != 0)
            .expect("RREF rows are nonzero");
        let factor = v[pivot];
        if factor != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                let sub = factor * y % p;
                *x = (*x + p - sub) % p;
            }
        }
    }
    v
}

pub(crate) fn in_span(v: &[u64], rows: &[Vec<u64>], p: u64) -> bool {
    reduce_against(v.to_vec(), rows, p)
        .iter()
        .all(|&x| x == 0)
}

/// Basis of the right kernel `{v : M v = 0}` of a matrix given by rows, in
/// canonical RREF form.
pub(crate) fn kernel_basis(rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Vec<Vec<u64>> {
    let reduced = rref(rows, p);
    let pivots: Vec<usize> = reduced
        .iter()
        .map(|row| row.iter().position(|&x| x != 0).expect("nonzero row"))
        .collect();
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![0u64; cols];
        v[f] = 1;
        for (row, &pc) in reduced.iter().zip(&pivots) {
            // pivot variable = -(free coefficient)
            v[pc] = (p - row[f] % p) % p;
        }
        basis.push(v);
    }
    rref(basis, p)
}
