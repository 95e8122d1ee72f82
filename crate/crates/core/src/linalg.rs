//! Dense linear algebra over F_p on small row vectors.

use crate::field::inv_mod;

/// Reduced row-echelon form with zero rows removed.
///
/// Pivots are 1 and rows come out ordered by pivot column.
pub fn rref(mut rows: Vec<Vec<u32>>, p: u32) -> Vec<Vec<u32>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = inv_mod(rows[rank][col], p);
        for v in rows[rank].iter_mut() {
            *v = (*v as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == rank || row[col] == 0 {
                continue;
            }
            let factor = row[col] as u64;
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = ((*v as u64 + (p as u64 - factor) * pv as u64) % p as u64) as u32;
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

pub fn rank(rows: Vec<Vec<u32>>, p: u32) -> usize {
    rref(rows, p).len()
}

/// Basis of `{x : row · x = 0 for every row}` in F_p^cols.
pub fn null_space(rows: &[Vec<u32>], cols: usize, p: u32) -> Vec<Vec<u32>> {
    let reduced = rref(rows.to_vec(), p);
    let pivots: Vec<usize> = reduced.iter().map(|r| r.iter().position(|&v| v != 0).unwrap()).collect();
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in reduced.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        out.push(v);
    }
    out
}
