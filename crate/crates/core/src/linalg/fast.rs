//! Elimination over `F_p` with deferred reduction.
//!
//! Entries are kept as unreduced `u64` accumulators. A row update adds
//! `g * b` with `g, b < p`, so with `(p-1)^2 * k + p < 2^64` a row can absorb
//! `k` updates before it must be reduced. Rows are reduced lazily: the pivot
//! column before it is inspected, everything else every `k` pivot steps.

use super::Matrix;

fn headroom(p: u64) -> usize {
    let q = (p - 1).max(1) as u128;
    let k = (u64::MAX as u128 - q) / (q * q);
    k.clamp(1, 1 << 20) as usize
}

pub(crate) fn row_reduce_mod_p(p: u64, m: &mut Matrix<u64>, full: bool) -> Vec<usize> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let k = headroom(p);
    let data = m.data_mut();
    let mut pivots = Vec::new();
    let mut pivot_row = vec![0u32; cols];
    let mut since_reduce = 0usize;
    let mut r = 0;

    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut found = None;
        for i in r..rows {
            let x = &mut data[i * cols + c];
            *x %= p;
            if *x != 0 {
                found = Some(i);
                break;
            }
        }
        let Some(pr) = found else { continue };
        if pr != r {
            for j in 0..cols {
                data.swap(pr * cols + j, r * cols + j);
            }
        }
        {
            let row = &mut data[r * cols..(r + 1) * cols];
            let inv = inverse(row[c] % p, p);
            for (j, x) in row.iter_mut().enumerate().skip(c) {
                *x = (*x % p) * inv % p;
                pivot_row[j] = *x as u32;
            }
        }
        let tail = &pivot_row[c + 1..];
        let start = if full { 0 } else { r + 1 };
        for i in start..rows {
            if i == r {
                continue;
            }
            let row = &mut data[i * cols..(i + 1) * cols];
            let f = row[c] % p;
            row[c] = 0;
            if f == 0 {
                continue;
            }
            let g = (p - f) as u32;
            axpy(&mut row[c + 1..], g, tail);
        }
        pivots.push(c);
        r += 1;
        since_reduce += 1;
        if since_reduce >= k {
            for x in data.iter_mut() {
                *x %= p;
            }
            since_reduce = 0;
        }
    }
    for x in data.iter_mut() {
        *x %= p;
    }
    pivots
}

#[inline]
fn axpy(acc: &mut [u64], g: u32, b: &[u32]) {
    let g = g as u64;
    for (a, &y) in acc.iter_mut().zip(b) {
        *a += g * y as u64;
    }
}

fn inverse(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(p as i64) as u64
}
