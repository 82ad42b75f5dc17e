//! Brute-force oracles over tiny prime fields, written with plain integer
//! arithmetic so they share no code with the library.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Points of `P^n(F_p)`, first nonzero coordinate 1.
pub fn projective_points(p: u64, n: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..=n {
        let free = n - lead;
        let total = p.pow(free as u32);
        for code in 0..total {
            let mut pt = vec![0u64; n + 1];
            pt[lead] = 1;
            let mut c = code;
            for x in pt.iter_mut().skip(lead + 1) {
                *x = c % p;
                c /= p;
            }
            out.push(pt);
        }
    }
    out
}

/// Exponent vectors of degree `d` in `k` variables.
pub fn exponents(k: usize, d: usize) -> Vec<Vec<u32>> {
    if k == 1 {
        return vec![vec![d as u32]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents(k - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

fn monomial_value(p: u64, point: &[u64], e: &[u32]) -> u64 {
    point.iter().zip(e).fold(1, |acc, (&x, &k)| acc * x.pow(k) % p)
}

/// Number of degree-`d` forms over `F_p` (zero included) vanishing at every
/// point, by enumerating all coefficient vectors.
pub fn count_vanishing_forms(p: u64, points: &[Vec<u64>], d: usize) -> u64 {
    let k = points[0].len();
    let monos = exponents(k, d);
    let values: Vec<Vec<u64>> = points.iter().map(|pt| monos.iter().map(|e| monomial_value(p, pt, e)).collect()).collect();
    let n = monos.len();
    let mut coeffs = vec![0u64; n];
    let mut count = 0;
    loop {
        let vanishes = values.iter().all(|row| row.iter().zip(&coeffs).fold(0, |acc, (v, c)| (acc + v * c) % p) == 0);
        if vanishes {
            count += 1;
        }
        // odometer
        let mut i = 0;
        loop {
            if i == n {
                return count;
            }
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// A tiny configuration: prime, ambient dimension, degree and points.
#[derive(Clone, Debug)]
pub struct TinyCase {
    pub p: u64,
    pub n: usize,
    pub d: usize,
    pub points: Vec<Vec<u64>>,
}

/// Twenty random tiny cases over `F_3` and `F_5`, small enough to enumerate.
pub fn tiny_cases(seed: u64) -> Vec<TinyCase> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes: [(u64, usize, &[usize]); 3] = [(3, 2, &[1, 2, 3]), (3, 3, &[1, 2]), (5, 2, &[1, 2])];
    (0..20)
        .map(|i| {
            let (p, n, degrees) = shapes[i % shapes.len()];
            let d = degrees[rng.gen_range(0..degrees.len())];
            let mut all = projective_points(p, n);
            all.shuffle(&mut rng);
            let size = rng.gen_range(1..=9);
            all.truncate(size);
            TinyCase { p, n, d, points: all }
        })
        .collect()
}

/// `log_p` of an exact power of `p`.
pub fn log_p(p: u64, mut count: u64) -> Option<usize> {
    let mut e = 0;
    while count > 1 {
        if count % p != 0 {
            return None;
        }
        count /= p;
        e += 1;
    }
    Some(e)
}
