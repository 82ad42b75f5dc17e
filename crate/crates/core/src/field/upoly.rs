//! Dense univariate polynomials over `F_p`, coefficients lowest degree first.
//! Only what the extension-field constructor needs.

use super::{mul_mod, pow_mod, prime_factors};

pub(crate) type UPoly = Vec<u64>;

pub(crate) fn trim(mut a: UPoly) -> UPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(out)
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` modulo a nonzero `m`.
pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> UPoly {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm && !r.is_empty() {
        let dr = r.len() - 1;
        let c = mul_mod(r[dr], lead_inv, p);
        for i in 0..=dm {
            let t = mul_mod(c, m[i], p);
            r[dr - dm + i] = (r[dr - dm + i] + p - t) % p;
        }
        r = trim(r);
    }
    r
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> UPoly {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub(crate) fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> UPoly {
    rem(&mul(a, b, p), m, p)
}

pub(crate) fn powmod(base: &[u64], mut e: u128, m: &[u64], p: u64) -> UPoly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(&acc, &b, m, p);
        }
        b = mulmod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

/// `t^(p^j) mod f`, by repeated p-th powering.
fn frobenius_power(j: usize, f: &[u64], p: u64) -> UPoly {
    let mut x = rem(&[0, 1], f, p);
    for _ in 0..j {
        x = powmod(&x, p as u128, f, p);
    }
    x
}

/// Rabin's irreducibility test for a monic `f` of degree `k >= 1`.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let t = vec![0, 1];
    if sub(&frobenius_power(k, f, p), &t, p) != Vec::<u64>::new() {
        return false;
    }
    for q in prime_factors(k as u128) {
        let h = sub(&frobenius_power(k / q as usize, f, p), &t, p);
        if gcd(&h, f, p).len() != 1 {
            return false;
        }
    }
    true
}
