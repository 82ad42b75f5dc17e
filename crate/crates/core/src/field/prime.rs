use rand::{Rng, RngCore};

use super::{is_prime, mul_mod, pow_mod, prime_factors, Extension, Field, FieldSpec};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `F_p` with canonical residues in `[0, p)`.
#[derive(Debug, Clone)]
pub struct PrimeField {
    p: u64,
    seed: u64,
    tag: Extension,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        Self::with_seed(p, 0)
    }

    pub fn with_seed(p: u64, seed: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidField(format!("prime {p} exceeds 2^32")));
        }
        Ok(PrimeField { p, seed, tag: Extension::None })
    }

    pub(super) fn with_extension_tag(mut self, tag: Extension) -> Self {
        self.tag = tag;
        self
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if pow_mod(a, (p - 1) / 2, p) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let mut q = p - 1;
        let mut s = 0;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while pow_mod(z, (p - 1) / 2, p) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = pow_mod(z, q, p);
        let mut t = pow_mod(a, q, p);
        let mut r = pow_mod(a, (q + 1) / 2, p);
        while t != 1 {
            let mut i = 0;
            let mut tt = t;
            while tt != 1 {
                tt = mul_mod(tt, tt, p);
                i += 1;
            }
            let b = pow_mod(c, 1 << (m - i - 1), p);
            m = i;
            c = mul_mod(b, b, p);
            t = mul_mod(t, c, p);
            r = mul_mod(r, b, p);
        }
        Some(r)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on i64
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.p as i64) as u64)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }

    fn format(&self, a: &u64) -> String {
        if *a > self.p / 2 {
            format!("-{}", self.p - a)
        } else {
            a.to_string()
        }
    }

    fn parse_elem(&self, s: &str) -> Result<u64> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let n = self.parse_elem(num)?;
            let d = self.parse_elem(den)?;
            return self
                .div(&n, &d)
                .ok_or_else(|| Error::Parse(format!("division by zero in `{s}`")));
        }
        let v: i128 = s.parse().map_err(|_| Error::Parse(format!("bad residue `{s}`")))?;
        Ok(v.rem_euclid(self.p as i128) as u64)
    }

    fn golden_ratio(&self) -> Result<u64> {
        // u = (1 + sqrt 5) / 2; report the smaller residue of the two roots.
        if self.p == 2 {
            return Err(Error::Unavailable(
                "u^2 - u - 1 = u^2 + u + 1 is irreducible over F_2".into(),
            ));
        }
        let s = self.sqrt(5 % self.p).ok_or_else(|| {
            Error::Unavailable(format!("5 is not a square mod {}, no golden ratio in F_p", self.p))
        })?;
        let half = self.inv(&2).expect("p odd");
        let r1 = self.mul(&self.add(&1, &s), &half);
        let r2 = self.sub(&1, &r1);
        Ok(r1.min(r2))
    }

    fn primitive_root_of_unity(&self, m: u64) -> Result<u64> {
        if m == 0 {
            return Err(Error::InvalidField("root of unity of order 0".into()));
        }
        if (self.p - 1) % m != 0 {
            return Err(Error::Unavailable(format!(
                "p = {} is not 1 mod {m}; no element of order {m} in F_p",
                self.p
            )));
        }
        let factors = prime_factors(m as u128);
        for g in 2..self.p.max(3) {
            let z = pow_mod(g, (self.p - 1) / m, self.p);
            if factors.iter().all(|&q| pow_mod(z, m / q as u64, self.p) != 1) {
                return Ok(z);
            }
        }
        Ok(1 % self.p)
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.p, extension: self.tag, seed: self.seed }
    }

    fn row_reduce(&self, m: &mut Matrix<u64>, full: bool) -> Vec<usize> {
        crate::linalg::fast::row_reduce_mod_p(self.p, m, full)
    }
}
