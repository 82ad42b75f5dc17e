use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::upoly;
use super::{prime_factors, Extension, Field, FieldSpec, PrimeField};
use crate::error::{Error, Result};

/// `F_p[t]/(f)` for a monic irreducible `f` of degree `k >= 2`.
/// Elements are coefficient vectors of length `k`, lowest degree first.
#[derive(Debug, Clone)]
pub struct ExtensionField {
    base: PrimeField,
    /// Low coefficients of `f`: `f = t^k + tail[k-1] t^(k-1) + ... + tail[0]`.
    tail: Vec<u64>,
    order: u128,
    seed: u64,
    tag: Extension,
}

impl ExtensionField {
    pub fn new(p: u64, tail: Vec<u64>, seed: u64) -> Result<Self> {
        let base = PrimeField::with_seed(p, seed)?;
        let k = tail.len();
        if k < 2 {
            return Err(Error::InvalidField("extension degree must be at least 2".into()));
        }
        let mut f: Vec<u64> = tail.iter().map(|c| c % p).collect();
        f.push(1);
        if !upoly::is_irreducible(&f, p) {
            return Err(Error::InvalidField(format!("modulus {f:?} is reducible mod {p}")));
        }
        let mut order: u128 = 1;
        for _ in 0..k {
            order = order
                .checked_mul(p as u128)
                .filter(|o| *o < 1 << 126)
                .ok_or_else(|| Error::InvalidField(format!("F_{p}^{k} is too large")))?;
        }
        Ok(ExtensionField {
            base,
            tail: f[..k].to_vec(),
            order,
            seed,
            tag: Extension::None,
        })
    }

    /// A seeded random monic irreducible modulus of degree `k`.
    pub fn random_irreducible(p: u64, k: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6972_7265_6475_6369);
        for _ in 0..10_000 {
            let tail: Vec<u64> = (0..k).map(|_| rng.gen_range(0..p)).collect();
            let mut f = tail.clone();
            f.push(1);
            if upoly::is_irreducible(&f, p) {
                return Self::new(p, tail, seed);
            }
        }
        Err(Error::InvalidField(format!("no irreducible of degree {k} found mod {p}")))
    }

    pub(super) fn with_extension_tag(mut self, tag: Extension) -> Self {
        self.tag = tag;
        self
    }

    pub fn degree(&self) -> usize {
        self.tail.len()
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    /// The monic modulus, lowest degree first.
    pub fn modulus(&self) -> Vec<u64> {
        let mut f = self.tail.clone();
        f.push(1);
        f
    }

    fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.degree()];
        v[0] = c;
        v
    }

    fn pow_u128(&self, a: &[u64], mut e: u128) -> Vec<u64> {
        let mut base = a.to_vec();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn has_order(&self, z: &[u64], m: u64, factors: &[u128]) -> bool {
        let one = self.one();
        self.pow_u128(z, m as u128) == one
            && factors.iter().all(|&q| self.pow_u128(z, m as u128 / q) != one)
    }
}

impl Field for ExtensionField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn from_i64(&self, n: i64) -> Vec<u64> {
        self.embed(self.base.from_i64(n))
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let k = self.degree();
        let f = &self.base;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in a.iter().enumerate() {
            if *x == 0 {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = f.add(&prod[i + j], &f.mul(x, y));
            }
        }
        // t^k = -tail
        for d in (k..2 * k - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, t) in self.tail.iter().enumerate() {
                let idx = d - k + i;
                prod[idx] = f.sub(&prod[idx], &f.mul(&c, t));
            }
        }
        prod.truncate(k);
        prod
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        Some(self.pow_u128(a, self.order - 2))
    }
    fn characteristic(&self) -> u64 {
        self.base.modulus()
    }
    fn random(&self, rng: &mut dyn RngCore) -> Vec<u64> {
        (0..self.degree()).map(|_| self.base.random(rng)).collect()
    }

    fn format(&self, a: &Vec<u64>) -> String {
        let parts: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    fn parse_elem(&self, s: &str) -> Result<Vec<u64>> {
        let s = s.trim();
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coeffs: Vec<u64> = inner
                .split(',')
                .map(|c| self.base.parse_elem(c))
                .collect::<Result<_>>()?;
            if coeffs.len() != self.degree() {
                return Err(Error::Parse(format!(
                    "expected {} coefficients in `{s}`",
                    self.degree()
                )));
            }
            return Ok(coeffs);
        }
        Ok(self.embed(self.base.parse_elem(s)?))
    }

    fn golden_ratio(&self) -> Result<Vec<u64>> {
        let p = self.base.modulus();
        if self.tail == [p - 1, p - 1] {
            let mut t = self.zero();
            t[1] = 1;
            let c = self.sub(&self.one(), &t);
            // same tie-break as the prime field: smaller canonical form
            return Ok(if c < t { c } else { t });
        }
        self.base.golden_ratio().map(|u| self.embed(u)).map_err(|_| {
            Error::Unavailable(format!(
                "no golden ratio in F_{p}^{} as configured",
                self.degree()
            ))
        })
    }

    fn primitive_root_of_unity(&self, m: u64) -> Result<Vec<u64>> {
        if m == 0 {
            return Err(Error::InvalidField("root of unity of order 0".into()));
        }
        if (self.order - 1) % m as u128 != 0 {
            return Err(Error::Unavailable(format!(
                "no element of order {m} in a field of order {}",
                self.order
            )));
        }
        let factors = prime_factors(m as u128);
        let e = (self.order - 1) / m as u128;
        let k = self.degree();
        // deterministic candidates: t + c, then t^2 + c, ...
        for shift in 1..k.max(2) {
            for c in 0..self.base.modulus().min(10_000) {
                let mut g = self.zero();
                g[0] = c;
                g[shift.min(k - 1)] = 1;
                let z = self.pow_u128(&g, e);
                if self.has_order(&z, m, &factors) {
                    return Ok(z);
                }
            }
        }
        Err(Error::Unavailable(format!("search for an element of order {m} failed")))
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec { p: self.base.modulus(), extension: self.tag, seed: self.seed }
    }
}
