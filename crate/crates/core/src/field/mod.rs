//! Exact field arithmetic.
//!
//! Three realizations share the [`Field`] trait: prime fields `F_p` with
//! `p < 2^32` ([`PrimeField`]), small extensions `F_p[t]/(f)`
//! ([`ExtensionField`]) and the rationals ([`RationalField`], desk-size
//! cross-checks only). Fields are immutable handles; elements are plain values
//! and every operation goes through the handle.

mod extension;
mod prime;
mod rational;
mod upoly;

use std::fmt;
use std::hash::Hash;

use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

pub use extension::ExtensionField;
pub use prime::PrimeField;
pub use rational::RationalField;

/// Default working primes. Both are `1 mod 840`, so every root of unity of
/// order `m <= 8` and the golden ratio live in the prime field itself, and
/// both are below `2^28` so the elimination kernel can defer reductions.
pub const DEFAULT_PRIMES: [u64; 2] = [268_433_761, 268_426_201];

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// 0 for the rationals.
    fn characteristic(&self) -> u64;
    /// Uniform element (bounded integers for the rationals).
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Canonical text form; `parse_elem(format(x)) == x`.
    fn format(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    /// A root of `u^2 - u - 1`; the other root is `1 - u`.
    fn golden_ratio(&self) -> Result<Self::Elem>;
    /// An element of multiplicative order exactly `m`.
    fn primitive_root_of_unity(&self, m: u64) -> Result<Self::Elem>;

    fn spec(&self) -> FieldSpec;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
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

    fn random_nonzero(&self, rng: &mut dyn RngCore) -> Self::Elem {
        loop {
            let x = self.random(rng);
            if !self.is_zero(&x) {
                return x;
            }
        }
    }

    /// Galois conjugate `1 - u` of the golden ratio.
    fn golden_conjugate(&self) -> Result<Self::Elem> {
        let u = self.golden_ratio()?;
        Ok(self.sub(&self.one(), &u))
    }

    /// Row-reduce in place and return the pivot columns. With `full` the
    /// result is the reduced row echelon form (pivots 1, zeros above and
    /// below); otherwise only an echelon form is guaranteed. Zero rows are
    /// moved to the bottom.
    fn row_reduce(&self, m: &mut Matrix<Self::Elem>, full: bool) -> Vec<usize> {
        linalg::generic_row_reduce(self, m, full)
    }
}

/// Extension request attached to a [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extension {
    None,
    Golden,
    Zeta(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    #[serde(deserialize_with = "int_or_string")]
    pub p: u64,
    #[serde(default = "default_extension")]
    pub extension: Extension,
    #[serde(default, deserialize_with = "int_or_string")]
    pub seed: u64,
}

fn default_extension() -> Extension {
    Extension::None
}

fn int_or_string<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<u64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(u64),
        Str(String),
    }
    match Raw::deserialize(d)? {
        Raw::Int(n) => Ok(n),
        Raw::Str(s) => s.trim().parse().map_err(serde::de::Error::custom),
    }
}

impl FieldSpec {
    pub fn prime(p: u64) -> Self {
        FieldSpec { p, extension: Extension::None, seed: 0 }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

/// A constructed field of any supported kind.
#[derive(Debug, Clone)]
pub enum FieldHandle {
    Prime(PrimeField),
    Extension(ExtensionField),
    Rational(RationalField),
}

impl FieldHandle {
    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldHandle::Prime(f) => f.spec(),
            FieldHandle::Extension(f) => f.spec(),
            FieldHandle::Rational(f) => f.spec(),
        }
    }
}

/// Build a field from its specification.
///
/// A golden-ratio or root-of-unity request is realized inside `F_p` whenever
/// the constant already exists there; an extension is built only otherwise.
pub fn make_field(spec: &FieldSpec) -> Result<FieldHandle> {
    if spec.p == 0 {
        return match spec.extension {
            Extension::None | Extension::Zeta(1) | Extension::Zeta(2) => {
                Ok(FieldHandle::Rational(RationalField::new(spec.seed)))
            }
            Extension::Golden => Err(Error::Unavailable(
                "the golden ratio is irrational; use a prime field".into(),
            )),
            Extension::Zeta(m) => Err(Error::Unavailable(format!(
                "no primitive root of unity of order {m} in Q"
            ))),
        };
    }
    if !is_prime(spec.p) {
        return Err(Error::InvalidField(format!("{} is not prime", spec.p)));
    }
    if spec.p >= 1 << 32 {
        return Err(Error::InvalidField(format!("prime {} exceeds 2^32", spec.p)));
    }
    let base = PrimeField::with_seed(spec.p, spec.seed)?;
    match spec.extension {
        Extension::None => Ok(FieldHandle::Prime(base)),
        Extension::Golden => {
            if base.golden_ratio().is_ok() {
                Ok(FieldHandle::Prime(base.with_extension_tag(Extension::Golden)))
            } else {
                // u^2 - u - 1 has no root, hence is irreducible.
                let f = ExtensionField::new(spec.p, vec![spec.p - 1, spec.p - 1], spec.seed)?;
                Ok(FieldHandle::Extension(f.with_extension_tag(Extension::Golden)))
            }
        }
        Extension::Zeta(m) => {
            if m == 0 {
                return Err(Error::InvalidField("root of unity of order 0".into()));
            }
            if spec.p % m == 0 {
                return Err(Error::Unavailable(format!(
                    "characteristic {} divides the order {m}",
                    spec.p
                )));
            }
            let k = multiplicative_order(spec.p % m, m);
            if k == 1 {
                Ok(FieldHandle::Prime(base.with_extension_tag(Extension::Zeta(m))))
            } else {
                let f = ExtensionField::random_irreducible(spec.p, k as usize, spec.seed)?;
                Ok(FieldHandle::Extension(f.with_extension_tag(Extension::Zeta(m))))
            }
        }
    }
}

/// Order of `a` in `(Z/m)^*`; `a` must be a unit.
fn multiplicative_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    k
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors, by trial division.
pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut q = 2u128;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[cfg(test)]
mod tests;
