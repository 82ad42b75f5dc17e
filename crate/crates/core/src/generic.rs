//! Repetition of randomized computations over several seeds and fields.
//!
//! A value that depends on a random specialization (a "general" point, a
//! random set of sample points) is computed once per `(field, seed)` pair.
//! All runs must return the same value; otherwise the caller gets
//! [`Error::Disagreement`] listing every run.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, DEFAULT_PRIMES};
use crate::poly::normalize_point;

pub const DEFAULT_SEEDS: [u64; 3] = [11, 23, 47];

/// Deterministic generator for one `(seed, purpose)` pair.
pub fn rng_for(seed: u64, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(purpose);
    rng
}

/// Stream identifier for a named purpose.
pub fn purpose(name: &str) -> u64 {
    // FNV-1a
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// A random point of `P^{k-1}`, normalized.
pub fn random_point<F: Field>(field: &F, k: usize, rng: &mut ChaCha8Rng) -> Vec<F::Elem> {
    loop {
        let p: Vec<F::Elem> = (0..k).map(|_| field.random(rng)).collect();
        if let Ok(p) = normalize_point(field, &p) {
            return p;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Consensus<F> {
    fields: Vec<F>,
    seeds: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Run {
    pub field: FieldSpec,
    pub seed: u64,
}

/// A value all runs agreed on, plus the payload of the first run.
#[derive(Clone, Debug)]
pub struct Agreed<T, P> {
    pub value: T,
    pub payload: P,
    pub runs: Vec<Run>,
}

impl Consensus<PrimeField> {
    /// The default primes with the given seeds.
    pub fn with_seeds(seeds: &[u64]) -> Result<Self> {
        let fields = DEFAULT_PRIMES
            .iter()
            .map(|&p| PrimeField::new(p))
            .collect::<Result<Vec<_>>>()?;
        Self::new(fields, seeds.to_vec())
    }

    pub fn standard() -> Self {
        Self::with_seeds(&DEFAULT_SEEDS).expect("default primes are valid")
    }
}

impl<F: Field> Consensus<F> {
    pub fn new(fields: Vec<F>, seeds: Vec<u64>) -> Result<Self> {
        if fields.is_empty() || seeds.is_empty() {
            return Err(Error::Invalid("consensus needs at least one field and one seed".into()));
        }
        Ok(Consensus { fields, seeds })
    }

    pub fn fields(&self) -> &[F] {
        &self.fields
    }

    pub fn seeds(&self) -> &[u64] {
        &self.seeds
    }

    pub fn first_field(&self) -> &F {
        &self.fields[0]
    }

    /// Same fields, only the first seed.
    pub fn one_seed(&self) -> Self {
        Consensus { fields: self.fields.clone(), seeds: self.seeds[..1].to_vec() }
    }

    /// Only the first field, all seeds.
    pub fn one_field(&self) -> Self {
        Consensus { fields: self.fields[..1].to_vec(), seeds: self.seeds.clone() }
    }

    pub fn specs(&self) -> Vec<FieldSpec> {
        self.fields.iter().map(|f| f.spec()).collect()
    }

    /// Run `task` for every `(field, seed)` and require equal results.
    pub fn run<T, G>(&self, what: &str, mut task: G) -> Result<Agreed<T, ()>>
    where
        T: PartialEq + fmt::Debug,
        G: FnMut(&F, &mut ChaCha8Rng) -> Result<T>,
    {
        self.run_keyed(what, |f, rng| task(f, rng).map(|v| (v, ())))
    }

    /// Like [`run`](Self::run), but each run also produces a payload that is
    /// not compared (for instance a polynomial over that run's field). The
    /// payload of the first run is kept.
    pub fn run_keyed<T, P, G>(&self, what: &str, mut task: G) -> Result<Agreed<T, P>>
    where
        T: PartialEq + fmt::Debug,
        G: FnMut(&F, &mut ChaCha8Rng) -> Result<(T, P)>,
    {
        let mut results: Vec<(Run, T)> = Vec::new();
        let mut first_payload = None;
        for field in &self.fields {
            for &seed in &self.seeds {
                let mut rng = rng_for(seed, purpose(what));
                let (value, payload) = task(field, &mut rng)?;
                if first_payload.is_none() {
                    first_payload = Some(payload);
                }
                results.push((Run { field: field.spec(), seed }, value));
            }
        }
        if results.iter().any(|(_, v)| *v != results[0].1) {
            let detail: Vec<String> = results
                .iter()
                .map(|(r, v)| format!("p={} seed={}: {v:?}", r.field.p, r.seed))
                .collect();
            return Err(Error::Disagreement(format!("{what}: {}", detail.join("; "))));
        }
        let runs = results.iter().map(|(r, _)| r.clone()).collect();
        let value = results.swap_remove(0).1;
        Ok(Agreed { value, payload: first_payload.expect("at least one run"), runs })
    }
}

#[cfg(test)]
mod tests {
    use rand::RngCore;

    use super::*;

    #[test]
    fn streams_are_deterministic_and_distinct() {
        let a: Vec<u64> = (0..4).map(|_| rng_for(5, purpose("x")).next_u64()).collect();
        assert!(a.windows(2).all(|w| w[0] == w[1]));
        assert_ne!(rng_for(5, purpose("x")).next_u64(), rng_for(5, purpose("y")).next_u64());
        assert_ne!(rng_for(5, purpose("x")).next_u64(), rng_for(6, purpose("x")).next_u64());
    }

    #[test]
    fn agreement_and_disagreement() {
        let c = Consensus::standard();
        let ok = c.run("const", |_, _| Ok(3)).unwrap();
        assert_eq!(ok.value, 3);
        assert_eq!(ok.runs.len(), 6);
        let bad = c.run("prime", |f, _| Ok(f.characteristic()));
        match bad {
            Err(Error::Disagreement(msg)) => assert!(msg.contains("seed=")),
            other => panic!("{other:?}"),
        }
        assert!(Consensus::with_seeds(&[]).is_err());
    }
}
