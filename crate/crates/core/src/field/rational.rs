use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, RngCore};

use super::{Extension, Field, FieldSpec};
use crate::error::{Error, Result};

/// Random rationals are integers in `[-RANDOM_BOUND, RANDOM_BOUND]`.
const RANDOM_BOUND: i64 = 1000;

/// The rationals. Only intended for desk-size cross-checks: entries grow
/// during elimination.
#[derive(Debug, Clone)]
pub struct RationalField {
    seed: u64,
}

impl RationalField {
    pub fn new(seed: u64) -> Self {
        RationalField { seed }
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random(&self, rng: &mut dyn RngCore) -> BigRational {
        self.from_i64(rng.gen_range(-RANDOM_BOUND..=RANDOM_BOUND))
    }

    fn format(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::Parse(format!("bad rational `{s}`")))
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let d = int(d)?;
                if d.is_zero() {
                    return Err(Error::Parse(format!("zero denominator in `{s}`")));
                }
                Ok(BigRational::new(int(n)?, d))
            }
            None => Ok(BigRational::from_integer(int(s)?)),
        }
    }

    fn golden_ratio(&self) -> Result<BigRational> {
        Err(Error::Unavailable("the golden ratio is irrational".into()))
    }

    fn primitive_root_of_unity(&self, m: u64) -> Result<BigRational> {
        match m {
            1 => Ok(self.one()),
            2 => Ok(-self.one()),
            _ => Err(Error::Unavailable(format!("no root of unity of order {m} in Q"))),
        }
    }

    fn spec(&self) -> FieldSpec {
        FieldSpec { p: 0, extension: Extension::None, seed: self.seed }
    }
}
