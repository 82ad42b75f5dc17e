//! Base loci, Jacobian ranks and the blow-up degree formula.

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::generic::random_point;
use crate::ideal::FatPoint;
use crate::linalg::{self, Matrix};
use crate::poly::{normalize_point, MultiPoly};

use super::RationalMap;

/// Candidates where every form of the map vanishes.
pub fn base_locus_probe<F: Field>(
    field: &F,
    map: &RationalMap<F::Elem>,
    candidates: &[Vec<F::Elem>],
) -> Result<Vec<Vec<F::Elem>>> {
    let mut out = Vec::new();
    for p in candidates {
        if map.eval(field, p)?.iter().all(|v| field.is_zero(v)) {
            out.push(p.clone());
        }
    }
    Ok(out)
}

/// `0, ±1, ±u, ±u^2` and `±zeta^k` for the given orders, skipping constants
/// the field does not have.
pub fn structured_alphabet<F: Field>(field: &F, zeta_orders: &[u64]) -> Vec<F::Elem> {
    let mut base = vec![field.one()];
    if let Ok(u) = field.golden_ratio() {
        base.push(u.clone());
        base.push(field.mul(&u, &u));
    }
    for &m in zeta_orders {
        if let Ok(z) = field.primitive_root_of_unity(m) {
            let mut t = z.clone();
            for _ in 1..m {
                base.push(t.clone());
                t = field.mul(&t, &z);
            }
        }
    }
    let mut out = vec![field.zero()];
    for x in base {
        for v in [x.clone(), field.neg(&x)] {
            if !out.contains(&v) {
                out.push(v);
            }
        }
    }
    out
}

/// Every point of `P^{nvars-1}` with coordinates in `alphabet`, normalized
/// and without repetitions.
pub fn structured_points<F: Field>(field: &F, nvars: usize, alphabet: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    let mut idx = vec![0usize; nvars];
    loop {
        let p: Vec<F::Elem> = idx.iter().map(|&i| alphabet[i].clone()).collect();
        if let Ok(q) = normalize_point(field, &p) {
            if seen.insert(q.clone()) {
                out.push(q);
            }
        }
        let mut i = 0;
        loop {
            if i == nvars {
                return out;
            }
            idx[i] += 1;
            if idx[i] < alphabet.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Rank of the Jacobian matrix `(∂f_i/∂x_j)` at `p`.
pub fn jacobian_rank_at<F: Field>(field: &F, map: &RationalMap<F::Elem>, p: &[F::Elem]) -> Result<usize> {
    let partials = jacobian(field, map);
    jacobian_rank_with(field, &partials, p)
}

fn jacobian<F: Field>(field: &F, map: &RationalMap<F::Elem>) -> Vec<Vec<MultiPoly<F::Elem>>> {
    map.forms
        .iter()
        .map(|f| (0..map.source_vars).map(|j| f.derivative(field, j)).collect())
        .collect()
}

fn jacobian_rank_with<F: Field>(field: &F, partials: &[Vec<MultiPoly<F::Elem>>], p: &[F::Elem]) -> Result<usize> {
    let cols = p.len();
    let rows = partials
        .iter()
        .map(|row| row.iter().map(|d| d.evaluate(field, p)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(field, &Matrix::from_rows(rows, cols)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobianStats {
    pub samples: usize,
    pub min_rank: usize,
    pub max_rank: usize,
    /// Samples with rank `n + 1`.
    pub full_rank: usize,
    /// Random points that happened to be base points and were redrawn.
    pub redrawn: usize,
}

/// Jacobian ranks at `trials` random points outside the base locus.
pub fn jacobian_rank_probe<F: Field>(
    field: &F,
    map: &RationalMap<F::Elem>,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<JacobianStats> {
    if trials == 0 {
        return Err(Error::Invalid("jacobian probe needs at least one trial".into()));
    }
    let partials = jacobian(field, map);
    let mut ranks = Vec::with_capacity(trials);
    let mut redrawn = 0;
    while ranks.len() < trials {
        let p = random_point(field, map.source_vars, rng);
        if map.eval(field, &p)?.iter().all(|v| field.is_zero(v)) {
            redrawn += 1;
            continue;
        }
        ranks.push(jacobian_rank_with(field, &partials, &p)?);
    }
    Ok(JacobianStats {
        samples: trials,
        min_rank: *ranks.iter().min().expect("trials > 0"),
        max_rank: *ranks.iter().max().expect("trials > 0"),
        full_rank: ranks.iter().filter(|&&r| r == map.source_vars).count(),
        redrawn,
    })
}

/// `(eH - sum_i m_i E_i)^n = e^n - sum_i m_i^n` on the blow-up of `P^n` at
/// reduced points.
pub fn blowup_degree(e: usize, n: usize, base_mults: &[usize]) -> Result<i64> {
    if e == 0 {
        return Err(Error::Degree("blow-up degree needs e >= 1".into()));
    }
    if !(2..=3).contains(&n) {
        return Err(Error::Invalid(format!("blow-up degree supports n = 2 or 3, got {n}")));
    }
    let pow = |x: usize| (x as i64).pow(n as u32);
    Ok(pow(e) - base_mults.iter().map(|&m| pow(m)).sum::<i64>())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapDegree {
    pub blowup_degree: i64,
    pub image_degree: i64,
    pub map_degree: i64,
    pub assumption: String,
}

/// `blowup_degree / image_degree`, valid when the declared base scheme is the
/// reduced set of base points, resolved by one blow-up.
pub fn map_degree<E: Clone + PartialEq + std::fmt::Debug>(map: &RationalMap<E>, image_degree: i64) -> Result<MapDegree> {
    let base = map
        .base_points
        .as_ref()
        .ok_or_else(|| Error::Invalid(format!("{}: no declared base locus, map degree unavailable", map.name)))?;
    let mults: Vec<usize> = base.iter().map(|b: &FatPoint<E>| b.mult).collect();
    let blow = blowup_degree(map.degree, map.source_dim(), &mults)?;
    if image_degree <= 0 || blow % image_degree != 0 {
        return Err(Error::Invalid(format!(
            "{}: blow-up degree {blow} is not a multiple of the image degree {image_degree}; the base scheme is not resolved by one blow-up",
            map.name
        )));
    }
    Ok(MapDegree {
        blowup_degree: blow,
        image_degree,
        map_degree: blow / image_degree,
        assumption: format!(
            "base scheme = {} declared points with multiplicities {:?}, resolved by one blow-up",
            base.len(),
            summarize(&mults)
        ),
    })
}

fn summarize(mults: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &m in mults {
        match out.iter_mut().find(|(k, _)| *k == m) {
            Some((_, c)) => *c += 1,
            None => out.push((m, 1)),
        }
    }
    out
}
