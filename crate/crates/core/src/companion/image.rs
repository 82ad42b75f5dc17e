//! Hilbert functions of images of rational maps, computed by evaluation, and
//! the invariants read off from them.
//!
//! `HF(X, k)` is the dimension of the span of all degree-`k` products of the
//! map's forms. Powers `l^k` of random linear forms span `S_k` of the target,
//! so `HF(X, k)` is the rank of the matrix `(l_r(phi(p_j))^k)` once there are
//! enough random forms `l_r` and random points `p_j`; the matrix is grown until
//! its rank falls short of its size.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::generic::{random_point, Consensus, Run};
use crate::ideal::{difference, multiply_by_variables, HVector};
use crate::linalg::{self, Matrix};
use crate::poly::{binomial, Mono, MonomialBasis, MultiPoly};

use super::{base_locus_probe, jacobian_rank_probe, map_degree, structured_alphabet, structured_points};
use super::{JacobianStats, MapDegree, MapSource, RationalMap};

/// Largest compressed matrix side before giving up.
const MAX_SIDE: usize = 12_000;

/// `HF(X, k)` over one field. `hint` is `HF(X, k-1)` when known, else 0.
pub fn image_hf_once<F: Field>(
    field: &F,
    map: &RationalMap<F::Elem>,
    k: usize,
    hint: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize> {
    if k == 0 {
        return Ok(1);
    }
    let targets = map.forms.len();
    let cap_target = binomial(targets - 1 + k, k);
    let cap_source = binomial(map.source_dim() + k * map.degree, map.source_dim());
    let cap = cap_target.min(cap_source);
    let mut side = (hint * 8 / 5 + 8).min(cap + 1);
    loop {
        let nforms = side.min(cap_target);
        let ells: Vec<Vec<F::Elem>> = (0..nforms).map(|_| (0..targets).map(|_| field.random(rng)).collect()).collect();
        let mut m = Matrix::zeros(field, 0, nforms);
        for _ in 0..side {
            let p = random_point(field, map.source_vars, rng);
            let image = map.eval(field, &p)?;
            let row = ells.iter().map(|l| field.pow(&linalg::dot(field, l, &image), k as u64)).collect();
            m.push_row(row)?;
        }
        let r = linalg::rank(field, &m);
        if r < nforms.min(side) || r == cap_target || r == cap_source {
            return Ok(r);
        }
        if side > MAX_SIDE {
            return Err(Error::NotStabilized(format!("{}: HF({k}) above {side}", map.name)));
        }
        side = (side * 3 / 2 + 1).min(cap + 1);
    }
}

/// `HF(X, k)` agreed over the consensus's fields and seeds.
pub fn image_hilbert_function<F: Field>(consensus: &Consensus<F>, source: &MapSource, k: usize) -> Result<usize> {
    let what = format!("image HF {} k={k}", source.label());
    let agreed = consensus.run(&what, |field, rng| {
        let map = source.resolve(field)?;
        image_hf_once(field, &map, k, 0, rng)
    })?;
    Ok(agreed.value)
}

/// A Hilbert polynomial read off from Hilbert function values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertFit {
    pub dim: usize,
    pub degree: i64,
    /// `HF(k) = P(k)` for `k` in `window.0..=window.1`.
    pub window: (usize, usize),
    /// Coefficients of `P` in ascending powers of `k`, as exact fractions.
    pub coefficients: Vec<String>,
    /// `Δ^{dim+1} HF`, up to where it vanishes.
    pub h_vector: HVector,
}

/// Fit a Hilbert polynomial to `HF(0..=K)`.
///
/// `dim` is the least `D <= max_dim` with `Δ^{D+1} HF` zero at the last three
/// degrees (two to fit, one to validate). `None` if there is no such `D` yet.
pub fn fit_hilbert(values: &[usize], max_dim: usize) -> Result<Option<HilbertFit>> {
    if values.len() < 3 {
        return Ok(None);
    }
    let v: Vec<i64> = values.iter().map(|&x| x as i64).collect();
    let last = v.len() - 1;
    for dim in 0..=max_dim {
        let diff = difference(&v, dim + 1);
        if diff[last - 2..].iter().any(|&x| x != 0) {
            continue;
        }
        let mut j = last - 2;
        while j > 0 && diff[j - 1] == 0 {
            j -= 1;
        }
        let degree = difference(&v, dim)[last];
        if degree <= 0 {
            return Err(Error::Invalid(format!("fitted degree {degree} is not positive")));
        }
        let start = j.saturating_sub(dim + 1);
        let coeffs = interpolate(&v[start..=start + dim], start);
        for (k, &x) in v.iter().enumerate().skip(start) {
            if evaluate(&coeffs, k) != BigRational::from_integer(BigInt::from(x)) {
                return Err(Error::Invalid(format!("fitted polynomial misses HF({k})")));
            }
        }
        let h_vector = HVector::new(diff[..j].to_vec());
        if h_vector.sum() != degree {
            return Err(Error::Invalid(format!("h-vector sums to {}, degree is {degree}", h_vector.sum())));
        }
        return Ok(Some(HilbertFit {
            dim,
            degree,
            window: (start, last),
            coefficients: coeffs.iter().map(|c| c.to_string()).collect(),
            h_vector,
        }));
    }
    Ok(None)
}

/// Coefficients (ascending) of the polynomial through `(start + i, ys[i])`.
fn interpolate(ys: &[i64], start: usize) -> Vec<BigRational> {
    // Newton form on forward differences: P(k) = sum_j Δ^j y_0 C(k - start, j)
    let mut diffs = Vec::new();
    let mut row: Vec<i64> = ys.to_vec();
    while !row.is_empty() {
        diffs.push(row[0]);
        row = row.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let mut out = vec![BigRational::zero(); ys.len()];
    // basis polynomial C(k - start, j) built incrementally
    let mut basis = vec![BigRational::one()];
    for (j, &dj) in diffs.iter().enumerate() {
        for (o, b) in out.iter_mut().zip(&basis) {
            *o += b * BigRational::from_integer(BigInt::from(dj));
        }
        // multiply by (k - start - j) / (j + 1)
        let shift = BigRational::from_integer(BigInt::from(start as i64 + j as i64));
        let denom = BigRational::from_integer(BigInt::from(j as i64 + 1));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b / &denom;
            next[i] -= b * &shift / &denom;
        }
        basis = next;
    }
    out
}

fn evaluate(coeffs: &[BigRational], k: usize) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(k as i64));
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

/// Hilbert function values up to the first degree where a fit succeeds.
pub fn image_degree_and_hvector_once<F: Field>(
    field: &F,
    map: &RationalMap<F::Elem>,
    max_k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<usize>, HilbertFit)> {
    let mut hf = Vec::new();
    for k in 0..=max_k {
        let hint = hf.last().copied().unwrap_or(0);
        hf.push(image_hf_once(field, map, k, hint, rng)?);
        if let Some(fit) = fit_hilbert(&hf, map.source_dim())? {
            return Ok((hf, fit));
        }
    }
    Err(Error::NotStabilized(format!(
        "{}: Hilbert function {hf:?} has no polynomial fit up to k = {max_k}",
        map.name
    )))
}

/// A basis of `I(X)_k` as forms in the target variables.
pub fn image_ideal_piece<F: Field>(
    field: &F,
    map: &RationalMap<F::Elem>,
    k: usize,
    hf_k: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<MultiPoly<F::Elem>>> {
    let nt = map.forms.len();
    let mb = MonomialBasis::new(nt, k);
    let mut m = Matrix::zeros(field, 0, mb.len());
    for _ in 0..hf_k + 12 {
        let p = random_point(field, map.source_vars, rng);
        let image = map.eval(field, &p)?;
        m.push_row(mb.monos.iter().map(|mono| eval_mono(field, &image, mono)).collect())?;
    }
    let kernel = linalg::kernel(field, &m);
    if kernel.len() != mb.len() - hf_k {
        return Err(Error::NotStabilized(format!(
            "{}: I(X)_{k} has dimension {} by evaluation, expected {}",
            map.name,
            kernel.len(),
            mb.len() - hf_k
        )));
    }
    Ok(kernel.iter().map(|v| MultiPoly::from_dense(field, &mb, v)).collect())
}

fn eval_mono<F: Field>(field: &F, point: &[F::Elem], mono: &Mono) -> F::Elem {
    mono.0.iter().zip(point).fold(field.one(), |acc, (&e, x)| field.mul(&acc, &field.pow(x, e as u64)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealDims {
    pub k: usize,
    pub dim: usize,
    /// `dim I(X)_k - dim S_1 I(X)_{k-1}`.
    pub mingens: usize,
}

/// `dim I(X)_k` and the number of new generators in degree `k`, from
/// `HF(k-1)` and `HF(k)`. Also returns the basis of `I(X)_{k-1}`.
pub fn image_ideal_dims_once<F: Field>(
    field: &F,
    map: &RationalMap<F::Elem>,
    k: usize,
    hf: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<(IdealDims, Vec<MultiPoly<F::Elem>>)> {
    if k == 0 || k >= hf.len() {
        return Err(Error::Invalid(format!("need 1 <= k < {} for the ideal of the image", hf.len())));
    }
    let nt = map.forms.len();
    let dim = binomial(nt - 1 + k, k) - hf[k];
    let lower = if k == 1 { Vec::new() } else { image_ideal_piece(field, map, k - 1, hf[k - 1], rng)? };
    let products = multiply_by_variables(field, &lower, nt, k)?;
    let spanned = linalg::span_dim(field, &products, binomial(nt - 1 + k, k))?;
    Ok((IdealDims { k, dim, mingens: dim - spanned }, lower))
}

/// The pullback `C(phi)` is identically zero.
pub fn pullback_vanishes<F: Field>(field: &F, map: &RationalMap<F::Elem>, form: &MultiPoly<F::Elem>) -> Result<bool> {
    Ok(form.substitute(field, &map.forms)?.is_zero())
}

/// `form` lies in `S_1 * span(quadrics)`.
pub fn in_linear_multiples<F: Field>(
    field: &F,
    form: &MultiPoly<F::Elem>,
    lower: &[MultiPoly<F::Elem>],
) -> Result<bool> {
    let nt = form.nvars();
    let k = form.homogeneous_degree().ok_or_else(|| Error::Degree("form is not homogeneous".into()))?;
    let products = multiply_by_variables(field, lower, nt, k)?;
    let target = form.to_dense(field, &MonomialBasis::new(nt, k))?;
    linalg::span_contains(field, &products, &target)
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseLocusFindings {
    pub declared: Option<usize>,
    /// Every declared base point is a common zero of the forms.
    pub declared_vanish: Option<bool>,
    /// Common zeros among the structured candidates, if scanned.
    pub structured_candidates: Option<usize>,
    pub structured_zeros: Option<usize>,
    /// Structured zeros that are not declared base points.
    pub undeclared_zeros: Option<usize>,
    pub zeros: Vec<Vec<String>>,
}

/// A labeled comparison against a conjectured value; never a pass/fail claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConjectureCheck {
    pub label: String,
    pub conjectured: Vec<i64>,
    pub observed: Vec<i64>,
    pub agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MapReport {
    pub map: String,
    pub source_dim: usize,
    pub target_dim: usize,
    pub form_degree: usize,
    pub hf: Vec<usize>,
    pub fit: HilbertFit,
    pub nondegenerate: bool,
    pub ideal: Vec<IdealDims>,
    pub base_locus: BaseLocusFindings,
    pub jacobian: Option<JacobianStats>,
    pub map_degree: Option<MapDegree>,
    pub map_degree_error: Option<String>,
    pub conjecture_checks: Vec<ConjectureCheck>,
    pub runs: Vec<Run>,
}

#[derive(Clone, Debug)]
pub struct ReportOptions {
    pub max_k: usize,
    /// Degrees `k` for `dim I(X)_k` and minimal generator counts.
    pub ideal_degrees: Vec<usize>,
    pub jacobian_trials: usize,
    /// Scan the structured alphabet with these root-of-unity orders.
    pub structured_scan: Option<Vec<u64>>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { max_k: 10, ideal_degrees: vec![2, 3], jacobian_trials: 20, structured_scan: None }
    }
}

/// The part of a report every run must reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ReportKey {
    hf: Vec<usize>,
    fit: HilbertFit,
    ideal: Vec<IdealDims>,
    base: (Option<bool>, Option<usize>, Option<usize>),
    jacobian: Option<(usize, usize)>,
}

struct ReportPayload {
    base_locus: BaseLocusFindings,
    jacobian: Option<JacobianStats>,
    map_degree: std::result::Result<MapDegree, Error>,
    source_dim: usize,
    target_dim: usize,
    form_degree: usize,
}

/// Hilbert function, fit, ideal dimensions, probes and map degree for one
/// map, agreed over the consensus's runs.
pub fn map_report<F: Field>(consensus: &Consensus<F>, source: &MapSource, opts: &ReportOptions) -> Result<MapReport> {
    let what = format!("map report {}", source.label());
    let agreed = consensus.run_keyed(&what, |field, rng| {
        let map = source.resolve(field)?;
        let (hf, fit) = image_degree_and_hvector_once(field, &map, opts.max_k, rng)?;
        let mut hf = hf;
        let top = opts.ideal_degrees.iter().copied().max().unwrap_or(0);
        while hf.len() <= top {
            let k = hf.len();
            hf.push(image_hf_once(field, &map, k, hf[k - 1], rng)?);
        }
        let mut ideal = Vec::new();
        for &k in &opts.ideal_degrees {
            ideal.push(image_ideal_dims_once(field, &map, k, &hf, rng)?.0);
        }
        let declared = map.base_points.as_ref().map(|b| b.iter().map(|f| f.point.clone()).collect::<Vec<_>>());
        let declared_vanish = match &declared {
            Some(pts) => Some(base_locus_probe(field, &map, pts)?.len() == pts.len()),
            None => None,
        };
        let (mut cands, mut zeros, mut undeclared) = (None, None, None);
        let mut zero_text = Vec::new();
        if let Some(orders) = &opts.structured_scan {
            let points = structured_points(field, map.source_vars, &structured_alphabet(field, orders));
            let found = base_locus_probe(field, &map, &points)?;
            cands = Some(points.len());
            zeros = Some(found.len());
            undeclared = declared.as_ref().map(|d| found.iter().filter(|p| !d.contains(p)).count());
            zero_text = found.iter().map(|p| p.iter().map(|x| field.format(x)).collect()).collect();
        }
        let jacobian = if opts.jacobian_trials > 0 {
            Some(jacobian_rank_probe(field, &map, opts.jacobian_trials, rng)?)
        } else {
            None
        };
        let key = ReportKey {
            hf: hf.clone(),
            fit: fit.clone(),
            ideal,
            base: (declared_vanish, zeros, undeclared),
            jacobian: jacobian.as_ref().map(|j| (j.min_rank, j.max_rank)),
        };
        let payload = ReportPayload {
            base_locus: BaseLocusFindings {
                declared: declared.as_ref().map(|d| d.len()),
                declared_vanish,
                structured_candidates: cands,
                structured_zeros: zeros,
                undeclared_zeros: undeclared,
                zeros: zero_text,
            },
            jacobian,
            map_degree: map_degree(&map, fit.degree),
            source_dim: map.source_dim(),
            target_dim: map.target_dim(),
            form_degree: map.degree,
        };
        Ok((key, payload))
    })?;
    let key = agreed.value;
    let p = agreed.payload;
    let nondegenerate = key.hf.get(1) == Some(&(p.target_dim + 1));
    let (map_degree, map_degree_error) = match p.map_degree {
        Ok(d) => (Some(d), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let conjecture_checks = match source {
        MapSource::Catalog(c) => conjecture_checks(*c, &key.fit, &key.ideal),
        MapSource::File(_) => Vec::new(),
    };
    Ok(MapReport {
        map: source.label(),
        source_dim: p.source_dim,
        target_dim: p.target_dim,
        form_degree: p.form_degree,
        hf: key.hf,
        fit: key.fit,
        nondegenerate,
        ideal: key.ideal,
        base_locus: p.base_locus,
        jacobian: p.jacobian,
        map_degree,
        map_degree_error,
        conjecture_checks,
        runs: agreed.runs,
    })
}

/// The conjectured h-vector of the projected Fermat image.
pub fn conjectured_phi_bar_h(m: usize) -> Vec<i64> {
    let m = m as i64;
    vec![1, 3 * (m - 1), 2 * m * m - 7 * m + 9, -3 * (m - 2) * (m - 3) / 2, (m - 2) * (m - 3) / 2]
}

/// The conjectured h-vector of the companion Fermat image.
pub fn conjectured_psi_h(m: usize) -> Vec<i64> {
    let m = m as i64;
    vec![1, 3 * (m - 1), 2 * m * m - 5 * m + 9, -3 * (m - 2) * (m - 3) / 2, (m - 1) * (m - 6) / 2]
}

fn conjecture_checks(map: super::CatalogMap, fit: &HilbertFit, ideal: &[IdealDims]) -> Vec<ConjectureCheck> {
    let quadrics = ideal.iter().find(|d| d.k == 2).map(|d| d.dim as i64);
    let cubics = ideal.iter().find(|d| d.k == 3).map(|d| d.mingens as i64);
    let mut out = Vec::new();
    let mut push = |label: String, conjectured: Vec<i64>, observed: Vec<i64>| {
        let mut a = conjectured.clone();
        while a.last() == Some(&0) {
            a.pop();
        }
        let agrees = a == observed;
        out.push(ConjectureCheck { label, conjectured, observed, agrees });
    };
    let (h, deg, q) = match map {
        super::CatalogMap::FermatPhiBar(m) => {
            let mi = m as i64;
            (conjectured_phi_bar_h(m), mi * mi + mi + 1, (5 * mi * mi - mi - 12) / 2)
        }
        super::CatalogMap::FermatPsi(m) => {
            let mi = m as i64;
            (conjectured_psi_h(m), (mi + 1) * (mi + 1), (5 * mi * mi - 5 * mi - 12) / 2)
        }
        _ => return out,
    };
    let name = map.label();
    push(format!("conjecture check: h-vector of {name}"), h, fit.h_vector.h.clone());
    push(format!("conjecture check: degree of {name}"), vec![deg], vec![fit.degree]);
    if let Some(q2) = quadrics {
        push(format!("conjecture check: quadrics in the ideal of {name}"), vec![q], vec![q2]);
    }
    if let Some(c) = cubics {
        let expected = if matches!(map, super::CatalogMap::FermatPsi(4)) { 10 } else { 1 };
        push(format!("conjecture check: minimal cubic generators of {name}"), vec![expected], vec![c]);
    }
    out
}

/// The cubic relation of the Fermat image, printed and corrected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CubicChecks {
    pub m: usize,
    pub printed_pullback_vanishes: bool,
    pub corrected_pullback_vanishes: bool,
    /// The corrected cubic is not in `S_1 * I(X)_2`.
    pub corrected_outside_quadric_multiples: bool,
    pub quadrics: usize,
}

pub fn fermat_cubic_checks<F: Field>(consensus: &Consensus<F>, m: usize) -> Result<CubicChecks> {
    let what = format!("fermat cubic m={m}");
    let agreed = consensus.run(&what, |field, rng| {
        let phi = super::CatalogMap::FermatPhi(m).build(field)?;
        let hf1 = image_hf_once(field, &phi, 1, 0, rng)?;
        let hf2 = image_hf_once(field, &phi, 2, hf1, rng)?;
        let quadrics = image_ideal_piece(field, &phi, 2, hf2, rng)?;
        let printed = crate::config::forms::fermat_cubic(field, m)?;
        let corrected = crate::config::forms::fermat_cubic_corrected(field, m)?;
        Ok(CubicChecks {
            m,
            printed_pullback_vanishes: pullback_vanishes(field, &phi, &printed)?,
            corrected_pullback_vanishes: pullback_vanishes(field, &phi, &corrected)?,
            corrected_outside_quadric_multiples: !in_linear_multiples(field, &corrected, &quadrics)?,
            quadrics: quadrics.len(),
        })
    })?;
    Ok(agreed.value)
}
