//! Unexpected hypersurfaces, the bihomogeneous form `F_Z` of the whole family,
//! and tangent-cone comparisons between its two specializations.
//!
//! A configuration `Z ⊂ P^N` admits an unexpected hypersurface of degree `d`
//! for multiplicities `m_1..m_s` when the forms of `[I(Z)]_d` with those
//! multiplicities at general points outnumber the naive count
//! `max(0, dim [I(Z)]_d - sum_i C(N+m_i-1, N))`. "General" is realized by
//! seeded random points over large primes, repeated by [`Consensus`].

use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{ConfigSource, PointConfiguration};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::generic::{random_point, Consensus, Run};
use crate::ideal::{ideal_dim, ideal_piece, FatPoint};
use crate::linalg::{self, Matrix};
use crate::poly::{
    binomial, check_characteristic, monomials, normalize_point, partial_condition_row, power_table, BihomForm,
    Mono, MonomialBasis, MultiPoly, Side,
};

pub const NORMALIZATION: &str = "first nonzero coefficient in graded term order (a-variables first) is 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Unexpected,
    Expected,
    EmptySystem,
}

impl Verdict {
    /// The defining inequality `actual > max(0, expected_raw)`, with an empty
    /// system never counted as unexpected.
    pub fn decide(actual: usize, expected_raw: i64) -> Self {
        if actual == 0 {
            Verdict::EmptySystem
        } else if actual as i64 > expected_raw.max(0) {
            Verdict::Unexpected
        } else {
            Verdict::Expected
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunValue {
    pub run: Run,
    pub ideal_dim: usize,
    pub actual: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnexpectedReport {
    pub config: String,
    pub ambient: usize,
    pub points: usize,
    pub degree: usize,
    pub mults: Vec<usize>,
    /// `dim [I(Z)]_d`.
    pub ideal_dim: usize,
    /// `sum_i C(N+m_i-1, N)`.
    pub conditions: usize,
    pub expected_raw: i64,
    pub expected: usize,
    pub actual: usize,
    pub runs: Vec<RunValue>,
    pub verdict: Verdict,
    pub unique: bool,
}

impl UnexpectedReport {
    /// Recompute the verdict from the stored numbers.
    pub fn recomputed_verdict(&self) -> Verdict {
        Verdict::decide(self.actual, self.expected_raw)
    }
}

/// Conditions imposed by fat points of the given multiplicities in `P^N`.
pub fn naive_conditions(ambient: usize, mults: &[usize]) -> usize {
    mults.iter().map(|&m| binomial(ambient + m - 1, ambient)).sum()
}

fn check_mults(mults: &[usize]) -> Result<()> {
    if mults.is_empty() || mults.contains(&0) {
        return Err(Error::Invalid("multiplicities must be a nonempty list of positive integers".into()));
    }
    Ok(())
}

/// `dim [I(Z)]_d - sum_i C(N+m_i-1, N)`, possibly negative.
pub fn expected_raw<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    d: usize,
    mults: &[usize],
) -> Result<i64> {
    check_mults(mults)?;
    let dim = ideal_dim(field, &config.points, config.nvars(), d, &[])?;
    Ok(dim as i64 - naive_conditions(config.ambient, mults) as i64)
}

pub fn expected_dimension<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    d: usize,
    mults: &[usize],
) -> Result<usize> {
    Ok(expected_raw(field, config, d, mults)?.max(0) as usize)
}

/// `dim [I(Z) ∩ I(P_1)^{m_1} ∩ ...]_d` for random points `P_i` drawn from `rng`.
pub fn actual_dimension_once<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    d: usize,
    mults: &[usize],
    rng: &mut ChaCha8Rng,
) -> Result<usize> {
    check_mults(mults)?;
    let fat: Vec<FatPoint<F::Elem>> = mults
        .iter()
        .map(|&m| FatPoint::new(random_point(field, config.nvars(), rng), m))
        .collect();
    ideal_dim(field, &config.points, config.nvars(), d, &fat)
}

/// `dim [I(Z)]_d` and the actual dimension, agreed over all seeds and fields.
pub fn actual_dimension<F: Field>(
    consensus: &Consensus<F>,
    source: &ConfigSource,
    d: usize,
    mults: &[usize],
) -> Result<(usize, usize, Vec<Run>)> {
    check_mults(mults)?;
    let what = format!("actual dimension {} d={d} m={mults:?}", source.label());
    let agreed = consensus.run(&what, |field, rng| {
        let config = source.resolve(field)?;
        let dim = ideal_dim(field, &config.points, config.nvars(), d, &[])?;
        let actual = actual_dimension_once(field, &config, d, mults, rng)?;
        Ok((dim, actual))
    })?;
    Ok((agreed.value.0, agreed.value.1, agreed.runs))
}

pub fn is_unexpected<F: Field>(
    consensus: &Consensus<F>,
    source: &ConfigSource,
    d: usize,
    mults: &[usize],
) -> Result<UnexpectedReport> {
    check_mults(mults)?;
    let config = source.resolve(consensus.first_field())?;
    let (dim, actual, runs) = actual_dimension(consensus, source, d, mults)?;
    let conditions = naive_conditions(config.ambient, mults);
    let raw = dim as i64 - conditions as i64;
    Ok(UnexpectedReport {
        config: config.name.clone(),
        ambient: config.ambient,
        points: config.len(),
        degree: d,
        mults: mults.to_vec(),
        ideal_dim: dim,
        conditions,
        expected_raw: raw,
        expected: raw.max(0) as usize,
        actual,
        runs: runs.into_iter().map(|run| RunValue { run, ideal_dim: dim, actual }).collect(),
        verdict: Verdict::decide(actual, raw),
        unique: actual == 1,
    })
}

/// Unexpected cone property `C(d)`: unexpected in degree `d` with one point
/// of multiplicity `d`.
pub fn cone_property<F: Field>(consensus: &Consensus<F>, source: &ConfigSource, d: usize) -> Result<bool> {
    if d == 0 {
        return Err(Error::Degree("cone property needs d >= 1".into()));
    }
    Ok(is_unexpected(consensus, source, d, &[d])?.verdict == Verdict::Unexpected)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BihomSolveResult<E> {
    /// Normalized per [`NORMALIZATION`].
    pub form: BihomForm<E>,
    pub bidegree: (usize, usize),
    /// `(t, kernel dimension)` for every tried `t`.
    pub kernel_dims: Vec<(usize, usize)>,
    pub normalization: &'static str,
    /// The basis `g_i` of `[I(Z)]_d` used for the unknowns.
    pub basis: Vec<MultiPoly<E>>,
    /// `F = sum_i coefficients[i](a) * basis[i](x)`.
    pub coefficients: Vec<MultiPoly<E>>,
    pub sample_points: usize,
}

/// Solve for `F_Z` over one field.
///
/// Write `F = sum_i h_i(a) g_i(x)` over a basis `g_i` of `[I(Z)]_d`, which
/// makes the vanishing on `Z` automatic. The unknowns are the coefficients of
/// the `h_i` in degree `t`. Multiplicity `m` at `x = a` means every order
/// `m-1` partial `sum_i h_i(a) ∂^alpha g_i(a)` vanishes identically in `a`
/// (lower orders follow by Euler's formula since `p > d`). These identities
/// are sampled at random `a`; every kernel vector is then verified
/// symbolically, and the sample is doubled if a spurious vector survives.
pub fn solve_bihom_once<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    d: usize,
    m: usize,
    t_max: usize,
    rng: &mut ChaCha8Rng,
) -> Result<BihomSolveResult<F::Elem>> {
    if m == 0 || t_max < m {
        return Err(Error::Invalid(format!("need 1 <= m <= t_max, got m={m}, t_max={t_max}")));
    }
    check_characteristic(field, d.max(t_max), m)?;
    let k = config.nvars();
    let piece = ideal_piece(field, config, d, &[])?;
    if piece.dim() == 0 {
        return Err(Error::NoSolution(format!("[I(Z)]_{d} is zero for {}", config.name)));
    }
    let xb = MonomialBasis::new(k, d);
    let alphas = monomials(k, m - 1);
    let mut kernel_dims = Vec::new();
    let mut sampled = 0;
    for t in m..=t_max {
        let ab = MonomialBasis::new(k, t);
        let unknowns = piece.dim() * ab.len();
        let mut npts = unknowns.div_ceil(alphas.len()) + 3;
        let mut verified = None;
        for _attempt in 0..4 {
            let mut mat = Matrix::zeros(field, 0, unknowns);
            for _ in 0..npts {
                let a = random_point(field, k, rng);
                let powers = power_table(field, &a, d.max(t));
                let avals: Vec<F::Elem> = ab.monos.iter().map(|nu| crate::poly::eval_mono(field, &powers, nu)).collect();
                for alpha in &alphas {
                    let cond = partial_condition_row(field, &xb, &powers, alpha);
                    let mut row = Vec::with_capacity(unknowns);
                    for g in &piece.basis {
                        let v = linalg::dot(field, g, &cond);
                        row.extend(avals.iter().map(|w| field.mul(&v, w)));
                    }
                    mat.push_row(row)?;
                }
            }
            sampled = npts;
            let kernel = linalg::kernel(field, &mat);
            if kernel.is_empty() {
                verified = Some(Vec::new());
                break;
            }
            let candidates: Vec<Vec<MultiPoly<F::Elem>>> = kernel
                .iter()
                .map(|v| v.chunks(ab.len()).map(|c| MultiPoly::from_dense(field, &ab, c)).collect())
                .collect();
            let partials: Vec<Vec<MultiPoly<F::Elem>>> = piece
                .polys(field)
                .iter()
                .map(|g| alphas.iter().map(|al| g.partial(field, al)).collect())
                .collect();
            let mut all_ok = true;
            for hs in &candidates {
                if !multiplicity_identity_holds(field, hs, &partials)? {
                    all_ok = false;
                    break;
                }
            }
            if all_ok {
                verified = Some(candidates);
                break;
            }
            npts *= 2;
        }
        let Some(solutions) = verified else {
            return Err(Error::NotStabilized(format!("kernel at t={t} kept spurious vectors")));
        };
        kernel_dims.push((t, solutions.len()));
        match solutions.len() {
            0 => continue,
            1 => {
                let hs = solutions.into_iter().next().expect("one solution");
                let basis = piece.polys(field);
                let pairs: Vec<_> = hs.iter().cloned().zip(basis.iter().cloned()).collect();
                let raw = BihomForm::from_pairs(field, &pairs, (t, d))?;
                let lead = raw.poly().leading().map(|(_, c)| c.clone()).expect("nonzero solution");
                let s = field.inv(&lead).expect("nonzero");
                return Ok(BihomSolveResult {
                    form: raw.scale(field, &s),
                    bidegree: (t, d),
                    kernel_dims,
                    normalization: NORMALIZATION,
                    basis,
                    coefficients: hs.iter().map(|h| h.scale(field, &s)).collect(),
                    sample_points: sampled,
                });
            }
            n => {
                return Err(Error::NotUnique(format!(
                    "{}: kernel of dimension {n} in bidegree ({t},{d})",
                    config.name
                )))
            }
        }
    }
    Err(Error::NoSolution(format!(
        "{}: no form of bidegree (t,{d}) with multiplicity {m} for t in {m}..={t_max}",
        config.name
    )))
}

/// `sum_i h_i(a) (∂^alpha g_i)(a) == 0` for every `alpha`.
fn multiplicity_identity_holds<F: Field>(
    field: &F,
    hs: &[MultiPoly<F::Elem>],
    partials: &[Vec<MultiPoly<F::Elem>>],
) -> Result<bool> {
    if hs.iter().all(|h| h.is_zero()) {
        return Ok(false);
    }
    let nalpha = partials.first().map(|p| p.len()).unwrap_or(0);
    for j in 0..nalpha {
        let mut acc = MultiPoly::zero(hs[0].nvars());
        for (h, dg) in hs.iter().zip(partials) {
            if !h.is_zero() && !dg[j].is_zero() {
                acc = acc.add(field, &h.mul(field, &dg[j])?)?;
            }
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// What all runs of [`solve_bihom`] must agree on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveKey {
    pub bidegree: (usize, usize),
    pub kernel_dims: Vec<(usize, usize)>,
    pub support: Vec<Mono>,
}

#[derive(Clone, Debug)]
pub struct SolvedFamily<E> {
    /// Over the consensus's first field.
    pub result: BihomSolveResult<E>,
    pub runs: Vec<Run>,
}

/// [`solve_bihom_once`] over every seed and field; the bidegree, the kernel
/// dimensions and the support of `F_Z` must agree.
pub fn solve_bihom<F: Field>(
    consensus: &Consensus<F>,
    source: &ConfigSource,
    d: usize,
    m: usize,
    t_max: Option<usize>,
) -> Result<SolvedFamily<F::Elem>> {
    let t_max = t_max.unwrap_or(m + 3);
    let what = format!("bihomogeneous form {} d={d} m={m}", source.label());
    let mut first: Option<BihomSolveResult<F::Elem>> = None;
    let agreed = consensus.run(&what, |field, rng| {
        let config = source.resolve(field)?;
        let r = solve_bihom_once(field, &config, d, m, t_max, rng)?;
        let key = SolveKey {
            bidegree: r.bidegree,
            kernel_dims: r.kernel_dims.clone(),
            support: r.form.poly().terms().map(|(mono, _)| mono.clone()).collect(),
        };
        // the first run is over the first field
        if first.is_none() {
            first = Some(r);
        }
        Ok(key)
    })?;
    Ok(SolvedFamily { result: first.expect("first field ran"), runs: agreed.runs })
}

/// Every specialization `F(a; x)` at random `a` vanishes on `Z` and has
/// multiplicity at least `m` at `a`. Returns the number of failures.
pub fn check_specializations<F: Field>(
    field: &F,
    form: &BihomForm<F::Elem>,
    config: &PointConfiguration<F::Elem>,
    m: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<usize> {
    let mut failures = 0;
    for _ in 0..samples {
        let a = random_point(field, form.side_vars(), rng);
        let f = form.specialize(field, Side::A, &a)?;
        let on_z = config.points.iter().all(|z| f.evaluate(field, z).map(|v| field.is_zero(&v)).unwrap_or(false));
        let mult = if f.is_zero() { usize::MAX } else { f.multiplicity_at(field, &a)? };
        if !on_z || mult < m {
            failures += 1;
        }
    }
    Ok(failures)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    /// `P` and `Q` independent random points.
    General,
    /// `Q` a second point of `F_{Z,P}` on a random line through `P`.
    Incident,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairObservation {
    pub kind: PairKind,
    /// Multiplicity of `F_{Z,P}(x)` at `x = P`.
    pub mult_fp_at_p: usize,
    /// Multiplicity of `F_{Z,Q}(y)` at `y = Q`.
    pub mult_fq_at_q: usize,
    pub mult_fp_at_q: usize,
    pub mult_fq_at_p: usize,
    /// Tangent cone of `F_{Z,P}` at `Q` equals that of `F_{Z,Q}` at `P` up to
    /// a scalar, both read as forms in one set of variables.
    pub cones_agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BmssReport {
    pub bidegree: (usize, usize),
    pub m: usize,
    pub trials: usize,
    pub skipped: usize,
    pub pairs: Vec<PairObservation>,
    pub mult_at_p_always_m: bool,
    pub dual_mult_always_m: bool,
    pub general_cones_agree: bool,
    pub incident_pairs: usize,
    pub incident_cones_agree: bool,
    /// At each sampled `P`: the tangent cone of `F_{Z,P}(x)` at `x = P`
    /// against that of `F_Z(y; P)` at `y = P`, when both have multiplicity `m`.
    pub diagonal: Vec<bool>,
    pub diagonal_cones_agree: bool,
}

/// Tangent cones of `F(P; x)` at `x = P` and of `F(y; P)` at `y = P`, if
/// both specializations have multiplicity `m` there.
pub fn diagonal_cones_agree<F: Field>(
    field: &F,
    form: &BihomForm<F::Elem>,
    p: &[F::Elem],
    m: usize,
) -> Result<Option<bool>> {
    let fp = form.specialize(field, Side::A, p)?;
    let fy = form.specialize(field, Side::X, p)?;
    if fp.is_zero() || fy.is_zero() {
        return Ok(None);
    }
    let (c1, k1) = fp.tangent_cone(field, p)?;
    let (c2, k2) = fy.tangent_cone(field, p)?;
    if k1 != m || k2 != m {
        return Ok(None);
    }
    Ok(Some(c1.equal_up_to_scalar(field, &c2)))
}

/// Compare the two specializations at `(P, Q)`; `None` when `Q = P`.
pub fn compare_pair<F: Field>(
    field: &F,
    form: &BihomForm<F::Elem>,
    p: &[F::Elem],
    q: &[F::Elem],
    kind: PairKind,
) -> Result<Option<PairObservation>> {
    let pn = normalize_point(field, p)?;
    let qn = normalize_point(field, q)?;
    if pn == qn {
        return Ok(None);
    }
    let fp = form.specialize(field, Side::A, &pn)?;
    let fq = form.specialize(field, Side::X, &qn)?;
    if fp.is_zero() || fq.is_zero() {
        return Ok(None);
    }
    let (cone_p, mult_fp_at_q) = fp.tangent_cone(field, &qn)?;
    let (cone_q, mult_fq_at_p) = fq.tangent_cone(field, &pn)?;
    Ok(Some(PairObservation {
        kind,
        mult_fp_at_p: fp.multiplicity_at(field, &pn)?,
        mult_fq_at_q: fq.multiplicity_at(field, &qn)?,
        mult_fp_at_q,
        mult_fq_at_p,
        cones_agree: cone_p.equal_up_to_scalar(field, &cone_q),
    }))
}

/// The residual intersection of `F_{Z,P}` with the line through `P` and `R`
/// when `F_{Z,P}` has degree `m+1` and multiplicity `m` at `P`.
fn incident_point<F: Field>(
    field: &F,
    fp: &MultiPoly<F::Elem>,
    p: &[F::Elem],
    r: &[F::Elem],
    m: usize,
) -> Result<Option<Vec<F::Elem>>> {
    let line: Vec<MultiPoly<F::Elem>> = p
        .iter()
        .zip(r)
        .map(|(pi, ri)| {
            MultiPoly::from_terms(
                field,
                2,
                vec![(Mono::from_slice(&[1, 0]), pi.clone()), (Mono::from_slice(&[0, 1]), ri.clone())],
            )
        })
        .collect();
    let restricted = fp.substitute(field, &line)?;
    let lam_s = restricted.coeff(&Mono::from_slice(&[1, m as u16])).cloned().unwrap_or(field.zero());
    let s_only = restricted.coeff(&Mono::from_slice(&[0, m as u16 + 1])).cloned().unwrap_or(field.zero());
    if field.is_zero(&s_only) || field.is_zero(&lam_s) {
        return Ok(None);
    }
    // roots of lam * c1 + s * c0 besides s = 0: (lam : s) = (c0 : -c1)
    let q: Vec<F::Elem> = p
        .iter()
        .zip(r)
        .map(|(pi, ri)| field.sub(&field.mul(&s_only, pi), &field.mul(&lam_s, ri)))
        .collect();
    Ok(normalize_point(field, &q).ok())
}

/// Multiplicities and tangent cones at `trials` random pairs. When
/// `F_{Z,P}` has degree `m+1`, each trial also builds an incident pair with
/// `Q` on `F_{Z,P}`.
pub fn bmss_report<F: Field>(
    field: &F,
    form: &BihomForm<F::Elem>,
    m: usize,
    trials: usize,
    rng: &mut ChaCha8Rng,
) -> Result<BmssReport> {
    let k = form.side_vars();
    let (_, d) = form.bidegree();
    let mut pairs = Vec::new();
    let mut skipped = 0;
    let mut diagonal = Vec::new();
    for _ in 0..trials {
        let p = random_point(field, k, rng);
        if let Some(agree) = diagonal_cones_agree(field, form, &p, m)? {
            diagonal.push(agree);
        }
        let q = random_point(field, k, rng);
        match compare_pair(field, form, &p, &q, PairKind::General)? {
            Some(obs) => pairs.push(obs),
            None => skipped += 1,
        }
        if d == m + 1 {
            let r = random_point(field, k, rng);
            let fp = form.specialize(field, Side::A, &p)?;
            let obs = match incident_point(field, &fp, &p, &r, m)? {
                Some(q) => compare_pair(field, form, &p, &q, PairKind::Incident)?,
                None => None,
            };
            match obs {
                Some(obs) => pairs.push(obs),
                None => skipped += 1,
            }
        }
    }
    let incident: Vec<&PairObservation> = pairs.iter().filter(|o| o.kind == PairKind::Incident).collect();
    Ok(BmssReport {
        bidegree: form.bidegree(),
        m,
        trials,
        skipped,
        mult_at_p_always_m: pairs.iter().all(|o| o.mult_fp_at_p == m),
        dual_mult_always_m: pairs.iter().all(|o| o.mult_fq_at_q == m),
        general_cones_agree: pairs.iter().filter(|o| o.kind == PairKind::General).all(|o| o.cones_agree),
        incident_pairs: incident.len(),
        incident_cones_agree: incident.iter().all(|o| o.cones_agree),
        pairs,
        diagonal_cones_agree: diagonal.iter().all(|&b| b),
        diagonal,
    })
}
