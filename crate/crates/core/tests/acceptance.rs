//! Acceptance criteria, one PASS/FAIL line per check.
//!
//! Every comparison is exact equality over F_p, agreed over the default
//! consensus (3 seeds x 2 primes). Lines listed in `KNOWN_RED` are printed
//! as FAIL but do not fail the target: they compare against printed
//! expressions that were shown to be wrong.

mod common;

use std::fmt::Display;
use std::time::{Duration, Instant};

use uxh::companion::{
    blowup_degree, decompose, fermat_cubic_checks, map_report, listed_basis, proportional_lists, reconstruct,
    span_dim_of_forms, spans_equal, support_basis, CatalogMap, MapReport, MapSource, ReportOptions,
};
use uxh::config::{catalog, f4_extra_points, forms, CatalogName, ConfigSource};
use uxh::error::{Error, Result};
use uxh::field::{Field, PrimeField};
use uxh::generic::{purpose, random_point, rng_for, Consensus, DEFAULT_SEEDS};
use uxh::ideal::{condition_matrix, h_vector_points, ideal_dim, minimal_generators, FatPoint};
use uxh::linalg::{self, kernel};
use uxh::poly::{binomial, BihomForm, Mono, MonomialBasis, MultiPoly, Side};
use uxh::unexpected::{cone_property, is_unexpected, solve_bihom, Verdict};

/// Checks against printed expressions that are known to be wrong.
const KNOWN_RED: &[(&str, &str)] = &[
    (
        "printed cubic relation pulls back to zero (m=4)",
        "for even m the printed signs fail; the corrected cubic is checked separately",
    ),
    (
        "printed cone expansion equals the solved form (m=4)",
        "the printed expansion lacks multiplicity m+1 at x = a; the corrected expansion is checked separately",
    ),
    (
        "printed cone expansion equals the solved form (m=5)",
        "the printed expansion lacks multiplicity m+1 at x = a; the corrected expansion is checked separately",
    ),
];

const TABLE: [(CatalogName, usize, usize); 5] = [
    (CatalogName::B3, 4, 3),
    (CatalogName::B4, 4, 4),
    (CatalogName::D4, 3, 3),
    (CatalogName::F4, 4, 4),
    (CatalogName::H3, 6, 5),
];

struct Line {
    id: u32,
    label: String,
    pass: bool,
}

struct Ctx {
    consensus: Consensus<PrimeField>,
    lines: Vec<Line>,
    disagreements: Vec<String>,
    /// Solved forms with the basis they decompose over.
    solved: Vec<(String, BihomForm<u64>, Vec<MultiPoly<u64>>)>,
    /// `(label, h-vector sum, degree)` of every fitted image.
    fits: Vec<(String, i64, i64)>,
}

impl Ctx {
    fn field(&self) -> &PrimeField {
        self.consensus.first_field()
    }

    fn check(&mut self, id: u32, label: impl Into<String>, pass: bool, detail: impl Display) {
        let label = label.into();
        let known = KNOWN_RED.iter().find(|(l, _)| *l == label);
        let tag = if pass { "PASS" } else { "FAIL" };
        let note = match (pass, known) {
            (false, Some((_, why))) => format!("  [known: {why}]"),
            _ => String::new(),
        };
        let detail = detail.to_string();
        let sep = if detail.is_empty() { "" } else { ": " };
        println!("{tag}  [{id:>2}] {label}{sep}{detail}{note}");
        self.lines.push(Line { id, label, pass });
    }

    fn budget(&mut self, id: u32, what: &str, start: Instant, limit_secs: u64) {
        let took = start.elapsed();
        self.check(id, format!("runtime of {what} within {limit_secs} s"), took <= Duration::from_secs(limit_secs), format!("{:.1} s", took.as_secs_f64()));
    }

    fn fit(&mut self, r: &MapReport) {
        self.fits.push((r.map.clone(), r.fit.h_vector.sum(), r.fit.degree));
    }
}

fn cat(name: CatalogName) -> ConfigSource {
    ConfigSource::Catalog(name)
}

fn fermat(m: usize, augmented: bool) -> ConfigSource {
    cat(CatalogName::Fermat { m, augmented })
}

fn map(c: CatalogMap) -> MapSource {
    MapSource::Catalog(c)
}

fn opts(max_k: usize, ideal_degrees: &[usize], jacobian_trials: usize) -> ReportOptions {
    ReportOptions { max_k, ideal_degrees: ideal_degrees.to_vec(), jacobian_trials, structured_scan: None }
}

fn table_row(ctx: &mut Ctx, name: CatalogName, d: usize, m: usize) -> Result<()> {
    let r = is_unexpected(&ctx.consensus, &cat(name), d, &[m])?;
    let ok = r.actual == 1 && r.expected == 0 && r.verdict == Verdict::Unexpected && r.unique && r.runs.len() == 6;
    ctx.check(
        1,
        format!("{} (N={}, d={d}, m={m}) actual 1, expected 0, unexpected, unique", name.label(), r.ambient),
        ok,
        format!("actual {} expected {} verdict {:?} over {} runs", r.actual, r.expected, r.verdict, r.runs.len()),
    );
    Ok(())
}

fn c1(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    for (name, d, m) in TABLE {
        table_row(ctx, name, d, m)?;
    }
    ctx.budget(1, "the five small rows", start, 30);
    let start = Instant::now();
    table_row(ctx, CatalogName::H4, 6, 6)?;
    ctx.budget(1, "H4", start, 300);
    Ok(())
}

fn c2(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    let src = cat(CatalogName::ExtendedFermat);
    let r = is_unexpected(&ctx.consensus, &src, 6, &[4, 4, 4])?;
    ctx.check(
        2,
        "28 points: unique unexpected sextic with three general quadruple points",
        r.points == 28 && r.actual == 1 && r.unique && r.verdict == Verdict::Unexpected,
        format!("points {} actual {} expected_raw {}", r.points, r.actual, r.expected_raw),
    );
    let cone = cone_property(&ctx.consensus, &src, 6)?;
    ctx.check(2, "28 points: cone property C(6)", cone, cone);
    ctx.budget(2, "the 28-point checks", start, 30);
    Ok(())
}

fn c3(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    let solved = solve_bihom(&ctx.consensus, &cat(CatalogName::B4), 4, 4, None)?;
    let f = ctx.field().clone();
    let form = solved.result.form;
    ctx.check(3, "B4 bidegree (4,4)", form.bidegree() == (4, 4), format!("{:?}", form.bidegree()));
    ctx.check(3, "B4 kernel dimension 1", solved.result.kernel_dims == [(4, 1)], format!("{:?}", solved.result.kernel_dims));
    let printed = forms::b4_cone(&f)?;
    ctx.check(3, "B4 form equals the printed form up to one scalar", form.equal_up_to_scalar(&f, &printed), "");
    let xyzw = form.x_slices().get(&Mono::from_slice(&[1, 1, 1, 1])).is_none_or(|s| s.is_zero());
    ctx.check(3, "B4 xyzw coefficient block is zero", xyzw, "");
    let mut rng = rng_for(DEFAULT_SEEDS[0], purpose("acceptance B4 Q points"));
    let mut failures = 0;
    for _ in 0..10 {
        let a = random_point(&f, 4, &mut rng);
        let curve = form.specialize(&f, Side::A, &a)?;
        for q in f4_extra_points(&f) {
            if !f.is_zero(&curve.evaluate(&f, &q)?) {
                failures += 1;
            }
        }
    }
    ctx.check(3, "F(a; Q_i) = 0 for Q_1..Q_8 at 10 random a", failures == 0, format!("{failures} failures"));
    ctx.budget(3, "the B4 checks", start, 30);
    let basis = support_basis(&f, &form);
    ctx.solved.push(("B4".into(), form, basis));
    Ok(())
}

fn c4(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    let solved = solve_bihom(&ctx.consensus, &cat(CatalogName::F4), 4, 4, None)?;
    let f = ctx.field().clone();
    let form = solved.result.form;
    let basis = forms::f4_generators(&f)?;
    let hs = decompose(&f, &form, &basis)?;
    let printed = forms::f4_cone_coefficients(&f)?;
    ctx.check(4, "F4 decomposition over m_0..m_11 matches the printed h_i up to one scalar", proportional_lists(&f, &hs, &printed), "");
    let dual = spans_equal(&f, &hs, &basis, 4, 4)?;
    ctx.check(4, "span{h_i(x)} = span{m_0..m_11}", dual, format!("dim {}", span_dim_of_forms(&f, &hs, 4, 4)?));
    ctx.budget(4, "the F4 decomposition", start, 10);
    ctx.solved.push(("F4".into(), form, basis));
    Ok(())
}

fn c5(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    let blow = blowup_degree(4, 3, &[1; 24])?;
    ctx.check(5, "blowup_degree(4, 3, 24 simple points) = 40", blow == 40, blow);
    let r = map_report(&ctx.consensus, &map(CatalogMap::F4Phi), &opts(10, &[], 100))?;
    ctx.check(5, "F4 image dimension 3, degree 40", (r.fit.dim, r.fit.degree) == (3, 40), format!("dim {} degree {}", r.fit.dim, r.fit.degree));
    let j = r.jacobian.clone().ok_or_else(|| Error::Invalid("no jacobian probe".into()))?;
    ctx.check(5, "F4 Jacobian rank 4 at 100 random non-base points", j.full_rank == 100 && j.samples == 100, format!("{} of {}", j.full_rank, j.samples));
    let md = r.map_degree.as_ref().map(|d| d.map_degree);
    ctx.check(5, "F4 map degree 1", md == Some(1), format!("{md:?}"));
    ctx.budget(5, "the F4 image", start, 600);
    ctx.fit(&r);
    Ok(())
}

fn c6(ctx: &mut Ctx) -> Result<()> {
    let agreed = ctx.consensus.run("acceptance H3 points", |f, _| {
        let config = catalog(f, CatalogName::H3)?;
        let h = h_vector_points(f, &config)?.h;
        let i5 = ideal_dim(f, &config.points, 3, 5, &[])?;
        let quintics = forms::h3_quintics(f)?;
        let mb = MonomialBasis::new(3, 5);
        let dense = quintics.iter().map(|q| q.to_dense(f, &mb)).collect::<Result<Vec<_>>>()?;
        let vanish = quintics.iter().all(|q| config.points.iter().all(|p| q.evaluate(f, p).map(|v| f.is_zero(&v)).unwrap_or(false)));
        let q_span = if vanish { linalg::span_dim(f, &dense, mb.len())? } else { 0 };
        let i6 = ideal_dim(f, &config.points, 3, 6, &[])?;
        let g5 = minimal_generators(f, &config, 5)?;
        let g7 = minimal_generators(f, &config, 7)?;
        Ok((h, i5, q_span, i6, g5, g7))
    })?;
    let (h, i5, q_span, i6, g5, g7) = agreed.value;
    ctx.check(6, "H3 h-vector (1,2,3,4,5)", h == [1, 2, 3, 4, 5], format!("{h:?}"));
    ctx.check(6, "H3 dim I_5 = 6, spanned by f_1..f_6", i5 == 6 && q_span == 6, format!("dim {i5}, span of f_i {q_span}"));
    ctx.check(6, "H3 dim I_6 = 13", i6 == 13, i6);
    ctx.check(6, "H3 minimal generators: 6 in degree 5, 0 in degree 7", (g5, g7) == (6, 0), format!("{g5}, {g7}"));
    Ok(())
}

fn c7(ctx: &mut Ctx) -> Result<()> {
    let solved = solve_bihom(&ctx.consensus, &cat(CatalogName::H3), 6, 5, None)?;
    let f = ctx.field().clone();
    let form = solved.result.form;
    ctx.check(
        7,
        "H3 bidegree (5,6), unique",
        form.bidegree() == (5, 6) && solved.result.kernel_dims == [(5, 1)],
        format!("{:?} kernel dims {:?}", form.bidegree(), solved.result.kernel_dims),
    );
    let basis = forms::h3_sextics(&f)?;
    let hs = decompose(&f, &form, &basis)?;
    ctx.check(7, "H3 decomposition over g_1..g_13 matches the printed h_i up to one scalar", proportional_lists(&f, &hs, &forms::h3_cone_coefficients(&f)?), "");
    let dim = span_dim_of_forms(&f, &hs, 3, 5)?;
    let same = spans_equal(&f, &hs, &forms::h3_companion(&f)?, 3, 5)?;
    ctx.check(7, "dim span{h_i} = 12 and equals span{q_1..q_12}", dim == 12 && same, format!("dim {dim}, equal {same}"));
    ctx.solved.push(("H3".into(), form, basis));
    Ok(())
}

fn c8(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    let phi = map_report(&ctx.consensus, &map(CatalogMap::H3Phi), &opts(10, &[3], 0))?;
    let blow = phi.map_degree.as_ref().map(|d| (d.blowup_degree, d.map_degree));
    ctx.check(
        8,
        "H3 phi image degree 21 = 36 - 15 by both routes",
        phi.fit.degree == 21 && blow == Some((21, 1)),
        format!("fit {} blow-up {blow:?}", phi.fit.degree),
    );
    let cubics = phi.ideal[0].mingens;
    ctx.check(8, "H3 phi image: 0 minimal generators in degree 3", cubics == 0, cubics);
    let psi = map_report(&ctx.consensus, &map(CatalogMap::H3Psi), &opts(10, &[], 20))?;
    let j = psi.jacobian.clone().ok_or_else(|| Error::Invalid("no jacobian probe".into()))?;
    ctx.check(
        8,
        "H3 psi image degree 25, Jacobian rank 3 at every sample",
        psi.fit.degree == 25 && j.min_rank == 3 && j.max_rank == 3,
        format!("degree {} ranks {}..{}", psi.fit.degree, j.min_rank, j.max_rank),
    );
    let bar = map_report(&ctx.consensus, &map(CatalogMap::H3Bar), &opts(10, &[2], 0))?;
    ctx.check(
        8,
        "H3 bar image degree 21, dim I_2 = 32, h-vector (1,9,13,-3,1)",
        bar.fit.degree == 21 && bar.ideal[0].dim == 32 && bar.fit.h_vector.h == [1, 9, 13, -3, 1],
        format!("degree {} I_2 {} h {:?}", bar.fit.degree, bar.ideal[0].dim, bar.fit.h_vector.h),
    );
    ctx.budget(8, "the H3 images", start, 600);
    for r in [&phi, &psi, &bar] {
        ctx.fit(r);
    }
    Ok(())
}

fn c9(ctx: &mut Ctx) -> Result<()> {
    for m in [4usize, 5] {
        let r = is_unexpected(&ctx.consensus, &fermat(m, true), m + 2, &[m + 1])?;
        let dim = (m * m + m) / 2 + 3;
        ctx.check(9, format!("dim I(Z(F_{{{m},3}}))_{} = {dim}", m + 2), r.ideal_dim == dim, r.ideal_dim);
        ctx.check(
            9,
            format!("Z(F_{{{m},3}}) unexpected in degree {} with multiplicity {}", m + 2, m + 1),
            r.verdict == Verdict::Unexpected && r.actual == 1,
            format!("actual {} expected_raw {}", r.actual, r.expected_raw),
        );
    }
    let r = is_unexpected(&ctx.consensus, &fermat(5, false), 7, &[6])?;
    ctx.check(9, "Z(F_{5,0}) unexpected in degree 7 with multiplicity 6", r.verdict == Verdict::Unexpected && r.actual == 1, format!("actual {}", r.actual));
    let solved = solve_bihom(&ctx.consensus, &fermat(5, false), 7, 6, None)?;
    let f = ctx.field().clone();
    let mut rng = rng_for(DEFAULT_SEEDS[0], purpose("acceptance coordinate points"));
    let mut misses = 0;
    for _ in 0..10 {
        let a = random_point(&f, 3, &mut rng);
        let curve = solved.result.form.specialize(&f, Side::A, &a)?;
        for i in 0..3 {
            let mut e = vec![f.zero(); 3];
            e[i] = f.one();
            if !f.is_zero(&curve.evaluate(&f, &e)?) {
                misses += 1;
            }
        }
    }
    ctx.check(9, "the F_{5,0} curves pass through the three coordinate points", misses == 0, format!("{misses} misses in 30"));
    let basis = support_basis(&f, &solved.result.form);
    ctx.solved.push(("F_{5,0}".into(), solved.result.form, basis));
    let b3 = is_unexpected(&ctx.consensus, &cat(CatalogName::B3), 4, &[3])?;
    let f2 = is_unexpected(&ctx.consensus, &fermat(2, true), 4, &[3])?;
    ctx.check(
        9,
        "Z(F_{2,3}) reproduces the B3 verdict",
        (f2.verdict, f2.actual, f2.expected_raw) == (b3.verdict, b3.actual, b3.expected_raw),
        format!("{:?}/{} vs {:?}/{}", f2.verdict, f2.actual, b3.verdict, b3.actual),
    );
    Ok(())
}

fn c10_one(ctx: &mut Ctx, m: usize) -> Result<()> {
    let mi = m as i64;
    let phi = map_report(&ctx.consensus, &map(CatalogMap::FermatPhi(m)), &opts(6, &[2, 3], 0))?;
    let deg = mi * mi + mi + 1;
    ctx.check(10, format!("phi image degree m^2+m+1 = {deg} (m={m})"), phi.fit.degree == deg, phi.fit.degree);
    let q = 3 * binomial(m + 2, 4);
    ctx.check(10, format!("dim I(X)_2 = 3 C(m+2,4) = {q} (m={m})"), phi.ideal[0].dim == q, phi.ideal[0].dim);
    ctx.check(10, format!("exactly one minimal cubic generator (m={m})"), phi.ideal[1].mingens == 1, phi.ideal[1].mingens);
    let n = phi.target_dim as i64;
    let h = vec![1, n - 2, n - 2];
    ctx.check(10, format!("h-vector (1,N-2,N-2) = {h:?} (m={m})"), phi.fit.h_vector.h == h, format!("{:?}", phi.fit.h_vector.h));
    ctx.fit(&phi);

    let cubic = fermat_cubic_checks(&ctx.consensus, m)?;
    ctx.check(10, format!("printed cubic relation pulls back to zero (m={m})"), cubic.printed_pullback_vanishes, cubic.printed_pullback_vanishes);
    ctx.check(10, format!("corrected cubic relation pulls back to zero (m={m})"), cubic.corrected_pullback_vanishes, cubic.corrected_pullback_vanishes);
    ctx.check(
        10,
        format!("cubic relation not in S_1 I(X)_2 (m={m})"),
        cubic.corrected_outside_quadric_multiples,
        cubic.corrected_outside_quadric_multiples,
    );

    let bar = map_report(&ctx.consensus, &map(CatalogMap::FermatPhiBar(m)), &opts(10, &[2], 0))?;
    ctx.check(10, format!("conjecture check: phi-bar degree {deg} (m={m})"), bar.fit.degree == deg, bar.fit.degree);
    let bq = (5 * mi * mi - mi - 12) / 2;
    ctx.check(10, format!("conjecture check: phi-bar quadrics {bq} (m={m})"), bar.ideal[0].dim as i64 == bq, bar.ideal[0].dim);
    let mut bh = uxh::companion::conjectured_phi_bar_h(m);
    while bh.last() == Some(&0) {
        bh.pop();
    }
    ctx.check(10, format!("conjecture check: phi-bar h-vector {bh:?} (m={m})"), bar.fit.h_vector.h == bh, format!("{:?}", bar.fit.h_vector.h));
    ctx.fit(&bar);

    let psi_degrees: &[usize] = if m == 4 { &[2, 3] } else { &[2] };
    let psi = map_report(&ctx.consensus, &map(CatalogMap::FermatPsi(m)), &opts(10, psi_degrees, 0))?;
    let pd = (mi + 1) * (mi + 1);
    ctx.check(10, format!("conjecture check: psi degree {pd} (m={m})"), psi.fit.degree == pd, psi.fit.degree);
    let pq = (5 * mi * mi - 5 * mi - 12) / 2;
    ctx.check(10, format!("conjecture check: psi quadrics {pq} (m={m})"), psi.ideal[0].dim as i64 == pq, psi.ideal[0].dim);
    ctx.check(
        10,
        format!("conjecture check: psi h-vector has a negative entry (m={m})"),
        !psi.fit.h_vector.nonnegative,
        format!("{:?}", psi.fit.h_vector.h),
    );
    if m == 4 {
        let c = psi.ideal[1].mingens;
        ctx.check(10, "conjecture check: psi minimal cubic generators 10 (m=4)", c == 10, c);
    }
    ctx.fit(&psi);

    let solved = solve_bihom(&ctx.consensus, &fermat(m, true), m + 2, m + 1, None)?;
    let f = ctx.field().clone();
    let form = solved.result.form;
    let printed = forms::fermat_cone(&f, m)?;
    let corrected = forms::fermat_cone_corrected(&f, m)?;
    ctx.check(10, format!("printed cone expansion equals the solved form (m={m})"), form.equal_up_to_scalar(&f, &printed), "");
    ctx.check(10, format!("corrected cone expansion equals the solved form (m={m})"), form.equal_up_to_scalar(&f, &corrected), "");
    let basis = listed_basis(&f, &fermat(m, true), m + 2)?.ok_or_else(|| Error::Invalid("no generator list".into()))?;
    ctx.solved.push((format!("F_{{{m},3}}"), form, basis));
    Ok(())
}

fn c10(ctx: &mut Ctx) -> Result<()> {
    let start = Instant::now();
    c10_one(ctx, 4)?;
    let start5 = Instant::now();
    c10_one(ctx, 5)?;
    ctx.budget(10, "the m=5 images", start5, 900);
    ctx.budget(10, "the Fermat images", start, 1800);
    Ok(())
}

/// Rank plus nullity equals the column count, and the kernel is annihilated.
fn rank_nullity(f: &PrimeField, m: &linalg::Matrix<u64>) -> Result<bool> {
    let ker = kernel(f, m);
    if linalg::rank(f, m) + ker.len() != m.ncols() {
        return Ok(false);
    }
    for v in &ker {
        if m.mul_vec(f, v)?.iter().any(|x| !f.is_zero(x)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn c11(ctx: &mut Ctx) -> Result<()> {
    // enumeration oracle
    let cases = common::tiny_cases(DEFAULT_SEEDS[0]);
    let mut agree = 0;
    let mut matrices_ok = true;
    for case in &cases {
        let f = PrimeField::new(case.p)?;
        let dim = ideal_dim(&f, &case.points, case.n + 1, case.d, &[])?;
        let count = common::count_vanishing_forms(case.p, &case.points, case.d);
        if common::log_p(case.p, count) == Some(dim) {
            agree += 1;
        }
        matrices_ok &= rank_nullity(&f, &condition_matrix(&f, case.n + 1, &case.points, case.d, &[])?)?;
    }
    ctx.check(11, "enumeration oracle on 20 tiny random configurations", agree == cases.len(), format!("{agree} of {}", cases.len()));

    // the condition matrices behind every verdict, with a fat general point
    let rows = TABLE.iter().map(|&(n, d, m)| (n, d, m)).chain([
        (CatalogName::H4, 6, 6),
        (CatalogName::ExtendedFermat, 6, 6),
        (CatalogName::Fermat { m: 4, augmented: true }, 6, 5),
        (CatalogName::Fermat { m: 5, augmented: false }, 7, 6),
    ]);
    let mut count = cases.len();
    for field in ctx.consensus.fields().to_vec() {
        let mut rng = rng_for(DEFAULT_SEEDS[0], purpose("acceptance rank-nullity"));
        for (name, d, m) in rows.clone() {
            let config = catalog(&field, name)?;
            let fat = [FatPoint::new(random_point(&field, config.nvars(), &mut rng), m)];
            for extra in [&[][..], &fat[..]] {
                matrices_ok &= rank_nullity(&field, &condition_matrix(&field, config.nvars(), &config.points, d, extra)?)?;
                count += 1;
            }
        }
    }
    ctx.check(11, "rank + nullity = columns, kernel annihilated", matrices_ok, format!("{count} matrices"));

    let f = ctx.field().clone();
    // the golden cases; the earlier criteria already solved most of them
    let golden = [
        ("B3", cat(CatalogName::B3), 4, 3),
        ("B4", cat(CatalogName::B4), 4, 4),
        ("F4", cat(CatalogName::F4), 4, 4),
        ("H3", cat(CatalogName::H3), 6, 5),
        ("F_{5,0}", fermat(5, false), 7, 6),
        ("F_{4,3}", fermat(4, true), 6, 5),
        ("F_{5,3}", fermat(5, true), 7, 6),
    ];
    for (label, source, d, m) in golden {
        if ctx.solved.iter().any(|(l, _, _)| l == label) {
            continue;
        }
        let form = solve_bihom(&ctx.consensus, &source, d, m, None)?.result.form;
        let basis = match listed_basis(&f, &source, d)? {
            Some(b) => b,
            None => support_basis(&f, &form),
        };
        ctx.solved.push((label.into(), form, basis));
    }
    let mut rebuilt = Vec::new();
    for (label, form, basis) in &ctx.solved {
        let hs = decompose(&f, form, basis)?;
        if reconstruct(&f, &hs, basis, form.bidegree())? != *form {
            rebuilt.push(label.clone());
        }
    }
    ctx.check(
        11,
        "sum h_i g_i = F for every solved form",
        rebuilt.is_empty(),
        format!("{} forms, mismatches {rebuilt:?}", ctx.solved.len()),
    );

    let mut bad = Vec::new();
    let names = [
        CatalogName::B3,
        CatalogName::B4,
        CatalogName::D4,
        CatalogName::F4,
        CatalogName::H3,
        CatalogName::H4,
        CatalogName::ExtendedFermat,
        CatalogName::Fermat { m: 4, augmented: true },
        CatalogName::Fermat { m: 5, augmented: false },
    ];
    for name in names {
        let config = catalog(&f, name)?;
        if h_vector_points(&f, &config)?.sum() != config.len() as i64 {
            bad.push(name.label());
        }
    }
    if ctx.fits.is_empty() {
        for c in [CatalogMap::H3Phi, CatalogMap::H3Psi, CatalogMap::H3Bar] {
            let r = map_report(&ctx.consensus, &map(c), &opts(10, &[], 0))?;
            ctx.fit(&r);
        }
    }
    for (label, sum, degree) in &ctx.fits {
        if sum != degree {
            bad.push(label.clone());
        }
    }
    ctx.check(
        11,
        "every h-vector sums to its degree",
        bad.is_empty(),
        format!("{} point sets, {} images, mismatches {bad:?}", names.len(), ctx.fits.len()),
    );
    let clean = ctx.disagreements.is_empty();
    let detail = if clean { "no disagreement".to_string() } else { ctx.disagreements.join("; ") };
    ctx.check(11, "every computation above agreed across 3 seeds x 2 primes", clean, detail);
    Ok(())
}

type Criterion = fn(&mut Ctx) -> Result<()>;

fn main() {
    let criteria: [(u32, Criterion); 11] =
        [(1, c1), (2, c2), (3, c3), (4, c4), (5, c5), (6, c6), (7, c7), (8, c8), (9, c9), (10, c10), (11, c11)];
    // UXH_ACCEPT_ONLY=3,7 runs a subset while iterating
    let only: Option<Vec<u32>> =
        std::env::var("UXH_ACCEPT_ONLY").ok().map(|s| s.split(',').filter_map(|x| x.trim().parse().ok()).collect());
    let mut ctx = Ctx {
        consensus: Consensus::standard(),
        lines: Vec::new(),
        disagreements: Vec::new(),
        solved: Vec::new(),
        fits: Vec::new(),
    };
    let total = Instant::now();
    for (id, run) in criteria {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        if let Err(e) = run(&mut ctx) {
            if let Error::Disagreement(msg) = &e {
                ctx.disagreements.push(msg.clone());
            }
            ctx.check(id, "criterion ran to completion", false, format!("error [{}]: {e}", e.code()));
        }
    }
    let failed: Vec<&Line> = ctx.lines.iter().filter(|l| !l.pass).collect();
    let unexpected: Vec<&&Line> = failed.iter().filter(|l| !KNOWN_RED.iter().any(|(k, _)| *k == l.label)).collect();
    println!(
        "{} checks, {} passed, {} failed ({} known), {:.1} s",
        ctx.lines.len(),
        ctx.lines.len() - failed.len(),
        failed.len(),
        failed.len() - unexpected.len(),
        total.elapsed().as_secs_f64()
    );
    for l in &unexpected {
        println!("unexpected failure in criterion {}: {}", l.id, l.label);
    }
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
