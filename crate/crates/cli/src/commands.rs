//! The computational subcommands.

use std::path::Path;

use serde_json::{json, Value};

use uxh::companion::{
    decompose, fermat_cubic_checks, map_report, listed_basis, reconstruct, span_dim_of_forms, spans_equal,
    support_basis, CatalogMap, MapFile, MapSource, ReportOptions,
};
use uxh::config::forms;
use uxh::config::{CatalogName, ConfigFile, ConfigSource};
use uxh::error::{Error, Result};
use uxh::field::{Field, PrimeField};
use uxh::generic::{purpose, rng_for};
use uxh::ideal::{difference, hilbert_function, ideal_dim, minimal_generators, HVector};
use uxh::poly::{default_names, BihomForm, MultiPoly, Side};
use uxh::unexpected::{bmss_report, check_specializations, is_unexpected, solve_bihom, SolvedFamily, Verdict};

use crate::report::{CommandResult, Outcome, Settings};
use crate::{BasisArg, Command, ConfigRef};

pub fn run(settings: &Settings, command: &Command) -> CommandResult {
    match command {
        Command::Config { config, emit_points } => config_cmd(settings, config, *emit_points),
        Command::Hilbert { config, ideal_degrees } => hilbert_cmd(settings, config, ideal_degrees),
        Command::Unexpected { config, degree, mults } => {
            let source = resolve_config(config)?;
            let r = is_unexpected(&settings.consensus, &source, *degree, mults)?;
            let outcome = if r.verdict == Verdict::Unexpected { Outcome::Ok } else { Outcome::Negative };
            Ok((json!(r), outcome))
        }
        Command::Bihom { config, degree, mult, t_max, check } => bihom_cmd(settings, config, *degree, *mult, *t_max, *check),
        Command::Companion { config, degree, mult, basis, t_max } => {
            companion_cmd(settings, config, *degree, *mult, *basis, *t_max)
        }
        Command::Image { map, m, max_k, ideal_degrees, jacobian_trials, scan_base_locus } => {
            let source = resolve_map(map, *m)?;
            let opts = ReportOptions {
                max_k: *max_k,
                ideal_degrees: ideal_degrees.clone(),
                jacobian_trials: *jacobian_trials,
                structured_scan: scan_base_locus.clone(),
            };
            let report = map_report(&settings.consensus.one_seed(), &source, &opts)?;
            let mut value = json!(report);
            if let MapSource::Catalog(CatalogMap::FermatPhi(m)) = source {
                value["cubic"] = json!(fermat_cubic_checks(&settings.consensus.one_seed(), m)?);
            }
            Ok((value, Outcome::Ok))
        }
        Command::Duality { config, degree, mult, trials, t_max } => {
            duality_cmd(settings, config, *degree, *mult, *trials, *t_max)
        }
        Command::Golden { .. } => Err(Error::Invalid("golden is dispatched separately".into())),
    }
}

/// A catalog name, or a path to a configuration file.
pub fn resolve_config(r: &ConfigRef) -> Result<ConfigSource> {
    if r.config.ends_with(".json") || Path::new(&r.config).is_file() {
        let file: ConfigFile = read_json(Path::new(&r.config))?;
        return Ok(ConfigSource::File(file));
    }
    Ok(ConfigSource::Catalog(CatalogName::parse(&r.config, r.m)?))
}

/// `catalog:<id>`, or a path to a map file.
pub fn resolve_map(name: &str, m: Option<usize>) -> Result<MapSource> {
    if name.starts_with("catalog:") {
        return Ok(MapSource::Catalog(CatalogMap::parse(name, m)?));
    }
    let file: MapFile = read_json(Path::new(name))?;
    Ok(MapSource::File(file))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn config_cmd(settings: &Settings, r: &ConfigRef, emit_points: bool) -> CommandResult {
    let source = resolve_config(r)?;
    // every working field must host the configuration
    for field in settings.consensus.fields() {
        source.resolve(field)?;
    }
    let field = settings.field();
    let config = source.resolve(field)?;
    let mut value = json!({
        "name": config.name,
        "ambient": config.ambient,
        "points": config.len(),
        "requires": config.requires,
    });
    if emit_points {
        value["field"] = json!(field.spec());
        value["coordinates"] = json!(config.to_file(field).points);
    }
    Ok((value, Outcome::Ok))
}

fn hilbert_cmd(settings: &Settings, r: &ConfigRef, degrees: &[usize]) -> CommandResult {
    let source = resolve_config(r)?;
    let top = degrees.iter().copied().max().unwrap_or(0);
    let agreed = settings.consensus.one_seed().run(&format!("hilbert {}", source.label()), |field, _| {
        let config = source.resolve(field)?;
        let hf = hilbert_function(field, &config, top)?;
        let mut dims = Vec::new();
        for &d in degrees {
            let dim = ideal_dim(field, &config.points, config.nvars(), d, &[])?;
            let gens = if d == 0 { 0 } else { minimal_generators(field, &config, d)? };
            dims.push((d, dim, gens));
        }
        Ok((config.len(), hf, dims))
    })?;
    let (points, hf, dims) = agreed.value;
    let values: Vec<i64> = hf.iter().map(|&x| x as i64).collect();
    let h = HVector::new(difference(&values, 1));
    let ideal: Vec<Value> = dims.iter().map(|(d, dim, gens)| json!({"d": d, "dim": dim, "mingens": gens})).collect();
    Ok((
        json!({
            "config": source.label(),
            "points": points,
            "hf": hf,
            "h_vector": h,
            "h_sum_is_points": h.sum() == points as i64,
            "ideal": ideal,
        }),
        Outcome::Ok,
    ))
}

/// Printed forms of catalog cases that the solver output is compared with.
fn printed_forms(field: &PrimeField, source: &ConfigSource, d: usize, m: usize) -> Result<Vec<(&'static str, BihomForm<u64>)>> {
    let ConfigSource::Catalog(name) = source else { return Ok(Vec::new()) };
    Ok(match (name, d, m) {
        (CatalogName::B4, 4, 4) => vec![("b4", forms::b4_cone(field)?)],
        (CatalogName::F4, 4, 4) => vec![("f4", forms::f4_cone(field)?)],
        (CatalogName::H3, 6, 5) => vec![("h3", forms::h3_cone(field)?)],
        (CatalogName::Fermat { m: k, augmented: true }, d, m) if d == k + 2 && m == k + 1 => vec![
            ("fermat_printed", forms::fermat_cone(field, *k)?),
            ("fermat_corrected", forms::fermat_cone_corrected(field, *k)?),
        ],
        _ => Vec::new(),
    })
}

fn solve(settings: &Settings, source: &ConfigSource, d: usize, m: usize, t_max: Option<usize>) -> Result<SolvedFamily<u64>> {
    solve_bihom(&settings.consensus, source, d, m, t_max)
}

fn bihom_cmd(settings: &Settings, r: &ConfigRef, d: usize, m: usize, t_max: Option<usize>, check: usize) -> CommandResult {
    let source = resolve_config(r)?;
    let solved = solve(settings, &source, d, m, t_max)?;
    let field = settings.field();
    let res = &solved.result;
    let config = source.resolve(field)?;
    let mut rng = rng_for(settings.seeds[0], purpose("bihom check"));
    let failures = check_specializations(field, &res.form, &config, m, check, &mut rng)?;
    let mut printed = serde_json::Map::new();
    for (name, form) in printed_forms(field, &source, d, m)? {
        printed.insert(name.into(), json!(res.form.equal_up_to_scalar(field, &form)));
    }
    Ok((
        json!({
            "config": source.label(),
            "degree": d,
            "mult": m,
            "bidegree": res.bidegree,
            "kernel_dims": res.kernel_dims,
            "unique": true,
            "normalization": res.normalization,
            "terms": res.form.poly().len(),
            "form": res.form.format(field),
            "specialization_checks": check,
            "specialization_failures": failures,
            "matches_printed": printed,
            "runs": solved.runs,
        }),
        if failures == 0 { Outcome::Ok } else { Outcome::Negative },
    ))
}

fn format_forms(field: &PrimeField, forms: &[MultiPoly<u64>], side: Side) -> Vec<String> {
    forms.iter().map(|f| f.format(field, &default_names(f.nvars(), side))).collect()
}

fn companion_cmd(
    settings: &Settings,
    r: &ConfigRef,
    d: usize,
    m: usize,
    basis_arg: BasisArg,
    t_max: Option<usize>,
) -> CommandResult {
    let source = resolve_config(r)?;
    let solved = solve(settings, &source, d, m, t_max)?;
    let field = settings.field();
    let form = &solved.result.form;
    let (t, _) = form.bidegree();
    let k = form.side_vars();
    let listed = if basis_arg == BasisArg::Listed { listed_basis(field, &source, d)? } else { None };
    let (basis_used, basis) = match listed {
        Some(b) => ("listed", b),
        None => ("support", support_basis(field, form)),
    };
    let hs = decompose(field, form, &basis)?;
    let rebuilt = reconstruct(field, &hs, &basis, form.bidegree())?;
    let span_h = span_dim_of_forms(field, &hs, k, t)?;
    let self_dual = if t == d { Some(spans_equal(field, &hs, &basis, k, d)?) } else { None };
    let mut printed = serde_json::Map::new();
    if basis_used == "listed" {
        if let ConfigSource::Catalog(name) = &source {
            let known = match (name, d, m) {
                (CatalogName::F4, 4, 4) => Some(forms::f4_cone_coefficients(field)?),
                (CatalogName::H3, 6, 5) => Some(forms::h3_cone_coefficients(field)?),
                _ => None,
            };
            if let Some(list) = known {
                printed.insert("h_list".into(), json!(uxh::companion::proportional_lists(field, &hs, &list)));
            }
            if let (CatalogName::H3, 6, 5) = (name, d, m) {
                printed.insert("span_equals_q".into(), json!(spans_equal(field, &hs, &forms::h3_companion(field)?, k, t)?));
            }
        }
    }
    Ok((
        json!({
            "config": source.label(),
            "bidegree": form.bidegree(),
            "basis": basis_used,
            "basis_len": basis.len(),
            "g": format_forms(field, &basis, Side::X),
            "h": format_forms(field, &hs, Side::A),
            "span_dim_h": span_h,
            "reconstruction_ok": rebuilt == *form,
            "self_dual_span": self_dual,
            "matches_printed": printed,
            "runs": solved.runs,
        }),
        if rebuilt == *form { Outcome::Ok } else { Outcome::Negative },
    ))
}

fn duality_cmd(
    settings: &Settings,
    r: &ConfigRef,
    d: usize,
    m: usize,
    trials: usize,
    t_max: Option<usize>,
) -> CommandResult {
    let source = resolve_config(r)?;
    let solved = solve(settings, &source, d, m, t_max)?;
    let field = settings.field();
    let form = &solved.result.form;
    let mut rng = rng_for(settings.seeds[0], purpose("duality"));
    let report = bmss_report(field, form, m, trials, &mut rng)?;
    let (t, _) = form.bidegree();
    let self_dual = match listed_basis(field, &source, d)? {
        Some(basis) if t == d => Some(spans_equal(field, &decompose(field, form, &basis)?, &basis, form.side_vars(), d)?),
        _ => None,
    };
    let outcome = if report.diagonal_cones_agree { Outcome::Ok } else { Outcome::Negative };
    Ok((json!({ "config": source.label(), "bmss": report, "self_dual_span": self_dual, "runs": solved.runs }), outcome))
}
