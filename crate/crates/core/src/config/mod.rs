//! Point configurations: the catalog of root-system and Fermat-type
//! configurations, points dual to linear forms, and JSON loading.
//!
//! Points are normalized so that their last nonzero coordinate is 1; equality
//! of normalized coordinate vectors is equality of projective points.

pub mod forms;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{normalize_point, parse_poly, MultiPoly, Symbols};

/// Constants a configuration needs from the field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Requirements {
    pub golden: bool,
    pub zeta: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfiguration<E> {
    pub name: String,
    /// Ambient projective dimension `N`; points have `N + 1` coordinates.
    pub ambient: usize,
    pub points: Vec<Vec<E>>,
    pub requires: Requirements,
}

impl<E: Clone + PartialEq + fmt::Debug> PointConfiguration<E> {
    /// Normalize and validate: every point has `ambient + 1` coordinates, is
    /// nonzero, and no two coincide.
    pub fn new<F: Field<Elem = E>>(
        field: &F,
        name: impl Into<String>,
        ambient: usize,
        points: Vec<Vec<E>>,
        requires: Requirements,
    ) -> Result<Self> {
        let name = name.into();
        let mut out: Vec<Vec<E>> = Vec::with_capacity(points.len());
        for (i, p) in points.into_iter().enumerate() {
            if p.len() != ambient + 1 {
                return Err(Error::InvalidConfig(format!(
                    "{name}: point {i} has {} coordinates, expected {}",
                    p.len(),
                    ambient + 1
                )));
            }
            let q = normalize_point(field, &p)
                .map_err(|_| Error::InvalidConfig(format!("{name}: point {i} is zero")))?;
            if let Some(j) = out.iter().position(|r| *r == q) {
                return Err(Error::InvalidConfig(format!(
                    "{name}: points {j} and {i} coincide"
                )));
            }
            out.push(q);
        }
        Ok(PointConfiguration { name, ambient, points: out, requires })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn nvars(&self) -> usize {
        self.ambient + 1
    }

    /// Union, skipping points already present.
    pub fn union<F: Field<Elem = E>>(&self, field: &F, name: &str, other: &Self) -> Result<Self> {
        if self.ambient != other.ambient {
            return Err(Error::Dimension("configurations in different spaces".into()));
        }
        let mut pts = self.points.clone();
        for p in &other.points {
            if !pts.contains(p) {
                pts.push(p.clone());
            }
        }
        let requires = Requirements {
            golden: self.requires.golden || other.requires.golden,
            zeta: self.requires.zeta.or(other.requires.zeta),
        };
        Self::new(field, name, self.ambient, pts, requires)
    }

    pub fn contains(&self, point: &[E]) -> bool {
        self.points.iter().any(|p| p.as_slice() == point)
    }

    /// JSON shape used by the loader and by `--emit-points`.
    pub fn to_file<F: Field<Elem = E>>(&self, field: &F) -> ConfigFile {
        ConfigFile {
            name: Some(self.name.clone()),
            n: self.ambient,
            zeta: self.requires.zeta,
            points: self
                .points
                .iter()
                .map(|p| p.iter().map(|x| field.format(x)).collect())
                .collect(),
        }
    }
}

/// On-disk configuration: `{"N": 2, "points": [["1","-1","0"], ...]}`.
/// Coordinates are constant expressions in integers, `u` (golden ratio) and
/// `zeta` (a primitive root of unity whose order is given by `zeta`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<u64>,
    pub points: Vec<Vec<String>>,
}

/// Add `u` and `zeta` to `syms` when `text` mentions them.
pub fn with_constants<F: Field>(
    field: &F,
    mut syms: Symbols<F::Elem>,
    text: &str,
    zeta_order: Option<u64>,
) -> Result<Symbols<F::Elem>> {
    if text.contains('u') {
        let u = field.golden_ratio().map_err(|e| {
            Error::Unavailable(format!(
                "`{text}` uses the golden ratio: {e}; choose a prime with 5 a square mod p or extension \"golden\""
            ))
        })?;
        syms = syms.with_const("u", u);
    }
    if text.contains("zeta") {
        let m = zeta_order.ok_or_else(|| {
            Error::InvalidConfig(format!("`{text}` uses zeta but no \"zeta\" order is given"))
        })?;
        let z = field.primitive_root_of_unity(m).map_err(|e| {
            Error::Unavailable(format!(
                "`{text}` needs a root of unity of order {m}: {e}; choose p = 1 mod {m} or extension {{\"zeta\": {m}}}"
            ))
        })?;
        syms = syms.with_const("zeta", z);
    }
    Ok(syms)
}

/// Parse one constant coordinate expression.
pub fn parse_coordinate<F: Field>(field: &F, text: &str, zeta_order: Option<u64>) -> Result<F::Elem> {
    let syms = with_constants(field, Symbols::new(Vec::new()), text, zeta_order)?;
    let p = parse_poly(field, text, &syms)?;
    let value = p.terms().next().map(|(_, c)| c.clone());
    Ok(value.unwrap_or_else(|| field.zero()))
}

impl ConfigFile {
    pub fn resolve<F: Field>(&self, field: &F) -> Result<PointConfiguration<F::Elem>> {
        let mut points = Vec::with_capacity(self.points.len());
        let mut golden = false;
        for p in &self.points {
            let mut row = Vec::with_capacity(p.len());
            for c in p {
                golden |= c.contains('u');
                row.push(parse_coordinate(field, c, self.zeta)?);
            }
            points.push(row);
        }
        let requires = Requirements { golden, zeta: self.zeta };
        let name = self.name.clone().unwrap_or_else(|| "custom".into());
        PointConfiguration::new(field, name, self.n, points, requires)
    }
}

pub fn load_config<F: Field>(field: &F, path: &std::path::Path) -> Result<PointConfiguration<F::Elem>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let file: ConfigFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.resolve(field)
}

/// Named configurations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogName {
    B3,
    B4,
    D4,
    F4,
    H3,
    H4,
    /// `Z(F_{m,0})`, or `Z(F_{m,3})` when augmented by the coordinate points.
    Fermat { m: usize, augmented: bool },
    /// The 28 points in `P^3` dual to `xyzw (x^4-y^4)(x^4-z^4)...(z^4-w^4)`.
    ExtendedFermat,
}

impl CatalogName {
    /// `B3`, `B4`, `D4`, `F4`, `H3`, `H4`, `fermat0`/`fermat3` (with `m`),
    /// `fermat28`. Case-insensitive.
    pub fn parse(name: &str, m: Option<usize>) -> Result<Self> {
        let need_m = || m.ok_or_else(|| Error::InvalidConfig(format!("`{name}` needs a parameter m")));
        Ok(match name.to_ascii_lowercase().as_str() {
            "b3" => CatalogName::B3,
            "b4" => CatalogName::B4,
            "d4" => CatalogName::D4,
            "f4" => CatalogName::F4,
            "h3" => CatalogName::H3,
            "h4" => CatalogName::H4,
            "fermat" | "fermat0" => CatalogName::Fermat { m: need_m()?, augmented: false },
            "fermat3" => CatalogName::Fermat { m: need_m()?, augmented: true },
            "fermat28" | "extended-fermat" => CatalogName::ExtendedFermat,
            _ => return Err(Error::UnknownConfig(name.to_string())),
        })
    }

    pub fn label(&self) -> String {
        match self {
            CatalogName::B3 => "B3".into(),
            CatalogName::B4 => "B4".into(),
            CatalogName::D4 => "D4".into(),
            CatalogName::F4 => "F4".into(),
            CatalogName::H3 => "H3".into(),
            CatalogName::H4 => "H4".into(),
            CatalogName::Fermat { m, augmented: false } => format!("F_{{{m},0}}"),
            CatalogName::Fermat { m, augmented: true } => format!("F_{{{m},3}}"),
            CatalogName::ExtendedFermat => "extended-fermat-28".into(),
        }
    }
}

/// A catalog entry or a configuration file, resolved per field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConfigSource {
    Catalog(CatalogName),
    File(ConfigFile),
}

impl ConfigSource {
    pub fn resolve<F: Field>(&self, field: &F) -> Result<PointConfiguration<F::Elem>> {
        match self {
            ConfigSource::Catalog(name) => catalog(field, *name),
            ConfigSource::File(file) => file.resolve(field),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ConfigSource::Catalog(name) => name.label(),
            ConfigSource::File(file) => file.name.clone().unwrap_or_else(|| "custom".into()),
        }
    }

    /// Integer points, mainly for tests and small examples.
    pub fn from_integers(name: &str, ambient: usize, points: &[&[i64]]) -> Self {
        ConfigSource::File(ConfigFile {
            name: Some(name.to_string()),
            n: ambient,
            zeta: None,
            points: points.iter().map(|p| p.iter().map(|c| c.to_string()).collect()).collect(),
        })
    }
}

fn int_points<F: Field>(field: &F, pts: &[&[i64]]) -> Vec<Vec<F::Elem>> {
    pts.iter().map(|p| p.iter().map(|&c| field.from_i64(c)).collect()).collect()
}

/// `e_i` and `e_i +- e_j` (one point per antipodal pair), in `P^{n-1}`.
fn coordinate_and_pair_points<F: Field>(field: &F, n: usize, with_coordinate: bool) -> Vec<Vec<F::Elem>> {
    let mut pts = Vec::new();
    if with_coordinate {
        for i in 0..n {
            let mut p = vec![field.zero(); n];
            p[i] = field.one();
            pts.push(p);
        }
    }
    for s in [1, -1] {
        for i in 0..n {
            for j in i + 1..n {
                let mut p = vec![field.zero(); n];
                p[i] = field.one();
                p[j] = field.from_i64(s);
                pts.push(p);
            }
        }
    }
    pts
}

fn h3_points<F: Field>(field: &F) -> Result<Vec<Vec<F::Elem>>> {
    let u = field.golden_ratio()?;
    let u2 = field.mul(&u, &u);
    let one = field.one();
    let zero = field.zero();
    let n = |x: &F::Elem| field.neg(x);
    Ok(vec![
        vec![one.clone(), zero.clone(), zero.clone()],
        vec![zero.clone(), one.clone(), zero.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
        vec![one.clone(), u.clone(), u2.clone()],
        vec![n(&one), u.clone(), u2.clone()],
        vec![one.clone(), n(&u), u2.clone()],
        vec![one.clone(), u.clone(), n(&u2)],
        vec![u.clone(), n(&u2), one.clone()],
        vec![n(&u), u2.clone(), one.clone()],
        vec![u.clone(), u2.clone(), n(&one)],
        vec![u.clone(), u2.clone(), one.clone()],
        vec![u2.clone(), one.clone(), n(&u)],
        vec![u2.clone(), n(&one), u.clone()],
        vec![n(&u2), one.clone(), u.clone()],
        vec![u2.clone(), one.clone(), u.clone()],
    ])
}

/// Representatives of the 60 antipodal pairs of the 120 roots of `H_4`, in
/// the standard realization: `e_i`, `(±1,±1,±1,±1)/2` and the even
/// permutations of `(±u, ±1, ±(u-1), 0)/2`.
fn h4_points<F: Field>(field: &F) -> Result<Vec<Vec<F::Elem>>> {
    let u = field.golden_ratio()?;
    let ubar = field.sub(&u, &field.one());
    let mut pts = coordinate_and_pair_points(field, 4, true)[..4].to_vec();
    for signs in 0..8u32 {
        let s = |k: u32| field.from_i64(if signs >> k & 1 == 1 { -1 } else { 1 });
        pts.push(vec![s(0), s(1), s(2), field.one()]);
    }
    let base = [u, field.one(), ubar, field.zero()];
    for perm in even_permutations(4) {
        for signs in 0..8u32 {
            let mut p = vec![field.zero(); 4];
            let mut k = 0;
            for (slot, &src) in perm.iter().enumerate() {
                let v = base[src].clone();
                if src == 3 {
                    continue;
                }
                p[slot] = if signs >> k & 1 == 1 { field.neg(&v) } else { v };
                k += 1;
            }
            let q = normalize_point(field, &p)?;
            if !pts.contains(&q) {
                pts.push(q);
            }
        }
    }
    Ok(pts)
}

fn even_permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut all = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut all);
    all.into_iter()
        .filter(|p| {
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
            inversions.filter(|&(i, j)| p[i] > p[j]).count() % 2 == 0
        })
        .collect()
}

/// The points dual to the factors of `(x^m - y^m)(y^m - z^m)(z^m - x^m)`,
/// optionally with the coordinate points.
fn fermat_points<F: Field>(field: &F, m: usize, augmented: bool) -> Result<Vec<Vec<F::Elem>>> {
    let zeta = field.primitive_root_of_unity(m as u64)?;
    let mut factors = Vec::new();
    // x - zeta^k y, y - zeta^k z, z - zeta^k x
    for (i, j) in [(0, 1), (1, 2), (2, 0)] {
        for k in 0..m {
            let mut l = vec![field.zero(); 3];
            l[i] = field.one();
            l[j] = field.neg(&field.pow(&zeta, k as u64));
            factors.push(l);
        }
    }
    if augmented {
        for i in 0..3 {
            let mut l = vec![field.zero(); 3];
            l[i] = field.one();
            factors.push(l);
        }
    }
    Ok(factors)
}

fn extended_fermat_points<F: Field>(field: &F) -> Result<Vec<Vec<F::Elem>>> {
    let zeta = field.primitive_root_of_unity(4)?;
    let mut pts = coordinate_and_pair_points(field, 4, true)[..4].to_vec();
    for i in 0..4 {
        for j in i + 1..4 {
            for k in 0..4 {
                let mut l = vec![field.zero(); 4];
                l[i] = field.one();
                l[j] = field.neg(&field.pow(&zeta, k));
                pts.push(l);
            }
        }
    }
    Ok(pts)
}

pub fn catalog<F: Field>(field: &F, name: CatalogName) -> Result<PointConfiguration<F::Elem>> {
    let label = name.label();
    let none = Requirements::default();
    let golden = Requirements { golden: true, zeta: None };
    let (ambient, pts, req) = match name {
        CatalogName::B3 => (2, coordinate_and_pair_points(field, 3, true), none),
        CatalogName::B4 => {
            let pts = int_points(
                field,
                &[
                    &[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1],
                    &[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1],
                    &[0, 1, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1],
                    &[1, -1, 0, 0], &[1, 0, -1, 0], &[1, 0, 0, -1],
                    &[0, 1, -1, 0], &[0, 1, 0, -1], &[0, 0, 1, -1],
                ],
            );
            (3, pts, none)
        }
        CatalogName::D4 => (3, coordinate_and_pair_points(field, 4, false), none),
        CatalogName::F4 => {
            let b4 = catalog(field, CatalogName::B4)?;
            let mut pts = b4.points;
            pts.extend(f4_extra_points(field));
            (3, pts, none)
        }
        CatalogName::H3 => (2, h3_points(field)?, golden),
        CatalogName::H4 => (3, h4_points(field)?, golden),
        CatalogName::Fermat { m, augmented } => {
            if m < 1 {
                return Err(Error::InvalidConfig("Fermat configurations need m >= 1".into()));
            }
            let req = Requirements { golden: false, zeta: Some(m as u64) };
            (2, fermat_points(field, m, augmented)?, req)
        }
        CatalogName::ExtendedFermat => {
            (3, extended_fermat_points(field)?, Requirements { golden: false, zeta: Some(4) })
        }
    };
    PointConfiguration::new(field, label, ambient, pts, req)
}

/// `Q_1..Q_8 = (1 : ±1 : ±1 : ±1)`, signs in binary order.
pub fn f4_extra_points<F: Field>(field: &F) -> Vec<Vec<F::Elem>> {
    (0..8u32)
        .map(|s| {
            let sign = |k: u32| field.from_i64(if s >> (2 - k) & 1 == 1 { -1 } else { 1 });
            vec![field.one(), sign(0), sign(1), sign(2)]
        })
        .collect()
}

/// One point per nonzero linear form: `(c_0 : ... : c_n)` for
/// `c_0 x_0 + ... + c_n x_n`. Duplicates (proportional forms) collapse.
pub fn dual_points<F: Field>(
    field: &F,
    name: &str,
    forms: &[MultiPoly<F::Elem>],
) -> Result<PointConfiguration<F::Elem>> {
    let n = forms
        .first()
        .map(|f| f.nvars())
        .ok_or_else(|| Error::InvalidConfig("no linear forms".into()))?;
    let mut pts: Vec<Vec<F::Elem>> = Vec::new();
    for f in forms {
        if f.is_zero() {
            return Err(Error::InvalidConfig("zero linear form".into()));
        }
        if f.nvars() != n || f.homogeneous_degree() != Some(1) {
            return Err(Error::Degree("dual points need linear forms".into()));
        }
        let mut p = vec![field.zero(); n];
        for (m, c) in f.terms() {
            let i = m.0.iter().position(|&e| e == 1).expect("linear term");
            p[i] = c.clone();
        }
        let q = normalize_point(field, &p)?;
        if !pts.contains(&q) {
            pts.push(q);
        }
    }
    PointConfiguration::new(field, name, n - 1, pts, Requirements::default())
}

/// A line in `P^2` with the indices of the configuration points on it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidentLine<E> {
    /// Normalized coefficients `(l_0, l_1, l_2)` of `l_0 x + l_1 y + l_2 z`.
    pub line: Vec<E>,
    pub points: Vec<usize>,
}

/// All lines through at least `min_points` points of a planar configuration.
pub fn lines_through_config<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    min_points: usize,
) -> Result<Vec<IncidentLine<F::Elem>>> {
    if config.ambient != 2 {
        return Err(Error::Dimension("line incidences need a planar configuration".into()));
    }
    let pts = &config.points;
    let mut lines: Vec<IncidentLine<F::Elem>> = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let l = normalize_point(field, &cross(field, &pts[i], &pts[j]))?;
            if lines.iter().any(|k| k.line == l) {
                continue;
            }
            let on: Vec<usize> = (0..pts.len())
                .filter(|&k| field.is_zero(&crate::linalg::dot(field, &l, &pts[k])))
                .collect();
            lines.push(IncidentLine { line: l, points: on });
        }
    }
    lines.retain(|l| l.points.len() >= min_points.max(2));
    Ok(lines)
}

fn cross<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let m = |i: usize, j: usize| field.sub(&field.mul(&a[i], &b[j]), &field.mul(&a[j], &b[i]));
    vec![m(1, 2), m(2, 0), m(0, 1)]
}

#[cfg(test)]
mod tests;
