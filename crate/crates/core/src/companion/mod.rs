//! Companion maps: the split `F_Z = sum_i h_i(a) g_i(x)` and the rational
//! maps `phi = (g_i)` and `psi = (h_i)` it defines.

mod image;
mod probe;

use serde::{Deserialize, Serialize};

use crate::config::forms;
use crate::config::{catalog, parse_coordinate, with_constants, CatalogName, ConfigSource};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::FatPoint;
use crate::linalg;
use crate::poly::{default_names, monomials, normalize_point, parse_poly, BihomForm, MonomialBasis, MultiPoly, Side, Symbols};

pub use image::*;
pub use probe::*;

/// `P^n ⇢ P^M` given by `M+1` forms of a common degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMap<E> {
    pub name: String,
    /// `n + 1`.
    pub source_vars: usize,
    pub forms: Vec<MultiPoly<E>>,
    pub degree: usize,
    /// Declared base points with multiplicities, when known.
    pub base_points: Option<Vec<FatPoint<E>>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> RationalMap<E> {
    pub fn new(name: impl Into<String>, forms: Vec<MultiPoly<E>>, base_points: Option<Vec<FatPoint<E>>>) -> Result<Self> {
        let first = forms.first().ok_or_else(|| Error::Invalid("a map needs at least one form".into()))?;
        let source_vars = first.nvars();
        if forms.iter().any(|f| f.nvars() != source_vars) {
            return Err(Error::Dimension("map forms live in different rings".into()));
        }
        let degree = forms
            .iter()
            .find(|f| !f.is_zero())
            .and_then(|f| f.homogeneous_degree())
            .ok_or_else(|| Error::Degree("all forms are zero or the first nonzero one is not homogeneous".into()))?;
        if forms.iter().any(|f| !f.is_zero() && f.homogeneous_degree() != Some(degree)) {
            return Err(Error::Degree(format!("map forms must all have degree {degree}")));
        }
        Ok(RationalMap { name: name.into(), source_vars, forms, degree, base_points })
    }

    pub fn source_dim(&self) -> usize {
        self.source_vars - 1
    }

    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    pub fn eval<F: Field<Elem = E>>(&self, field: &F, p: &[E]) -> Result<Vec<E>> {
        self.forms.iter().map(|f| f.evaluate(field, p)).collect()
    }
}

/// On-disk map: `{"n": 2, "forms": ["x^2", "y^2", "z^2"]}`, with optional
/// constants `u`, `zeta` and declared base points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zeta: Option<u64>,
    pub forms: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_points: Option<Vec<BasePointEntry>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasePointEntry {
    pub point: Vec<String>,
    #[serde(default = "one")]
    pub mult: usize,
}

fn one() -> usize {
    1
}

impl MapFile {
    pub fn resolve<F: Field>(&self, field: &F) -> Result<RationalMap<F::Elem>> {
        let names = default_names(self.n + 1, Side::X);
        let mut forms = Vec::with_capacity(self.forms.len());
        for text in &self.forms {
            let syms = with_constants(field, Symbols::new(names.clone()), text, self.zeta)?;
            forms.push(parse_poly(field, text, &syms)?);
        }
        let base = match &self.base_points {
            None => None,
            Some(list) => Some(
                list.iter()
                    .map(|b| {
                        if b.point.len() != self.n + 1 {
                            return Err(Error::Dimension(format!("base point needs {} coordinates", self.n + 1)));
                        }
                        let p = b
                            .point
                            .iter()
                            .map(|c| parse_coordinate(field, c, self.zeta))
                            .collect::<Result<Vec<_>>>()?;
                        Ok(FatPoint::new(normalize_point(field, &p)?, b.mult))
                    })
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        RationalMap::new(self.name.clone().unwrap_or_else(|| "custom".into()), forms, base)
    }
}

pub fn load_map<F: Field>(field: &F, path: &std::path::Path) -> Result<RationalMap<F::Elem>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidConfig(format!("cannot read {}: {e}", path.display())))?;
    let file: MapFile = serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    file.resolve(field)
}

/// Maps with built-in forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CatalogMap {
    /// `(m_0 : ... : m_11)` on `P^3`.
    F4Phi,
    /// `(g_1 : ... : g_13)`, the sextics through the H3 points.
    H3Phi,
    /// `(M_1 f_1 : x f_1 : ... : z f_6)`.
    H3Bar,
    /// `(q_1 : ... : q_12)`.
    H3Psi,
    FermatPhi(usize),
    FermatPhiBar(usize),
    FermatPsi(usize),
    /// All monomials of degree `e` on `P^2`.
    Veronese(usize),
}

impl CatalogMap {
    /// `f4-phi`, `h3-phi`, `h3-bar`, `h3-psi`, `fermat-phi`, `fermat-phi-bar`,
    /// `fermat-psi` (these three need `m`) and `veronese` (`m` is the degree).
    pub fn parse(name: &str, m: Option<usize>) -> Result<Self> {
        let name = name.strip_prefix("catalog:").unwrap_or(name).to_ascii_lowercase();
        let need = || m.ok_or_else(|| Error::Invalid(format!("map `{name}` needs --m")));
        Ok(match name.as_str() {
            "f4-phi" | "f4" => CatalogMap::F4Phi,
            "h3-phi" => CatalogMap::H3Phi,
            "h3-bar" | "h3-phi-bar" => CatalogMap::H3Bar,
            "h3-psi" => CatalogMap::H3Psi,
            "fermat-phi" => CatalogMap::FermatPhi(need()?),
            "fermat-phi-bar" => CatalogMap::FermatPhiBar(need()?),
            "fermat-psi" => CatalogMap::FermatPsi(need()?),
            "veronese" => CatalogMap::Veronese(need()?),
            _ => return Err(Error::UnknownConfig(format!("catalog:{name}"))),
        })
    }

    pub fn label(&self) -> String {
        match self {
            CatalogMap::F4Phi => "f4-phi".into(),
            CatalogMap::H3Phi => "h3-phi".into(),
            CatalogMap::H3Bar => "h3-bar".into(),
            CatalogMap::H3Psi => "h3-psi".into(),
            CatalogMap::FermatPhi(m) => format!("fermat-phi(m={m})"),
            CatalogMap::FermatPhiBar(m) => format!("fermat-phi-bar(m={m})"),
            CatalogMap::FermatPsi(m) => format!("fermat-psi(m={m})"),
            CatalogMap::Veronese(e) => format!("veronese(e={e})"),
        }
    }

    pub fn build<F: Field>(&self, field: &F) -> Result<RationalMap<F::Elem>> {
        let simple = |name: CatalogName| -> Result<Option<Vec<FatPoint<F::Elem>>>> {
            Ok(Some(catalog(field, name)?.points.into_iter().map(|p| FatPoint::new(p, 1)).collect()))
        };
        let fermat = |m| CatalogName::Fermat { m, augmented: true };
        let (forms, base) = match *self {
            CatalogMap::F4Phi => (forms::f4_generators(field)?, simple(CatalogName::F4)?),
            CatalogMap::H3Phi => (forms::h3_sextics(field)?, simple(CatalogName::H3)?),
            CatalogMap::H3Bar => (forms::h3_bar_map(field)?, simple(CatalogName::H3)?),
            CatalogMap::H3Psi => (forms::h3_companion(field)?, Some(Vec::new())),
            CatalogMap::FermatPhi(m) => (forms::fermat_phi(field, m)?, simple(fermat(m))?),
            CatalogMap::FermatPhiBar(m) => (forms::fermat_phi_bar(field, m)?, simple(fermat(m))?),
            CatalogMap::FermatPsi(m) => (forms::fermat_psi(field, m)?, Some(Vec::new())),
            CatalogMap::Veronese(e) => {
                if e == 0 {
                    return Err(Error::Degree("Veronese degree must be positive".into()));
                }
                let forms = monomials(3, e).into_iter().map(|mono| MultiPoly::monomial(field, mono, field.one())).collect();
                (forms, Some(Vec::new()))
            }
        };
        RationalMap::new(self.label(), forms, base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MapSource {
    Catalog(CatalogMap),
    File(MapFile),
}

impl MapSource {
    pub fn resolve<F: Field>(&self, field: &F) -> Result<RationalMap<F::Elem>> {
        match self {
            MapSource::Catalog(c) => c.build(field),
            MapSource::File(f) => f.resolve(field),
        }
    }

    pub fn label(&self) -> String {
        match self {
            MapSource::Catalog(c) => c.label(),
            MapSource::File(f) => f.name.clone().unwrap_or_else(|| "custom".into()),
        }
    }
}

/// The unique `h_i` with `F = sum_i h_i(a) basis_i(x)`.
///
/// Every `a`-monomial slice of `F` must lie in the span of the (independent)
/// basis.
pub fn decompose<F: Field>(
    field: &F,
    form: &BihomForm<F::Elem>,
    basis: &[MultiPoly<F::Elem>],
) -> Result<Vec<MultiPoly<F::Elem>>> {
    let k = form.side_vars();
    let (_, d) = form.bidegree();
    if basis.is_empty() {
        return Err(Error::Invalid("empty basis".into()));
    }
    let xb = MonomialBasis::new(k, d);
    let dense: Vec<Vec<F::Elem>> = basis.iter().map(|g| g.to_dense(field, &xb)).collect::<Result<_>>()?;
    let slices = form.a_slices();
    let targets: Vec<Vec<F::Elem>> = slices.values().map(|s| s.to_dense(field, &xb)).collect::<Result<_>>()?;
    let solved = linalg::solve_in_span(field, &dense, &targets, xb.len())?;
    let mut hs = vec![MultiPoly::zero(k); basis.len()];
    for ((nu, _), coeffs) in slices.iter().zip(solved) {
        let coeffs = coeffs.ok_or_else(|| {
            Error::NoSolution(format!("the x-part of the a-monomial {nu:?} is outside the span of the basis"))
        })?;
        for (h, c) in hs.iter_mut().zip(coeffs) {
            h.add_term(field, nu.clone(), c);
        }
    }
    Ok(hs)
}

/// The `x`-monomials occurring in `F`, as forms: the fallback basis when no
/// generator list is known.
pub fn support_basis<F: Field>(field: &F, form: &BihomForm<F::Elem>) -> Vec<MultiPoly<F::Elem>> {
    form.x_slices().into_keys().map(|mono| MultiPoly::monomial(field, mono, field.one())).collect()
}

/// `sum_i h_i(a) g_i(x)`.
pub fn reconstruct<F: Field>(
    field: &F,
    hs: &[MultiPoly<F::Elem>],
    basis: &[MultiPoly<F::Elem>],
    bidegree: (usize, usize),
) -> Result<BihomForm<F::Elem>> {
    if hs.len() != basis.len() {
        return Err(Error::Dimension(format!("{} coefficients for {} basis forms", hs.len(), basis.len())));
    }
    let pairs: Vec<_> = hs.iter().cloned().zip(basis.iter().cloned()).collect();
    BihomForm::from_pairs(field, &pairs, bidegree)
}

/// `a_i = c * b_i` for one common nonzero `c`.
pub fn proportional_lists<F: Field>(field: &F, a: &[MultiPoly<F::Elem>], b: &[MultiPoly<F::Elem>]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|p| !p.is_zero()) else {
        return b.iter().all(|p| p.is_zero());
    };
    let (Some((ma, ca)), Some((mb, cb))) = (a[i].leading(), b[i].leading()) else {
        return false;
    };
    if ma != mb {
        return false;
    }
    let c = field.div(cb, ca).expect("nonzero leading coefficient");
    a.iter().zip(b).all(|(p, q)| p.scale(field, &c) == *q)
}

/// Dimension of the span of forms of a common degree `d` in `nvars` variables.
pub fn span_dim_of_forms<F: Field>(field: &F, forms: &[MultiPoly<F::Elem>], nvars: usize, d: usize) -> Result<usize> {
    let mb = MonomialBasis::new(nvars, d);
    let dense: Vec<_> = forms.iter().map(|f| f.to_dense(field, &mb)).collect::<Result<_>>()?;
    linalg::span_dim(field, &dense, mb.len())
}

pub fn spans_equal<F: Field>(
    field: &F,
    a: &[MultiPoly<F::Elem>],
    b: &[MultiPoly<F::Elem>],
    nvars: usize,
    d: usize,
) -> Result<bool> {
    let mb = MonomialBasis::new(nvars, d);
    let da: Vec<_> = a.iter().map(|f| f.to_dense(field, &mb)).collect::<Result<_>>()?;
    let db: Vec<_> = b.iter().map(|f| f.to_dense(field, &mb)).collect::<Result<_>>()?;
    linalg::span_equal(field, &da, &db, mb.len())
}

/// The maps attached to the Fermat configurations.
#[derive(Clone, Debug)]
pub struct FermatMaps<E> {
    pub phi: RationalMap<E>,
    /// Only for `m >= 4`.
    pub phi_bar: Option<RationalMap<E>>,
    pub psi: RationalMap<E>,
    /// The printed expansion of the unexpected curves, literally.
    pub cone_printed: BihomForm<E>,
    /// The expansion with corrected signs; see [`forms::fermat_cone_corrected`].
    pub cone: BihomForm<E>,
}

pub fn fermat_catalog_maps<F: Field>(field: &F, m: usize) -> Result<FermatMaps<F::Elem>> {
    if m < 2 {
        return Err(Error::Invalid(format!("Fermat maps need m >= 2, got {m}")));
    }
    Ok(FermatMaps {
        phi: CatalogMap::FermatPhi(m).build(field)?,
        phi_bar: if m >= 4 { Some(CatalogMap::FermatPhiBar(m).build(field)?) } else { None },
        psi: CatalogMap::FermatPsi(m).build(field)?,
        cone_printed: forms::fermat_cone(field, m)?,
        cone: forms::fermat_cone_corrected(field, m)?,
    })
}

/// Which generator list [`decompose`] uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisChoice {
    /// The explicit generator list of a catalog configuration, if there is one.
    Listed,
    /// The `x`-monomials of `F`.
    Support,
}

/// The explicit generators of `[I(Z)]_d` for catalog entries that have them.
pub fn listed_basis<F: Field>(field: &F, source: &ConfigSource, d: usize) -> Result<Option<Vec<MultiPoly<F::Elem>>>> {
    let ConfigSource::Catalog(name) = source else { return Ok(None) };
    Ok(match (name, d) {
        (CatalogName::F4, 4) => Some(forms::f4_generators(field)?),
        (CatalogName::H3, 6) => Some(forms::h3_sextics(field)?),
        (CatalogName::Fermat { m, augmented: true }, d) if d == m + 2 => Some(forms::fermat_phi(field, *m)?),
        _ => None,
    })
}
