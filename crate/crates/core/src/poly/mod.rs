//! Sparse multivariate polynomials over a [`Field`].
//!
//! Terms live in a `BTreeMap` keyed by [`Mono`], whose `Ord` is the listing
//! order used everywhere in the crate: higher total degree first, then
//! lexicographic with larger exponents of earlier variables first. Iteration
//! therefore yields the leading term first, and [`monomials`] returns a graded
//! piece in the same order.

mod bihom;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::Field;

pub use bihom::{BihomForm, Side};
pub use parse::{parse_poly, Symbols};

pub type Exponents = SmallVec<[u16; 8]>;

/// An exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Exponents);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(SmallVec::from_elem(0, nvars))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn from_slice(e: &[u16]) -> Self {
        Mono(SmallVec::from_slice(e))
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Exponents>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All exponent vectors of total degree `d` in `nvars` variables, in the
/// crate's monomial order.
pub fn monomials(nvars: usize, d: usize) -> Vec<Mono> {
    fn rec(nvars: usize, i: usize, left: usize, cur: &mut Exponents, out: &mut Vec<Mono>) {
        if i + 1 == nvars {
            cur[i] = left as u16;
            out.push(Mono(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return if d == 0 { vec![Mono::one(0)] } else { Vec::new() };
    }
    let mut out = Vec::with_capacity(binomial(nvars + d - 1, d));
    let mut cur = SmallVec::from_elem(0, nvars);
    rec(nvars, 0, d, &mut cur, &mut out);
    out
}

/// `C(n, k)` as `usize`; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Monomials of one degree together with their positions.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    pub nvars: usize,
    pub degree: usize,
    pub monos: Vec<Mono>,
    index: HashMap<Mono, usize>,
}

impl MonomialBasis {
    pub fn new(nvars: usize, degree: usize) -> Self {
        let monos = monomials(nvars, degree);
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialBasis { nvars, degree, monos, index }
    }

    pub fn len(&self) -> usize {
        self.monos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monos.is_empty()
    }

    pub fn position(&self, m: &Mono) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Sparse polynomial; never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly<E> {
    nvars: usize,
    terms: BTreeMap<Mono, E>,
}

impl<E: Clone + PartialEq> MultiPoly<E> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in monomial order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &E)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn leading(&self) -> Option<(&Mono, &E)> {
        self.terms.iter().next()
    }

    /// Largest total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(Mono::degree)
    }

    /// `Some(d)` when every term has degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.degree()?;
        self.terms.keys().all(|m| m.degree() == d).then_some(d)
    }
}

impl<E: Clone + PartialEq + std::fmt::Debug> MultiPoly<E> {
    pub fn from_terms<F: Field<Elem = E>>(
        field: &F,
        nvars: usize,
        terms: impl IntoIterator<Item = (Mono, E)>,
    ) -> Self {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.add_term(field, m, c);
        }
        p
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, nvars: usize, c: E) -> Self {
        Self::from_terms(field, nvars, [(Mono::one(nvars), c)])
    }

    pub fn var<F: Field<Elem = E>>(field: &F, nvars: usize, i: usize) -> Self {
        Self::from_terms(field, nvars, [(Mono::var(nvars, i), field.one())])
    }

    pub fn monomial<F: Field<Elem = E>>(field: &F, m: Mono, c: E) -> Self {
        let n = m.nvars();
        Self::from_terms(field, n, [(m, c)])
    }

    pub fn add_term<F: Field<Elem = E>>(&mut self, field: &F, m: Mono, c: E) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = field.add(o.get(), &c);
                if field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Dimension(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(field, m.clone(), field.neg(c));
        }
        Ok(out)
    }

    pub fn neg<F: Field<Elem = E>>(&self, field: &F) -> Self {
        self.scale(field, &field.from_i64(-1))
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        if field.is_zero(c) {
            return Self::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), field.mul(x, c))).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect(),
        }
    }

    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut acc: HashMap<Mono, E> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let prod = field.mul(ca, cb);
                acc.entry(ma.mul(mb))
                    .and_modify(|x| *x = field.add(x, &prod))
                    .or_insert(prod);
            }
        }
        Ok(Self::from_terms(field, self.nvars, acc))
    }

    pub fn pow<F: Field<Elem = E>>(&self, field: &F, e: u32) -> Self {
        let mut acc = Self::constant(field, self.nvars, field.one());
        for _ in 0..e {
            acc = acc.mul(field, self).expect("same ring");
        }
        acc
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn evaluate<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> Result<E> {
        if point.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.nvars
            )));
        }
        let maxdeg = self.degree().unwrap_or(0);
        let powers = power_table(field, point, maxdeg);
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = field.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    /// `d/dx_i`.
    pub fn derivative<F: Field<Elem = E>>(&self, field: &F, i: usize) -> Self {
        let mut alpha = Mono::one(self.nvars);
        alpha.0[i] = 1;
        self.partial(field, &alpha)
    }

    /// Iterated partial `∂^alpha`, with the falling-factorial factors
    /// `beta!/(beta-alpha)!`.
    pub fn partial<F: Field<Elem = E>>(&self, field: &F, alpha: &Mono) -> Self {
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let rest = m.div(alpha)?;
            let mut k = c.clone();
            for (b, a) in m.0.iter().zip(&alpha.0) {
                for j in 0..*a {
                    k = field.mul(&k, &field.from_i64((*b - j) as i64));
                }
            }
            Some((rest, k))
        });
        Self::from_terms(field, self.nvars, terms)
    }

    /// Every `∂^alpha f` with `|alpha| <= order - 1`, the conditions for a
    /// point of multiplicity `order`. Each multi-index appears once.
    pub fn partial_derivatives_up_to<F: Field<Elem = E>>(
        &self,
        field: &F,
        order: usize,
    ) -> Vec<(Mono, Self)> {
        (0..order)
            .flat_map(|k| monomials(self.nvars, k))
            .map(|alpha| {
                let p = self.partial(field, &alpha);
                (alpha, p)
            })
            .collect()
    }

    /// `f(forms_0, ..., forms_N)`; the forms share a degree `e` and `f` is
    /// homogeneous, so the result is homogeneous of degree `deg f * e`.
    pub fn substitute<F: Field<Elem = E>>(&self, field: &F, forms: &[Self]) -> Result<Self> {
        if forms.len() != self.nvars {
            return Err(Error::Dimension(format!(
                "{} forms for {} variables",
                forms.len(),
                self.nvars
            )));
        }
        let n = forms.first().map(|g| g.nvars).unwrap_or(0);
        if forms.iter().any(|g| g.nvars != n) {
            return Err(Error::Dimension("forms live in different rings".into()));
        }
        let degs: Vec<Option<usize>> = forms.iter().map(|g| g.homogeneous_degree()).collect();
        if forms.iter().any(|g| !g.is_zero() && g.homogeneous_degree().is_none()) {
            return Err(Error::Degree("a substituted form is not homogeneous".into()));
        }
        let mut common = degs.iter().flatten();
        if let Some(e) = common.next() {
            if common.any(|d| d != e) {
                return Err(Error::Degree("substituted forms have different degrees".into()));
            }
        }
        let maxdeg = self.terms.keys().flat_map(|m| m.0.iter().copied()).max().unwrap_or(0);
        let mut powers: Vec<Vec<Self>> = Vec::with_capacity(forms.len());
        for g in forms {
            let mut row = vec![Self::constant(field, n, field.one())];
            for k in 1..=maxdeg as usize {
                let next = row[k - 1].mul(field, g)?;
                row.push(next);
            }
            powers.push(row);
        }
        let mut out = Self::zero(n);
        for (m, c) in &self.terms {
            let mut t = Self::constant(field, n, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(field, &powers[i][e as usize])?;
                }
            }
            out = out.add(field, &t)?;
        }
        Ok(out)
    }

    /// Coefficient vector over a monomial basis; fails if some term is not
    /// in the basis.
    pub fn to_dense<F: Field<Elem = E>>(&self, field: &F, basis: &MonomialBasis) -> Result<Vec<E>> {
        if basis.nvars != self.nvars {
            return Err(Error::Dimension("basis in a different ring".into()));
        }
        let mut v = vec![field.zero(); basis.len()];
        for (m, c) in &self.terms {
            let i = basis.position(m).ok_or_else(|| {
                Error::Degree(format!("term of degree {} outside degree {}", m.degree(), basis.degree))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    pub fn from_dense<F: Field<Elem = E>>(field: &F, basis: &MonomialBasis, v: &[E]) -> Self {
        Self::from_terms(field, basis.nvars, basis.monos.iter().cloned().zip(v.iter().cloned()))
    }

    /// Reindex into a ring with `nvars` variables, variable `i` becoming
    /// `i + offset`.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = Mono::one(nvars);
            e.0[offset..offset + self.nvars].copy_from_slice(&m.0);
            (e, c.clone())
        });
        MultiPoly { nvars, terms: terms.collect() }
    }

    /// Scale so the leading coefficient is 1. The zero polynomial is kept.
    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        match self.leading() {
            Some((_, c)) => self.scale(field, &field.inv(c).expect("nonzero")),
            None => self.clone(),
        }
    }

    pub fn equal_up_to_scalar<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.nvars == other.nvars && self.normalized(field) == other.normalized(field)
    }

    /// Tangent cone at `point` and the multiplicity there.
    ///
    /// The cone is `sum_{|alpha|=k} (∂^alpha f(P) / alpha!) x^alpha` for the
    /// least `k` where it is nonzero. This form is invariant under
    /// translation by `P`, so it equals the lowest-degree part of `f` in the
    /// affine chart at the last nonzero coordinate of `P`, re-homogenized by
    /// `y_i = x_i - P_i x_j`.
    pub fn tangent_cone<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> Result<(Self, usize)> {
        let p = normalize_point(field, point)?;
        if p.len() != self.nvars {
            return Err(Error::Dimension("point length does not match the ring".into()));
        }
        let d = self
            .homogeneous_degree()
            .ok_or_else(|| Error::Degree("tangent cone of a zero or non-homogeneous form".into()))?;
        let powers = power_table(field, &p, d);
        for k in 0..=d {
            let mut cone = Self::zero(self.nvars);
            for alpha in monomials(self.nvars, k) {
                let mut val = field.zero();
                for (beta, c) in &self.terms {
                    let Some(rest) = beta.div(&alpha) else { continue };
                    let mut t = c.clone();
                    for i in 0..self.nvars {
                        let b = binomial(beta.0[i] as usize, alpha.0[i] as usize);
                        if b != 1 {
                            t = field.mul(&t, &field.from_i64(b as i64));
                        }
                        if rest.0[i] > 0 {
                            t = field.mul(&t, &powers[i][rest.0[i] as usize]);
                        }
                    }
                    val = field.add(&val, &t);
                }
                cone.add_term(field, alpha, val);
            }
            if !cone.is_zero() {
                return Ok((cone, k));
            }
        }
        unreachable!("a nonzero form has a nonzero Taylor expansion")
    }

    /// Multiplicity of the hypersurface at `point`: the least `k` with a
    /// nonzero order-`k` partial there.
    pub fn multiplicity_at<F: Field<Elem = E>>(&self, field: &F, point: &[E]) -> Result<usize> {
        self.tangent_cone(field, point).map(|(_, k)| k)
    }
}

/// `powers[i][k] = point[i]^k` for `k <= maxdeg`.
pub(crate) fn power_table<F: Field>(field: &F, point: &[F::Elem], maxdeg: usize) -> Vec<Vec<F::Elem>> {
    point
        .iter()
        .map(|x| {
            let mut row = Vec::with_capacity(maxdeg + 1);
            row.push(field.one());
            for k in 1..=maxdeg {
                let next = field.mul(&row[k - 1], x);
                row.push(next);
            }
            row
        })
        .collect()
}

/// Value of the monomial `m` from a power table.
pub(crate) fn eval_mono<F: Field>(field: &F, powers: &[Vec<F::Elem>], m: &Mono) -> F::Elem {
    let mut t = field.one();
    for (i, &e) in m.0.iter().enumerate() {
        if e > 0 {
            t = field.mul(&t, &powers[i][e as usize]);
        }
    }
    t
}

/// Divide by the last nonzero coordinate; rejects the zero vector.
pub fn normalize_point<F: Field>(field: &F, point: &[F::Elem]) -> Result<Vec<F::Elem>> {
    let last = point
        .iter()
        .rposition(|x| !field.is_zero(x))
        .ok_or_else(|| Error::InvalidPoint("all coordinates are zero".into()))?;
    let inv = field.inv(&point[last]).expect("nonzero");
    Ok(point.iter().map(|x| field.mul(x, &inv)).collect())
}

/// Row of the condition `∂^alpha f (P) = 0` over a monomial basis, using the
/// same falling-factorial convention as [`MultiPoly::partial`].
pub fn partial_condition_row<F: Field>(
    field: &F,
    basis: &MonomialBasis,
    powers: &[Vec<F::Elem>],
    alpha: &Mono,
) -> Vec<F::Elem> {
    basis
        .monos
        .iter()
        .map(|beta| {
            let Some(rest) = beta.div(alpha) else { return field.zero() };
            let mut k: i64 = 1;
            let mut t = eval_mono(field, powers, &rest);
            for (b, a) in beta.0.iter().zip(&alpha.0) {
                for j in 0..*a {
                    k *= (*b - j) as i64;
                    if k > 1 << 40 {
                        t = field.mul(&t, &field.from_i64(k));
                        k = 1;
                    }
                }
            }
            if k != 1 {
                t = field.mul(&t, &field.from_i64(k));
            }
            t
        })
        .collect()
}

/// Reject characteristics that could interfere with multiplicity
/// conditions: fat points of multiplicity `m` on degree-`d` forms need
/// `p > 2 d m`.
pub fn check_characteristic<F: Field>(field: &F, d: usize, m: usize) -> Result<()> {
    let p = field.characteristic();
    let bound = (2 * d * m) as u64;
    if p != 0 && m > 1 && p <= bound {
        return Err(Error::Characteristic { p, bound });
    }
    Ok(())
}

/// Default variable names: `x, y, z, w` (or `a, b, c, d`) for up to four
/// variables, indexed names beyond that.
pub fn default_names(nvars: usize, side: Side) -> Vec<String> {
    let (short, stem) = match side {
        Side::X => (["x", "y", "z", "w"], "x"),
        Side::A => (["a", "b", "c", "d"], "a"),
    };
    if nvars <= 4 {
        short[..nvars].iter().map(|s| s.to_string()).collect()
    } else {
        (0..nvars).map(|i| format!("{stem}{i}")).collect()
    }
}

pub(crate) fn format_mono(m: &Mono, names: &[String]) -> Option<String> {
    let parts: Vec<String> = m
        .0
        .iter()
        .zip(names)
        .filter(|(e, _)| **e > 0)
        .map(|(e, n)| format!("{n}^{e}"))
        .collect();
    (!parts.is_empty()).then(|| parts.join("*"))
}

impl<E: Clone + PartialEq + std::fmt::Debug> MultiPoly<E> {
    /// Text form `c*x^i*y^j + ...`, leading term first; `0` for zero.
    pub fn format<F: Field<Elem = E>>(&self, field: &F, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| match format_mono(m, names) {
                Some(s) => format!("{}*{s}", field.format(c)),
                None => field.format(c),
            })
            .collect();
        terms.join(" + ")
    }

    pub fn display<F: Field<Elem = E>>(&self, field: &F) -> String {
        self.format(field, &default_names(self.nvars, Side::X))
    }
}
