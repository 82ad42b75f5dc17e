//! Bihomogeneous forms `F(a; x)`: polynomials in two variable sets of equal
//! size, homogeneous of degree `t` in `a` and `d` in `x`. Stored as one
//! polynomial in `2k` variables, the `a`-variables first.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;

use super::{default_names, format_mono, normalize_point, parse_poly, Mono, MultiPoly, Symbols};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Parameter variables `a`.
    A,
    /// Coordinate variables `x`.
    X,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BihomForm<E> {
    k: usize,
    bidegree: (usize, usize),
    poly: MultiPoly<E>,
}

fn split(m: &Mono, k: usize) -> (Mono, Mono) {
    (Mono::from_slice(&m.0[..k]), Mono::from_slice(&m.0[k..]))
}

fn join(a: &Mono, x: &Mono) -> Mono {
    let mut e = a.0.clone();
    e.extend_from_slice(&x.0);
    Mono(e)
}

impl<E: Clone + PartialEq + std::fmt::Debug> BihomForm<E> {
    /// Wrap a polynomial in `2k` variables; every term must have the same
    /// bidegree. A zero polynomial gets the bidegree `declared`.
    pub fn new(k: usize, poly: MultiPoly<E>, declared: (usize, usize)) -> Result<Self> {
        if poly.nvars() != 2 * k {
            return Err(Error::Dimension(format!(
                "bihomogeneous form needs {} variables, got {}",
                2 * k,
                poly.nvars()
            )));
        }
        let mut bideg = None;
        for (m, _) in poly.terms() {
            let (a, x) = split(m, k);
            let b = (a.degree(), x.degree());
            match bideg {
                None => bideg = Some(b),
                Some(prev) if prev != b => {
                    return Err(Error::Degree(format!(
                        "terms of bidegrees {prev:?} and {b:?}"
                    )))
                }
                _ => {}
            }
        }
        let bidegree = bideg.unwrap_or(declared);
        if bidegree != declared {
            return Err(Error::Degree(format!(
                "declared bidegree {declared:?}, found {bidegree:?}"
            )));
        }
        Ok(BihomForm { k, bidegree, poly })
    }

    /// `sum_i h_i(a) g_i(x)`.
    pub fn from_pairs<F: Field<Elem = E>>(
        field: &F,
        pairs: &[(MultiPoly<E>, MultiPoly<E>)],
        bidegree: (usize, usize),
    ) -> Result<Self> {
        let k = pairs
            .first()
            .map(|(h, _)| h.nvars())
            .ok_or_else(|| Error::Invalid("no summands".into()))?;
        let mut acc = MultiPoly::zero(2 * k);
        for (h, g) in pairs {
            if h.nvars() != k || g.nvars() != k {
                return Err(Error::Dimension("summands in different rings".into()));
            }
            let prod = h.embed(2 * k, 0).mul(field, &g.embed(2 * k, k))?;
            acc = acc.add(field, &prod)?;
        }
        Self::new(k, acc, bidegree)
    }

    /// Variables per side.
    pub fn side_vars(&self) -> usize {
        self.k
    }

    pub fn bidegree(&self) -> (usize, usize) {
        self.bidegree
    }

    pub fn poly(&self) -> &MultiPoly<E> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Substitute a projective point for one variable set.
    pub fn specialize<F: Field<Elem = E>>(&self, field: &F, side: Side, point: &[E]) -> Result<MultiPoly<E>> {
        if point.len() != self.k {
            return Err(Error::Dimension(format!(
                "point of length {} for {} variables",
                point.len(),
                self.k
            )));
        }
        normalize_point(field, point)?;
        let powers = super::power_table(field, point, self.bidegree.0.max(self.bidegree.1));
        let mut out = MultiPoly::zero(self.k);
        for (m, c) in self.poly.terms() {
            let (a, x) = split(m, self.k);
            let (fixed, free) = match side {
                Side::A => (a, x),
                Side::X => (x, a),
            };
            let v = field.mul(c, &super::eval_mono(field, &powers, &fixed));
            out.add_term(field, free, v);
        }
        Ok(out)
    }

    /// `F(x; a)`: exchange the roles of the two variable sets.
    pub fn swapped(&self) -> Self {
        let k = self.k;
        let terms = self.poly.terms().map(|(m, c)| {
            let (a, x) = split(m, k);
            (join(&x, &a), c.clone())
        });
        let mut poly = MultiPoly::zero(2 * k);
        poly.terms = terms.collect();
        BihomForm { k, bidegree: (self.bidegree.1, self.bidegree.0), poly }
    }

    /// Group by `x`-monomial: `F = sum_mu c_mu(a) x^mu`.
    pub fn x_slices(&self) -> BTreeMap<Mono, MultiPoly<E>> {
        self.slices(Side::X)
    }

    /// Group by `a`-monomial: `F = sum_nu a^nu s_nu(x)`.
    pub fn a_slices(&self) -> BTreeMap<Mono, MultiPoly<E>> {
        self.slices(Side::A)
    }

    fn slices(&self, by: Side) -> BTreeMap<Mono, MultiPoly<E>> {
        let mut out: BTreeMap<Mono, MultiPoly<E>> = BTreeMap::new();
        for (m, c) in self.poly.terms() {
            let (a, x) = split(m, self.k);
            let (key, rest) = match by {
                Side::X => (x, a),
                Side::A => (a, x),
            };
            out.entry(key)
                .or_insert_with(|| MultiPoly::zero(self.k))
                .terms
                .insert(rest, c.clone());
        }
        out
    }

    pub fn normalized<F: Field<Elem = E>>(&self, field: &F) -> Self {
        BihomForm { k: self.k, bidegree: self.bidegree, poly: self.poly.normalized(field) }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        BihomForm { k: self.k, bidegree: self.bidegree, poly: self.poly.scale(field, c) }
    }

    pub fn equal_up_to_scalar<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> bool {
        self.k == other.k && self.poly.equal_up_to_scalar(field, &other.poly)
    }

    pub fn names(&self) -> (Vec<String>, Vec<String>) {
        (default_names(self.k, Side::A), default_names(self.k, Side::X))
    }

    /// Text form `c*a^i*b^j ⊗ x^k*y^l + ...`.
    pub fn format<F: Field<Elem = E>>(&self, field: &F) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let (an, xn) = self.names();
        let terms: Vec<String> = self
            .poly
            .terms()
            .map(|(m, c)| {
                let (a, x) = split(m, self.k);
                let a = format_mono(&a, &an).unwrap_or_else(|| "1".into());
                let x = format_mono(&x, &xn).unwrap_or_else(|| "1".into());
                format!("{}*{a} ⊗ {x}", field.format(c))
            })
            .collect();
        terms.join(" + ")
    }

    /// Parse the text form (or any expression) in the default names, with
    /// optional named constants.
    pub fn parse<F: Field<Elem = E>>(
        field: &F,
        text: &str,
        k: usize,
        bidegree: (usize, usize),
        consts: &[(String, E)],
    ) -> Result<Self> {
        let mut vars = default_names(k, Side::A);
        vars.extend(default_names(k, Side::X));
        let syms = Symbols { vars, consts: consts.to_vec() };
        let poly = parse_poly(field, text, &syms)?;
        Self::new(k, poly, bidegree)
    }
}
