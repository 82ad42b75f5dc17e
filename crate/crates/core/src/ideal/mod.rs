//! Graded pieces of ideals of (fat) point schemes, computed by evaluation.
//!
//! `[I]_d` is the kernel of the matrix whose columns are the degree-`d`
//! monomials and whose rows are the vanishing conditions: one evaluation row
//! per reduced point, and one row per partial derivative of order `< m` at a
//! fat point of multiplicity `m`.

use serde::Serialize;

use crate::config::PointConfiguration;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{self, Matrix};
use crate::poly::{
    binomial, check_characteristic, monomials, normalize_point, partial_condition_row, power_table, Mono,
    MonomialBasis, MultiPoly,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatPoint<E> {
    pub point: Vec<E>,
    pub mult: usize,
}

impl<E> FatPoint<E> {
    pub fn new(point: Vec<E>, mult: usize) -> Self {
        FatPoint { point, mult }
    }
}

/// A basis of `[I]_d` as coefficient vectors over [`MonomialBasis`].
#[derive(Clone, Debug)]
pub struct GradedPiece<E> {
    pub degree: usize,
    pub nvars: usize,
    pub basis: Vec<Vec<E>>,
    /// Number of condition rows and their rank.
    pub conditions: usize,
    pub rank: usize,
    pub provenance: String,
}

impl<E: Clone + PartialEq + std::fmt::Debug> GradedPiece<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial_basis(&self) -> MonomialBasis {
        MonomialBasis::new(self.nvars, self.degree)
    }

    pub fn polys<F: Field<Elem = E>>(&self, field: &F) -> Vec<MultiPoly<E>> {
        let mb = self.monomial_basis();
        self.basis.iter().map(|v| MultiPoly::from_dense(field, &mb, v)).collect()
    }
}

/// Rows of all vanishing conditions for degree-`d` forms.
pub fn condition_matrix<F: Field>(
    field: &F,
    nvars: usize,
    points: &[Vec<F::Elem>],
    d: usize,
    fat: &[FatPoint<F::Elem>],
) -> Result<Matrix<F::Elem>> {
    let mb = MonomialBasis::new(nvars, d);
    let mut m = Matrix::zeros(field, 0, mb.len());
    for p in points.iter().chain(fat.iter().map(|f| &f.point)) {
        if p.len() != nvars {
            return Err(Error::Dimension(format!("point with {} coordinates in {nvars} variables", p.len())));
        }
        normalize_point(field, p)?;
    }
    for p in points {
        let powers = power_table(field, p, d);
        m.push_row(partial_condition_row(field, &mb, &powers, &Mono::one(nvars)))?;
    }
    for f in fat {
        if f.mult == 0 {
            return Err(Error::Invalid("fat point of multiplicity 0".into()));
        }
        check_characteristic(field, d, f.mult)?;
        let powers = power_table(field, &f.point, d);
        for k in 0..f.mult.min(d + 1) {
            for alpha in monomials(nvars, k) {
                m.push_row(partial_condition_row(field, &mb, &powers, &alpha))?;
            }
        }
    }
    Ok(m.with_provenance(format!(
        "degree {d}: {} points, fat multiplicities {:?}",
        points.len(),
        fat.iter().map(|f| f.mult).collect::<Vec<_>>()
    )))
}

/// `[I(Z) ∩ I(fat)]_d` with an explicit basis.
pub fn ideal_piece<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    d: usize,
    fat: &[FatPoint<F::Elem>],
) -> Result<GradedPiece<F::Elem>> {
    let nvars = config.nvars();
    let m = condition_matrix(field, nvars, &config.points, d, fat)?;
    let (r, pivots) = linalg::rref(field, &m);
    let basis = linalg::kernel_from_rref(field, &r, &pivots);
    Ok(GradedPiece {
        degree: d,
        nvars,
        conditions: m.nrows(),
        rank: pivots.len(),
        basis,
        provenance: format!("{}: {}", config.name, m.provenance),
    })
}

/// `dim [I]_d` by rank only.
pub fn ideal_dim<F: Field>(
    field: &F,
    points: &[Vec<F::Elem>],
    nvars: usize,
    d: usize,
    fat: &[FatPoint<F::Elem>],
) -> Result<usize> {
    let m = condition_matrix(field, nvars, points, d, fat)?;
    Ok(m.ncols() - linalg::rank(field, &m))
}

/// `HF(i) = C(N+i, N) - dim [I(Z)]_i` for `i = 0..=d_max`, extended until it
/// reaches `|Z|` (where it stays).
pub fn hilbert_function<F: Field>(
    field: &F,
    config: &PointConfiguration<F::Elem>,
    d_max: usize,
) -> Result<Vec<usize>> {
    let n = config.len();
    let mut hf = Vec::new();
    for i in 0.. {
        let m = condition_matrix(field, config.nvars(), &config.points, i, &[])?;
        let value = linalg::rank(field, &m);
        hf.push(value);
        if i >= d_max && value == n {
            break;
        }
        if i > n {
            return Err(Error::NotStabilized(format!("Hilbert function of {n} points")));
        }
    }
    Ok(hf)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HVector {
    pub h: Vec<i64>,
    /// Least index with every later entry zero.
    pub sigma: usize,
    /// All entries nonnegative (necessary for arithmetic Cohen-Macaulayness).
    pub nonnegative: bool,
}

impl HVector {
    /// Trailing zeros are dropped.
    pub fn new(mut h: Vec<i64>) -> Self {
        while h.last() == Some(&0) {
            h.pop();
        }
        let nonnegative = h.iter().all(|&x| x >= 0);
        HVector { sigma: h.len(), nonnegative, h }
    }

    pub fn sum(&self) -> i64 {
        self.h.iter().sum()
    }
}

/// `r`-fold finite difference, with `values[i] = 0` for `i < 0`.
pub fn difference(values: &[i64], r: usize) -> Vec<i64> {
    let mut v = values.to_vec();
    for _ in 0..r {
        v = (0..v.len()).map(|i| v[i] - if i > 0 { v[i - 1] } else { 0 }).collect();
    }
    v
}

/// The h-vector `ΔHF` of a reduced point set.
pub fn h_vector_points<F: Field>(field: &F, config: &PointConfiguration<F::Elem>) -> Result<HVector> {
    let hf = hilbert_function(field, config, 0)?;
    let values: Vec<i64> = hf.iter().map(|&x| x as i64).collect();
    Ok(HVector::new(difference(&values, 1)))
}

/// New generators of `I` in degree `d`: `dim [I]_d - dim (S_1 [I]_{d-1})`.
pub fn minimal_generators<F: Field>(field: &F, config: &PointConfiguration<F::Elem>, d: usize) -> Result<usize> {
    if d == 0 {
        return Err(Error::Degree("generators live in degree >= 1".into()));
    }
    let top = ideal_piece(field, config, d, &[])?;
    let lower = ideal_piece(field, config, d - 1, &[])?;
    let products = multiply_by_variables(field, &lower.polys(field), config.nvars(), d)?;
    let len = binomial(config.nvars() + d - 1, d);
    Ok(top.dim() - linalg::span_dim(field, &products, len)?)
}

/// Dense coefficient vectors of `x_i * f` over the degree-`d` monomials.
pub fn multiply_by_variables<F: Field>(
    field: &F,
    forms: &[MultiPoly<F::Elem>],
    nvars: usize,
    d: usize,
) -> Result<Vec<Vec<F::Elem>>> {
    let mb = MonomialBasis::new(nvars, d);
    let mut out = Vec::with_capacity(forms.len() * nvars);
    for f in forms {
        for i in 0..nvars {
            let g = f.mul_mono(&Mono::var(nvars, i));
            out.push(g.to_dense(field, &mb)?);
        }
    }
    Ok(out)
}
