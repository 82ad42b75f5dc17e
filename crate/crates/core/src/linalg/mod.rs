//! Dense exact linear algebra over a [`Field`]: echelon forms, rank, kernels
//! and span comparisons.
//!
//! Elimination uses first-nonzero pivoting and is deterministic. Prime fields
//! route through a specialized kernel in [`fast`] that defers modular
//! reductions; every other field uses [`generic_row_reduce`].

pub(crate) mod fast;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::Field;

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
    /// Free-form note on how the matrix was built, shown in debug dumps.
    pub provenance: String,
}

impl<E: Clone> Matrix<E> {
    pub fn filled(rows: usize, cols: usize, value: E) -> Self {
        Matrix { rows, cols, data: vec![value; rows * cols], provenance: String::new() }
    }

    pub fn zeros<F: Field<Elem = E>>(field: &F, rows: usize, cols: usize) -> Self {
        Self::filled(rows, cols, field.zero())
    }

    /// Every row must have length `cols`.
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for (i, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r);
        }
        Ok(Matrix { rows: n, cols, data, provenance: String::new() })
    }

    pub fn with_provenance(mut self, note: impl Into<String>) -> Self {
        self.provenance = note.into();
        self
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [E] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        let (head, tail) = self.data.split_at_mut(hi * self.cols);
        head[lo * self.cols..(lo + 1) * self.cols].swap_with_slice(&mut tail[..self.cols]);
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data, provenance: self.provenance.clone() }
    }

    pub(crate) fn data_mut(&mut self) -> &mut [E] {
        &mut self.data
    }

    pub fn push_row(&mut self, row: Vec<E>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::Dimension(format!(
                "row has length {}, expected {}",
                row.len(),
                self.cols
            )));
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    pub fn mul_vec<F: Field<Elem = E>>(&self, field: &F, v: &[E]) -> Result<Vec<E>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self.rows().map(|r| dot(field, r, v)).collect())
    }
}

impl<E: fmt::Debug> fmt::Debug for Matrix<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} ({})", self.rows, self.cols, self.provenance)?;
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Text dump: a header line `rows cols`, then one line per row.
pub fn dump<F: Field>(field: &F, m: &Matrix<F::Elem>) -> String {
    let mut out = format!("{} {}\n", m.nrows(), m.ncols());
    for r in m.rows() {
        let line: Vec<String> = r.iter().map(|x| field.format(x)).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter()
        .zip(b)
        .fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// Gaussian elimination with first-nonzero pivoting over any field.
pub fn generic_row_reduce<F: Field + ?Sized>(
    field: &F,
    m: &mut Matrix<F::Elem>,
    full: bool,
) -> Vec<usize> {
    let (rows, cols) = (m.nrows(), m.ncols());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = field.inv(m.get(r, c)).expect("pivot is nonzero");
        for j in c..cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        let pivot_row: Vec<F::Elem> = m.row(r)[c..].to_vec();
        let targets: Box<dyn Iterator<Item = usize>> =
            if full { Box::new((0..rows).filter(|&i| i != r)) } else { Box::new(r + 1..rows) };
        for i in targets {
            let f = m.get(i, c).clone();
            if field.is_zero(&f) {
                continue;
            }
            let row = &mut m.row_mut(i)[c..];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(x, &field.mul(&f, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Reduced row echelon form (a copy) with its pivot columns.
pub fn rref<F: Field>(field: &F, m: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut a = m.clone();
    let pivots = field.row_reduce(&mut a, true);
    (a, pivots)
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    let mut a = m.clone();
    field.row_reduce(&mut a, false).len()
}

/// Rank of a matrix given by rows, consuming it.
pub fn rank_of_rows<F: Field>(field: &F, rows: Vec<Vec<F::Elem>>, cols: usize) -> Result<usize> {
    let mut a = Matrix::from_rows(rows, cols)?;
    Ok(field.row_reduce(&mut a, false).len())
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column:
/// the free coordinate is 1, the other free coordinates are 0.
pub fn kernel<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let (r, pivots) = rref(field, m);
    kernel_from_rref(field, &r, &pivots)
}

pub(crate) fn kernel_from_rref<F: Field>(
    field: &F,
    r: &Matrix<F::Elem>,
    pivots: &[usize],
) -> Vec<Vec<F::Elem>> {
    let cols = r.ncols();
    let mut is_pivot = vec![false; cols];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![field.zero(); cols];
        v[free] = field.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(r.get(i, free));
        }
        basis.push(v);
    }
    basis
}

fn check_lengths<E>(vectors: &[Vec<E>], len: usize) -> Result<()> {
    match vectors.iter().find(|v| v.len() != len) {
        Some(v) => Err(Error::Dimension(format!("vector of length {} expected {len}", v.len()))),
        None => Ok(()),
    }
}

/// Dimension of the span of `vectors`, each of length `len`.
pub fn span_dim<F: Field>(field: &F, vectors: &[Vec<F::Elem>], len: usize) -> Result<usize> {
    check_lengths(vectors, len)?;
    rank_of_rows(field, vectors.to_vec(), len)
}

pub fn span_contains<F: Field>(field: &F, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Result<bool> {
    let len = v.len();
    check_lengths(basis, len)?;
    let base = rank_of_rows(field, basis.to_vec(), len)?;
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    Ok(rank_of_rows(field, with, len)? == base)
}

pub fn span_equal<F: Field>(
    field: &F,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
    len: usize,
) -> Result<bool> {
    check_lengths(a, len)?;
    check_lengths(b, len)?;
    let ra = rank_of_rows(field, a.to_vec(), len)?;
    let rb = rank_of_rows(field, b.to_vec(), len)?;
    if ra != rb {
        return Ok(false);
    }
    let mut joint = a.to_vec();
    joint.extend(b.iter().cloned());
    Ok(rank_of_rows(field, joint, len)? == ra)
}

/// Express each target as a combination of the (independent) `basis`.
/// Returns `Ok(None)` for a target outside the span.
pub fn solve_in_span<F: Field>(
    field: &F,
    basis: &[Vec<F::Elem>],
    targets: &[Vec<F::Elem>],
    len: usize,
) -> Result<Vec<Option<Vec<F::Elem>>>> {
    check_lengths(basis, len)?;
    check_lengths(targets, len)?;
    let k = basis.len();
    let width = k + targets.len();
    // columns: basis vectors, then targets
    let mut m = Matrix::zeros(field, len, width);
    for (j, v) in basis.iter().chain(targets).enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    let pivots = field.row_reduce(&mut m, true);
    let basis_rank = pivots.iter().take_while(|&&c| c < k).count();
    if basis_rank < k {
        return Err(Error::Invalid(format!(
            "basis is dependent: rank {basis_rank} of {k} vectors"
        )));
    }
    let mut out = Vec::with_capacity(targets.len());
    for t in 0..targets.len() {
        let col = k + t;
        // in span iff no pivot row beyond the basis block has a nonzero entry in this column
        let outside = (k..m.nrows()).any(|i| !field.is_zero(m.get(i, col)));
        if outside {
            out.push(None);
        } else {
            out.push(Some((0..k).map(|i| m.get(i, col).clone()).collect()));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
