//! Dense linear algebra for the small, fixed dimensions an ellipsoid lives in.
//!
//! Everything here is value-semantic and allocation-light: a [`Vector`] is a
//! checked `Vec<f64>`, a [`SquareMatrix`] is row-major storage, and a
//! [`LowerTriangular`] is the Cholesky factor type. Dimensions are capped at
//! [`MAX_DIM`].

mod lu;
mod text;

pub use lu::{determinant, LuFactors};
pub use text::{format_matrix_text, parse_matrix_text, parse_vector_text};

use crate::error::{Error, Result};
use std::ops::Index;

/// Largest supported dimension.
pub const MAX_DIM: usize = 64;

/// Relative entrywise tolerance used by the symmetry check.
pub const SYMMETRY_TOL: f64 = 1e-9;

/// Scale factor of the pivot-failure threshold `dim * PIVOT_REL * max_diag`.
pub const PIVOT_REL: f64 = 1e-12;

fn check_dim(dim: usize) -> Result<()> {
    if dim == 0 || dim > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim,
            min: 1,
            max: MAX_DIM,
        });
    }
    Ok(())
}

fn check_finite(entries: &[f64]) -> Result<()> {
    match entries.iter().position(|v| !v.is_finite()) {
        Some(index) => Err(Error::NonFinite { index }),
        None => Ok(()),
    }
}

pub(crate) fn ensure_same_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// A point or direction in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        check_dim(entries.len())?;
        check_finite(&entries)?;
        Ok(Vector(entries))
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim])
    }

    /// Skips validation; callers guarantee finiteness and a valid length.
    pub(crate) fn from_raw(entries: Vec<f64>) -> Self {
        Vector(entries)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn norm(&self) -> f64 {
        norm(&self.0)
    }

    pub fn sub(&self, other: &Vector) -> Result<Vector> {
        ensure_same_dim(self.dim(), other.dim())?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        ensure_same_dim(self.dim(), other.dim())?;
        Ok(Vector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn scale(&self, factor: f64) -> Vector {
        Vector(self.0.iter().map(|v| v * factor).collect())
    }
}

impl Index<usize> for Vector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

/// Dense `dim x dim` matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn new(dim: usize, data: Vec<f64>) -> Result<Self> {
        check_dim(dim)?;
        ensure_same_dim(dim * dim, data.len())?;
        check_finite(&data)?;
        Ok(SquareMatrix { dim, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            ensure_same_dim(dim, row.len())?;
            data.extend_from_slice(row);
        }
        Self::new(dim, data)
    }

    pub fn identity(dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = 1.0;
        }
        SquareMatrix { dim, data }
    }

    pub fn diag(entries: &[f64]) -> Result<Self> {
        let dim = entries.len();
        let mut data = vec![0.0; dim * dim];
        for (i, v) in entries.iter().enumerate() {
            data[i * dim + i] = *v;
        }
        Self::new(dim, data)
    }

    pub(crate) fn from_raw(dim: usize, data: Vec<f64>) -> Self {
        SquareMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.data.chunks(self.dim).map(<[f64]>::to_vec).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> SquareMatrix {
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.data[i * n + j];
            }
        }
        SquareMatrix { dim: n, data }
    }

    pub fn mul(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        ensure_same_dim(self.dim, other.dim)?;
        let n = self.dim;
        let mut data = vec![0.0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.data[k * n + j];
                }
            }
        }
        Ok(SquareMatrix { dim: n, data })
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        ensure_same_dim(self.dim, v.dim())?;
        Ok(Vector(self.mul_slice(v.as_slice())))
    }

    pub(crate) fn mul_slice(&self, v: &[f64]) -> Vec<f64> {
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `self^T * v` without materializing the transpose.
    pub(crate) fn transpose_mul_slice(&self, v: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut out = vec![0.0; n];
        for (i, row) in self.data.chunks(n).enumerate() {
            let vi = v[i];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * vi;
            }
        }
        out
    }

    pub fn max_abs_diag(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.get(i, i))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Checks entrywise relative symmetry, `|a_ij - a_ji| <= tol * max(|a_ij|, |a_ji|)`.
    pub fn check_symmetric(&self, tol: f64) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in 0..i {
                let a = self.get(i, j);
                let b = self.get(j, i);
                let gap = (a - b).abs();
                if gap > tol * a.abs().max(b.abs()) {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        gap,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn frobenius_norm(&self) -> f64 {
        norm(&self.data)
    }

    /// Induced infinity norm (largest absolute row sum).
    pub fn inf_norm(&self) -> f64 {
        self.data
            .chunks(self.dim)
            .map(|row| row.iter().map(|v| v.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    pub fn sub(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        ensure_same_dim(self.dim, other.dim)?;
        Ok(SquareMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }
}

/// Lower-triangular factor with a strictly positive diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LowerTriangular {
    dim: usize,
    data: Vec<f64>,
}

impl LowerTriangular {
    pub fn new(m: SquareMatrix) -> Result<Self> {
        let n = m.dim;
        for i in 0..n {
            for j in i + 1..n {
                if m.get(i, j) != 0.0 {
                    return Err(Error::Parse(format!(
                        "entry ({i}, {j}) above the diagonal is nonzero"
                    )));
                }
            }
            if !(m.get(i, i) > 0.0) {
                return Err(Error::NotPositiveDefinite {
                    step: i,
                    pivot: m.get(i, i),
                    threshold: 0.0,
                });
            }
        }
        Ok(LowerTriangular {
            dim: n,
            data: m.data,
        })
    }

    pub fn identity(dim: usize) -> Self {
        let m = SquareMatrix::identity(dim);
        LowerTriangular { dim, data: m.data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn diagonal(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.dim).map(move |i| self.get(i, i))
    }

    pub fn to_matrix(&self) -> SquareMatrix {
        SquareMatrix {
            dim: self.dim,
            data: self.data.clone(),
        }
    }

    /// `L * L^T`.
    pub fn recompose(&self) -> SquareMatrix {
        let m = self.to_matrix();
        m.mul(&m.transpose()).expect("same dimension")
    }

    pub(crate) fn solve_slice(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let row = &self.data[i * n..i * n + i];
            let s: f64 = row.iter().zip(&y).map(|(a, v)| a * v).sum();
            y[i] = (b[i] - s) / self.data[i * n + i];
        }
        y
    }

    /// Solves `L^T x = b` by back substitution.
    pub(crate) fn solve_transpose_slice(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.data[k * n + i] * x[k]).sum();
            x[i] = (b[i] - s) / self.data[i * n + i];
        }
        x
    }
}

/// Cholesky factorization `m = L L^T`.
///
/// `m` must be symmetric to a relative entrywise tolerance of
/// [`SYMMETRY_TOL`]; asymmetry is reported, never silently averaged away.
/// A pivot at or below `dim * PIVOT_REL * max_diag` is treated as a loss of
/// positive definiteness.
pub fn cholesky(m: &SquareMatrix) -> Result<LowerTriangular> {
    m.check_symmetric(SYMMETRY_TOL)?;
    let n = m.dim;
    let threshold = n as f64 * PIVOT_REL * m.max_abs_diag().max(0.0);
    let mut l = vec![0.0; n * n];
    for j in 0..n {
        let s: f64 = l[j * n..j * n + j].iter().map(|v| v * v).sum();
        let pivot = m.get(j, j) - s;
        if !(pivot > threshold) {
            return Err(Error::NotPositiveDefinite {
                step: j,
                pivot,
                threshold,
            });
        }
        let d = pivot.sqrt();
        l[j * n + j] = d;
        for i in j + 1..n {
            let dot: f64 = (0..j).map(|k| l[i * n + k] * l[j * n + k]).sum();
            l[i * n + j] = (m.get(i, j) - dot) / d;
        }
    }
    Ok(LowerTriangular { dim: n, data: l })
}

/// Forward substitution: returns `y` with `l * y = b`.
pub fn solve_lower(l: &LowerTriangular, b: &Vector) -> Result<Vector> {
    ensure_same_dim(l.dim, b.dim())?;
    Ok(Vector(l.solve_slice(b.as_slice())))
}

pub fn det_triangular(l: &LowerTriangular) -> f64 {
    l.diagonal().product()
}

/// True iff `c^T c` is within `tol` of the identity (induced infinity norm)
/// and `det(c)` lies in `[1 - tol, 1 + tol]`.
pub fn is_rotation(c: &SquareMatrix, tol: f64) -> bool {
    let gram = c.transpose().mul(c).expect("same dimension");
    let off = gram
        .sub(&SquareMatrix::identity(c.dim))
        .expect("same dimension")
        .inf_norm();
    off <= tol && (determinant(c) - 1.0).abs() <= tol
}

/// Inverse of a symmetric positive definite matrix through its Cholesky
/// factor and two triangular solves per column.
pub fn invert_spd(m: &SquareMatrix) -> Result<SquareMatrix> {
    let l = cholesky(m)?;
    let n = m.dim;
    let mut data = vec![0.0; n * n];
    let mut e = vec![0.0; n];
    for j in 0..n {
        e.iter_mut().for_each(|v| *v = 0.0);
        e[j] = 1.0;
        let col = l.solve_transpose_slice(&l.solve_slice(&e));
        for i in 0..n {
            data[i * n + j] = col[i];
        }
    }
    Ok(SquareMatrix { dim: n, data })
}
