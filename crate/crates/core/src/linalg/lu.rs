use super::{ensure_same_dim, SquareMatrix, Vector, PIVOT_REL};
use crate::error::{Error, Result};

/// LU factorization with partial pivoting, `P A = L U`, packed in one buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactors {
    dim: usize,
    lu: Vec<f64>,
    perm: Vec<usize>,
    sign: f64,
    max_abs: f64,
}

impl LuFactors {
    pub fn new(m: &SquareMatrix) -> Self {
        let n = m.dim();
        let mut lu = m.as_slice().to_vec();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let max_abs = lu.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
        for k in 0..n {
            let p = (k..n)
                .max_by(|&a, &b| lu[a * n + k].abs().total_cmp(&lu[b * n + k].abs()))
                .expect("non-empty range");
            if p != k {
                for j in 0..n {
                    lu.swap(k * n + j, p * n + j);
                }
                perm.swap(k, p);
                sign = -sign;
            }
            let pivot = lu[k * n + k];
            if pivot == 0.0 {
                continue;
            }
            for i in k + 1..n {
                let f = lu[i * n + k] / pivot;
                lu[i * n + k] = f;
                for j in k + 1..n {
                    lu[i * n + j] -= f * lu[k * n + j];
                }
            }
        }
        LuFactors {
            dim: n,
            lu,
            perm,
            sign,
            max_abs,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn determinant(&self) -> f64 {
        self.sign
            * (0..self.dim)
                .map(|i| self.lu[i * self.dim + i])
                .product::<f64>()
    }

    /// Singular when some pivot is at or below `dim * PIVOT_REL * max|a_ij|`.
    pub fn is_singular(&self) -> bool {
        let threshold = self.dim as f64 * PIVOT_REL * self.max_abs;
        (0..self.dim).any(|i| !(self.lu[i * self.dim + i].abs() > threshold))
    }

    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        ensure_same_dim(self.dim, b.dim())?;
        if self.is_singular() {
            return Err(Error::SingularShape);
        }
        Ok(Vector::from_raw(self.solve_slice(b.as_slice())))
    }

    pub(crate) fn solve_slice(&self, b: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let s: f64 = (0..i).map(|k| self.lu[i * n + k] * x[k]).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let s: f64 = (i + 1..n).map(|k| self.lu[i * n + k] * x[k]).sum();
            x[i] = (x[i] - s) / self.lu[i * n + i];
        }
        x
    }
}

pub fn determinant(m: &SquareMatrix) -> f64 {
    LuFactors::new(m).determinant()
}
