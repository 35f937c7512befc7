//! The [`Ellipsoid`]: an invertible affine image `x = L u + c` of the unit ball.
//!
//! The shape factor `L` is the source of truth. Two quadratic-form
//! conventions are in circulation for describing the same object, and both
//! have a constructor:
//!
//! * [`Ellipsoid::from_quadratic`] takes `M` and yields the set
//!   `{x : (x - c)^T M (x - c) <= 1}`, so `L L^T = M^{-1}`.
//! * [`Ellipsoid::from_cholesky_convention`] takes `S` and uses `L = chol(S)`
//!   directly, which yields `{x : (x - c)^T S^{-1} (x - c) <= 1}`.
//!
//! They agree only when every radius is 1.

mod spec;

pub use spec::{EllipsoidSpec, ShapeSpec};

use crate::error::{Error, Result};
use crate::linalg::{
    cholesky, ensure_same_dim, is_rotation, norm, LowerTriangular, LuFactors, SquareMatrix, Vector,
    MAX_DIM,
};
use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

/// Slack on `|u| <= 1` so that boundary samples survive rounding.
pub const MEMBERSHIP_SLACK: f64 = 1e-12;

/// Tolerance used by [`Ellipsoid::from_radii_rotation`] to accept a rotation.
pub const ROTATION_TOL: f64 = 1e-9;

/// Volume of the unit `n`-ball, `pi^(n/2) / Gamma(n/2 + 1)`, through log-gamma.
pub fn unit_ball_volume(n: usize) -> Result<f64> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max: MAX_DIM,
        });
    }
    let half = n as f64 / 2.0;
    Ok((half * PI.ln() - ln_gamma(half + 1.0)).exp())
}

pub fn centre_from_foci(f1: &Vector, f2: &Vector) -> Result<Vector> {
    Ok(f1.add(f2)?.scale(0.5))
}

/// A point of the closed unit ball.
#[derive(Debug, Clone, PartialEq)]
pub struct BallPoint(Vector);

impl BallPoint {
    pub fn new(coords: Vector) -> Result<Self> {
        let r = coords.norm();
        if !(r <= 1.0 + MEMBERSHIP_SLACK) {
            return Err(Error::NotInUnitBall(r));
        }
        Ok(BallPoint(coords))
    }

    pub(crate) fn from_raw(coords: Vec<f64>) -> Self {
        BallPoint(Vector::from_raw(coords))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn coords(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }
}

/// How `L^{-1} y` is evaluated without forming `L^{-1}`.
#[derive(Debug, Clone)]
enum Pullback {
    /// `L` is lower triangular: forward substitution.
    Lower(LowerTriangular),
    /// `L = R^{-T}`, so `L^{-1} y = R^T y`.
    InverseTransposeOf(LowerTriangular),
    /// `L = C diag(r)`, so `L^{-1} y = diag(1/r) C^T y`.
    RotatedAxes {
        rotation: SquareMatrix,
        radii: Vec<f64>,
    },
    General(LuFactors),
}

#[derive(Debug, Clone)]
pub struct Ellipsoid {
    shape: SquareMatrix,
    centre: Vector,
    abs_det_shape: f64,
    density: f64,
    pullback: Pullback,
    spec: EllipsoidSpec,
}

impl Ellipsoid {
    fn assemble(
        shape: SquareMatrix,
        centre: Vector,
        abs_det_shape: f64,
        pullback: Pullback,
        spec: EllipsoidSpec,
    ) -> Result<Self> {
        if !(abs_det_shape > 0.0) || !abs_det_shape.is_finite() {
            return Err(Error::SingularShape);
        }
        let zeta = unit_ball_volume(shape.dim())?;
        Ok(Ellipsoid {
            density: 1.0 / (zeta * abs_det_shape),
            shape,
            centre,
            abs_det_shape,
            pullback,
            spec,
        })
    }

    /// `x = L u + c` for an arbitrary invertible `L`.
    pub fn from_shape(l: &SquareMatrix, centre: &Vector) -> Result<Self> {
        ensure_same_dim(l.dim(), centre.dim())?;
        let lu = LuFactors::new(l);
        if lu.is_singular() {
            return Err(Error::SingularShape);
        }
        let abs_det = lu.determinant().abs();
        let spec = EllipsoidSpec::new(ShapeSpec::Shape(l.clone()), centre.clone());
        Self::assemble(
            l.clone(),
            centre.clone(),
            abs_det,
            Pullback::General(lu),
            spec,
        )
    }

    /// The set `{x : (x - c)^T m (x - c) <= 1}`.
    ///
    /// With `m = R R^T` the shape factor is `L = R^{-T}` (upper triangular).
    pub fn from_quadratic(m: &SquareMatrix, centre: &Vector) -> Result<Self> {
        ensure_same_dim(m.dim(), centre.dim())?;
        let r = cholesky(m)?;
        let n = m.dim();
        let mut data = Vec::with_capacity(n * n);
        let mut e = vec![0.0; n];
        for i in 0..n {
            e[i] = 1.0;
            // row i of R^{-T} is column i of R^{-1}
            data.extend(r.solve_slice(&e));
            e[i] = 0.0;
        }
        let shape = SquareMatrix::new(n, data)?;
        let abs_det = 1.0 / r.diagonal().product::<f64>();
        let spec = EllipsoidSpec::new(ShapeSpec::Quadratic(m.clone()), centre.clone());
        Self::assemble(
            shape,
            centre.clone(),
            abs_det,
            Pullback::InverseTransposeOf(r),
            spec,
        )
    }

    /// `L = chol(s)` taken literally, giving `{x : (x - c)^T s^{-1} (x - c) <= 1}`.
    pub fn from_cholesky_convention(s: &SquareMatrix, centre: &Vector) -> Result<Self> {
        ensure_same_dim(s.dim(), centre.dim())?;
        let l = cholesky(s)?;
        let abs_det = l.diagonal().product::<f64>();
        let spec = EllipsoidSpec::new(ShapeSpec::Cholesky(s.clone()), centre.clone());
        Self::assemble(
            l.to_matrix(),
            centre.clone(),
            abs_det,
            Pullback::Lower(l),
            spec,
        )
    }

    /// `L = C diag(r_1, ..., r_n)`: an axis-aligned ellipsoid with the given
    /// radii, then rotated by `c_rot`. Reflections are rejected.
    pub fn from_radii_rotation(
        radii: &Vector,
        c_rot: &SquareMatrix,
        centre: &Vector,
    ) -> Result<Self> {
        ensure_same_dim(radii.dim(), c_rot.dim())?;
        ensure_same_dim(radii.dim(), centre.dim())?;
        if let Some((index, &value)) = radii
            .as_slice()
            .iter()
            .enumerate()
            .find(|(_, r)| **r <= 0.0)
        {
            return Err(Error::NonpositiveRadius { index, value });
        }
        if !is_rotation(c_rot, ROTATION_TOL) {
            return Err(Error::NotARotation);
        }
        let n = radii.dim();
        let r = radii.as_slice();
        let data: Vec<f64> = c_rot
            .as_slice()
            .iter()
            .enumerate()
            .map(|(k, v)| v * r[k % n])
            .collect();
        let shape = SquareMatrix::new(n, data)?;
        let abs_det = LuFactors::new(&shape).determinant().abs();
        let spec = EllipsoidSpec::new(
            ShapeSpec::Radii {
                radii: radii.clone(),
                rotation: Some(c_rot.clone()),
            },
            centre.clone(),
        );
        Self::assemble(
            shape,
            centre.clone(),
            abs_det,
            Pullback::RotatedAxes {
                rotation: c_rot.clone(),
                radii: r.to_vec(),
            },
            spec,
        )
    }

    /// Unit ball of dimension `dim` centred at the origin.
    pub fn unit_ball(dim: usize) -> Result<Self> {
        unit_ball_volume(dim)?;
        Self::from_shape(&SquareMatrix::identity(dim), &Vector::zeros(dim))
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn shape(&self) -> &SquareMatrix {
        &self.shape
    }

    pub fn centre(&self) -> &Vector {
        &self.centre
    }

    /// Cached `|det L|`.
    pub fn abs_det_shape(&self) -> f64 {
        self.abs_det_shape
    }

    /// How this ellipsoid was specified.
    pub fn spec(&self) -> &EllipsoidSpec {
        &self.spec
    }

    pub(crate) fn with_spec(mut self, spec: EllipsoidSpec) -> Self {
        self.spec = spec;
        self
    }

    /// `L u + c`.
    pub fn forward(&self, u: &BallPoint) -> Result<Vector> {
        ensure_same_dim(self.dim(), u.dim())?;
        Ok(Vector::from_raw(self.forward_slice(u.coords().as_slice())))
    }

    pub(crate) fn forward_slice(&self, u: &[f64]) -> Vec<f64> {
        let mut x = self.shape.mul_slice(u);
        for (xi, ci) in x.iter_mut().zip(self.centre.as_slice()) {
            *xi += ci;
        }
        x
    }

    /// `L^{-1} (x - c)`, by a solve rather than an explicit inverse.
    pub fn inverse(&self, x: &Vector) -> Result<Vector> {
        ensure_same_dim(self.dim(), x.dim())?;
        Ok(Vector::from_raw(self.inverse_slice(x.as_slice())))
    }

    pub(crate) fn inverse_slice(&self, x: &[f64]) -> Vec<f64> {
        let y: Vec<f64> = x
            .iter()
            .zip(self.centre.as_slice())
            .map(|(a, b)| a - b)
            .collect();
        match &self.pullback {
            Pullback::Lower(l) => l.solve_slice(&y),
            Pullback::InverseTransposeOf(r) => {
                let n = y.len();
                (0..n)
                    .map(|i| (i..n).map(|k| r.get(k, i) * y[k]).sum())
                    .collect()
            }
            Pullback::RotatedAxes { rotation, radii } => rotation
                .transpose_mul_slice(&y)
                .into_iter()
                .zip(radii)
                .map(|(v, r)| v / r)
                .collect(),
            Pullback::General(lu) => lu.solve_slice(&y),
        }
    }

    /// Euclidean norm of the pulled-back point.
    pub(crate) fn pullback_norm(&self, x: &[f64]) -> f64 {
        norm(&self.inverse_slice(x))
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        ensure_same_dim(self.dim(), x.dim())?;
        Ok(self.contains_slice(x.as_slice()))
    }

    pub(crate) fn contains_slice(&self, x: &[f64]) -> bool {
        self.pullback_norm(x) <= 1.0 + MEMBERSHIP_SLACK
    }

    /// `zeta_n |det L|`.
    pub fn volume(&self) -> f64 {
        1.0 / self.density
    }

    /// Uniform density: `1 / (zeta_n |det L|)` inside, zero outside.
    pub fn pdf(&self, x: &Vector) -> Result<f64> {
        Ok(if self.contains(x)? { self.density } else { 0.0 })
    }

    /// The constant interior value of [`Ellipsoid::pdf`].
    pub fn interior_density(&self) -> f64 {
        self.density
    }

    /// Half-widths of the tightest axis-aligned box around the ellipsoid:
    /// the Euclidean norms of the rows of `L`.
    pub fn bounding_halfwidths(&self) -> Vector {
        Vector::from_raw((0..self.dim()).map(|i| norm(self.shape.row(i))).collect())
    }
}
