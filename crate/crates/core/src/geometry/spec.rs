//! JSON description of an ellipsoid:
//!
//! ```json
//! { "dim": 2, "radii": [2, 1], "rotation": [[1, 0], [0, 1]], "centre": [1, 0] }
//! ```
//!
//! Exactly one of `shape`, `quadratic`, `cholesky` or `radii` (optionally with
//! `rotation`) defines the shape. `foci: [f1, f2]` replaces `centre` with the
//! midpoint of the two foci.

use super::{centre_from_foci, Ellipsoid};
use crate::error::{Error, Result};
use crate::linalg::{SquareMatrix, Vector};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq)]
pub enum ShapeSpec {
    Shape(SquareMatrix),
    Quadratic(SquareMatrix),
    Cholesky(SquareMatrix),
    Radii {
        radii: Vector,
        rotation: Option<SquareMatrix>,
    },
}

impl ShapeSpec {
    pub fn dim(&self) -> usize {
        match self {
            ShapeSpec::Shape(m) | ShapeSpec::Quadratic(m) | ShapeSpec::Cholesky(m) => m.dim(),
            ShapeSpec::Radii { radii, .. } => radii.dim(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct EllipsoidSpec {
    pub shape: ShapeSpec,
    pub centre: Vector,
    pub foci: Option<(Vector, Vector)>,
}

impl EllipsoidSpec {
    pub fn new(shape: ShapeSpec, centre: Vector) -> Self {
        EllipsoidSpec {
            shape,
            centre,
            foci: None,
        }
    }

    /// Centre taken from the midpoint of two foci.
    pub fn with_foci(shape: ShapeSpec, f1: Vector, f2: Vector) -> Result<Self> {
        let centre = centre_from_foci(&f1, &f2)?;
        Ok(EllipsoidSpec {
            shape,
            centre,
            foci: Some((f1, f2)),
        })
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    pub fn build(&self) -> Result<Ellipsoid> {
        let c = &self.centre;
        let e = match &self.shape {
            ShapeSpec::Shape(m) => Ellipsoid::from_shape(m, c),
            ShapeSpec::Quadratic(m) => Ellipsoid::from_quadratic(m, c),
            ShapeSpec::Cholesky(m) => Ellipsoid::from_cholesky_convention(m, c),
            ShapeSpec::Radii { radii, rotation } => {
                let identity;
                let rot = match rotation {
                    Some(r) => r,
                    None => {
                        identity = SquareMatrix::identity(radii.dim());
                        &identity
                    }
                };
                Ellipsoid::from_radii_rotation(radii, rot, c)
            }
        }?;
        Ok(e.with_spec(self.clone()))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    shape: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    quadratic: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    cholesky: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    radii: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rotation: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    centre: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    foci: Option<[Vec<f64>; 2]>,
}

impl TryFrom<RawSpec> for EllipsoidSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        let defined = [
            raw.shape.is_some(),
            raw.quadratic.is_some(),
            raw.cholesky.is_some(),
            raw.radii.is_some(),
        ]
        .iter()
        .filter(|b| **b)
        .count();
        if defined != 1 {
            return Err(Error::InvalidSpec(format!(
                "exactly one of \"shape\", \"quadratic\", \"cholesky\", \"radii\" is required, found {defined}"
            )));
        }
        if raw.rotation.is_some() && raw.radii.is_none() {
            return Err(Error::InvalidSpec("\"rotation\" requires \"radii\"".into()));
        }
        let shape = if let Some(rows) = raw.shape {
            ShapeSpec::Shape(SquareMatrix::from_rows(&rows)?)
        } else if let Some(rows) = raw.quadratic {
            ShapeSpec::Quadratic(SquareMatrix::from_rows(&rows)?)
        } else if let Some(rows) = raw.cholesky {
            ShapeSpec::Cholesky(SquareMatrix::from_rows(&rows)?)
        } else {
            ShapeSpec::Radii {
                radii: Vector::new(raw.radii.unwrap_or_default())?,
                rotation: raw
                    .rotation
                    .map(|rows| SquareMatrix::from_rows(&rows))
                    .transpose()?,
            }
        };
        if let ShapeSpec::Radii {
            radii,
            rotation: Some(rot),
        } = &shape
        {
            if rot.dim() != radii.dim() {
                return Err(Error::DimensionMismatch {
                    expected: radii.dim(),
                    found: rot.dim(),
                });
            }
        }
        if shape.dim() != raw.dim {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                found: shape.dim(),
            });
        }
        let spec = match (raw.foci, raw.centre) {
            (Some([f1, f2]), _) => {
                EllipsoidSpec::with_foci(shape, Vector::new(f1)?, Vector::new(f2)?)?
            }
            (None, Some(c)) => EllipsoidSpec::new(shape, Vector::new(c)?),
            (None, None) => EllipsoidSpec::new(shape, Vector::zeros(raw.dim)),
        };
        if spec.centre.dim() != raw.dim {
            return Err(Error::DimensionMismatch {
                expected: raw.dim,
                found: spec.centre.dim(),
            });
        }
        Ok(spec)
    }
}

impl From<EllipsoidSpec> for RawSpec {
    fn from(spec: EllipsoidSpec) -> Self {
        let mut raw = RawSpec {
            dim: spec.dim(),
            shape: None,
            quadratic: None,
            cholesky: None,
            radii: None,
            rotation: None,
            centre: Some(spec.centre.into_inner()),
            foci: spec.foci.map(|(a, b)| [a.into_inner(), b.into_inner()]),
        };
        match spec.shape {
            ShapeSpec::Shape(m) => raw.shape = Some(m.rows()),
            ShapeSpec::Quadratic(m) => raw.quadratic = Some(m.rows()),
            ShapeSpec::Cholesky(m) => raw.cholesky = Some(m.rows()),
            ShapeSpec::Radii { radii, rotation } => {
                raw.radii = Some(radii.into_inner());
                raw.rotation = rotation.map(|r| r.rows());
            }
        }
        raw
    }
}
