use crate::args::EllipsoidArgs;
use crate::error::CliError;
use hyperellipsoid::linalg::parse_matrix_text;
use hyperellipsoid::{Ellipsoid, EllipsoidSpec, ShapeSpec, SquareMatrix, Vector};
use std::fs;
use std::path::Path;

const DEFAULT_DIM: usize = 2;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
}

/// A matrix text file, or `I<n>` for the `n x n` identity.
fn matrix_arg(arg: &str) -> Result<SquareMatrix, CliError> {
    if let Some(n) = arg.strip_prefix('I').and_then(|d| d.parse::<usize>().ok()) {
        if !Path::new(arg).exists() {
            return Ok(SquareMatrix::new(n, identity_entries(n))?);
        }
    }
    let text = read(Path::new(arg))?;
    parse_matrix_text(&text).map_err(|e| CliError::Config(format!("{arg}: {e}")))
}

fn identity_entries(n: usize) -> Vec<f64> {
    (0..n * n)
        .map(|k| if k % (n + 1) == 0 { 1.0 } else { 0.0 })
        .collect()
}

fn foci_file(path: &Path) -> Result<(Vector, Vector), CliError> {
    let [f1, f2]: [Vec<f64>; 2] = serde_json::from_str(&read(path)?).map_err(|e| {
        CliError::Config(format!("{}: expected [[...], [...]]: {e}", path.display()))
    })?;
    Ok((Vector::new(f1)?, Vector::new(f2)?))
}

pub fn ellipsoid_spec(args: &EllipsoidArgs) -> Result<EllipsoidSpec, CliError> {
    let spec = if let Some(path) = &args.spec {
        serde_json::from_str::<EllipsoidSpec>(&read(path)?)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?
    } else {
        let shape = if let Some(radii) = &args.radii {
            ShapeSpec::Radii {
                radii: Vector::new(radii.clone())?,
                rotation: args.rotation.as_deref().map(matrix_arg).transpose()?,
            }
        } else if let Some(s) = &args.shape {
            ShapeSpec::Shape(matrix_arg(s)?)
        } else if let Some(q) = &args.quadratic {
            ShapeSpec::Quadratic(matrix_arg(q)?)
        } else {
            let n = args.dim.unwrap_or(DEFAULT_DIM);
            ShapeSpec::Shape(SquareMatrix::new(n, identity_entries(n))?)
        };
        let n = shape.dim();
        match (&args.foci, &args.centre) {
            (Some(path), _) => {
                let (f1, f2) = foci_file(path)?;
                EllipsoidSpec::with_foci(shape, f1, f2)?
            }
            (None, Some(c)) => EllipsoidSpec::new(shape, Vector::new(c.clone())?),
            (None, None) => EllipsoidSpec::new(shape, Vector::zeros(n)),
        }
    };
    if let Some(n) = args.dim {
        if n != spec.dim() {
            return Err(CliError::Config(format!(
                "--dim {n} does not match the ellipsoid dimension {}",
                spec.dim()
            )));
        }
    }
    if spec.centre.dim() != spec.dim() {
        return Err(CliError::Config(format!(
            "centre has dimension {}, ellipsoid has {}",
            spec.centre.dim(),
            spec.dim()
        )));
    }
    Ok(spec)
}

pub fn ellipsoid(args: &EllipsoidArgs) -> Result<Ellipsoid, CliError> {
    Ok(ellipsoid_spec(args)?.build()?)
}
