//! Statistical certification that transformed ball samples are uniform over
//! the ellipsoid.
//!
//! All tests work on pulled-back points `u = L^{-1}(x - c)`. The ellipsoid
//! sample is uniform iff `u` is uniform on the unit ball, and there exact
//! equal-probability cells are available by symmetry (see [`BinPartition`]).

mod bins;
mod chi_square;
mod identities;
mod ks;
mod volume;

pub use bins::BinPartition;
pub use chi_square::{chi_square_counts, chi_square_two_sample, chi_square_uniformity};
pub use identities::{fd_jacobian, proof_identity_check, FD_STEP, JACOBIAN_TOL, PDF_REL_TOL};
pub use ks::{ks_uniform_statistic, radial_ks, KS_CRITICAL_COEFF};
pub use volume::{mc_volume, mc_volume_with, MIN_MC_DRAWS};

use crate::error::{Error, Result};
use crate::geometry::Ellipsoid;
use crate::linalg::ensure_same_dim;
use crate::sampling::SampleBatch;
use serde::Serialize;
use statrs::distribution::{ContinuousCDF, Normal};

/// Default significance level.
pub const DEFAULT_ALPHA: f64 = 0.001;

/// Tolerance on the pulled-back norm before a point counts as outside.
pub const OUTSIDE_TOL: f64 = 1e-9;

/// Minimum expected count per bin for the chi-square approximation.
pub const MIN_EXPECTED_PER_BIN: f64 = 5.0;

/// Outcome of one certification test. `pass` is always
/// `statistic < critical_value`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestReport {
    #[serde(rename = "test")]
    pub test_name: String,
    pub statistic: f64,
    pub dof: Option<usize>,
    #[serde(rename = "critical")]
    pub critical_value: f64,
    pub alpha: f64,
    pub pass: bool,
    #[serde(rename = "n_samples")]
    pub sample_count: usize,
}

impl TestReport {
    pub fn new(
        test_name: impl Into<String>,
        statistic: f64,
        dof: Option<usize>,
        critical_value: f64,
        alpha: f64,
        sample_count: usize,
    ) -> Self {
        TestReport {
            test_name: test_name.into(),
            statistic,
            dof,
            critical_value,
            alpha,
            pass: statistic < critical_value,
            sample_count,
        }
    }
}

pub(crate) fn check_alpha(alpha: f64) -> Result<()> {
    if alpha == 0.01 || alpha == 0.001 {
        Ok(())
    } else {
        Err(Error::UnsupportedAlpha(alpha))
    }
}

/// Upper `alpha` quantile of the chi-square distribution with `dof` degrees
/// of freedom, by the Wilson-Hilferty cube-root normal approximation.
pub fn chi_square_critical(dof: usize, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    let z = Normal::standard().inverse_cdf(1.0 - alpha);
    let k = dof as f64;
    let a = 2.0 / (9.0 * k);
    Ok(k * (1.0 - a + z * a.sqrt()).powi(3))
}

/// Pulls every batch point back into the unit ball, rejecting points that
/// land outside it.
pub(crate) fn pulled_back(batch: &SampleBatch, e: &Ellipsoid) -> Result<Vec<Vec<f64>>> {
    ensure_same_dim(e.dim(), batch.dim)?;
    batch
        .points
        .iter()
        .enumerate()
        .map(|(index, x)| {
            ensure_same_dim(e.dim(), x.dim())?;
            let u = e.inverse_slice(x.as_slice());
            let radius = crate::linalg::norm(&u);
            if radius > 1.0 + OUTSIDE_TOL {
                return Err(Error::PointOutsideEllipsoid { index, radius });
            }
            Ok(u)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::ChiSquared;

    #[test]
    fn wilson_hilferty_against_exact_quantiles() {
        for dof in [7usize, 31, 63, 127, 1023] {
            for alpha in [0.01, 0.001] {
                let approx = chi_square_critical(dof, alpha).unwrap();
                let exact = ChiSquared::new(dof as f64)
                    .unwrap()
                    .inverse_cdf(1.0 - alpha);
                let rel = (approx - exact).abs() / exact;
                let tol = if dof >= 31 { 2e-3 } else { 1e-2 };
                assert!(rel < tol, "dof {dof} alpha {alpha}: {approx} vs {exact}");
            }
        }
        // dof 31: the exact 0.999 quantile is 61.098
        assert!((chi_square_critical(31, 0.001).unwrap() - 61.098).abs() < 0.15);
    }

    #[test]
    fn alpha_restricted() {
        assert!(chi_square_critical(31, 0.05).is_err());
        assert_eq!(check_alpha(0.2), Err(Error::UnsupportedAlpha(0.2)));
    }

    #[test]
    fn report_consistency() {
        let r = TestReport::new("x", 1.0, Some(3), 2.0, 0.001, 10);
        assert!(r.pass);
        let r = TestReport::new("x", 2.0, Some(3), 2.0, 0.001, 10);
        assert!(!r.pass);
        let json = serde_json::to_value(&r).unwrap();
        for key in [
            "test",
            "statistic",
            "dof",
            "critical",
            "alpha",
            "pass",
            "n_samples",
        ] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert_eq!(json.as_object().unwrap().len(), 7);
    }
}
