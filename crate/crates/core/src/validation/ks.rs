use super::{pulled_back, TestReport};
use crate::error::{Error, Result};
use crate::geometry::Ellipsoid;
use crate::sampling::SampleBatch;

/// `D_N < KS_CRITICAL_COEFF / sqrt(N)` at significance about 0.001, from the
/// asymptotic Kolmogorov distribution.
pub const KS_CRITICAL_COEFF: f64 = 1.95;

pub const KS_ALPHA: f64 = 0.001;

pub const MIN_KS_SAMPLES: usize = 100;

/// One-sample Kolmogorov-Smirnov distance between the empirical CDF of
/// `values` and the Uniform(0, 1) CDF.
pub fn ks_uniform_statistic(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let t = t.clamp(0.0, 1.0);
            let above = (i + 1) as f64 / n - t;
            let below = t - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

/// Uniformity implies the pulled-back radius has CDF `r^n`, so `r^n` must be
/// Uniform(0, 1).
pub fn radial_ks(batch: &SampleBatch, e: &Ellipsoid) -> Result<TestReport> {
    let n = batch.len();
    if n < MIN_KS_SAMPLES {
        return Err(Error::InsufficientSamples {
            expected_per_bin: n as f64,
            minimum: MIN_KS_SAMPLES as f64,
        });
    }
    let dim = e.dim() as i32;
    let mut values: Vec<f64> = pulled_back(batch, e)?
        .iter()
        .map(|u| crate::linalg::norm(u).powi(dim))
        .collect();
    let d = ks_uniform_statistic(&mut values);
    Ok(TestReport::new(
        "radial_ks",
        d,
        None,
        KS_CRITICAL_COEFF / (n as f64).sqrt(),
        KS_ALPHA,
        n,
    ))
}
