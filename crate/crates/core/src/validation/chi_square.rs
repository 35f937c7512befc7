use super::{
    check_alpha, chi_square_critical, pulled_back, BinPartition, TestReport, MIN_EXPECTED_PER_BIN,
};
use crate::error::{Error, Result};
use crate::geometry::Ellipsoid;
use crate::sampling::SampleBatch;

fn check_expected(samples: usize, bins: usize) -> Result<()> {
    let expected_per_bin = samples as f64 / bins as f64;
    if expected_per_bin < MIN_EXPECTED_PER_BIN {
        return Err(Error::InsufficientSamples {
            expected_per_bin,
            minimum: MIN_EXPECTED_PER_BIN,
        });
    }
    Ok(())
}

/// Pearson statistic of `observed` against equal cell probabilities.
pub fn chi_square_counts(observed: &[u64], alpha: f64) -> Result<TestReport> {
    check_alpha(alpha)?;
    let total: u64 = observed.iter().sum();
    let n = total as usize;
    check_expected(n, observed.len())?;
    let expected = total as f64 / observed.len() as f64;
    let statistic = observed
        .iter()
        .map(|&o| (o as f64 - expected).powi(2) / expected)
        .sum();
    let dof = observed.len() - 1;
    Ok(TestReport::new(
        "chi_square",
        statistic,
        Some(dof),
        chi_square_critical(dof, alpha)?,
        alpha,
        n,
    ))
}

/// Goodness of fit of the pulled-back batch to the uniform ball law over
/// `shells * 2^n` equal-probability cells.
pub fn chi_square_uniformity(
    batch: &SampleBatch,
    e: &Ellipsoid,
    shells: usize,
    alpha: f64,
) -> Result<TestReport> {
    check_alpha(alpha)?;
    let bins = BinPartition::new(shells, e.dim())?;
    check_expected(batch.len(), bins.bin_count())?;
    let u = pulled_back(batch, e)?;
    chi_square_counts(&bins.counts(&u), alpha)
}

/// Two-sample chi-square: do two batches share one cell distribution?
///
/// Cells empty in both batches are dropped. With equal sample sizes one
/// degree of freedom is lost to the shared total.
pub fn chi_square_two_sample(
    a: &SampleBatch,
    b: &SampleBatch,
    e: &Ellipsoid,
    shells: usize,
    alpha: f64,
) -> Result<TestReport> {
    check_alpha(alpha)?;
    let bins = BinPartition::new(shells, e.dim())?;
    check_expected(a.len().min(b.len()), bins.bin_count())?;
    let ca = bins.counts(&pulled_back(a, e)?);
    let cb = bins.counts(&pulled_back(b, e)?);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (ka, kb) = ((nb / na).sqrt(), (na / nb).sqrt());
    let mut statistic = 0.0;
    let mut occupied = 0usize;
    for (&oa, &ob) in ca.iter().zip(&cb) {
        if oa + ob == 0 {
            continue;
        }
        occupied += 1;
        let d = ka * oa as f64 - kb * ob as f64;
        statistic += d * d / (oa + ob) as f64;
    }
    let constraints = usize::from(a.len() == b.len());
    let dof = occupied.saturating_sub(constraints).max(1);
    Ok(TestReport::new(
        "chi_square_two_sample",
        statistic,
        Some(dof),
        chi_square_critical(dof, alpha)?,
        alpha,
        a.len() + b.len(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{SquareMatrix, Vector};
    use crate::sampling::{sample_batch, Method};

    fn ellipse() -> Ellipsoid {
        let (s, c) = 30f64.to_radians().sin_cos();
        Ellipsoid::from_radii_rotation(
            &Vector::new(vec![2.0, 1.0]).unwrap(),
            &SquareMatrix::new(2, vec![c, -s, s, c]).unwrap(),
            &Vector::new(vec![1.0, 0.0]).unwrap(),
        )
        .unwrap()
    }

    /// One point at the middle of every cell, `per_bin` times over.
    fn centred_batch(e: &Ellipsoid, shells: usize, per_bin: usize) -> SampleBatch {
        let n = e.dim();
        let mut points = Vec::new();
        for k in 0..shells {
            let r = ((k as f64 + 0.5) / shells as f64).powf(1.0 / n as f64);
            for orthant in 0..(1usize << n) {
                let u: Vec<f64> = (0..n)
                    .map(|i| {
                        let s = if orthant & (1 << i) != 0 { 1.0 } else { -1.0 };
                        s * r / (n as f64).sqrt()
                    })
                    .collect();
                let x = e.forward_slice(&u);
                for _ in 0..per_bin {
                    points.push(Vector::new(x.clone()).unwrap());
                }
            }
        }
        SampleBatch {
            dim: n,
            seed: 0,
            method: Method::Transform,
            count: points.len(),
            spec: e.spec().clone(),
            points,
        }
    }

    #[test]
    fn transform_samples_pass() {
        let e = ellipse();
        let batch = sample_batch(&e, 100_000, 7, Method::Transform).unwrap();
        let r = chi_square_uniformity(&batch, &e, 4, 0.001).unwrap();
        assert_eq!(r.dof, Some(15));
        assert!(r.pass, "{r:?}");
    }

    #[test]
    fn equal_counts_give_zero() {
        let e = ellipse();
        let batch = centred_batch(&e, 4, 10);
        let r = chi_square_uniformity(&batch, &e, 4, 0.001).unwrap();
        assert!(r.statistic.abs() < 1e-12, "{r:?}");
        assert!(r.pass);
    }

    #[test]
    fn biased_samples_fail_by_analytic_margin() {
        let e = ellipse();
        let n = 100_000;
        let batch = sample_batch(&e, n, 7, Method::Biased).unwrap();
        let r = chi_square_uniformity(&batch, &e, 4, 0.001).unwrap();
        // With radius u, r^2 = u^2 so P(shell k) = sqrt((k+1)/4) - sqrt(k/4),
        // split evenly over 4 quadrants; E[statistic] = N sum (p_i - q)^2 / q + dof.
        let q = 1.0 / 16.0;
        let noncentral: f64 = (0..4)
            .map(|k| {
                let p = ((k as f64 + 1.0) / 4.0).sqrt() - (k as f64 / 4.0).sqrt();
                4.0 * (p / 4.0 - q).powi(2) / q
            })
            .sum();
        let expected = n as f64 * noncentral + 15.0;
        assert!(!r.pass);
        assert!(r.statistic > 100.0 * r.critical_value);
        assert!(
            (r.statistic - expected).abs() < 0.05 * expected,
            "{} vs {expected}",
            r.statistic
        );
    }

    #[test]
    fn too_few_samples() {
        let e = ellipse();
        let batch = sample_batch(&e, 50, 7, Method::Transform).unwrap();
        assert!(matches!(
            chi_square_uniformity(&batch, &e, 4, 0.001),
            Err(Error::InsufficientSamples { .. })
        ));
    }

    #[test]
    fn corrupted_batch_detected() {
        let e = ellipse();
        let mut batch = sample_batch(&e, 1000, 7, Method::Transform).unwrap();
        batch.points[17] = Vector::new(vec![10.0, 10.0]).unwrap();
        assert!(matches!(
            chi_square_uniformity(&batch, &e, 4, 0.001),
            Err(Error::PointOutsideEllipsoid { index: 17, .. })
        ));
    }

    #[test]
    fn two_sample_identical_batches() {
        let e = ellipse();
        let a = sample_batch(&e, 10_000, 1, Method::Transform).unwrap();
        let r = chi_square_two_sample(&a, &a, &e, 4, 0.001).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.pass);
    }

    #[test]
    fn two_sample_uniform_vs_biased() {
        let e = ellipse();
        let a = sample_batch(&e, 20_000, 1, Method::Transform).unwrap();
        let b = sample_batch(&e, 20_000, 2, Method::Biased).unwrap();
        assert!(!chi_square_two_sample(&a, &b, &e, 4, 0.001).unwrap().pass);
    }
}
