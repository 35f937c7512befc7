//! Point generators.
//!
//! [`sample_unit_ball`] is the workhorse: an isotropic Gaussian direction
//! scaled to radius `u^(1/n)`, so that `r^n` is uniform and the point is
//! uniform in volume. [`sample_ellipsoid`] pushes such a point through the
//! ellipsoid's affine map. The rejection samplers are slow but uniform by
//! construction and serve as independent oracles; [`biased_ellipsoid_sampler`]
//! is a deliberately wrong sampler used as a negative control.

mod batch;

pub use batch::{sample_batch, sample_batch_with, Method, SampleBatch, CHUNK_SIZE};

use crate::error::{Error, Result};
use crate::geometry::{BallPoint, Ellipsoid};
use crate::linalg::{norm, Vector, MAX_DIM};
use crate::rng::VariateSource;

/// Largest dimension accepted by the box-rejection samplers. The acceptance
/// rate `zeta_n / 2^n` is already about 1e-3 at 12.
pub const MAX_REJECTION_DIM: usize = 12;

fn check_dim(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::DimensionOutOfRange {
            dim: n,
            min: 1,
            max,
        });
    }
    Ok(())
}

fn gaussian_direction<R: VariateSource + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..n).map(|_| rng.gaussian()).collect();
        let len = norm(&g);
        if len > 0.0 {
            return g.into_iter().map(|v| v / len).collect();
        }
    }
}

fn ball_point_with_radius<R: VariateSource + ?Sized>(
    n: usize,
    rng: &mut R,
    radius: impl FnOnce(f64) -> f64,
) -> Vec<f64> {
    let dir = gaussian_direction(n, rng);
    let r = radius(rng.uniform());
    dir.into_iter().map(|v| v * r).collect()
}

/// Uniform point in the unit `n`-ball.
pub fn sample_unit_ball<R: VariateSource + ?Sized>(n: usize, rng: &mut R) -> Result<BallPoint> {
    check_dim(n, MAX_DIM)?;
    let inv_n = 1.0 / n as f64;
    Ok(BallPoint::from_raw(ball_point_with_radius(n, rng, |u| {
        u.powf(inv_n)
    })))
}

/// One box-rejection attempt: a uniform point of `[-1, 1]^n`, kept only if it
/// falls in the ball.
pub fn try_unit_ball_rejection<R: VariateSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<Option<BallPoint>> {
    check_dim(n, MAX_REJECTION_DIM)?;
    let x: Vec<f64> = (0..n).map(|_| 2.0 * rng.uniform() - 1.0).collect();
    Ok((norm(&x) <= 1.0).then(|| BallPoint::from_raw(x)))
}

pub fn sample_unit_ball_rejection<R: VariateSource + ?Sized>(
    n: usize,
    rng: &mut R,
) -> Result<BallPoint> {
    loop {
        if let Some(p) = try_unit_ball_rejection(n, rng)? {
            return Ok(p);
        }
    }
}

/// Uniform point in `e`: a uniform ball point mapped by `x = L u + c`.
pub fn sample_ellipsoid<R: VariateSource + ?Sized>(e: &Ellipsoid, rng: &mut R) -> Vector {
    let u = sample_unit_ball(e.dim(), rng).expect("ellipsoid dimension is in range");
    Vector::from_raw(e.forward_slice(u.coords().as_slice()))
}

/// One attempt of box rejection over the bounding box of `e`.
pub fn try_ellipsoid_rejection<R: VariateSource + ?Sized>(
    e: &Ellipsoid,
    rng: &mut R,
) -> Result<Option<Vector>> {
    check_dim(e.dim(), MAX_REJECTION_DIM)?;
    let w = e.bounding_halfwidths();
    let x: Vec<f64> = e
        .centre()
        .as_slice()
        .iter()
        .zip(w.as_slice())
        .map(|(c, h)| c + h * (2.0 * rng.uniform() - 1.0))
        .collect();
    Ok(e.contains_slice(&x).then(|| Vector::from_raw(x)))
}

pub fn sample_ellipsoid_rejection<R: VariateSource + ?Sized>(
    e: &Ellipsoid,
    rng: &mut R,
) -> Result<Vector> {
    loop {
        if let Some(x) = try_ellipsoid_rejection(e, rng)? {
            return Ok(x);
        }
    }
}

/// Negative control: ball radius `u` instead of `u^(1/n)`, which crowds
/// points toward the centre whenever `n >= 2`.
pub fn biased_ellipsoid_sampler<R: VariateSource + ?Sized>(e: &Ellipsoid, rng: &mut R) -> Vector {
    let u = ball_point_with_radius(e.dim(), rng, |u| u);
    Vector::from_raw(e.forward_slice(&u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::SquareMatrix;
    use crate::rng::RngStream;
    use std::f64::consts::PI;

    /// Replays scripted variates, then defers to a real stream.
    struct Scripted {
        gaussians: Vec<f64>,
        fallback: RngStream,
        gaussian_calls: usize,
    }

    impl VariateSource for Scripted {
        fn uniform(&mut self) -> f64 {
            self.fallback.uniform()
        }
        fn gaussian(&mut self) -> f64 {
            self.gaussian_calls += 1;
            if self.gaussians.is_empty() {
                self.fallback.gaussian()
            } else {
                self.gaussians.remove(0)
            }
        }
    }

    fn radii_ellipse() -> Ellipsoid {
        Ellipsoid::from_radii_rotation(
            &Vector::new(vec![2.0, 1.0]).unwrap(),
            &SquareMatrix::identity(2),
            &Vector::new(vec![1.0, 0.0]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn unit_ball_deterministic() {
        let a = sample_unit_ball(2, &mut RngStream::new(42)).unwrap();
        let b = sample_unit_ball(2, &mut RngStream::new(42)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unit_ball_dimension_range() {
        let mut rng = RngStream::new(0);
        assert!(sample_unit_ball(0, &mut rng).is_err());
        assert!(sample_unit_ball(65, &mut rng).is_err());
        assert!(sample_unit_ball(64, &mut rng).is_ok());
        assert!(try_unit_ball_rejection(13, &mut rng).is_err());
    }

    #[test]
    fn unit_ball_inside() {
        let mut rng = RngStream::new(3);
        for _ in 0..10_000 {
            assert!(sample_unit_ball(3, &mut rng).unwrap().coords().norm() <= 1.0);
        }
    }

    #[test]
    fn unit_ball_radial_moment() {
        // r^n ~ U(0,1): mean 1/2, variance 1/12
        let mut rng = RngStream::new(4);
        let n = 100_000;
        let mean = (0..n)
            .map(|_| {
                sample_unit_ball(4, &mut rng)
                    .unwrap()
                    .coords()
                    .norm()
                    .powi(4)
            })
            .sum::<f64>()
            / n as f64;
        let stderr = (1.0 / 12.0 / n as f64).sqrt();
        assert!((mean - 0.5).abs() < 3.0 * stderr, "mean {mean}");
    }

    #[test]
    fn zero_gaussian_vector_is_redrawn() {
        let mut src = Scripted {
            gaussians: vec![0.0, 0.0, 0.0, 3.0, 4.0, 0.0],
            fallback: RngStream::new(9),
            gaussian_calls: 0,
        };
        let p = sample_unit_ball(3, &mut src).unwrap();
        assert_eq!(src.gaussian_calls, 6);
        let r = p.coords().norm();
        let c = p.coords();
        // direction (3, 4, 0) / 5
        assert!((c[0] / r - 0.6).abs() < 1e-15);
        assert!((c[1] / r - 0.8).abs() < 1e-15);
        assert_eq!(c[2], 0.0);
    }

    #[test]
    fn ball_rejection_acceptance() {
        let mut rng = RngStream::new(5);
        let attempts = 10_000;
        let hits = (0..attempts)
            .filter(|_| try_unit_ball_rejection(1, &mut rng).unwrap().is_some())
            .count();
        assert_eq!(hits, attempts);

        let attempts = 100_000;
        let mut hits = 0;
        for _ in 0..attempts {
            if let Some(p) = try_unit_ball_rejection(2, &mut rng).unwrap() {
                assert!(p.coords().norm() <= 1.0);
                hits += 1;
            }
        }
        let p = PI / 4.0;
        let rate = hits as f64 / attempts as f64;
        let stderr = (p * (1.0 - p) / attempts as f64).sqrt();
        assert!((rate - p).abs() < 3.0 * stderr, "rate {rate}");
    }

    #[test]
    fn ellipsoid_sampler_unit_disc_is_ball_sampler() {
        let disc = Ellipsoid::unit_ball(2).unwrap();
        let x = sample_ellipsoid(&disc, &mut RngStream::new(11));
        let u = sample_unit_ball(2, &mut RngStream::new(11)).unwrap();
        assert_eq!(&x, u.coords());
    }

    #[test]
    fn ellipsoid_sampler_symmetry() {
        let e = radii_ellipse();
        let mut rng = RngStream::new(12);
        let n = 100_000;
        let pts: Vec<Vector> = (0..n).map(|_| sample_ellipsoid(&e, &mut rng)).collect();
        for (axis, radius) in [(0, 2.0), (1, 1.0)] {
            let mean = pts.iter().map(|p| p[axis]).sum::<f64>() / n as f64;
            // a uniform ellipse coordinate has variance r^2 / 4
            let stderr = (radius * radius / 4.0 / n as f64).sqrt();
            assert!((mean - e.centre()[axis]).abs() < 3.0 * stderr);
        }
        let right = pts.iter().filter(|p| p[0] > 1.0).count() as f64 / n as f64;
        assert!((right - 0.5).abs() < 3.0 * (0.25 / n as f64).sqrt());
        assert!(pts.iter().all(|p| e.contains(p).unwrap()));
    }

    #[test]
    fn ellipsoid_rejection_acceptance() {
        let mut rng = RngStream::new(13);
        let attempts = 100_000;
        for e in [
            Ellipsoid::unit_ball(2).unwrap(),
            radii_ellipse(),
            Ellipsoid::from_radii_rotation(
                &Vector::new(vec![2.0, 1.0]).unwrap(),
                &SquareMatrix::new(2, vec![0.6, -0.8, 0.8, 0.6]).unwrap(),
                &Vector::zeros(2),
            )
            .unwrap(),
        ] {
            let w = e.bounding_halfwidths();
            let p = e.volume() / (4.0 * w[0] * w[1]);
            let mut hits = 0;
            for _ in 0..attempts {
                if let Some(x) = try_ellipsoid_rejection(&e, &mut rng).unwrap() {
                    assert!(e.contains(&x).unwrap());
                    hits += 1;
                }
            }
            let rate = hits as f64 / attempts as f64;
            let stderr = (p * (1.0 - p) / attempts as f64).sqrt();
            assert!((rate - p).abs() < 3.0 * stderr, "rate {rate} vs {p}");
        }
    }

    #[test]
    fn biased_matches_uniform_in_one_dimension() {
        let e = Ellipsoid::from_shape(
            &SquareMatrix::new(1, vec![3.0]).unwrap(),
            &Vector::new(vec![1.0]).unwrap(),
        )
        .unwrap();
        let mut a = RngStream::new(14);
        let mut b = RngStream::new(14);
        for _ in 0..1000 {
            assert_eq!(
                biased_ellipsoid_sampler(&e, &mut a),
                sample_ellipsoid(&e, &mut b)
            );
        }
    }

    #[test]
    fn biased_radius_mean() {
        let e = radii_ellipse();
        let mut rng = RngStream::new(15);
        let n = 100_000;
        let radii: Vec<f64> = (0..n)
            .map(|_| {
                let x = biased_ellipsoid_sampler(&e, &mut rng);
                assert!(e.contains(&x).unwrap());
                e.inverse(&x).unwrap().norm()
            })
            .collect();
        let mean = radii.iter().sum::<f64>() / n as f64;
        // E[u] = 1/2 with variance 1/12; the uniform sampler gives 2/3
        assert!((mean - 0.5).abs() < 3.0 * (1.0 / 12.0 / n as f64).sqrt());
    }
}
