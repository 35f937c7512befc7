use crate::error::{Error, Result};
use crate::exec::{map_indexed, Execution};
use crate::geometry::Ellipsoid;
use crate::rng::{RngStream, VariateSource};
use crate::sampling::MAX_REJECTION_DIM;

pub const MIN_MC_DRAWS: usize = 10_000;

const MC_CHUNK: usize = 1 << 16;

/// [`mc_volume_with`] using the default [`Execution`].
pub fn mc_volume(e: &Ellipsoid, count: usize, rng: &mut RngStream) -> Result<(f64, f64)> {
    mc_volume_with(e, count, rng, Execution::default())
}

/// Box-rejection volume estimate and its binomial standard error.
///
/// Draws uniformly in the bounding box of `e` and scales the box volume by
/// the hit fraction. Work is split into fixed chunks, each on a child of a
/// stream forked from `rng`, so the result does not depend on `exec`.
pub fn mc_volume_with(
    e: &Ellipsoid,
    count: usize,
    rng: &mut RngStream,
    exec: Execution,
) -> Result<(f64, f64)> {
    if e.dim() > MAX_REJECTION_DIM {
        return Err(Error::DimensionOutOfRange {
            dim: e.dim(),
            min: 1,
            max: MAX_REJECTION_DIM,
        });
    }
    if count < MIN_MC_DRAWS {
        return Err(Error::InsufficientSamples {
            expected_per_bin: count as f64,
            minimum: MIN_MC_DRAWS as f64,
        });
    }
    let branch = rng.next_u64();
    let fork = rng.derive(branch);
    let w = e.bounding_halfwidths();
    let w = w.as_slice();
    let centre = e.centre().as_slice();
    let chunks = count.div_ceil(MC_CHUNK);
    let hits: u64 = map_indexed(chunks, exec, |k| {
        let mut child = fork.derive(k as u64);
        let len = MC_CHUNK.min(count - k * MC_CHUNK);
        let mut x = vec![0.0; w.len()];
        let mut hits = 0u64;
        for _ in 0..len {
            for ((xi, c), h) in x.iter_mut().zip(centre).zip(w) {
                *xi = c + h * (2.0 * child.uniform() - 1.0);
            }
            if e.contains_slice(&x) {
                hits += 1;
            }
        }
        hits
    })
    .into_iter()
    .sum();
    let box_volume: f64 = w.iter().map(|h| 2.0 * h).product();
    let p = hits as f64 / count as f64;
    let stderr = box_volume * (p * (1.0 - p) / count as f64).sqrt();
    Ok((box_volume * p, stderr))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{SquareMatrix, Vector};
    use std::f64::consts::PI;

    #[test]
    fn unit_disc() {
        let e = Ellipsoid::unit_ball(2).unwrap();
        let (est, se) = mc_volume(&e, 1_000_000, &mut RngStream::new(1)).unwrap();
        assert!((est - PI).abs() < 3.0 * se, "{est} +- {se}");
    }

    #[test]
    fn radii_two_one() {
        let e = Ellipsoid::from_radii_rotation(
            &Vector::new(vec![2.0, 1.0]).unwrap(),
            &SquareMatrix::identity(2),
            &Vector::zeros(2),
        )
        .unwrap();
        let (est, se) = mc_volume(&e, 1_000_000, &mut RngStream::new(2)).unwrap();
        assert!((est - 2.0 * PI).abs() < 3.0 * se, "{est} +- {se}");
    }

    #[test]
    fn interval_is_exact() {
        let e = Ellipsoid::from_shape(&SquareMatrix::new(1, vec![3.0]).unwrap(), &Vector::zeros(1))
            .unwrap();
        let (est, se) = mc_volume(&e, 10_000, &mut RngStream::new(3)).unwrap();
        assert_eq!(est, 6.0);
        assert_eq!(se, 0.0);
    }

    #[test]
    fn unit_three_ball_against_closed_form() {
        let e = Ellipsoid::unit_ball(3).unwrap();
        let (est, se) = mc_volume(&e, 1_000_000, &mut RngStream::new(4)).unwrap();
        let zeta3 = crate::geometry::unit_ball_volume(3).unwrap();
        assert!((est - zeta3).abs() < 3.0 * se);
        assert!((zeta3 - 4.188_790_204_786_391).abs() < 1e-12);
    }

    #[test]
    fn execution_independent_and_advancing() {
        let e = Ellipsoid::unit_ball(3).unwrap();
        let a = mc_volume_with(&e, 200_000, &mut RngStream::new(5), Execution::Sequential).unwrap();
        let b = mc_volume_with(&e, 200_000, &mut RngStream::new(5), Execution::Parallel).unwrap();
        assert_eq!(a, b);
        let mut rng = RngStream::new(5);
        let first = mc_volume(&e, 20_000, &mut rng).unwrap();
        let second = mc_volume(&e, 20_000, &mut rng).unwrap();
        assert_ne!(first, second);
    }

    #[test]
    fn preconditions() {
        let mut rng = RngStream::new(0);
        assert!(mc_volume(&Ellipsoid::unit_ball(13).unwrap(), 10_000, &mut rng).is_err());
        assert!(mc_volume(&Ellipsoid::unit_ball(2).unwrap(), 9_999, &mut rng).is_err());
    }
}
