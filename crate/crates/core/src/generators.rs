//! Random test instances: Haar rotations, radii, SPD matrices and ellipsoids.

use crate::error::Result;
use crate::geometry::Ellipsoid;
use crate::linalg::{SquareMatrix, Vector};
use crate::rng::VariateSource;

/// Haar-distributed rotation in `SO(n)`.
///
/// Gram-Schmidt on a Gaussian matrix with the usual sign correction gives a
/// Haar orthogonal matrix; negating the first column when the determinant
/// is -1 maps it onto the rotation group.
pub fn random_rotation<R: VariateSource + ?Sized>(n: usize, rng: &mut R) -> SquareMatrix {
    loop {
        // columns
        let mut q: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n).map(|_| rng.gaussian()).collect())
            .collect();
        let mut ok = true;
        for j in 0..n {
            for k in 0..j {
                let dot: f64 = q[j].iter().zip(&q[k]).map(|(a, b)| a * b).sum();
                let (head, tail) = q.split_at_mut(j);
                for (a, b) in tail[0].iter_mut().zip(&head[k]) {
                    *a -= dot * b;
                }
            }
            let len = crate::linalg::norm(&q[j]);
            if !(len > 1e-8) {
                ok = false;
                break;
            }
            q[j].iter_mut().for_each(|v| *v /= len);
        }
        if !ok {
            continue;
        }
        let mut data = vec![0.0; n * n];
        for (j, col) in q.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                data[i * n + j] = *v;
            }
        }
        let mut m = SquareMatrix::from_raw(n, data);
        if crate::linalg::determinant(&m) < 0.0 {
            let mut data = m.as_slice().to_vec();
            for i in 0..n {
                data[i * n] = -data[i * n];
            }
            m = SquareMatrix::from_raw(n, data);
        }
        return m;
    }
}

/// Log-uniform radii in `[lo, hi]`.
pub fn random_radii<R: VariateSource + ?Sized>(n: usize, lo: f64, hi: f64, rng: &mut R) -> Vector {
    let (a, b) = (lo.ln(), hi.ln());
    Vector::from_raw(
        (0..n)
            .map(|_| (a + (b - a) * rng.uniform()).exp())
            .collect(),
    )
}

/// `C diag(r^2) C^T` with random rotation and radii in `[lo, hi]`.
pub fn random_spd<R: VariateSource + ?Sized>(
    n: usize,
    lo: f64,
    hi: f64,
    rng: &mut R,
) -> SquareMatrix {
    let c = random_rotation(n, rng);
    let r = random_radii(n, lo, hi, rng);
    let mut data = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let v: f64 = (0..n)
                .map(|k| c.get(i, k) * r[k] * r[k] * c.get(j, k))
                .sum();
            data[i * n + j] = v;
            data[j * n + i] = v;
        }
    }
    SquareMatrix::from_raw(n, data)
}

fn random_centre<R: VariateSource + ?Sized>(n: usize, rng: &mut R) -> Vector {
    Vector::from_raw((0..n).map(|_| 10.0 * rng.uniform() - 5.0).collect())
}

/// A random ellipsoid with radii in `[0.2, 5]` and centre in `[-5, 5]^n`,
/// built through one of the four constructors chosen at random.
pub fn random_ellipsoid<R: VariateSource + ?Sized>(n: usize, rng: &mut R) -> Result<Ellipsoid> {
    let (lo, hi) = (0.2, 5.0);
    let kind = (rng.uniform() * 4.0) as usize;
    let centre = random_centre(n, rng);
    match kind {
        0 => {
            // C1 diag(r) C2^T: a general, non-symmetric, non-triangular shape
            let c1 = random_rotation(n, rng);
            let c2 = random_rotation(n, rng);
            let r = random_radii(n, lo, hi, rng);
            let mut data = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..n {
                    data[i * n + j] = (0..n).map(|k| c1.get(i, k) * r[k] * c2.get(j, k)).sum();
                }
            }
            Ellipsoid::from_shape(&SquareMatrix::new(n, data)?, &centre)
        }
        1 => Ellipsoid::from_quadratic(&random_spd(n, 1.0 / hi, 1.0 / lo, rng), &centre),
        2 => Ellipsoid::from_cholesky_convention(&random_spd(n, lo, hi, rng), &centre),
        _ => {
            let r = random_radii(n, lo, hi, rng);
            Ellipsoid::from_radii_rotation(&r, &random_rotation(n, rng), &centre)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::is_rotation;
    use crate::rng::RngStream;

    #[test]
    fn rotations_are_rotations() {
        let mut rng = RngStream::new(1);
        for n in 1..=12 {
            for _ in 0..5 {
                assert!(is_rotation(&random_rotation(n, &mut rng), 1e-10));
            }
        }
    }

    #[test]
    fn random_ellipsoids_build() {
        let mut rng = RngStream::new(2);
        for n in 1..=10 {
            for _ in 0..8 {
                random_ellipsoid(n, &mut rng).unwrap();
            }
        }
    }
}
