use super::TestReport;
use crate::geometry::{unit_ball_volume, Ellipsoid};
use crate::linalg::{LuFactors, SquareMatrix};
use crate::rng::RngStream;
use crate::sampling::sample_ellipsoid;

/// Relative tolerance on `pdf(x) = |det L^{-1}| / zeta_n`.
pub const PDF_REL_TOL: f64 = 1e-10;
/// Central-difference step for the Jacobian of the inverse map.
pub const FD_STEP: f64 = 1e-6;
/// Entrywise tolerance on the finite-difference Jacobian.
pub const JACOBIAN_TOL: f64 = 1e-4;

/// Numerically checks the change-of-variables density at random interior
/// points of `e`:
///
/// * `pdf(x)` equals `|det L^{-1}| / zeta_n`, with `det L` recomputed from
///   an LU factorization of the shape, independent of the cached value;
/// * the central-difference Jacobian of `x -> L^{-1}(x - c)` equals `L^{-1}`,
///   whose columns come from LU solves against the shape.
///
/// The statistic is the worst error over all trials, normalised by its
/// tolerance; the check passes when it stays below 1.
pub fn proof_identity_check(e: &Ellipsoid, trials: usize, rng: &mut RngStream) -> TestReport {
    let n = e.dim();
    let lu = LuFactors::new(e.shape());
    let zeta = unit_ball_volume(n).expect("ellipsoid dimension is in range");
    let expected_pdf = (1.0 / zeta) * (1.0 / lu.determinant().abs());

    let mut inv_cols = Vec::with_capacity(n);
    let mut unit = vec![0.0; n];
    for j in 0..n {
        unit[j] = 1.0;
        inv_cols.push(lu.solve_slice(&unit));
        unit[j] = 0.0;
    }

    let mut worst = 0.0f64;
    for _ in 0..trials.max(1) {
        let x = sample_ellipsoid(e, rng);
        let pdf = e.pdf(&x).expect("dimension matches");
        let pdf_err = (pdf - expected_pdf).abs() / expected_pdf;

        let jac = fd_jacobian(e, x.as_slice());
        let mut jac_err = 0.0f64;
        for (j, col) in inv_cols.iter().enumerate() {
            for (i, expected) in col.iter().enumerate() {
                jac_err = jac_err.max((jac.get(i, j) - expected).abs());
            }
        }
        worst = worst.max(pdf_err / PDF_REL_TOL).max(jac_err / JACOBIAN_TOL);
        if worst.is_nan() {
            worst = f64::INFINITY;
        }
    }
    TestReport::new("proof_identity", worst, None, 1.0, 0.0, trials)
}

/// Central-difference Jacobian of `x -> L^{-1}(x - c)` at `x`.
pub fn fd_jacobian(e: &Ellipsoid, x: &[f64]) -> SquareMatrix {
    let n = e.dim();
    let mut data = vec![0.0; n * n];
    let mut probe = x.to_vec();
    for j in 0..n {
        let xj = probe[j];
        probe[j] = xj + FD_STEP;
        let plus = e.inverse_slice(&probe);
        probe[j] = xj - FD_STEP;
        let minus = e.inverse_slice(&probe);
        probe[j] = xj;
        for i in 0..n {
            data[i * n + j] = (plus[i] - minus[i]) / (2.0 * FD_STEP);
        }
    }
    SquareMatrix::from_raw(n, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{det_triangular, determinant, LowerTriangular, Vector};

    fn fd_abs_det(e: &Ellipsoid, x: &Vector) -> f64 {
        determinant(&fd_jacobian(e, x.as_slice())).abs()
    }
    use std::f64::consts::PI;

    #[test]
    fn unit_balls() {
        let mut rng = RngStream::new(1);
        for n in 1..=8 {
            let e = Ellipsoid::unit_ball(n).unwrap();
            let zeta = unit_ball_volume(n).unwrap();
            assert_eq!(e.pdf(&Vector::zeros(n)).unwrap(), 1.0 / zeta);
            let r = proof_identity_check(&e, 20, &mut rng);
            assert!(r.pass, "n = {n}: {r:?}");
            let x = sample_ellipsoid(&e, &mut rng);
            assert!((fd_abs_det(&e, &x) - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn general_three_dimensional() {
        let e = Ellipsoid::from_shape(
            &SquareMatrix::new(3, vec![1.2, -0.4, 0.3, 0.5, 0.9, 0.0, -0.2, 0.6, 2.0]).unwrap(),
            &Vector::new(vec![3.0, -2.0, 0.5]).unwrap(),
        )
        .unwrap();
        let r = proof_identity_check(&e, 50, &mut RngStream::new(2));
        assert!(r.pass, "{r:?}");
        assert!(r.statistic < 1e-2);
    }

    #[test]
    fn rotated_radii() {
        let (s, c) = 0.7f64.sin_cos();
        let e = Ellipsoid::from_radii_rotation(
            &Vector::new(vec![2.0, 1.0]).unwrap(),
            &SquareMatrix::new(2, vec![c, -s, s, c]).unwrap(),
            &Vector::zeros(2),
        )
        .unwrap();
        let mut rng = RngStream::new(3);
        assert!(proof_identity_check(&e, 50, &mut rng).pass);
        let x = sample_ellipsoid(&e, &mut rng);
        assert!((e.pdf(&x).unwrap() - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let oracle = 1.0
            / det_triangular(
                &LowerTriangular::new(SquareMatrix::diag(&[2.0, 1.0]).unwrap()).unwrap(),
            );
        assert!((fd_abs_det(&e, &x) - oracle).abs() < 1e-8);
        assert!((oracle - 0.5).abs() < 1e-15);
    }

    #[test]
    fn report_shape() {
        let e = Ellipsoid::unit_ball(2).unwrap();
        let r = proof_identity_check(&e, 5, &mut RngStream::new(4));
        assert_eq!(r.sample_count, 5);
        assert_eq!(r.critical_value, 1.0);
        assert_eq!(r.pass, r.statistic < r.critical_value);
    }
}
