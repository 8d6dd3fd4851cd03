//! Initial point construction from the norm-relaxed eigenvalue problem.
//!
//! Relaxing the per-entry modulus constraints to a single norm constraint
//! turns the augmented program into an eigenvalue problem: the relaxed
//! optimum is the dominant eigenvector of R scaled by sqrt(M + 1). The
//! initializer extracts its entrywise phases. R is indefinite (its corner is
//! zero), so the power iteration runs on R + sI with s the largest absolute
//! row sum of R: by Gershgorin every eigenvalue satisfies |lambda| <= s, so
//! the shifted matrix is positive semidefinite and its dominant eigenvector
//! is the one of the largest eigenvalue of R. The row-sum bound keeps the
//! shift within a factor of the spectral radius, which the convergence rate
//! of the iteration depends on.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcqp::QcqpData;
use crate::unimod::{unt, UnitModulusVector};

/// Default residual tolerance factor for the power iteration.
pub const EIGEN_TOL_DEFAULT: f64 = 1e-10;
/// Default iteration budget for the power iteration.
pub const EIGEN_MAX_ITER_DEFAULT: usize = 5000;

/// Dominant eigenpair estimate.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Unit-norm eigenvector estimate.
    pub eigenvector: DVector<Complex64>,
    /// Rayleigh quotient of the estimate.
    pub eigenvalue: f64,
    /// `||R u - lambda u||_2` at the estimate.
    pub residual: f64,
    /// False when the budget ran out before the residual tolerance was met.
    pub converged: bool,
}

fn rayleigh_and_residual(
    r: &nalgebra::DMatrix<Complex64>,
    u: &DVector<Complex64>,
) -> (f64, f64) {
    let ru = r * u;
    let lambda = u.dotc(&ru).re;
    let residual = (&ru - u * Complex64::new(lambda, 0.0)).norm();
    (lambda, residual)
}

fn power_pass(
    r: &nalgebra::DMatrix<Complex64>,
    shift: f64,
    mut u: DVector<Complex64>,
    tol: f64,
    max_iter: usize,
) -> EigenResult {
    let (mut lambda, mut residual) = rayleigh_and_residual(r, &u);
    if residual <= tol * (lambda.abs() + 1.0) {
        return EigenResult {
            eigenvector: u,
            eigenvalue: lambda,
            residual,
            converged: true,
        };
    }
    for _ in 0..max_iter {
        let w = r * &u + &u * Complex64::new(shift, 0.0);
        let norm = w.norm();
        if norm == 0.0 {
            // R + sI annihilates u; only possible for the zero matrix
            return EigenResult {
                eigenvector: u,
                eigenvalue: 0.0,
                residual: 0.0,
                converged: true,
            };
        }
        u = w * Complex64::new(1.0 / norm, 0.0);
        let (l, res) = rayleigh_and_residual(r, &u);
        lambda = l;
        residual = res;
        if residual <= tol * (lambda.abs() + 1.0) {
            return EigenResult {
                eigenvector: u,
                eigenvalue: lambda,
                residual,
                converged: true,
            };
        }
    }
    EigenResult {
        eigenvector: u,
        eigenvalue: lambda,
        residual,
        converged: false,
    }
}

/// Shifted power iteration for the dominant eigenpair of a Hermitian matrix.
///
/// Starts from the normalized all-ones vector. If the run stagnates without
/// reaching the tolerance, one retry is made from a start perturbed by
/// `1e-3 e_1`, which breaks an accidental orthogonality to the dominant
/// eigenvector. Non-convergence is reported via the flag, not an error.
pub fn dominant_eigenpair(
    r: &nalgebra::DMatrix<Complex64>,
    tol: f64,
    max_iter: usize,
) -> Result<EigenResult> {
    let n = r.nrows();
    if r.ncols() != n || n == 0 {
        return Err(Error::DimensionMismatch(format!(
            "matrix must be square and non-empty, got {}x{}",
            r.nrows(),
            r.ncols()
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tol must be positive, got {tol}"
        )));
    }
    // Gershgorin bound on the spectral radius of a Hermitian matrix.
    let shift: f64 = (0..n)
        .map(|i| r.row(i).iter().map(|e| e.norm()).sum::<f64>())
        .fold(0.0, f64::max);

    let scale = Complex64::new(1.0 / (n as f64).sqrt(), 0.0);
    let start = DVector::from_element(n, Complex64::new(1.0, 0.0)) * scale;
    let first = power_pass(r, shift, start, tol, max_iter);
    if first.converged {
        return Ok(first);
    }

    let mut perturbed = DVector::from_element(n, Complex64::new(1.0, 0.0));
    perturbed[0] += Complex64::new(1e-3, 0.0);
    let norm = perturbed.norm();
    let retry = power_pass(
        r,
        shift,
        perturbed * Complex64::new(1.0 / norm, 0.0),
        tol,
        max_iter,
    );
    if retry.converged || retry.residual < first.residual {
        Ok(retry)
    } else {
        Ok(first)
    }
}

/// Dominant eigenpair of the program matrix R.
pub fn largest_eigenvector(q: &QcqpData, tol: f64, max_iter: usize) -> Result<EigenResult> {
    dominant_eigenpair(q.r_matrix(), tol, max_iter)
}

/// Phase extraction of the relaxed optimum: `unt(sqrt(M+1) u) = unt(u)`.
///
/// The first M entries serve as the conjugate-gradient starting point; the
/// full vector starts the fixed-point iteration.
pub fn initial_point(q: &QcqpData) -> Result<UnitModulusVector> {
    let eig = largest_eigenvector(q, EIGEN_TOL_DEFAULT, EIGEN_MAX_ITER_DEFAULT)?;
    unt(&eig.eigenvector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcqp::{objective_qcqp, QcqpData};
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn toy() -> QcqpData {
        QcqpData::new(
            DMatrix::from_element(1, 1, c64(1.0, 0.0)),
            DVector::from_element(1, c64(1.0, 0.0)),
        )
        .unwrap()
    }

    fn random_instance(m: usize, nt: usize, seed: u64) -> QcqpData {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            c64(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        };
        let w = DMatrix::from_fn(m, nt, |_, _| draw());
        let a = &w * w.adjoint();
        let b = DVector::from_fn(m, |_, _| draw());
        QcqpData::new(a, b).unwrap()
    }

    fn random_unit_modulus(len: usize, rng: &mut ChaCha8Rng) -> UnitModulusVector {
        let phases: Vec<f64> = (0..len)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        UnitModulusVector::from_phases(&phases)
    }

    #[test]
    fn golden_ratio_eigenpair() {
        // R = [[1, 1], [1, 0]] has dominant eigenvalue (1 + sqrt(5)) / 2 with
        // eigenvector proportional to [lambda, 1].
        let q = toy();
        let eig = largest_eigenvector(&q, 1e-12, 1000).unwrap();
        assert!(eig.converged);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_relative_eq!(eig.eigenvalue, phi, max_relative = 1e-10);
        let ratio = eig.eigenvector[0] / eig.eigenvector[1];
        assert_relative_eq!(ratio.re, phi, max_relative = 1e-8);
        assert!(ratio.im.abs() < 1e-10);
    }

    #[test]
    fn identity_matrix_returns_start_vector() {
        let r = DMatrix::from_diagonal_element(3, 3, c64(1.0, 0.0));
        let eig = dominant_eigenpair(&r, 1e-10, 100).unwrap();
        assert!(eig.converged);
        assert_relative_eq!(eig.eigenvalue, 1.0, epsilon = 1e-12);
        let expected = 1.0 / 3f64.sqrt();
        for e in eig.eigenvector.iter() {
            assert_relative_eq!(e.re, expected, epsilon = 1e-12);
            assert!(e.im.abs() < 1e-15);
        }
    }

    #[test]
    fn residual_bound_and_rayleigh_dominance() {
        let mut rng = ChaCha8Rng::seed_from_u64(404);
        for seed in 0..30u64 {
            let q = random_instance(6, 4, seed);
            let eig = largest_eigenvector(&q, 1e-10, 5000).unwrap();
            assert!(eig.converged, "seed {seed} did not converge");
            assert!(eig.residual <= 1e-8 * (eig.eigenvalue.abs() + 1.0));
            assert_relative_eq!(eig.eigenvector.norm(), 1.0, epsilon = 1e-12);
            for _ in 0..100 {
                let raw = DVector::from_fn(7, |_, _| {
                    c64(
                        rng.sample::<f64, _>(StandardNormal),
                        rng.sample::<f64, _>(StandardNormal),
                    )
                });
                let u = &raw * Complex64::new(1.0 / raw.norm(), 0.0);
                let quotient = u.dotc(&(q.r_matrix() * &u)).re;
                assert!(eig.eigenvalue >= quotient - 1e-8 * (1.0 + quotient.abs()));
            }
        }
    }

    #[test]
    fn relaxation_bound_dominates_feasible_objectives() {
        let mut rng = ChaCha8Rng::seed_from_u64(808);
        for seed in 0..20u64 {
            let q = random_instance(5, 3, seed);
            let eig = largest_eigenvector(&q, 1e-10, 5000).unwrap();
            let bound = 6.0 * eig.eigenvalue;
            for _ in 0..100 {
                let v = random_unit_modulus(6, &mut rng);
                let obj = objective_qcqp(&q, &v).unwrap();
                assert!(bound >= obj - 1e-8 * (1.0 + obj.abs()));
            }
        }
    }

    #[test]
    fn initial_point_extracts_phases() {
        let q = toy();
        let v0 = initial_point(&q).unwrap();
        // dominant eigenvector has positive real entries, so phases are all 1
        assert!((v0[0] - c64(1.0, 0.0)).norm() < 1e-8);
        assert!((v0[1] - c64(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn initial_point_beats_random_phases_usually() {
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let mut wins = 0;
        for seed in 0..100u64 {
            let q = random_instance(5, 4, seed);
            let v0 = initial_point(&q).unwrap();
            let obj0 = objective_qcqp(&q, &v0).unwrap();
            let rand_v = random_unit_modulus(6, &mut rng);
            let obj_r = objective_qcqp(&q, &rand_v).unwrap();
            if obj0 >= obj_r {
                wins += 1;
            }
        }
        assert!(wins >= 70, "initializer won only {wins}/100 paired draws");
    }

    #[test]
    fn rejects_bad_arguments() {
        let q = toy();
        assert!(largest_eigenvector(&q, 0.0, 100).is_err());
        let rect = DMatrix::<Complex64>::zeros(2, 3);
        assert!(dominant_eigenpair(&rect, 1e-10, 100).is_err());
    }
}
