//! Verification oracles and comparison baselines: exhaustive phase-grid
//! search, random phase draws, and the no-IRS MRT reference system.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::Rng;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::qcqp::QcqpData;
use crate::unimod::UnitModulusVector;

/// Hard cap on the number of grid candidates.
pub const GRID_GUARD: u64 = 10_000_000;

/// Result of an exhaustive grid search over per-element phases.
#[derive(Debug, Clone)]
pub struct OracleResult {
    /// Grid minimizer of the phase-only objective.
    pub best_x: UnitModulusVector,
    /// Minimized objective value (the sign convention of the minimization).
    pub best_objective: f64,
    /// Number of grid points per phase (K).
    pub grid_points_per_phase: usize,
    /// Total candidates evaluated, K^M.
    pub evaluations: u64,
}

/// Direct evaluation of `-x^H A x - 2 Re(x^H b)` from the dense blocks.
///
/// Deliberately written as plain loops so the oracle does not share an
/// evaluation path with the solvers it cross-checks.
fn p2_direct(q: &QcqpData, x: &[Complex64]) -> f64 {
    let m = x.len();
    let a = q.a_matrix();
    let b = q.b_vector();
    let mut quad = 0.0;
    for i in 0..m {
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..m {
            acc += a[(i, j)] * x[j];
        }
        quad += (x[i].conj() * acc).re;
    }
    let mut cross = 0.0;
    for i in 0..m {
        cross += (x[i].conj() * b[i]).re;
    }
    -quad - 2.0 * cross
}

/// Exhaustively minimizes the phase-only objective over all configurations
/// with each entry drawn from the K-point conjugated phase grid
/// `{e^{-j 2 pi m / K}}`.
///
/// Candidates are visited in lexicographic index order (first element most
/// significant) and only strict improvements are kept, so ties resolve to
/// the lexicographically first candidate regardless of any internal
/// chunking.
pub fn grid_oracle(q: &QcqpData, k_points: usize) -> Result<OracleResult> {
    let m = q.dim_m();
    if k_points < 2 {
        return Err(Error::InvalidArgument(format!(
            "need at least 2 grid points per phase, got {k_points}"
        )));
    }
    let total = (k_points as u64)
        .checked_pow(m as u32)
        .filter(|&t| t <= GRID_GUARD)
        .ok_or_else(|| {
            Error::GridTooLarge(format!(
                "{k_points}^{m} exceeds the {GRID_GUARD} evaluation guard"
            ))
        })?;

    let tau = std::f64::consts::TAU;
    let roots: Vec<Complex64> = (0..k_points)
        .map(|i| Complex64::from_polar(1.0, -(tau * i as f64) / k_points as f64))
        .collect();

    let mut digits = vec![0usize; m];
    let mut x = vec![roots[0]; m];
    let mut best_f = f64::INFINITY;
    let mut best_x = x.clone();
    for _ in 0..total {
        let f = p2_direct(q, &x);
        if f < best_f {
            best_f = f;
            best_x = x.clone();
        }
        // odometer increment, least-significant digit last
        for pos in (0..m).rev() {
            digits[pos] += 1;
            if digits[pos] == k_points {
                digits[pos] = 0;
                x[pos] = roots[0];
            } else {
                x[pos] = roots[digits[pos]];
                break;
            }
        }
    }

    Ok(OracleResult {
        best_x: UnitModulusVector::new(DVector::from_vec(best_x))?,
        best_objective: best_f,
        grid_points_per_phase: k_points,
        evaluations: total,
    })
}

/// Draws M i.i.d. phases uniform on [0, 2 pi).
pub fn random_phases<R: Rng + ?Sized>(m: usize, rng: &mut R) -> Result<UnitModulusVector> {
    if m < 1 {
        return Err(Error::InvalidArgument(
            "need at least one reflecting element".into(),
        ));
    }
    let phases: Vec<f64> = (0..m)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    Ok(UnitModulusVector::from_phases(&phases))
}

/// Spectral efficiency of MRT on the direct channel alone:
/// `log2(1 + P ||h||^2 / sigma2)`.
pub fn no_irs_mrt_rate(ch: &ChannelRealization, p_linear: f64, sigma2: f64) -> Result<f64> {
    if !(p_linear > 0.0) || !(sigma2 > 0.0) {
        return Err(Error::InvalidArgument(
            "power and noise must be positive".into(),
        ));
    }
    let h2 = ch.ap_user.norm_squared();
    if h2 == 0.0 {
        return Err(Error::DegenerateChannel(
            "direct channel is zero; the no-IRS system has no signal path".into(),
        ));
    }
    Ok((1.0 + p_linear * h2 / sigma2).log2())
}
