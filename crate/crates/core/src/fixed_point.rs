//! Fixed-point iteration for the augmented unit-modulus program.
//!
//! The iterate map is `v <- unt(R v)`. Each step can only increase the
//! surrogate `||R v||_1`, which is bounded above by the entrywise L1 norm of
//! R, so the surrogate converges; the solver stops once its increment drops
//! below the threshold. A limit point `v` satisfies
//! `R v = Abs(R v) .* v`, i.e. the phases of `R v` agree with `v` wherever
//! the magnitude is nonzero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcqp::QcqpData;
use crate::unimod::{unt_with_fallback, UnitModulusVector};

/// Outcome of a fixed-point solve.
#[derive(Debug, Clone)]
pub struct FixedPointResult {
    /// Final iterate, globally rotated so its last entry equals 1.
    pub v_final: UnitModulusVector,
    /// Number of iterate-map applications performed.
    pub iterations: usize,
    /// `||R v||_1` at the initial point and after every step.
    pub surrogate_history: Vec<f64>,
    /// True when the surrogate increment dropped below the threshold.
    pub converged: bool,
}

fn l1_norm(v: &nalgebra::DVector<Complex64>) -> f64 {
    v.iter().map(|e| e.norm()).sum()
}

/// One application of the iterate map: `unt(R v)`.
///
/// Entries of `R v` with no usable magnitude keep the phase of the current
/// iterate, which preserves feasibility and the monotonicity argument.
pub fn fp_step(q: &QcqpData, v: &UnitModulusVector) -> Result<UnitModulusVector> {
    if v.len() != q.dim_m() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "v has length {} but R is {}x{}",
            v.len(),
            q.dim_m() + 1,
            q.dim_m() + 1
        )));
    }
    let rv = q.apply_r(v.as_vector());
    unt_with_fallback(&rv, v)
}

/// Runs the fixed-point iteration from `v0` until the surrogate increment is
/// at most `eps` or `max_iter` steps were taken.
///
/// Non-convergence is reported through the `converged` flag, never as an
/// error. The final iterate is rotated by the conjugate phase of its last
/// entry, which leaves the objective unchanged and makes the first M entries
/// directly usable as the phase configuration.
pub fn solve_fixed_point(
    q: &QcqpData,
    v0: &UnitModulusVector,
    eps: f64,
    max_iter: usize,
) -> Result<FixedPointResult> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if max_iter < 1 {
        return Err(Error::InvalidArgument("max_iter must be at least 1".into()));
    }
    if v0.len() != q.dim_m() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "v0 has length {} but R is {}x{}",
            v0.len(),
            q.dim_m() + 1,
            q.dim_m() + 1
        )));
    }

    let mut v = v0.clone();
    let mut surrogate = l1_norm(&q.apply_r(v.as_vector()));
    let mut history = Vec::with_capacity(max_iter.min(1024) + 1);
    history.push(surrogate);

    let mut converged = false;
    let mut iterations = 0;
    for _ in 0..max_iter {
        let next = fp_step(q, &v)?;
        let next_surrogate = l1_norm(&q.apply_r(next.as_vector()));
        history.push(next_surrogate);
        v = next;
        iterations += 1;
        if next_surrogate - surrogate <= eps {
            converged = true;
            break;
        }
        surrogate = next_surrogate;
    }

    Ok(FixedPointResult {
        v_final: normalize_last_entry(v),
        iterations,
        surrogate_history: history,
        converged,
    })
}

/// Rotates the whole vector by the conjugate phase of its last entry and
/// pins that entry to exactly 1.
fn normalize_last_entry(v: UnitModulusVector) -> UnitModulusVector {
    let mut entries = v.into_vector();
    let last = entries[entries.len() - 1];
    let rot = last.conj() / last.norm();
    entries *= rot;
    let n = entries.len();
    entries[n - 1] = Complex64::new(1.0, 0.0);
    UnitModulusVector::from_vector_unchecked(entries)
}

/// First M entries of the final iterate: the phase configuration whose
/// conjugate forms the reflection matrix diagonal.
pub fn extract_phase_config(res: &FixedPointResult) -> UnitModulusVector {
    res.v_final.head(res.v_final.len() - 1)
}
