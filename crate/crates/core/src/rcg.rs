//! Conjugate gradient descent on the complex circle manifold.
//!
//! Each iteration backtracks an Armijo step along the current search
//! direction, retracts, recomputes the Riemannian gradient, transports the
//! previous direction into the new tangent space, and combines them with a
//! Polak-Ribiere coefficient clamped at zero (an automatic restart). The
//! loop stops when the gradient norm drops to the threshold, the iteration
//! budget runs out, or the line search cannot make progress.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::manifold::{
    retract, riemannian_grad, tangent_project, transport, ManifoldPoint, TangentVector,
};
use crate::qcqp::{objective_p2_raw, QcqpData};

/// Initial line-search step.
pub const ARMIJO_ALPHA_INIT: f64 = 1.0;
/// Multiplicative backtracking factor.
pub const ARMIJO_BACKTRACK: f64 = 0.5;
/// Sufficient-decrease constant.
pub const ARMIJO_SUFFICIENT_DECREASE: f64 = 1e-4;
/// Number of halvings tried before the search reports a stall.
pub const ARMIJO_MAX_BACKTRACKS: usize = 50;

/// Outcome of a conjugate-gradient solve.
#[derive(Debug, Clone)]
pub struct RcgResult {
    /// Final point on the manifold.
    pub x_final: ManifoldPoint,
    /// Number of accepted steps.
    pub iterations: usize,
    /// Objective value at the initial point and after every step.
    pub objective_history: Vec<f64>,
    /// Riemannian gradient norm at the final point.
    pub grad_norm_final: f64,
    /// True when the gradient norm reached the threshold.
    pub converged: bool,
}

fn armijo_search(
    q: &QcqpData,
    x: &ManifoldPoint,
    eta: &TangentVector,
    f_x: f64,
    slope: f64,
) -> Result<f64> {
    let mut alpha = ARMIJO_ALPHA_INIT;
    for _ in 0..=ARMIJO_MAX_BACKTRACKS {
        let candidate = retract(x, eta, alpha)?;
        let f_new = objective_p2_raw(q, candidate.as_vector());
        if f_new <= f_x + ARMIJO_SUFFICIENT_DECREASE * alpha * slope {
            return Ok(alpha);
        }
        alpha *= ARMIJO_BACKTRACK;
    }
    Ok(0.0)
}

/// Armijo backtracking along `eta` from `x`.
///
/// Expects a descent direction (`Re(grad^H eta) < 0`); the solver resets a
/// non-descent direction to the negative gradient before calling this.
/// Returns the largest step `alpha_init * tau^m` that satisfies the
/// sufficient-decrease condition, or 0 when no tried step does (a stall).
pub fn armijo_step(q: &QcqpData, x: &ManifoldPoint, eta: &TangentVector) -> Result<f64> {
    if x.len() != q.dim_m() {
        return Err(Error::DimensionMismatch(format!(
            "point length {} vs problem size {}",
            x.len(),
            q.dim_m()
        )));
    }
    let grad = riemannian_grad(q, x)?;
    let slope = grad.inner(eta.components());
    let f_x = objective_p2_raw(q, x.as_vector());
    armijo_search(q, x, eta, f_x, slope)
}

/// Minimizes the phase-only objective over the circle manifold from `x0`.
///
/// Runs until the Riemannian gradient norm is at most `eps` or `max_iter`
/// accepted steps were taken. A stalled line search terminates the run with
/// `converged = false`. The recorded objective history never increases.
pub fn rcg_solve(
    q: &QcqpData,
    x0: &ManifoldPoint,
    eps: f64,
    max_iter: usize,
) -> Result<RcgResult> {
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    if x0.len() != q.dim_m() {
        return Err(Error::DimensionMismatch(format!(
            "x0 has length {} but the problem has {} elements",
            x0.len(),
            q.dim_m()
        )));
    }

    let mut x = x0.clone();
    let mut grad = riemannian_grad(q, &x)?;
    let mut grad_norm = grad.norm();
    let mut f_x = objective_p2_raw(q, x.as_vector());
    let mut history = vec![f_x];

    if grad_norm <= eps {
        return Ok(RcgResult {
            x_final: x,
            iterations: 0,
            objective_history: history,
            grad_norm_final: grad_norm,
            converged: true,
        });
    }

    let mut eta = TangentVector::from_components(-grad.components(), x.clone());
    let mut iterations = 0;
    let mut converged = false;

    while iterations < max_iter {
        let mut slope = grad.inner(eta.components());
        if slope >= 0.0 {
            // conjugate direction lost descent; restart from steepest descent
            eta = TangentVector::from_components(-grad.components(), x.clone());
            slope = -grad_norm * grad_norm;
        }

        let alpha = armijo_search(q, &x, &eta, f_x, slope)?;
        if alpha == 0.0 {
            break;
        }

        let x_next = retract(&x, &eta, alpha)?;
        let grad_next = riemannian_grad(q, &x_next)?;
        let grad_moved = transport(&grad, &x_next)?;
        let eta_moved = transport(&eta, &x_next)?;

        let denom = grad_norm * grad_norm;
        let beta = ((grad_next.inner(grad_next.components())
            - grad_next.inner(grad_moved.components()))
            / denom)
            .max(0.0);

        let new_dir =
            -grad_next.components() + eta_moved.components() * Complex64::new(beta, 0.0);
        // both terms live in the tangent space at x_next; re-project only to
        // scrub accumulated rounding
        eta = tangent_project(&x_next, &new_dir)?;

        x = x_next;
        grad = grad_next;
        grad_norm = grad.norm();
        f_x = objective_p2_raw(q, x.as_vector());
        history.push(f_x);
        iterations += 1;

        if grad_norm <= eps {
            converged = true;
            break;
        }
    }

    Ok(RcgResult {
        x_final: x,
        iterations,
        objective_history: history,
        grad_norm_final: grad_norm,
        converged,
    })
}
