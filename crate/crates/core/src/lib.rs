//! Joint transmit beamforming and passive surface phase optimization for a
//! point-to-point MISO link.
//!
//! The access point steers a beam through both a direct channel and a
//! passive reflecting surface whose per-element phase shifts are free
//! design variables. For fixed phases the rate-optimal beamformer is
//! maximum ratio transmission on the effective channel, which reduces the
//! joint design to a quadratic program over unit-modulus phase vectors.
//! Two solvers are provided for that program:
//!
//! - [`fixed_point::solve_fixed_point`], a monotone fixed-point iteration on
//!   the augmented (M+1)-dimensional form, and
//! - [`rcg::rcg_solve`], conjugate gradient descent on the complex circle
//!   manifold of the M-dimensional phase-only form.
//!
//! Both start from the eigenvector initializer in [`init`], and both can be
//! cross-checked against the exhaustive grid search in [`oracle`].

pub use nalgebra;
pub use num_complex;

pub mod channel;
pub mod config;
pub mod error;
pub mod fixed_point;
pub mod init;
pub mod manifold;
pub mod model;
pub mod oracle;
pub mod qcqp;
pub mod rcg;
pub mod unimod;

pub use channel::{path_loss_linear, sample_channels, ChannelRealization};
pub use config::{dbm_to_watt, SystemConfig};
pub use error::{Error, Result};
pub use fixed_point::{extract_phase_config, fp_step, solve_fixed_point, FixedPointResult};
pub use init::{initial_point, largest_eigenvector, EigenResult};
pub use manifold::{
    euclidean_grad, retract, riemannian_grad, tangent_project, transport, ManifoldPoint,
    TangentVector,
};
pub use model::{combined_channel, mrt_beamformer, spectral_efficiency, Beamformer};
pub use oracle::{grid_oracle, no_irs_mrt_rate, random_phases, OracleResult};
pub use qcqp::{build_qcqp, objective_p2, objective_qcqp, QcqpData};
pub use rcg::{armijo_step, rcg_solve, RcgResult};
pub use unimod::{unt, unt_with_fallback, UnitModulusVector};
