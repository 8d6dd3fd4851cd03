//! Stock scenario definitions for the three simulation studies.

use irs_core::SystemConfig;

use crate::records::{AggregateRecord, Algorithm, TrialRecord};
use crate::runner::run_scenario;
use crate::scenario::{ScenarioSpec, SimError, SweepKind};

/// One labeled curve of a multi-scenario study.
pub type CurveResult = (&'static str, Vec<TrialRecord>, Vec<AggregateRecord>);

/// Defaults shared by the studies: exponent 3, 10 m reference distance,
/// 5 dBm transmit power, -80 dBm noise. The loss constant is zero, i.e. the
/// per-link gain is literally (d / 10 m)^-3: with each reflected hop
/// attenuated independently, this is the constant under which the studies'
/// qualitative orderings (surface beats extra antennas, both beat no
/// surface) come out; stronger reference losses suppress the reflected path
/// quadratically and invert them.
fn base_config(nt: usize, m: usize, d_ap_irs: f64, d_ap_user: f64, d_irs_user: f64) -> SystemConfig {
    SystemConfig {
        num_tx_antennas: nt,
        num_irs_elements: m,
        tx_power_dbm: 5.0,
        noise_power_dbm: -80.0,
        pathloss_exponent: 3.0,
        ref_distance_m: 10.0,
        ref_loss_db: 0.0,
        d_ap_irs_m: d_ap_irs,
        d_ap_user_m: d_ap_user,
        d_irs_user_m: d_irs_user,
    }
}

pub const DEFAULT_TRIALS: usize = 200;
pub const DEFAULT_SEED: u64 = 42;
pub const DEFAULT_EPS: f64 = 1e-6;
pub const DEFAULT_MAX_ITER: usize = 1000;

/// Study 1: spectral efficiency versus user position.
///
/// The AP-IRS distance is 50 m and the user moves on a path where the
/// AP-user and IRS-user distances sum to 70 m; 8 antennas, 10 elements.
/// The sweep grid is 15..=65 m in 5 m steps.
pub fn fig1_spec(trials: usize, base_seed: u64) -> ScenarioSpec {
    ScenarioSpec {
        base: base_config(8, 10, 50.0, 35.0, 35.0),
        sweep_kind: SweepKind::ApUserDistance,
        sweep_values: (15..=65).step_by(5).map(|v| v as f64).collect(),
        trials,
        base_seed,
        algorithms: vec![
            Algorithm::FixedPoint,
            Algorithm::Rcg,
            Algorithm::RandomPhase,
        ],
        eps: DEFAULT_EPS,
        max_iter: DEFAULT_MAX_ITER,
    }
}

/// Study 2: spectral efficiency and run time versus surface size.
///
/// 5 antennas, AP-IRS and AP-user at 60 m, IRS-user at 10 m; the element
/// count sweeps 10, 20, 40, 80, 160.
pub fn fig2_spec(trials: usize, base_seed: u64) -> ScenarioSpec {
    ScenarioSpec {
        base: base_config(5, 10, 60.0, 60.0, 10.0),
        sweep_kind: SweepKind::IrsSize,
        sweep_values: vec![10.0, 20.0, 40.0, 80.0, 160.0],
        trials,
        base_seed,
        algorithms: vec![Algorithm::FixedPoint, Algorithm::Rcg],
        eps: DEFAULT_EPS,
        max_iter: DEFAULT_MAX_ITER,
    }
}

/// Study 3: surface elements versus transmit antennas.
///
/// Geometry: AP-IRS 50 m, AP-user 40 m, IRS-user 30 m. Three curves over
/// element counts 10..=60: (a) no-IRS MRT sweeping the antenna count,
/// (b) 30 antennas sweeping the element count, (c) 30 elements sweeping the
/// antenna count. Each curve is its own scenario so the channel dimensions
/// stay consistent within a sweep.
pub fn fig3_specs(trials: usize, base_seed: u64) -> [(&'static str, ScenarioSpec); 3] {
    let counts: Vec<f64> = (1..=6).map(|v| (10 * v) as f64).collect();
    let no_irs = ScenarioSpec {
        base: base_config(10, 0, 50.0, 40.0, 30.0),
        sweep_kind: SweepKind::ElementsVsAntennas,
        sweep_values: counts.clone(),
        trials,
        base_seed,
        algorithms: vec![Algorithm::NoIrsMrt],
        eps: DEFAULT_EPS,
        max_iter: DEFAULT_MAX_ITER,
    };
    let irs_m_sweep = ScenarioSpec {
        base: base_config(30, 10, 50.0, 40.0, 30.0),
        sweep_kind: SweepKind::IrsSize,
        sweep_values: counts.clone(),
        trials,
        base_seed,
        algorithms: vec![Algorithm::Rcg],
        eps: DEFAULT_EPS,
        max_iter: DEFAULT_MAX_ITER,
    };
    let irs_nt_sweep = ScenarioSpec {
        base: base_config(10, 30, 50.0, 40.0, 30.0),
        sweep_kind: SweepKind::ElementsVsAntennas,
        sweep_values: counts,
        trials,
        base_seed,
        algorithms: vec![Algorithm::Rcg],
        eps: DEFAULT_EPS,
        max_iter: DEFAULT_MAX_ITER,
    };
    [
        ("no_irs", no_irs),
        ("irs_m_sweep", irs_m_sweep),
        ("irs_nt_sweep", irs_nt_sweep),
    ]
}

/// Runs the user-position study.
pub fn sweep_fig1(
    trials: usize,
    base_seed: u64,
) -> Result<(Vec<TrialRecord>, Vec<AggregateRecord>), SimError> {
    run_scenario(&fig1_spec(trials, base_seed))
}

/// Runs the surface-size study.
pub fn sweep_fig2(
    trials: usize,
    base_seed: u64,
) -> Result<(Vec<TrialRecord>, Vec<AggregateRecord>), SimError> {
    run_scenario(&fig2_spec(trials, base_seed))
}

/// Runs all three curves of the elements-versus-antennas study.
pub fn sweep_fig3(trials: usize, base_seed: u64) -> Result<Vec<CurveResult>, SimError> {
    fig3_specs(trials, base_seed)
        .into_iter()
        .map(|(label, spec)| {
            let (records, aggregates) = run_scenario(&spec)?;
            Ok((label, records, aggregates))
        })
        .collect()
}
