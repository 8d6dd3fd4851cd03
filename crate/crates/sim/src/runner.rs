//! Scenario execution: paired trials, per-algorithm timing, aggregation.

use std::time::Instant;

use irs_core::{
    build_qcqp, extract_phase_config, grid_oracle, initial_point, mrt_beamformer, no_irs_mrt_rate,
    objective_qcqp, random_phases, rcg_solve, sample_channels, solve_fixed_point,
    spectral_efficiency, ChannelRealization, ManifoldPoint, QcqpData, SystemConfig,
    UnitModulusVector,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::records::{aggregate, sort_records, AggregateRecord, Algorithm, TrialRecord};
use crate::scenario::{ScenarioSpec, SimError};
use crate::seeds::derive_trial_seed;

/// Runs every (sweep point, trial, algorithm) cell of a scenario.
///
/// Within a trial all algorithms see the identical channel draw, so the
/// comparison is paired. Trials execute in parallel; every column except the
/// wall time is a pure function of (spec, base_seed), and records are
/// sorted into the canonical order before aggregation so the output does not
/// depend on scheduling.
pub fn run_scenario(
    spec: &ScenarioSpec,
) -> Result<(Vec<TrialRecord>, Vec<AggregateRecord>), SimError> {
    spec.validate()?;
    let mut records = Vec::with_capacity(
        spec.sweep_values.len() * spec.trials * spec.algorithms.len(),
    );
    for (sweep_index, &sweep_value) in spec.sweep_values.iter().enumerate() {
        let cfg = spec.config_for(sweep_index)?;
        let mut sweep_records = (0..spec.trials)
            .into_par_iter()
            .map(|trial_index| run_trial(spec, &cfg, sweep_index, sweep_value, trial_index))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect::<Vec<_>>();
        records.append(&mut sweep_records);
    }
    sort_records(&mut records);
    let aggregates = aggregate(&records);
    Ok((records, aggregates))
}

/// Problem data prepared once per trial and shared by all phase algorithms.
struct TrialProblem {
    /// QCQP data in raw channel units; objectives are reported in this scale.
    raw: QcqpData,
    /// Same data divided by the largest entry modulus of R. The solvers run
    /// on this unit-scale copy so the absolute stopping thresholds behave
    /// identically across geometries; the maximizing phases are unaffected
    /// by positive scaling.
    solver: QcqpData,
    /// Eigenvector initializer, length M + 1, computed at solver scale.
    v0: Option<UnitModulusVector>,
}

fn run_trial(
    spec: &ScenarioSpec,
    cfg: &SystemConfig,
    sweep_index: usize,
    sweep_value: f64,
    trial_index: usize,
) -> Result<Vec<TrialRecord>, SimError> {
    let seed = derive_trial_seed(spec.base_seed, sweep_index as u64, trial_index as u64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ch = sample_channels(cfg, &mut rng)?;
    let p_linear = cfg.tx_power_w();
    let sigma2 = cfg.noise_power_w();

    let needs_qcqp = cfg.num_irs_elements >= 1
        && spec.algorithms.iter().any(Algorithm::needs_qcqp);
    let problem = if needs_qcqp {
        let raw = build_qcqp(&ch)?;
        let scale = raw.max_entry_modulus();
        let solver = if scale > 0.0 {
            raw.scaled(1.0 / scale)?
        } else {
            raw.clone()
        };
        let needs_init = spec
            .algorithms
            .iter()
            .any(|a| matches!(a, Algorithm::FixedPoint | Algorithm::Rcg));
        let v0 = if needs_init {
            Some(initial_point(&solver)?)
        } else {
            None
        };
        Some(TrialProblem { raw, solver, v0 })
    } else {
        None
    };

    let mut out = Vec::with_capacity(spec.algorithms.len());
    for &algorithm in &spec.algorithms {
        let (objective, se, iterations, wall_time_ms) = match algorithm {
            Algorithm::FixedPoint => {
                let prob = problem.as_ref().expect("validated: M >= 1");
                let v0 = prob.v0.as_ref().expect("initializer prepared");
                let start = Instant::now();
                let res = solve_fixed_point(&prob.solver, v0, spec.eps, spec.max_iter)?;
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                let x = extract_phase_config(&res);
                let obj = objective_qcqp(&prob.raw, &res.v_final)?;
                let se = rate_with_mrt(&ch, &x, p_linear, sigma2)?;
                (obj, se, res.iterations as u64, elapsed)
            }
            Algorithm::Rcg => {
                let prob = problem.as_ref().expect("validated: M >= 1");
                let v0 = prob.v0.as_ref().expect("initializer prepared");
                let x0 = ManifoldPoint::new(v0.head(cfg.num_irs_elements));
                let start = Instant::now();
                let res = rcg_solve(&prob.solver, &x0, spec.eps, spec.max_iter)?;
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                let x = res.x_final.into_phases();
                let obj = objective_qcqp(&prob.raw, &x.augmented())?;
                let se = rate_with_mrt(&ch, &x, p_linear, sigma2)?;
                (obj, se, res.iterations as u64, elapsed)
            }
            Algorithm::RandomPhase => {
                let prob = problem.as_ref().expect("validated: M >= 1");
                let start = Instant::now();
                let x = random_phases(cfg.num_irs_elements, &mut rng)?;
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                let obj = objective_qcqp(&prob.raw, &x.augmented())?;
                let se = rate_with_mrt(&ch, &x, p_linear, sigma2)?;
                (obj, se, 0, elapsed)
            }
            Algorithm::GridOracle => {
                let prob = problem.as_ref().expect("validated: M >= 1");
                let k = grid_points_for(cfg.num_irs_elements)?;
                let start = Instant::now();
                let res = grid_oracle(&prob.raw, k)?;
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                let obj = objective_qcqp(&prob.raw, &res.best_x.augmented())?;
                let se = rate_with_mrt(&ch, &res.best_x, p_linear, sigma2)?;
                (obj, se, res.evaluations, elapsed)
            }
            Algorithm::NoIrsMrt => {
                let start = Instant::now();
                let se = no_irs_mrt_rate(&ch, p_linear, sigma2)?;
                let elapsed = start.elapsed().as_secs_f64() * 1e3;
                (0.0, se, 0, elapsed)
            }
        };
        out.push(TrialRecord {
            sweep_value,
            trial_index,
            algorithm,
            objective_qcqp: objective,
            spectral_efficiency_bps_hz: se,
            iterations,
            wall_time_ms,
            seed_used: seed,
        });
    }
    Ok(out)
}

fn rate_with_mrt(
    ch: &ChannelRealization,
    x: &UnitModulusVector,
    p_linear: f64,
    sigma2: f64,
) -> Result<f64, SimError> {
    let f = mrt_beamformer(ch, x, p_linear)?;
    Ok(spectral_efficiency(ch, x, &f, sigma2)?)
}

/// Largest per-phase grid size K with K^M inside the evaluation guard,
/// capped at 72 points.
pub fn grid_points_for(m: usize) -> Result<usize, SimError> {
    let guard = irs_core::oracle::GRID_GUARD;
    let mut k = (guard as f64).powf(1.0 / m as f64).floor() as u64;
    k = k.min(72);
    while k >= 2 && k.checked_pow(m as u32).is_none_or(|t| t > guard) {
        k -= 1;
    }
    if k < 2 {
        return Err(SimError::Core(irs_core::Error::GridTooLarge(format!(
            "no grid with at least 2 points per phase fits the guard at M = {m}"
        ))));
    }
    Ok(k as usize)
}
