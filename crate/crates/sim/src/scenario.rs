//! Scenario specification: what to sweep, how many trials, which algorithms.

use irs_core::SystemConfig;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::records::Algorithm;

/// Harness-level errors, mapped onto the CLI exit codes.
#[derive(Debug, Error)]
pub enum SimError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] irs_core::Error),
    #[error("I/O error at {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl SimError {
    /// CLI exit code: 2 for configuration problems, 3 for I/O failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Io { .. } => 3,
            SimError::Core(irs_core::Error::FixtureIo { .. }) => 3,
            _ => 2,
        }
    }
}

/// Which system parameter the sweep values drive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    /// Value = AP-user distance; the IRS-user distance shrinks so the sum of
    /// both stays at the base configuration's sum.
    ApUserDistance,
    /// Value = number of reflecting elements.
    IrsSize,
    /// Value = number of transmit antennas (the element count stays at the
    /// base configuration), for element-vs-antenna comparisons.
    ElementsVsAntennas,
}

/// Full description of one sweep study.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    pub base: SystemConfig,
    pub sweep_kind: SweepKind,
    pub sweep_values: Vec<f64>,
    pub trials: usize,
    pub base_seed: u64,
    pub algorithms: Vec<Algorithm>,
    pub eps: f64,
    pub max_iter: usize,
}

impl ScenarioSpec {
    /// Sum of the AP-user and IRS-user distances held fixed by
    /// [`SweepKind::ApUserDistance`] sweeps.
    pub fn distance_sum(&self) -> f64 {
        self.base.d_ap_user_m + self.base.d_irs_user_m
    }

    /// Resolved configuration at one sweep point.
    pub fn config_for(&self, sweep_index: usize) -> Result<SystemConfig, SimError> {
        let value = *self.sweep_values.get(sweep_index).ok_or_else(|| {
            SimError::Config(format!("sweep index {sweep_index} out of range"))
        })?;
        let mut cfg = self.base.clone();
        match self.sweep_kind {
            SweepKind::ApUserDistance => {
                cfg.d_ap_user_m = value;
                cfg.d_irs_user_m = self.distance_sum() - value;
            }
            SweepKind::IrsSize => {
                cfg.num_irs_elements = as_count(value, "irs_size sweep value")?;
            }
            SweepKind::ElementsVsAntennas => {
                cfg.num_tx_antennas = as_count(value, "antenna sweep value")?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Checks the whole specification, including every resolved sweep point.
    pub fn validate(&self) -> Result<(), SimError> {
        if self.trials < 1 {
            return Err(SimError::Config("trials must be at least 1".into()));
        }
        if self.sweep_values.is_empty() {
            return Err(SimError::Config("sweep_values must not be empty".into()));
        }
        if self.algorithms.is_empty() {
            return Err(SimError::Config("algorithms must not be empty".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for a in &self.algorithms {
            if !seen.insert(*a) {
                return Err(SimError::Config(format!("duplicate algorithm {a}")));
            }
        }
        if !(self.eps > 0.0) {
            return Err(SimError::Config(format!(
                "eps must be positive, got {}",
                self.eps
            )));
        }
        if self.max_iter < 1 {
            return Err(SimError::Config("max_iter must be at least 1".into()));
        }
        if self.sweep_values.iter().any(|v| !v.is_finite()) {
            return Err(SimError::Config("sweep values must be finite".into()));
        }
        self.base.validate()?;
        if let SweepKind::ApUserDistance = self.sweep_kind {
            let sum = self.distance_sum();
            for &v in &self.sweep_values {
                if !(v > 0.0) || !(sum - v > 0.0) {
                    return Err(SimError::Config(format!(
                        "ap_user_distance value {v} must satisfy 0 < v < {sum}"
                    )));
                }
            }
        }
        for i in 0..self.sweep_values.len() {
            let cfg = self.config_for(i)?;
            if cfg.num_irs_elements == 0 {
                let phase_algo = self
                    .algorithms
                    .iter()
                    .find(|a| **a != Algorithm::NoIrsMrt);
                if let Some(a) = phase_algo {
                    return Err(SimError::Config(format!(
                        "sweep point {} has no reflecting elements, but algorithm {a} \
                         optimizes phases; only no_irs_mrt is valid there",
                        self.sweep_values[i]
                    )));
                }
            }
        }
        Ok(())
    }
}

fn as_count(value: f64, what: &str) -> Result<usize, SimError> {
    if value.fract() != 0.0 || value < 0.0 || value > u32::MAX as f64 {
        return Err(SimError::Config(format!(
            "{what} must be a non-negative integer, got {value}"
        )));
    }
    Ok(value as usize)
}

/// Parses a scenario from its JSON representation, rejecting unknown keys.
pub fn parse_spec(json: &str) -> Result<ScenarioSpec, SimError> {
    serde_json::from_str(json).map_err(|e| SimError::Config(format!("bad scenario JSON: {e}")))
}
