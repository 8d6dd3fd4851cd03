//! Per-trial and aggregated outcome records.

use serde::{Deserialize, Serialize};

/// Algorithms the harness can run inside one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    FixedPoint,
    Rcg,
    RandomPhase,
    GridOracle,
    NoIrsMrt,
}

impl Algorithm {
    /// Stable identifier used in CSV output and CLI flags.
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::FixedPoint => "fixed_point",
            Algorithm::Rcg => "rcg",
            Algorithm::RandomPhase => "random_phase",
            Algorithm::GridOracle => "grid_oracle",
            Algorithm::NoIrsMrt => "no_irs_mrt",
        }
    }

    pub const ALL: [Algorithm; 5] = [
        Algorithm::FixedPoint,
        Algorithm::Rcg,
        Algorithm::RandomPhase,
        Algorithm::GridOracle,
        Algorithm::NoIrsMrt,
    ];

    /// True for the algorithms that need the assembled QCQP data.
    pub fn needs_qcqp(&self) -> bool {
        !matches!(self, Algorithm::NoIrsMrt)
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm {s:?}; expected one of {}", names.join(", "))
            })
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One algorithm's outcome on one channel draw.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialRecord {
    pub sweep_value: f64,
    pub trial_index: usize,
    pub algorithm: Algorithm,
    /// Augmented quadratic objective at the returned phases, in raw channel
    /// units (0 for the no-IRS baseline, which has no phase variable).
    pub objective_qcqp: f64,
    pub spectral_efficiency_bps_hz: f64,
    /// Solver iterations; grid evaluations for the oracle; 0 otherwise.
    pub iterations: u64,
    pub wall_time_ms: f64,
    pub seed_used: u64,
}

/// Summary over the trials of one (sweep value, algorithm) cell.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregateRecord {
    pub sweep_value: f64,
    pub algorithm: Algorithm,
    pub mean_se: f64,
    pub std_se: f64,
    pub mean_iterations: f64,
    pub mean_wall_time_ms: f64,
    pub trials: usize,
}

/// Sorts records into the canonical emission order:
/// (sweep value, trial index, algorithm name).
pub fn sort_records(records: &mut [TrialRecord]) {
    records.sort_by(|a, b| {
        a.sweep_value
            .total_cmp(&b.sweep_value)
            .then(a.trial_index.cmp(&b.trial_index))
            .then(a.algorithm.name().cmp(b.algorithm.name()))
    });
}

/// Aggregates sorted records per (sweep value, algorithm) cell.
///
/// The standard deviation is the population form, so single-trial cells
/// aggregate to zero spread. Input order fixes the (deterministic) float
/// summation order.
pub fn aggregate(records: &[TrialRecord]) -> Vec<AggregateRecord> {
    use std::collections::BTreeMap;

    // BTreeMap keyed by (sweep bits, name) keeps groups in emission order.
    let mut groups: BTreeMap<(u64, &'static str), Vec<&TrialRecord>> = BTreeMap::new();
    for r in records {
        groups
            .entry((sortable_bits(r.sweep_value), r.algorithm.name()))
            .or_default()
            .push(r);
    }

    groups
        .into_values()
        .map(|rows| {
            let n = rows.len() as f64;
            let mean_se = rows.iter().map(|r| r.spectral_efficiency_bps_hz).sum::<f64>() / n;
            let var = rows
                .iter()
                .map(|r| {
                    let d = r.spectral_efficiency_bps_hz - mean_se;
                    d * d
                })
                .sum::<f64>()
                / n;
            AggregateRecord {
                sweep_value: rows[0].sweep_value,
                algorithm: rows[0].algorithm,
                mean_se,
                std_se: var.sqrt(),
                mean_iterations: rows.iter().map(|r| r.iterations as f64).sum::<f64>() / n,
                mean_wall_time_ms: rows.iter().map(|r| r.wall_time_ms).sum::<f64>() / n,
                trials: rows.len(),
            }
        })
        .collect()
}

/// Order-preserving bit image of a finite f64 (total order as sort key).
fn sortable_bits(x: f64) -> u64 {
    let bits = x.to_bits();
    if bits >> 63 == 0 {
        bits | (1 << 63)
    } else {
        !bits
    }
}
