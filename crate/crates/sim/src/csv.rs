//! CSV emission with a fixed header and deterministic formatting.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::records::{AggregateRecord, TrialRecord};
use crate::scenario::SimError;

pub const TRIAL_HEADER: &str =
    "sweep_value,trial,algorithm,objective,se_bps_hz,iterations,wall_time_ms,seed";
pub const AGGREGATE_HEADER: &str =
    "sweep_value,algorithm,mean_se,std_se,mean_iters,mean_time_ms,trials";

/// Floats are printed in scientific notation with 10 significant digits.
fn fmt_float(x: f64) -> String {
    format!("{x:.9e}")
}

/// Sibling aggregate path: `results.csv` -> `results.agg.csv`.
pub fn aggregate_path(path: &Path) -> PathBuf {
    match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => path.with_extension("agg.csv"),
        _ => {
            let mut name = path.as_os_str().to_owned();
            name.push(".agg.csv");
            PathBuf::from(name)
        }
    }
}

/// Writes the per-trial records to `path` and the aggregates to the sibling
/// `.agg.csv` file. Rows are emitted in the order given; the runner hands
/// them over already sorted by (sweep, trial, algorithm name).
pub fn emit_csv(
    trials: &[TrialRecord],
    aggregates: &[AggregateRecord],
    path: &Path,
) -> Result<(), SimError> {
    write_all(path, render_trials(trials))?;
    write_all(&aggregate_path(path), render_aggregates(aggregates))
}

fn render_trials(trials: &[TrialRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    writeln!(out, "{TRIAL_HEADER}").expect("vec write");
    for r in trials {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            fmt_float(r.sweep_value),
            r.trial_index,
            r.algorithm.name(),
            fmt_float(r.objective_qcqp),
            fmt_float(r.spectral_efficiency_bps_hz),
            r.iterations,
            fmt_float(r.wall_time_ms),
            r.seed_used
        )
        .expect("vec write");
    }
    out
}

fn render_aggregates(aggregates: &[AggregateRecord]) -> Vec<u8> {
    let mut out = Vec::new();
    writeln!(out, "{AGGREGATE_HEADER}").expect("vec write");
    for a in aggregates {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt_float(a.sweep_value),
            a.algorithm.name(),
            fmt_float(a.mean_se),
            fmt_float(a.std_se),
            fmt_float(a.mean_iterations),
            fmt_float(a.mean_wall_time_ms),
            a.trials
        )
        .expect("vec write");
    }
    out
}

fn write_all(path: &Path, bytes: Vec<u8>) -> Result<(), SimError> {
    std::fs::write(path, bytes).map_err(|source| SimError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::records::Algorithm;

    #[test]
    fn empty_records_give_header_only_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.csv");
        emit_csv(&[], &[], &path).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();
        assert_eq!(content, format!("{TRIAL_HEADER}\n"));
        let agg = std::fs::read_to_string(dir.path().join("out.agg.csv")).unwrap();
        assert_eq!(agg, format!("{AGGREGATE_HEADER}\n"));
    }

    #[test]
    fn two_records_make_three_lines() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("two.csv");
        let rec = |trial| TrialRecord {
            sweep_value: 15.0,
            trial_index: trial,
            algorithm: Algorithm::Rcg,
            objective_qcqp: 1.25,
            spectral_efficiency_bps_hz: 2.5,
            iterations: 7,
            wall_time_ms: 0.125,
            seed_used: 99,
        };
        emit_csv(&[rec(0), rec(1)], &[], &path).unwrap();
        let content = std::fs::read_to_string(&path).unwrap();
        let lines: Vec<&str> = content.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], TRIAL_HEADER);
        assert_eq!(lines[1], "1.500000000e1,0,rcg,1.250000000e0,2.500000000e0,7,1.250000000e-1,99");
    }

    #[test]
    fn aggregate_path_for_unusual_names() {
        assert_eq!(
            aggregate_path(Path::new("a/b.csv")),
            PathBuf::from("a/b.agg.csv")
        );
        assert_eq!(
            aggregate_path(Path::new("a/noext")),
            PathBuf::from("a/noext.agg.csv")
        );
    }

    #[test]
    fn unwritable_path_is_an_io_error() {
        let err = emit_csv(&[], &[], Path::new("/nonexistent_dir_xyz/out.csv")).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
