//! Monte Carlo scenario harness for the IRS-assisted MISO link.
//!
//! A scenario sweeps one system parameter, runs seeded paired trials at each
//! sweep point (every algorithm sees the same channel draw), and aggregates
//! the results into CSV files. The three stock sweeps mirror the library's
//! simulation studies: spectral efficiency versus user position, versus
//! surface size, and surface elements versus transmit antennas.

pub mod cli;
pub mod csv;
pub mod figures;
pub mod records;
pub mod runner;
pub mod scenario;
pub mod seeds;

pub use records::{AggregateRecord, Algorithm, TrialRecord};
pub use runner::run_scenario;
pub use scenario::{ScenarioSpec, SweepKind};
