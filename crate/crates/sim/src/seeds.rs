//! Per-trial seed derivation.
//!
//! Every (sweep point, trial) pair gets its own RNG seed derived from the
//! scenario base seed with a splittable mix, so trials can run in any order
//! or in parallel and still draw identical channels.

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// The splitmix64 finalizer.
pub fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(GOLDEN_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed for one (sweep point, trial) cell of a scenario.
pub fn derive_trial_seed(base_seed: u64, sweep_index: u64, trial_index: u64) -> u64 {
    let mixed_sweep = splitmix64(base_seed ^ splitmix64(sweep_index));
    splitmix64(mixed_sweep ^ splitmix64(trial_index.wrapping_add(GOLDEN_GAMMA)))
}
