//! System-level configuration: array sizes, powers, and link geometry.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Converts a power in dBm to watts.
pub fn dbm_to_watt(dbm: f64) -> f64 {
    10f64.powf((dbm - 30.0) / 10.0)
}

/// Static description of one simulated link.
///
/// Powers are stored in dBm and converted to linear watts exactly once via
/// [`SystemConfig::tx_power_w`] / [`SystemConfig::noise_power_w`]; all other
/// math in the library works in linear units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemConfig {
    /// Number of transmit antennas at the access point (Nt >= 1).
    pub num_tx_antennas: usize,
    /// Number of reflecting elements at the surface (M >= 0; 0 disables the IRS).
    pub num_irs_elements: usize,
    /// Total transmit power in dBm.
    pub tx_power_dbm: f64,
    /// Noise power at the user in dBm.
    pub noise_power_dbm: f64,
    /// Path loss exponent (>= 2 for the models considered here).
    pub pathloss_exponent: f64,
    /// Reference distance of the path loss model in meters.
    pub ref_distance_m: f64,
    /// Loss at the reference distance in dB (positive = attenuation).
    pub ref_loss_db: f64,
    /// AP-to-IRS distance in meters.
    pub d_ap_irs_m: f64,
    /// AP-to-user distance in meters.
    pub d_ap_user_m: f64,
    /// IRS-to-user distance in meters.
    pub d_irs_user_m: f64,
}

impl SystemConfig {
    /// Transmit power in watts.
    pub fn tx_power_w(&self) -> f64 {
        dbm_to_watt(self.tx_power_dbm)
    }

    /// Noise power in watts.
    pub fn noise_power_w(&self) -> f64 {
        dbm_to_watt(self.noise_power_dbm)
    }

    /// Checks the structural invariants of the configuration.
    pub fn validate(&self) -> Result<()> {
        if self.num_tx_antennas < 1 {
            return Err(Error::InvalidArgument(
                "num_tx_antennas must be at least 1".into(),
            ));
        }
        if !(self.pathloss_exponent >= 2.0) {
            return Err(Error::InvalidArgument(format!(
                "pathloss_exponent must be >= 2, got {}",
                self.pathloss_exponent
            )));
        }
        if !(self.ref_distance_m > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "ref_distance_m must be positive, got {}",
                self.ref_distance_m
            )));
        }
        for (name, d) in [
            ("d_ap_irs_m", self.d_ap_irs_m),
            ("d_ap_user_m", self.d_ap_user_m),
            ("d_irs_user_m", self.d_irs_user_m),
        ] {
            if !(d > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive, got {d}"
                )));
            }
        }
        for (name, x) in [
            ("tx_power_dbm", self.tx_power_dbm),
            ("noise_power_dbm", self.noise_power_dbm),
            ("ref_loss_db", self.ref_loss_db),
        ] {
            if !x.is_finite() {
                return Err(Error::InvalidArgument(format!("{name} must be finite")));
            }
        }
        Ok(())
    }
}
