//! Link-level model: effective channel, MRT beamforming, spectral efficiency.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::unimod::UnitModulusVector;

/// Tolerance on the transmit power constraint `||f||^2 <= P`.
pub const POWER_TOL: f64 = 1e-9;

/// Transmit beamforming weights, norm-bounded by the power budget.
#[derive(Debug, Clone, PartialEq)]
pub struct Beamformer(DVector<Complex64>);

impl Beamformer {
    /// Wraps a weight vector after checking `||f||^2 <= p_linear + tol`.
    pub fn new(weights: DVector<Complex64>, p_linear: f64) -> Result<Self> {
        let p = weights.norm_squared();
        if p > p_linear + POWER_TOL {
            return Err(Error::ContractViolation(format!(
                "beamformer power {p} exceeds budget {p_linear}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn weights(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Effective AP-to-user channel for a given phase configuration.
///
/// Returns `G^H diag(h_r) x + h`; the received scalar is the conjugate
/// transpose of this vector applied to the beamformer. With M = 0 the
/// reflected term vanishes and the direct channel is returned.
pub fn combined_channel(
    ch: &ChannelRealization,
    x: &UnitModulusVector,
) -> Result<DVector<Complex64>> {
    let m = ch.num_irs_elements();
    if x.len() != m {
        return Err(Error::DimensionMismatch(format!(
            "phase vector length {} vs {} reflecting elements",
            x.len(),
            m
        )));
    }
    if m == 0 {
        return Ok(ch.ap_user.clone());
    }
    // diag(h_r) x == h_r .* x, then G^H applied to it.
    let reflected = DVector::from_fn(m, |i, _| ch.irs_user[i] * x[i]);
    Ok(ch.ap_irs.adjoint() * reflected + &ch.ap_user)
}

/// Maximum ratio transmission beamformer for the effective channel.
///
/// `f = sqrt(P) c / ||c||` with `c` the combined channel, so `||f||^2 = P`.
pub fn mrt_beamformer(
    ch: &ChannelRealization,
    x: &UnitModulusVector,
    p_linear: f64,
) -> Result<Beamformer> {
    if !(p_linear > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "transmit power must be positive, got {p_linear}"
        )));
    }
    let c = combined_channel(ch, x)?;
    let n = c.norm();
    if n == 0.0 {
        return Err(Error::DegenerateChannel(
            "combined channel is zero; MRT direction undefined".into(),
        ));
    }
    let f = c * Complex64::new(p_linear.sqrt() / n, 0.0);
    Beamformer::new(f, p_linear + POWER_TOL)
}

/// Spectral efficiency in bits/s/Hz for one phase/beamformer choice.
///
/// Evaluates `log2(1 + |(h_r^H Phi G + h^H) f|^2 / sigma2)` where the
/// reflection matrix diagonal is the conjugate of the phase entries, so the
/// received scalar equals `c^H f` with `c` the combined channel.
pub fn spectral_efficiency(
    ch: &ChannelRealization,
    x: &UnitModulusVector,
    f: &Beamformer,
    sigma2: f64,
) -> Result<f64> {
    if !(sigma2 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "noise power must be positive, got {sigma2}"
        )));
    }
    if f.len() != ch.num_tx_antennas() {
        return Err(Error::DimensionMismatch(format!(
            "beamformer length {} vs {} antennas",
            f.len(),
            ch.num_tx_antennas()
        )));
    }
    let c = combined_channel(ch, x)?;
    let rx = c.dotc(f.weights());
    Ok((1.0 + rx.norm_sqr() / sigma2).log2())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    /// All-ones scalar system: Nt = 1, M = 1, G = [1], h_r = [1], h = [1].
    fn scalar_system() -> ChannelRealization {
        ChannelRealization {
            ap_irs: DMatrix::from_element(1, 1, c64(1.0, 0.0)),
            irs_user: DVector::from_element(1, c64(1.0, 0.0)),
            ap_user: DVector::from_element(1, c64(1.0, 0.0)),
        }
    }

    fn random_channel(m: usize, nt: usize, seed: u64) -> ChannelRealization {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = |_: usize| {
            c64(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        };
        ChannelRealization {
            ap_irs: DMatrix::from_fn(m, nt, |_, _| draw(0)),
            irs_user: DVector::from_fn(m, |i, _| draw(i)),
            ap_user: DVector::from_fn(nt, |i, _| draw(i)),
        }
    }

    /// Naive re-evaluation of the received scalar straight from the raw
    /// channel entries: (h_r^H Phi G + h^H) f with Phi_ii = conj(x_i).
    fn brute_received_scalar(
        ch: &ChannelRealization,
        x: &UnitModulusVector,
        f: &Beamformer,
    ) -> Complex64 {
        let m = ch.num_irs_elements();
        let nt = ch.num_tx_antennas();
        let mut rx = c64(0.0, 0.0);
        for j in 0..nt {
            let mut row = ch.ap_user[j].conj();
            for i in 0..m {
                row += ch.irs_user[i].conj() * x[i].conj() * ch.ap_irs[(i, j)];
            }
            rx += row * f.weights()[j];
        }
        rx
    }

    #[test]
    fn scalar_all_ones_rate() {
        let ch = scalar_system();
        let x = UnitModulusVector::ones(1);
        let f = Beamformer::new(DVector::from_element(1, c64(1.0, 0.0)), 1.0).unwrap();
        let se = spectral_efficiency(&ch, &x, &f, 1.0).unwrap();
        assert_relative_eq!(se, 5f64.log2(), max_relative = 1e-12);
    }

    #[test]
    fn zero_beamformer_gives_zero_rate() {
        let ch = scalar_system();
        let x = UnitModulusVector::ones(1);
        let f = Beamformer::new(DVector::from_element(1, c64(0.0, 0.0)), 1.0).unwrap();
        assert_eq!(spectral_efficiency(&ch, &x, &f, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn combined_channel_scalar_case() {
        let ch = scalar_system();
        let x = UnitModulusVector::ones(1);
        let c = combined_channel(&ch, &x).unwrap();
        assert_relative_eq!(c[0].re, 2.0, epsilon = 1e-15);
        assert_relative_eq!(c[0].im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn combined_channel_no_irs_is_direct() {
        let ch = random_channel(0, 3, 9);
        let x = UnitModulusVector::ones(0);
        let c = combined_channel(&ch, &x).unwrap();
        assert_eq!(c, ch.ap_user);
    }

    #[test]
    fn mrt_scalar_case() {
        let ch = scalar_system();
        let x = UnitModulusVector::ones(1);
        let f = mrt_beamformer(&ch, &x, 4.0).unwrap();
        assert_relative_eq!(f.weights()[0].re, 2.0, epsilon = 1e-12);
        assert_relative_eq!(f.weights()[0].im, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn mrt_norm_equals_power_budget() {
        for seed in 0..10u64 {
            let ch = random_channel(4, 3, seed);
            let x = UnitModulusVector::from_phases(&[0.3, -1.2, 2.5, 0.0]);
            let f = mrt_beamformer(&ch, &x, 2.5).unwrap();
            assert_relative_eq!(f.weights().norm(), 2.5f64.sqrt(), max_relative = 1e-12);
        }
    }

    #[test]
    fn mrt_rejects_zero_channel() {
        let ch = ChannelRealization {
            ap_irs: DMatrix::zeros(1, 1),
            irs_user: DVector::zeros(1),
            ap_user: DVector::zeros(1),
        };
        let x = UnitModulusVector::ones(1);
        assert!(matches!(
            mrt_beamformer(&ch, &x, 1.0),
            Err(Error::DegenerateChannel(_))
        ));
    }

    #[test]
    fn mrt_dominates_random_beamformers() {
        let p = 3.0;
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for seed in 0..20u64 {
            let ch = random_channel(5, 4, seed);
            let x = UnitModulusVector::from_phases(&[0.1, 0.2, 0.3, 0.4, 0.5]);
            let f_mrt = mrt_beamformer(&ch, &x, p).unwrap();
            let se_mrt = spectral_efficiency(&ch, &x, &f_mrt, 1.0).unwrap();
            for _ in 0..100 {
                let raw = DVector::from_fn(4, |_, _| {
                    c64(
                        rng.sample::<f64, _>(StandardNormal),
                        rng.sample::<f64, _>(StandardNormal),
                    )
                });
                let f = Beamformer::new(raw.clone() * c64(p.sqrt() / raw.norm(), 0.0), p).unwrap();
                let se = spectral_efficiency(&ch, &x, &f, 1.0).unwrap();
                assert!(se_mrt >= se, "MRT beat by a random beamformer");
            }
        }
    }

    #[test]
    fn rate_matches_brute_evaluation() {
        for seed in 0..25u64 {
            let ch = random_channel(6, 4, seed);
            let phases: Vec<f64> = (0..6).map(|i| 0.7 * i as f64 - 1.0).collect();
            let x = UnitModulusVector::from_phases(&phases);
            let f = mrt_beamformer(&ch, &x, 2.0).unwrap();
            let se = spectral_efficiency(&ch, &x, &f, 0.5).unwrap();
            let rx = brute_received_scalar(&ch, &x, &f);
            let brute = (1.0 + rx.norm_sqr() / 0.5).log2();
            assert_relative_eq!(se, brute, max_relative = 1e-9);
        }
    }

    #[test]
    fn rate_with_mrt_matches_closed_form() {
        for seed in 0..25u64 {
            let ch = random_channel(4, 3, seed);
            let x = UnitModulusVector::from_phases(&[1.0, -0.5, 0.25, 3.0]);
            let p = 1.7;
            let sigma2 = 0.9;
            let f = mrt_beamformer(&ch, &x, p).unwrap();
            let se = spectral_efficiency(&ch, &x, &f, sigma2).unwrap();
            let c = combined_channel(&ch, &x).unwrap();
            let closed = (1.0 + p * c.norm_squared() / sigma2).log2();
            assert_relative_eq!(se, closed, max_relative = 1e-9);
        }
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let ch = scalar_system();
        let x = UnitModulusVector::ones(2);
        assert!(matches!(
            combined_channel(&ch, &x),
            Err(Error::DimensionMismatch(_))
        ));
    }
}
