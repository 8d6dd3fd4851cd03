//! Rayleigh fading channel generation under a distance power-law loss model.

use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::config::SystemConfig;
use crate::error::{Error, Result};

/// Linear power gain of a link of length `d` meters.
///
/// Returns `L0 * (d / d0)^(-alpha)` with `L0 = 10^(-ref_loss_db / 10)`.
pub fn path_loss_linear(d: f64, cfg: &SystemConfig) -> Result<f64> {
    if !(d > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "distance must be positive, got {d}"
        )));
    }
    let l0 = 10f64.powf(-cfg.ref_loss_db / 10.0);
    Ok(l0 * (d / cfg.ref_distance_m).powf(-cfg.pathloss_exponent))
}

/// One quasi-static draw of the three channels in the system.
///
/// `ap_irs` is the M x Nt matrix G, `irs_user` the length-M vector h_r, and
/// `ap_user` the length-Nt direct vector h. Values are immutable once drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub ap_irs: DMatrix<Complex64>,
    pub irs_user: DVector<Complex64>,
    pub ap_user: DVector<Complex64>,
}

impl ChannelRealization {
    /// Number of reflecting elements in this draw.
    pub fn num_irs_elements(&self) -> usize {
        self.irs_user.len()
    }

    /// Number of transmit antennas in this draw.
    pub fn num_tx_antennas(&self) -> usize {
        self.ap_user.len()
    }

    /// Checks dimensional consistency and entry finiteness.
    pub fn validate(&self) -> Result<()> {
        let (m, nt) = (self.irs_user.len(), self.ap_user.len());
        if self.ap_irs.nrows() != m || self.ap_irs.ncols() != nt {
            return Err(Error::DimensionMismatch(format!(
                "G is {}x{} but h_r has length {m} and h has length {nt}",
                self.ap_irs.nrows(),
                self.ap_irs.ncols()
            )));
        }
        let finite = self
            .ap_irs
            .iter()
            .chain(self.irs_user.iter())
            .chain(self.ap_user.iter())
            .all(|e| e.re.is_finite() && e.im.is_finite());
        if !finite {
            return Err(Error::ContractViolation(
                "channel entries must be finite".into(),
            ));
        }
        Ok(())
    }
}

/// One circularly-symmetric complex Gaussian sample with the given variance.
fn sample_cscg<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = (variance / 2.0).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re * s, im * s)
}

/// Draws an independent Rayleigh-fading realization of all three channels.
///
/// Each entry is complex Gaussian with variance equal to the path loss of
/// its link, so the AP-IRS-user cascade is attenuated by the product of the
/// two per-hop losses. Entries are drawn in a fixed order (G row-major, then
/// h_r, then h), which makes the draw a pure function of the stream state.
pub fn sample_channels<R: Rng + ?Sized>(
    cfg: &SystemConfig,
    rng: &mut R,
) -> Result<ChannelRealization> {
    cfg.validate()?;
    let m = cfg.num_irs_elements;
    let nt = cfg.num_tx_antennas;

    let var_g = path_loss_linear(cfg.d_ap_irs_m, cfg)?;
    let var_hr = path_loss_linear(cfg.d_irs_user_m, cfg)?;
    let var_h = path_loss_linear(cfg.d_ap_user_m, cfg)?;

    let mut g = DMatrix::zeros(m, nt);
    for i in 0..m {
        for j in 0..nt {
            g[(i, j)] = sample_cscg(rng, var_g);
        }
    }
    let irs_user = DVector::from_fn(m, |_, _| sample_cscg(rng, var_hr));
    let ap_user = DVector::from_fn(nt, |_, _| sample_cscg(rng, var_h));

    Ok(ChannelRealization {
        ap_irs: g,
        irs_user,
        ap_user,
    })
}

/// Writes a realization in the textual fixture format.
///
/// Layout: three header lines `G M Nt`, `hr M`, `h Nt`, followed by one
/// complex entry per line as `re im` — G row-major, then h_r, then h.
pub fn write_fixture(ch: &ChannelRealization, path: &Path) -> Result<()> {
    ch.validate()?;
    let io_err = |e: std::io::Error| Error::FixtureIo {
        path: path.display().to_string(),
        reason: e.to_string(),
    };
    let mut out = Vec::new();
    let (m, nt) = (ch.num_irs_elements(), ch.num_tx_antennas());
    writeln!(out, "G {m} {nt}").map_err(io_err)?;
    writeln!(out, "hr {m}").map_err(io_err)?;
    writeln!(out, "h {nt}").map_err(io_err)?;
    for i in 0..m {
        for j in 0..nt {
            let e = ch.ap_irs[(i, j)];
            writeln!(out, "{:.17e} {:.17e}", e.re, e.im).map_err(io_err)?;
        }
    }
    for e in ch.irs_user.iter() {
        writeln!(out, "{:.17e} {:.17e}", e.re, e.im).map_err(io_err)?;
    }
    for e in ch.ap_user.iter() {
        writeln!(out, "{:.17e} {:.17e}", e.re, e.im).map_err(io_err)?;
    }
    std::fs::write(path, out).map_err(io_err)
}

/// Reads a realization written by [`write_fixture`].
pub fn read_fixture(path: &Path) -> Result<ChannelRealization> {
    let fail = |reason: String| Error::FixtureIo {
        path: path.display().to_string(),
        reason,
    };
    let file = std::fs::File::open(path).map_err(|e| fail(e.to_string()))?;
    let mut lines = BufReader::new(file).lines();
    let mut next_line = || -> Result<String> {
        lines
            .next()
            .ok_or_else(|| fail("unexpected end of file".into()))?
            .map_err(|e| fail(e.to_string()))
    };

    let header_g = next_line()?;
    let parts: Vec<&str> = header_g.split_whitespace().collect();
    if parts.len() != 3 || parts[0] != "G" {
        return Err(fail(format!("bad G header line: {header_g:?}")));
    }
    let m: usize = parts[1].parse().map_err(|_| fail("bad M".into()))?;
    let nt: usize = parts[2].parse().map_err(|_| fail("bad Nt".into()))?;

    let header_hr = next_line()?;
    if header_hr != format!("hr {m}") {
        return Err(fail(format!("bad hr header line: {header_hr:?}")));
    }
    let header_h = next_line()?;
    if header_h != format!("h {nt}") {
        return Err(fail(format!("bad h header line: {header_h:?}")));
    }

    let parse_entry = |line: String| -> Result<Complex64> {
        let nums: Vec<&str> = line.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(fail(format!("expected `re im`, got {line:?}")));
        }
        let re: f64 = nums[0].parse().map_err(|_| fail("bad real part".into()))?;
        let im: f64 = nums[1]
            .parse()
            .map_err(|_| fail("bad imaginary part".into()))?;
        Ok(Complex64::new(re, im))
    };

    let mut g = DMatrix::zeros(m, nt);
    for i in 0..m {
        for j in 0..nt {
            g[(i, j)] = parse_entry(next_line()?)?;
        }
    }
    let mut irs_user = DVector::zeros(m);
    for i in 0..m {
        irs_user[i] = parse_entry(next_line()?)?;
    }
    let mut ap_user = DVector::zeros(nt);
    for i in 0..nt {
        ap_user[i] = parse_entry(next_line()?)?;
    }

    let ch = ChannelRealization {
        ap_irs: g,
        irs_user,
        ap_user,
    };
    ch.validate()?;
    Ok(ch)
}
