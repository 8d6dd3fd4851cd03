//! Unit-modulus vectors and entrywise phase extraction.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Entries with modulus at or below this threshold carry no usable phase.
pub const PHASE_EPS: f64 = 1e-14;

/// Tolerance on `| |entry| - 1 |` for membership on the unit circle.
pub const UNIT_MODULUS_TOL: f64 = 1e-12;

/// A complex vector whose every entry lies on the unit circle.
///
/// Holds either a phase configuration `x` (length M) or the augmented
/// variable `v = [x; t]` (length M + 1). The reflection matrix diagonal is
/// the conjugate of the stored entries.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitModulusVector(DVector<Complex64>);

impl UnitModulusVector {
    /// Wraps a vector after checking every entry against [`UNIT_MODULUS_TOL`].
    pub fn new(entries: DVector<Complex64>) -> Result<Self> {
        for (i, e) in entries.iter().enumerate() {
            if (e.norm() - 1.0).abs() > UNIT_MODULUS_TOL {
                return Err(Error::ContractViolation(format!(
                    "entry {i} has modulus {} (must be 1 within {UNIT_MODULUS_TOL})",
                    e.norm()
                )));
            }
        }
        Ok(Self(entries))
    }

    /// Builds the vector from real phase angles, entry i = e^{j phase_i}.
    pub fn from_phases(phases: &[f64]) -> Self {
        Self(DVector::from_iterator(
            phases.len(),
            phases.iter().map(|&p| Complex64::from_polar(1.0, p)),
        ))
    }

    /// All-ones vector of the given length.
    pub fn ones(len: usize) -> Self {
        Self(DVector::from_element(len, Complex64::new(1.0, 0.0)))
    }

    pub(crate) fn from_vector_unchecked(entries: DVector<Complex64>) -> Self {
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        &self.0
    }

    pub fn into_vector(self) -> DVector<Complex64> {
        self.0
    }

    /// First `m` entries as a new unit-modulus vector.
    pub fn head(&self, m: usize) -> Self {
        Self(self.0.rows(0, m).into_owned())
    }

    /// The augmented vector `[x; 1]` used by the (M+1)-dimensional program.
    pub fn augmented(&self) -> Self {
        Self(self.0.clone().push(Complex64::new(1.0, 0.0)))
    }
}

impl std::ops::Index<usize> for UnitModulusVector {
    type Output = Complex64;
    fn index(&self, i: usize) -> &Complex64 {
        &self.0[i]
    }
}

/// Entrywise phase extraction: entry i becomes `a_i / |a_i|`.
///
/// Entries with `|a_i| <= PHASE_EPS` fall back to phase 1. An input whose
/// entries are all below the threshold carries no phase information at all
/// and is rejected; use [`unt_with_fallback`] when a previous iterate is
/// available to break such ties.
pub fn unt(a: &DVector<Complex64>) -> Result<UnitModulusVector> {
    if a.iter().all(|e| e.norm() <= PHASE_EPS) {
        return Err(Error::DegenerateInput(
            "all entries are zero; no phase can be extracted".into(),
        ));
    }
    let out = DVector::from_iterator(
        a.len(),
        a.iter().map(|e| {
            let m = e.norm();
            if m > PHASE_EPS {
                e / m
            } else {
                Complex64::new(1.0, 0.0)
            }
        }),
    );
    Ok(UnitModulusVector::from_vector_unchecked(out))
}

/// Like [`unt`], but entries with no usable phase keep the phase of the
/// corresponding `previous` entry. `previous` must be unit-modulus.
pub fn unt_with_fallback(
    a: &DVector<Complex64>,
    previous: &UnitModulusVector,
) -> Result<UnitModulusVector> {
    if a.len() != previous.len() {
        return Err(Error::DimensionMismatch(format!(
            "input length {} vs fallback length {}",
            a.len(),
            previous.len()
        )));
    }
    let out = DVector::from_iterator(
        a.len(),
        a.iter().enumerate().map(|(i, e)| {
            let m = e.norm();
            if m > PHASE_EPS {
                e / m
            } else {
                previous[i]
            }
        }),
    );
    Ok(UnitModulusVector::from_vector_unchecked(out))
}
