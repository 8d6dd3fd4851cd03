//! Unit-modulus QCQP data assembled from a channel realization.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::unimod::UnitModulusVector;

/// Tolerance for the elementwise Hermitian check on R.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Channel factors kept alongside the dense blocks.
///
/// `A = diag(h_r^H) G G^H diag(h_r)` is a Gram matrix of the Nt-column
/// factor `G^H diag(h_r)`, so `A x` can be applied in O(M Nt) instead of
/// O(M^2). The conjugate-gradient solver uses this when present.
#[derive(Debug, Clone, PartialEq)]
struct GramFactor {
    /// `G^H diag(h_r)`, an Nt x M matrix.
    gh_d: DMatrix<Complex64>,
}

/// Data of the augmented quadratic program and its phase-only form.
///
/// `r_matrix` is the Hermitian (M+1) x (M+1) matrix with block structure
/// `[[A, b], [b^H, 0]]`; maximizing `v^H R v` over unit-modulus `v` is the
/// augmented problem, and minimizing `-x^H A x - 2 Re(x^H b)` over
/// unit-modulus `x` is the equivalent phase-only problem.
#[derive(Debug, Clone, PartialEq)]
pub struct QcqpData {
    r_matrix: DMatrix<Complex64>,
    a_matrix: DMatrix<Complex64>,
    b_vector: DVector<Complex64>,
    factor: Option<GramFactor>,
}

impl QcqpData {
    /// Builds the data from an explicit Hermitian PSD `A` and vector `b`.
    ///
    /// `R` is assembled from the blocks, which guarantees the structural
    /// invariants; `A` itself is checked for Hermitian symmetry and positive
    /// semidefiniteness.
    pub fn new(a: DMatrix<Complex64>, b: DVector<Complex64>) -> Result<Self> {
        let m = a.nrows();
        if a.ncols() != m {
            return Err(Error::DimensionMismatch(format!(
                "A must be square, got {}x{}",
                a.nrows(),
                a.ncols()
            )));
        }
        if b.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "b has length {} but A is {m}x{m}",
                b.len()
            )));
        }
        if m == 0 {
            return Err(Error::EmptyIrs);
        }
        for i in 0..m {
            for j in 0..m {
                if (a[(i, j)] - a[(j, i)].conj()).norm() > HERMITIAN_TOL {
                    return Err(Error::ContractViolation(format!(
                        "A is not Hermitian at ({i}, {j})"
                    )));
                }
            }
        }
        let eig = a.clone().symmetric_eigen();
        let trace: f64 = a.diagonal().iter().map(|e| e.re).sum();
        let floor = -1e-10 * trace.max(1e-300);
        if eig.eigenvalues.iter().any(|&l| l < floor) {
            return Err(Error::ContractViolation(format!(
                "A has a negative eigenvalue {} below the PSD floor",
                eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min)
            )));
        }
        Ok(Self::assemble(a, b, None))
    }

    /// Assembles `R` from already-validated blocks.
    fn assemble(a: DMatrix<Complex64>, b: DVector<Complex64>, factor: Option<GramFactor>) -> Self {
        let m = a.nrows();
        let mut r = DMatrix::zeros(m + 1, m + 1);
        r.view_mut((0, 0), (m, m)).copy_from(&a);
        for i in 0..m {
            r[(i, m)] = b[i];
            r[(m, i)] = b[i].conj();
        }
        // bottom-right corner stays exactly zero
        Self {
            r_matrix: r,
            a_matrix: a,
            b_vector: b,
            factor,
        }
    }

    /// Number of reflecting elements M (so R is (M+1) x (M+1)).
    pub fn dim_m(&self) -> usize {
        self.b_vector.len()
    }

    pub fn r_matrix(&self) -> &DMatrix<Complex64> {
        &self.r_matrix
    }

    pub fn a_matrix(&self) -> &DMatrix<Complex64> {
        &self.a_matrix
    }

    pub fn b_vector(&self) -> &DVector<Complex64> {
        &self.b_vector
    }

    /// Sum of the moduli of all entries of R, the fixed-point surrogate bound.
    pub fn vec_l1_norm(&self) -> f64 {
        self.r_matrix.iter().map(|e| e.norm()).sum()
    }

    /// Largest entry modulus of R; used as a scale for normalized solves.
    pub fn max_entry_modulus(&self) -> f64 {
        self.r_matrix.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Returns a copy with R, A, b multiplied by `scale > 0`.
    ///
    /// The maximizer of `v^H R v` under unit-modulus constraints is invariant
    /// to positive scaling, so solving the scaled problem yields the same
    /// phase configuration; only stopping thresholds see the new scale.
    pub fn scaled(&self, scale: f64) -> Result<Self> {
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "scale must be positive and finite, got {scale}"
            )));
        }
        let s = Complex64::new(scale, 0.0);
        let factor = self.factor.as_ref().map(|f| GramFactor {
            gh_d: &f.gh_d * Complex64::new(scale.sqrt(), 0.0),
        });
        Ok(Self::assemble(
            &self.a_matrix * s,
            &self.b_vector * s,
            factor,
        ))
    }

    /// Applies `A` to a length-M vector, using the Gram factor when present.
    pub fn apply_a(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        match &self.factor {
            Some(f) => f.gh_d.adjoint() * (&f.gh_d * x),
            None => &self.a_matrix * x,
        }
    }

    /// Applies the dense `R` to a length-(M+1) vector.
    pub fn apply_r(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        &self.r_matrix * v
    }
}

/// Assembles the QCQP data (R, A, b) from a channel realization.
///
/// `A = diag(h_r^H) G G^H diag(h_r)`, `b = diag(h_r^H) G h`. A is a Gram
/// matrix by construction, and the factor is retained for fast products.
pub fn build_qcqp(ch: &ChannelRealization) -> Result<QcqpData> {
    ch.validate()?;
    let m = ch.num_irs_elements();
    if m == 0 {
        return Err(Error::EmptyIrs);
    }
    // G^H diag(h_r): scale column i of G^H by h_r[i].
    let mut gh_d = ch.ap_irs.adjoint();
    for (i, mut col) in gh_d.column_iter_mut().enumerate() {
        col *= ch.irs_user[i];
    }
    let a = gh_d.adjoint() * &gh_d;
    let b = gh_d.adjoint() * &ch.ap_user;
    Ok(QcqpData::assemble(a, b, Some(GramFactor { gh_d })))
}

fn check_unit_modulus(v: &UnitModulusVector) -> Result<()> {
    // UnitModulusVector enforces this at construction; re-check cheaply in
    // case the vector was produced through the unchecked internal path.
    for e in v.as_vector().iter() {
        if (e.norm() - 1.0).abs() > crate::unimod::UNIT_MODULUS_TOL {
            return Err(Error::ContractViolation(
                "input is not unit-modulus".into(),
            ));
        }
    }
    Ok(())
}

/// Evaluates the augmented objective `v^H R v` for unit-modulus `v`.
///
/// The value is real for Hermitian R; the (rounding-level) imaginary part is
/// checked against 1e-9 and discarded.
pub fn objective_qcqp(q: &QcqpData, v: &UnitModulusVector) -> Result<f64> {
    if v.len() != q.dim_m() + 1 {
        return Err(Error::DimensionMismatch(format!(
            "v has length {} but R is {}x{}",
            v.len(),
            q.dim_m() + 1,
            q.dim_m() + 1
        )));
    }
    check_unit_modulus(v)?;
    let rv = q.apply_r(v.as_vector());
    let val = v.as_vector().dotc(&rv);
    if val.im.abs() > 1e-9 {
        return Err(Error::ContractViolation(format!(
            "objective has non-negligible imaginary part {}",
            val.im
        )));
    }
    Ok(val.re)
}

/// Evaluates the phase-only objective `-x^H A x - 2 Re(x^H b)`.
///
/// Satisfies `objective_p2(x) = -objective_qcqp([x; 1])`.
pub fn objective_p2(q: &QcqpData, x: &UnitModulusVector) -> Result<f64> {
    if x.len() != q.dim_m() {
        return Err(Error::DimensionMismatch(format!(
            "x has length {} but A is {}x{}",
            x.len(),
            q.dim_m(),
            q.dim_m()
        )));
    }
    check_unit_modulus(x)?;
    Ok(objective_p2_raw(q, x.as_vector()))
}

/// Objective evaluation without the unit-modulus contract check; the solvers
/// call this on iterates they construct themselves.
pub(crate) fn objective_p2_raw(q: &QcqpData, x: &DVector<Complex64>) -> f64 {
    let ax = q.apply_a(x);
    let quad = x.dotc(&ax).re;
    let cross = x.dotc(q.b_vector()).re;
    -quad - 2.0 * cross
}
