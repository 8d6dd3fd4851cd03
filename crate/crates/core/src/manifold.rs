//! Geometry of the complex circle manifold `{x : |x_i| = 1}`.
//!
//! The manifold is the product of M unit circles embedded in complex
//! M-space with the real inner product `<u, v> = Re(u^H v)`. The tangent
//! space at `x` collects the vectors `z` with `Re(z_i conj(x_i)) = 0`;
//! projection onto it, projection-based vector transport, and the
//! normalization retraction are all entrywise.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qcqp::QcqpData;
use crate::unimod::{unt_with_fallback, UnitModulusVector};

/// Tolerance on the tangency condition `Re(z_i conj(x_i)) = 0`.
pub const TANGENCY_TOL: f64 = 1e-10;

/// A point on the complex circle manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldPoint(UnitModulusVector);

impl ManifoldPoint {
    pub fn new(x: UnitModulusVector) -> Self {
        Self(x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn phases(&self) -> &UnitModulusVector {
        &self.0
    }

    pub fn as_vector(&self) -> &DVector<Complex64> {
        self.0.as_vector()
    }

    pub fn into_phases(self) -> UnitModulusVector {
        self.0
    }
}

/// A tangent vector together with its base point.
#[derive(Debug, Clone)]
pub struct TangentVector {
    z: DVector<Complex64>,
    base: ManifoldPoint,
}

impl TangentVector {
    pub fn components(&self) -> &DVector<Complex64> {
        &self.z
    }

    pub fn base(&self) -> &ManifoldPoint {
        &self.base
    }

    pub fn norm(&self) -> f64 {
        self.z.norm()
    }

    /// Real inner product with another vector in the same embedding space.
    pub fn inner(&self, other: &DVector<Complex64>) -> f64 {
        self.z.dotc(other).re
    }

    /// Zero vector at the given base point.
    pub fn zero(base: &ManifoldPoint) -> Self {
        Self {
            z: DVector::zeros(base.len()),
            base: base.clone(),
        }
    }

    /// Assembles a tangent vector from raw components. The caller is
    /// responsible for tangency at the base point.
    pub(crate) fn from_components(z: DVector<Complex64>, base: ManifoldPoint) -> Self {
        Self { z, base }
    }

    /// Largest violation of the tangency condition at the base point.
    pub fn tangency_defect(&self) -> f64 {
        self.z
            .iter()
            .zip(self.base.as_vector().iter())
            .map(|(z, x)| (z * x.conj()).re.abs())
            .fold(0.0, f64::max)
    }
}

/// Orthogonal projection of `z` onto the tangent space at `x`:
/// `z - Re(z .* conj(x)) .* x`. Idempotent.
pub fn tangent_project(x: &ManifoldPoint, z: &DVector<Complex64>) -> Result<TangentVector> {
    if z.len() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "vector length {} vs point length {}",
            z.len(),
            x.len()
        )));
    }
    let projected = DVector::from_fn(z.len(), |i, _| {
        let xi = x.as_vector()[i];
        z[i] - (z[i] * xi.conj()).re * xi
    });
    Ok(TangentVector {
        z: projected,
        base: x.clone(),
    })
}

/// Euclidean gradient of the phase-only objective: `-2 (A x + b)`.
pub fn euclidean_grad(q: &QcqpData, x: &ManifoldPoint) -> Result<DVector<Complex64>> {
    if x.len() != q.dim_m() {
        return Err(Error::DimensionMismatch(format!(
            "point length {} vs problem size {}",
            x.len(),
            q.dim_m()
        )));
    }
    let ax = q.apply_a(x.as_vector());
    Ok((ax + q.b_vector()) * Complex64::new(-2.0, 0.0))
}

/// Riemannian gradient: tangent projection of the Euclidean gradient.
pub fn riemannian_grad(q: &QcqpData, x: &ManifoldPoint) -> Result<TangentVector> {
    let eg = euclidean_grad(q, x)?;
    tangent_project(x, &eg)
}

/// Moves a tangent vector to the tangent space at `x_next` by projection.
pub fn transport(eta: &TangentVector, x_next: &ManifoldPoint) -> Result<TangentVector> {
    tangent_project(x_next, &eta.z)
}

/// Retraction `unt(x + alpha * eta)`: steps in the embedding space and
/// renormalizes each entry back onto its circle.
///
/// A zero step returns the base point exactly; a stepped entry that lands on
/// zero keeps the base point's phase.
pub fn retract(x: &ManifoldPoint, eta: &TangentVector, alpha: f64) -> Result<ManifoldPoint> {
    if eta.z.len() != x.len() {
        return Err(Error::DimensionMismatch(format!(
            "direction length {} vs point length {}",
            eta.z.len(),
            x.len()
        )));
    }
    if !(alpha >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "step size must be non-negative, got {alpha}"
        )));
    }
    if alpha == 0.0 || eta.z.iter().all(|e| e.norm() == 0.0) {
        return Ok(x.clone());
    }
    let stepped = x.as_vector() + &eta.z * Complex64::new(alpha, 0.0);
    let normalized = unt_with_fallback(&stepped, x.phases())?;
    Ok(ManifoldPoint::new(normalized))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcqp::{objective_p2, QcqpData};
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn point(phases: &[f64]) -> ManifoldPoint {
        ManifoldPoint::new(UnitModulusVector::from_phases(phases))
    }

    fn toy() -> QcqpData {
        QcqpData::new(
            DMatrix::from_element(1, 1, c64(1.0, 0.0)),
            DVector::from_element(1, c64(1.0, 0.0)),
        )
        .unwrap()
    }

    fn random_instance(m: usize, nt: usize, seed: u64) -> QcqpData {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut draw = || {
            c64(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        };
        let w = DMatrix::from_fn(m, nt, |_, _| draw());
        let a = &w * w.adjoint();
        let b = DVector::from_fn(m, |_, _| draw());
        QcqpData::new(a, b).unwrap()
    }

    fn random_point(m: usize, rng: &mut ChaCha8Rng) -> ManifoldPoint {
        let phases: Vec<f64> = (0..m)
            .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
            .collect();
        point(&phases)
    }

    #[test]
    fn projecting_the_point_itself_gives_zero() {
        let x = point(&[0.4, -1.1, 2.2]);
        let t = tangent_project(&x, x.as_vector()).unwrap();
        assert!(t.norm() < 1e-14);
    }

    #[test]
    fn already_tangent_vector_is_unchanged() {
        let x = point(&[0.0]);
        let z = DVector::from_vec(vec![c64(0.0, 1.0)]); // j*x at x = 1
        let t = tangent_project(&x, &z).unwrap();
        assert!((t.components()[0] - c64(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn projection_is_idempotent() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let x = random_point(6, &mut rng);
            let z = DVector::from_fn(6, |_, _| {
                c64(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            });
            let once = tangent_project(&x, &z).unwrap();
            let twice = tangent_project(&x, once.components()).unwrap();
            for i in 0..6 {
                assert!((once.components()[i] - twice.components()[i]).norm() < 1e-12);
            }
            assert!(once.tangency_defect() < TANGENCY_TOL);
        }
    }

    #[test]
    fn euclidean_grad_scalar_examples() {
        let q = toy();
        let x = point(&[0.0]);
        let g = euclidean_grad(&q, &x).unwrap();
        assert_relative_eq!(g[0].re, -4.0, epsilon = 1e-14);
        assert_relative_eq!(g[0].im, 0.0, epsilon = 1e-14);

        let zero = QcqpData::new(DMatrix::zeros(1, 1), DVector::zeros(1));
        // A = 0, b = 0 violates nothing; gradient must vanish.
        let zero = zero.unwrap();
        let g0 = euclidean_grad(&zero, &x).unwrap();
        assert_eq!(g0[0], c64(0.0, 0.0));
    }

    #[test]
    fn euclidean_grad_matches_finite_differences() {
        // Directional derivative along coordinate perturbations equals
        // Re(grad^H dx) for df = f(x + dx) - f(x).
        let h = 1e-6;
        for seed in 0..20u64 {
            let q = random_instance(5, 3, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xbeef);
            let x = random_point(5, &mut rng);
            let g = euclidean_grad(&q, &x).unwrap();
            for i in 0..5 {
                for &dir in &[c64(1.0, 0.0), c64(0.0, 1.0)] {
                    let mut plus = x.as_vector().clone();
                    let mut minus = x.as_vector().clone();
                    plus[i] += dir * h;
                    minus[i] -= dir * h;
                    // off-manifold evaluation of the raw quadratic
                    let f = |v: &DVector<Complex64>| {
                        let ax = q.a_matrix() * v;
                        -(v.dotc(&ax).re) - 2.0 * v.dotc(q.b_vector()).re
                    };
                    let fd = (f(&plus) - f(&minus)) / (2.0 * h);
                    let analytic = (g[i].conj() * dir).re;
                    assert_relative_eq!(fd, analytic, max_relative = 1e-6, epsilon = 1e-9);
                }
            }
        }
    }

    #[test]
    fn riemannian_grad_scalar_examples() {
        let q = toy();
        // x = 1 is the M = 1 optimum: the gradient projects to zero.
        let at_opt = riemannian_grad(&q, &point(&[0.0])).unwrap();
        assert!(at_opt.norm() < 1e-14);

        // x = j: euclidean grad -2(j + 1), projection leaves [-2].
        let at_j = riemannian_grad(&q, &point(&[std::f64::consts::FRAC_PI_2])).unwrap();
        assert_relative_eq!(at_j.components()[0].re, -2.0, epsilon = 1e-12);
        assert!(at_j.components()[0].im.abs() < 1e-12);
        assert!(at_j.tangency_defect() < 1e-12);
    }

    #[test]
    fn riemannian_grad_matches_curve_derivative() {
        // d/dt f(retract(x, u, t)) at t = 0 equals Re(grad^H u).
        let h = 1e-6;
        for seed in 0..100u64 {
            let q = random_instance(6, 4, seed);
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfeed);
            let x = random_point(6, &mut rng);
            let raw = DVector::from_fn(6, |_, _| {
                c64(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            });
            let u = tangent_project(&x, &raw).unwrap();
            if u.norm() < 1e-8 {
                continue;
            }
            let g = riemannian_grad(&q, &x).unwrap();
            let analytic = g.inner(u.components());

            let f = |p: &ManifoldPoint| objective_p2(&q, p.phases()).unwrap();
            // central difference along the retracted curve
            let plus = retract(&x, &u, h).unwrap();
            let minus_dir = TangentVector {
                z: -u.components().clone(),
                base: x.clone(),
            };
            let minus = retract(&x, &minus_dir, h).unwrap();
            let fd = (f(&plus) - f(&minus)) / (2.0 * h);
            let denom = analytic.abs().max(1e-12);
            assert!(
                (fd - analytic).abs() / denom < 1e-5,
                "fd {fd} vs analytic {analytic} (seed {seed})"
            );
        }
    }

    #[test]
    fn transport_is_projection_at_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..100 {
            let x = random_point(5, &mut rng);
            let y = random_point(5, &mut rng);
            let raw = DVector::from_fn(5, |_, _| {
                c64(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                )
            });
            let eta = tangent_project(&x, &raw).unwrap();
            let moved = transport(&eta, &y).unwrap();
            assert!(moved.tangency_defect() < 1e-12);
            // transporting back to the same point changes nothing
            let same = transport(&eta, &x).unwrap();
            for i in 0..5 {
                assert!((same.components()[i] - eta.components()[i]).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn transport_of_zero_is_zero() {
        let x = point(&[0.1, 0.2]);
        let y = point(&[1.0, -1.0]);
        let zero = TangentVector::zero(&x);
        let moved = transport(&zero, &y).unwrap();
        assert!(moved.norm() == 0.0);
    }

    #[test]
    fn retract_zero_step_is_identity() {
        let x = point(&[0.0]);
        let eta = tangent_project(&x, &DVector::from_vec(vec![c64(0.0, 1.0)])).unwrap();
        let back = retract(&x, &eta, 0.0).unwrap();
        assert_eq!(back.as_vector(), x.as_vector());
    }

    #[test]
    fn retract_unit_step_scalar() {
        let x = point(&[0.0]);
        let eta = tangent_project(&x, &DVector::from_vec(vec![c64(0.0, 1.0)])).unwrap();
        let stepped = retract(&x, &eta, 1.0).unwrap();
        let s = 1.0 / 2f64.sqrt();
        assert_relative_eq!(stepped.as_vector()[0].re, s, epsilon = 1e-15);
        assert_relative_eq!(stepped.as_vector()[0].im, s, epsilon = 1e-15);
    }

    #[test]
    fn retract_agrees_with_step_to_first_order() {
        // || retract(x, eta, a) - (x + a eta) || = O(a^2): quartering the
        // step must shrink the defect by roughly 4x each halving.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let x = random_point(6, &mut rng);
        let raw = DVector::from_fn(6, |_, _| {
            c64(
                rng.sample::<f64, _>(StandardNormal),
                rng.sample::<f64, _>(StandardNormal),
            )
        });
        let eta = tangent_project(&x, &raw).unwrap();
        let defect = |a: f64| {
            let r = retract(&x, &eta, a).unwrap();
            let lin = x.as_vector() + eta.components() * Complex64::new(a, 0.0);
            (r.as_vector() - lin).norm()
        };
        let mut a = 0.1;
        let mut prev = defect(a);
        for _ in 0..3 {
            a /= 2.0;
            let next = defect(a);
            assert!(
                next <= prev / 3.0,
                "defect did not shrink quadratically: {prev} -> {next}"
            );
            prev = next;
        }
    }
}
