//! Single-qubit state algebra.
//!
//! States are carried as Bloch vectors; density matrices are used where an
//! operator-sum form is needed. The basis is `{|0> = |H>, |1> = |V>}` with the
//! ground state `|H>` at `-Z` and the excited state `|V>` at `+Z`, so
//! `s_z = rho_VV - rho_HH` and `s_x = 2 Re rho_HV`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Mat2;

/// Numeric slack for state invariants.
pub const EPS: f64 = 1e-12;

/// A qubit state as a real 3-vector inside the unit ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    sx: f64,
    sy: f64,
    sz: f64,
}

impl BlochVector {
    /// `|H>`, the ground state.
    pub const GROUND: BlochVector = BlochVector::raw(0.0, 0.0, -1.0);
    /// `|V>`, the excited state.
    pub const EXCITED: BlochVector = BlochVector::raw(0.0, 0.0, 1.0);
    /// `|D> = (|H> + |V>)/sqrt 2`.
    pub const PLUS_X: BlochVector = BlochVector::raw(1.0, 0.0, 0.0);
    pub const MAXIMALLY_MIXED: BlochVector = BlochVector::raw(0.0, 0.0, 0.0);

    const fn raw(sx: f64, sy: f64, sz: f64) -> Self {
        BlochVector { sx, sy, sz }
    }

    pub fn new(sx: f64, sy: f64, sz: f64) -> Result<Self> {
        let v = BlochVector { sx, sy, sz };
        let norm = v.norm();
        if !norm.is_finite() || norm > 1.0 + EPS {
            return Err(Error::UnphysicalState { norm });
        }
        Ok(v)
    }

    /// Builds a vector already known to be physical, e.g. the image of a
    /// physical state under a channel.
    pub(crate) fn from_trusted(sx: f64, sy: f64, sz: f64) -> Self {
        debug_assert!(sx * sx + sy * sy + sz * sz <= 1.0 + 1e-9);
        BlochVector { sx, sy, sz }
    }

    pub fn sx(&self) -> f64 {
        self.sx
    }

    pub fn sy(&self) -> f64 {
        self.sy
    }

    pub fn sz(&self) -> f64 {
        self.sz
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.sx, self.sy, self.sz]
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &BlochVector) -> f64 {
        self.sx * other.sx + self.sy * other.sy + self.sz * other.sz
    }

    pub fn is_pure(&self) -> bool {
        (self.norm() - 1.0).abs() <= EPS
    }

    /// Fails unless the vector lies in the x-z plane to within `1e-9`.
    pub fn require_planar(&self) -> Result<()> {
        if self.sy.abs() > 1e-9 {
            return Err(Error::OutOfPlane { sy: self.sy });
        }
        Ok(())
    }
}

/// A validated 2x2 density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Mat2);

impl DensityMatrix {
    /// Validates hermiticity, unit trace and positivity, each to within [`EPS`].
    pub fn new(m: Mat2) -> Result<Self> {
        let e = &m.0;
        if (e[0][1] - e[1][0].conj()).norm() > EPS
            || e[0][0].im.abs() > EPS
            || e[1][1].im.abs() > EPS
        {
            return Err(Error::InvalidDensityMatrix("not Hermitian"));
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > EPS || tr.im.abs() > EPS {
            return Err(Error::InvalidDensityMatrix("trace differs from 1"));
        }
        let (lo, _) = hermitian_eigenvalues(&m);
        if lo < -EPS {
            return Err(Error::InvalidDensityMatrix("negative eigenvalue"));
        }
        Ok(DensityMatrix(m))
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> (f64, f64) {
        hermitian_eigenvalues(&self.0)
    }
}

fn hermitian_eigenvalues(m: &Mat2) -> (f64, f64) {
    let a = m.0[0][0].re;
    let d = m.0[1][1].re;
    let b = m.0[0][1];
    let mean = 0.5 * (a + d);
    let radius = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - radius, mean + radius)
}

/// Rank-1 projector `|theta><theta|` with `|theta> = cos(theta)|H> + sin(theta)|V>`.
///
/// `theta` is kept in `[0, pi)` since `|theta>` and `|theta + pi>` give the
/// same projector.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Projector {
    theta: f64,
}

impl Projector {
    /// `|H><H|`.
    pub const H: Projector = Projector { theta: 0.0 };
    /// `|V><V|`.
    pub const V: Projector = Projector { theta: FRAC_PI_2 };
    /// `|D><D|`.
    pub const D: Projector = Projector { theta: std::f64::consts::FRAC_PI_4 };

    pub fn new(theta: f64) -> Self {
        Projector { theta: canonical_angle(theta) }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// The orthogonal projector `1 - |theta><theta|`.
    pub fn complement(&self) -> Projector {
        Projector::new(self.theta + FRAC_PI_2)
    }

    /// Unit Bloch direction of the projected state: `(sin 2theta, 0, -cos 2theta)`.
    pub fn direction(&self) -> [f64; 3] {
        let (s, c) = (2.0 * self.theta).sin_cos();
        [s, 0.0, -c]
    }

    pub fn matrix(&self) -> Mat2 {
        let (s, c) = self.theta.sin_cos();
        Mat2::real(c * c, c * s, c * s, s * s)
    }
}

fn canonical_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(PI);
    // rem_euclid rounds tiny negative inputs up to exactly pi.
    if t >= PI {
        0.0
    } else {
        t
    }
}

/// `rho = (I + r.sigma)/2`.
pub fn bloch_to_density(r: &BlochVector) -> Result<DensityMatrix> {
    let r = BlochVector::new(r.sx, r.sy, r.sz)?;
    let off = Complex64::new(0.5 * r.sx, -0.5 * r.sy);
    Ok(DensityMatrix(Mat2([
        [Complex64::new(0.5 * (1.0 - r.sz), 0.0), off],
        [off.conj(), Complex64::new(0.5 * (1.0 + r.sz), 0.0)],
    ])))
}

pub fn density_to_bloch(rho: &DensityMatrix) -> Result<BlochVector> {
    let m = DensityMatrix::new(rho.0)?.0;
    let off = m.0[0][1];
    BlochVector::new(2.0 * off.re, -2.0 * off.im, m.0[1][1].re - m.0[0][0].re)
}

/// `Tr(rho M) = (1 + r.m)/2` for the projector's Bloch direction `m`.
pub fn measure_prob(state: &BlochVector, m: &Projector) -> f64 {
    let d = m.direction();
    let proj = state.sx * d[0] + state.sy * d[1] + state.sz * d[2];
    (0.5 * (1.0 + proj)).clamp(0.0, 1.0)
}

pub fn euclidean_distance(r1: &BlochVector, r2: &BlochVector) -> f64 {
    let (dx, dy, dz) = (r1.sx - r2.sx, r1.sy - r2.sy, r1.sz - r2.sz);
    (dx * dx + dy * dy + dz * dz).sqrt()
}

/// Minimum equal-prior discrimination error, `1/2 - |r1 - r2|/4`.
pub fn helstrom_pe(r1: &BlochVector, r2: &BlochVector) -> f64 {
    (0.5 - 0.25 * euclidean_distance(r1, r2)).max(0.0)
}

/// Root fidelity `Tr sqrt(sqrt(rho1) rho2 sqrt(rho1))`.
pub fn fidelity(rho1: &DensityMatrix, rho2: &DensityMatrix) -> Result<f64> {
    fidelity_bloch(&density_to_bloch(rho1)?, &density_to_bloch(rho2)?)
}

/// Qubit closed form of [`fidelity`]:
/// `F^2 = (1 + r1.r2 + sqrt((1 - |r1|^2)(1 - |r2|^2)))/2`.
pub fn fidelity_bloch(r1: &BlochVector, r2: &BlochVector) -> Result<f64> {
    let purity_gap = |r: &BlochVector| -> Result<f64> {
        let g = 1.0 - r.dot(r);
        if g < -EPS {
            return Err(Error::UnphysicalState { norm: r.norm() });
        }
        Ok(g.max(0.0))
    };
    let mixed = (purity_gap(r1)? * purity_gap(r2)?).sqrt();
    let f2 = 0.5 * (1.0 + r1.dot(r2) + mixed);
    if f2 < -EPS {
        return Err(Error::OutOfRange { name: "squared fidelity", value: f2 });
    }
    Ok(f2.clamp(0.0, 1.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, SQRT_2};

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn bloch_to_density_examples() {
        let mixed = bloch_to_density(&BlochVector::MAXIMALLY_MIXED).unwrap();
        assert!(mixed.matrix().max_abs_diff(&Mat2::diag(0.5, 0.5)) < EPS);

        let ground = bloch_to_density(&BlochVector::GROUND).unwrap();
        assert!(ground.matrix().max_abs_diff(&Mat2::diag(1.0, 0.0)) < EPS);

        let d = bloch_to_density(&BlochVector::PLUS_X).unwrap();
        assert!(d.matrix().max_abs_diff(&Mat2::real(0.5, 0.5, 0.5, 0.5)) < EPS);
    }

    #[test]
    fn unphysical_vectors_rejected() {
        assert!(matches!(
            BlochVector::new(1.0, 0.0, 0.1),
            Err(Error::UnphysicalState { .. })
        ));
        assert!(BlochVector::new(f64::NAN, 0.0, 0.0).is_err());
        // Pure states survive rounding noise.
        assert!(BlochVector::new(FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2).is_ok());
    }

    #[test]
    fn density_to_bloch_examples() {
        let r = density_to_bloch(&DensityMatrix::new(Mat2::diag(0.5, 0.5)).unwrap()).unwrap();
        assert_eq!(r.to_array(), [0.0, 0.0, 0.0]);
        let v = density_to_bloch(&DensityMatrix::new(Mat2::diag(0.0, 1.0)).unwrap()).unwrap();
        assert_eq!(v.to_array(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn invalid_density_matrices_rejected() {
        assert!(DensityMatrix::new(Mat2::diag(0.6, 0.6)).is_err());
        assert!(DensityMatrix::new(Mat2::diag(1.2, -0.2)).is_err());
        assert!(DensityMatrix::new(Mat2::real(0.5, 0.4, 0.1, 0.5)).is_err());
        // Off-diagonal too large for positivity.
        assert!(DensityMatrix::new(Mat2::real(0.5, 0.6, 0.6, 0.5)).is_err());
    }

    #[test]
    fn measure_prob_examples() {
        assert_eq!(measure_prob(&BlochVector::GROUND, &Projector::H), 1.0);
        for theta in [0.0, 0.3, 1.0, 2.9] {
            assert_eq!(measure_prob(&BlochVector::MAXIMALLY_MIXED, &Projector::new(theta)), 0.5);
        }
        assert!(close(measure_prob(&BlochVector::PLUS_X, &Projector::D), 1.0, EPS));
    }

    #[test]
    fn measure_prob_matches_trace_formula() {
        let r = BlochVector::new(0.3, 0.0, -0.5).unwrap();
        let rho = bloch_to_density(&r).unwrap();
        for theta in [0.0, 0.4, 1.3, 2.2] {
            let m = Projector::new(theta);
            let tr = (*rho.matrix() * m.matrix()).trace();
            assert!(close(measure_prob(&r, &m), tr.re, 1e-14));
        }
    }

    #[test]
    fn projector_is_canonical() {
        assert_eq!(Projector::new(PI).theta(), 0.0);
        assert_eq!(Projector::new(-1e-18).theta(), 0.0);
        assert!(close(Projector::new(-FRAC_PI_4).theta(), 3.0 * FRAC_PI_4, 1e-15));
        assert!(close(Projector::H.complement().theta(), FRAC_PI_2, 0.0));
        assert!(close(Projector::V.complement().theta(), 0.0, 0.0));
    }

    #[test]
    fn distances_and_helstrom() {
        let (mixed, ground) = (BlochVector::MAXIMALLY_MIXED, BlochVector::GROUND);
        assert_eq!(euclidean_distance(&mixed, &ground), 1.0);
        assert_eq!(euclidean_distance(&ground, &ground), 0.0);
        assert!(close(euclidean_distance(&ground, &BlochVector::PLUS_X), SQRT_2, 1e-15));

        assert_eq!(helstrom_pe(&mixed, &ground), 0.25);
        assert_eq!(helstrom_pe(&ground, &ground), 0.5);
        let expected = (1.0 - FRAC_1_SQRT_2) / 2.0;
        assert!(close(helstrom_pe(&ground, &BlochVector::PLUS_X), expected, 1e-15));
        assert!(close(expected, 0.146447, 1e-6));
    }

    #[test]
    fn fidelity_examples() {
        let r = BlochVector::new(0.2, 0.1, -0.4).unwrap();
        let rho = bloch_to_density(&r).unwrap();
        assert!(close(fidelity(&rho, &rho).unwrap(), 1.0, 1e-12));

        let h = bloch_to_density(&BlochVector::GROUND).unwrap();
        let v = bloch_to_density(&BlochVector::EXCITED).unwrap();
        assert_eq!(fidelity(&h, &v).unwrap(), 0.0);
    }

    #[test]
    fn fidelity_is_symmetric() {
        let a = BlochVector::new(0.2, 0.0, -0.4).unwrap();
        let b = BlochVector::new(-0.6, 0.0, 0.1).unwrap();
        assert_eq!(fidelity_bloch(&a, &b).unwrap(), fidelity_bloch(&b, &a).unwrap());
    }
}
