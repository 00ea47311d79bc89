//! Minimal complex 2x2 matrix arithmetic for single-qubit operators.

use std::ops::{Add, Mul};

use num_complex::Complex64;

/// A complex 2x2 matrix in the `{|H>, |V>}` basis, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl Mat2 {
    pub const ZERO: Mat2 = Mat2([[ZERO; 2]; 2]);
    pub const IDENTITY: Mat2 = Mat2([
        [Complex64::new(1.0, 0.0), ZERO],
        [ZERO, Complex64::new(1.0, 0.0)],
    ]);

    pub fn real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2([
            [Complex64::new(a, 0.0), Complex64::new(b, 0.0)],
            [Complex64::new(c, 0.0), Complex64::new(d, 0.0)],
        ])
    }

    pub fn diag(a: f64, d: f64) -> Self {
        Self::real(a, 0.0, 0.0, d)
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Mat2([[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn scale(&self, s: f64) -> Self {
        let mut out = *self;
        out.0.iter_mut().flatten().for_each(|z| *z *= s);
        out
    }

    /// `K rho K^dagger`.
    pub fn sandwich(&self, rho: &Mat2) -> Mat2 {
        *self * *rho * self.adjoint()
    }

    /// Largest absolute entrywise difference.
    pub fn max_abs_diff(&self, other: &Mat2) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;

    fn mul(self, rhs: Mat2) -> Mat2 {
        let b = &rhs.0;
        Mat2(self.0.map(|row| [0, 1].map(|j| row[0] * b[0][j] + row[1] * b[1][j])))
    }
}

impl Add for Mat2 {
    type Output = Mat2;

    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self;
        for (z, w) in out.0.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *z += w;
        }
        out
    }
}
