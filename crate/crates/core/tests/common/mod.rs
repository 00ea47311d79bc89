#![allow(dead_code)]

use std::f64::consts::PI;

use proptest::prelude::*;
use qtherm::BlochVector;

/// Any state in the Bloch ball.
pub fn bloch() -> impl Strategy<Value = BlochVector> {
    (0.0..=1.0f64, -1.0..=1.0f64, 0.0..2.0 * PI).prop_map(|(r, cos_polar, azimuth)| {
        let sin_polar = (1.0 - cos_polar * cos_polar).sqrt();
        BlochVector::new(
            r * sin_polar * azimuth.cos(),
            r * sin_polar * azimuth.sin(),
            r * cos_polar,
        )
        .unwrap()
    })
}

/// A state in the x-z plane.
pub fn planar_bloch() -> impl Strategy<Value = BlochVector> {
    (0.0..=1.0f64, 0.0..2.0 * PI).prop_map(|(r, phi)| BlochVector::new(r * phi.cos(), 0.0, r * phi.sin()).unwrap())
}

/// A pure state in the x-z plane.
pub fn pure_planar_bloch() -> impl Strategy<Value = BlochVector> {
    (0.0..2.0 * PI).prop_map(|phi| BlochVector::new(phi.cos(), 0.0, phi.sin()).unwrap())
}

pub fn vec_diff(a: &BlochVector, b: &BlochVector) -> f64 {
    a.to_array()
        .iter()
        .zip(b.to_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
