//! One-dimensional minimization over measurement angles.

use std::f64::consts::PI;

/// Coarse grid resolution over `[0, pi)`.
pub const GRID_POINTS: usize = 720;

/// Bracket width at which golden-section refinement stops.
pub const ANGLE_TOLERANCE: f64 = 1e-10;

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a local minimum of `f` on `[a, b]`.
pub fn golden_section<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimizes a `pi`-periodic function of the measurement angle.
///
/// Scans [`GRID_POINTS`] equally spaced angles, then refines around the best
/// one by golden section. Returns the grid angle unless refinement strictly
/// improves on it, so flat objectives yield the smallest grid minimizer
/// (`0` for a constant function). The returned angle is not canonicalized.
pub fn minimize_angle<F>(f: F) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let step = PI / GRID_POINTS as f64;
    let (mut best_theta, mut best) = (0.0, f(0.0));
    for i in 1..GRID_POINTS {
        let theta = i as f64 * step;
        let v = f(theta);
        if v < best {
            best = v;
            best_theta = theta;
        }
    }
    let (theta, v) = golden_section(&f, best_theta - step, best_theta + step, ANGLE_TOLERANCE);
    // Ignore rounding-level "improvements" so exact grid optima stay exact.
    if v < best - 1e-15 {
        (theta, v)
    } else {
        (best_theta, best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let (x, fx) = golden_section(|x| (x - 0.3).powi(2) + 1.0, -2.0, 2.0, 1e-12);
        // Function values resolve the argument only to about sqrt(machine epsilon).
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn angle_minimum_between_grid_points() {
        let target = 1.234_567_891;
        let (theta, v) = minimize_angle(|t| -(2.0 * (t - target)).cos());
        assert!((theta - target).abs() < 1e-8);
        assert!((v + 1.0).abs() < 1e-15);
    }

    #[test]
    fn angle_minimum_picks_global_basin() {
        // Two wells; the deeper one is near 2.5.
        let f = |t: f64| -(-(t - 0.7).powi(2) * 50.0).exp() - 1.5 * (-(t - 2.5).powi(2) * 50.0).exp();
        let (theta, _) = minimize_angle(f);
        assert!((theta - 2.5).abs() < 1e-4);
    }

    #[test]
    fn flat_objective_returns_zero() {
        assert_eq!(minimize_angle(|_| 0.25), (0.0, 0.25));
    }

    #[test]
    fn exact_grid_optimum_is_kept() {
        let target = 90.0 * PI / GRID_POINTS as f64;
        let (theta, _) = minimize_angle(|t| 1.0 - (2.0 * (t - target)).cos().abs());
        assert_eq!(theta, target);
    }
}
