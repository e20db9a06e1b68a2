//! Angle arithmetic on the flat torus.
//!
//! All angles are stored as `f64` radians normalized to `[0, 2π)`.
//! Comparisons use the crate-wide tolerance [`EPS_ANGLE`] with wraparound,
//! so `2π - 1e-12` and `0.0` compare equal.

use num_complex::Complex64;

/// Full turn.
pub const TAU: f64 = std::f64::consts::TAU;

/// Tolerance for angle comparisons. Codual-line equations are affine in the
/// angles with integer slopes, so rounding error stays within a few ulps of
/// the inputs; `1e-9` is far above that.
pub const EPS_ANGLE: f64 = 1e-9;

/// Normalize to `[0, 2π)`.
pub fn wrap(x: f64) -> f64 {
    let mut y = x % TAU;
    if y < 0.0 {
        y += TAU;
    }
    // `-1e-20 % TAU` is `-0.0`; keep the representative in range.
    if y >= TAU {
        y -= TAU;
    }
    y
}

/// Normalize to `(-π, π]`.
pub fn wrap_signed(x: f64) -> f64 {
    let y = wrap(x);
    if y > std::f64::consts::PI {
        y - TAU
    } else {
        y
    }
}

/// Signed distance between two angles along the circle, in `[0, π]`.
pub fn circle_dist(a: f64, b: f64) -> f64 {
    wrap_signed(a - b).abs()
}

/// Equality of angles modulo 2π, up to [`EPS_ANGLE`].
pub fn angle_eq(a: f64, b: f64) -> bool {
    circle_dist(a, b) <= EPS_ANGLE
}

/// Argument of a nonzero complex number, normalized to `[0, 2π)`.
pub fn arg(z: Complex64) -> f64 {
    wrap(z.arg())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrap_ranges() {
        assert_eq!(wrap(0.0), 0.0);
        assert!((wrap(-0.5) - (TAU - 0.5)).abs() < 1e-15);
        assert!(wrap(TAU) < 1e-15);
        assert_eq!(wrap_signed(std::f64::consts::PI), std::f64::consts::PI);
        assert!(wrap_signed(std::f64::consts::PI + 0.1) < 0.0);
    }

    #[test]
    fn wraparound_equality() {
        assert!(angle_eq(TAU - 1e-12, 0.0));
        assert!(angle_eq(0.0, TAU));
        assert!(!angle_eq(0.0, 1e-3));
        assert!((circle_dist(0.1, TAU - 0.1) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn complex_argument() {
        assert_eq!(arg(Complex64::new(3.0, 0.0)), 0.0);
        assert!((arg(Complex64::new(0.0, -2.0)) - 3.0 * std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}
