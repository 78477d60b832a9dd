use num_complex::Complex64;

use crate::error::{Error, Result};

/// Length along a horosphere between two of its points at hyperbolic
/// distance `d`: `2 sinh(d/2)`.
pub fn horosphere_distance(d: f64) -> Result<f64> {
    if d.is_nan() || d < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "distance must be >= 0, got {d}"
        )));
    }
    Ok(2.0 * (d / 2.0).sinh())
}

/// Hyperbolic distance in the upper half-plane,
/// `sinh(d/2) = |z₁ − z₂| / (2 √(Im z₁ Im z₂))`.
pub fn halfplane_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    if !(z1.im > 0.0 && z2.im > 0.0) {
        return Err(Error::InvalidParameter(
            "points must lie in the upper half-plane".into(),
        ));
    }
    let s = (z1 - z2).norm() / (2.0 * (z1.im * z2.im).sqrt());
    Ok(2.0 * s.asinh())
}

/// Integer lower bound `⌊(D⁻¹ n^{C/2} − D n^{−C/2}) / D_S⌋`, clamped at 0, on
/// the word length of `f^n`.
pub fn thb_length_lower_bound(c: f64, d: f64, d_s: f64, n: u64) -> Result<u64> {
    if !(c > 0.0 && c <= 2.0) || d.is_nan() || d <= 1.0 || d_s.is_nan() || d_s <= 0.0 || n == 0 {
        return Err(Error::InvalidParameter(
            "need C in (0, 2], D > 1, D_S > 0, n >= 1".into(),
        ));
    }
    let p = (n as f64).powf(c / 2.0);
    let v = (p / d - d / p) / d_s;
    Ok(if v <= 0.0 { 0 } else { v.floor() as u64 })
}
