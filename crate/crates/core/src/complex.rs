//! Small helpers shared by the geometric modules.

use crate::{Error, Result};
use num_complex::Complex64;

/// Unit-modulus complex number with argument `theta`.
pub fn unit(theta: f64) -> Complex64 {
    Complex64::from_polar(1.0, theta)
}

/// Rejects NaN and infinite components at public entry points.
pub fn ensure_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} must be finite, got {z}")))
    }
}

/// Rejects parameters on or outside the unit circle.
pub fn ensure_in_open_disk(z: Complex64, what: &str) -> Result<()> {
    ensure_finite(z, what)?;
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{what} must lie in the open unit disk, got |{z}| = {}",
            z.norm()
        )))
    }
}

/// Distance from the unit circle, ||z| - 1|.
pub fn circle_distance(z: Complex64) -> f64 {
    (z.norm() - 1.0).abs()
}
