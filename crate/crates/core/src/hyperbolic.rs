//! Hyperbolic (Poincaré) metric on the unit disk.

use crate::complex::ensure_finite;
use crate::{Error, Result};
use num_complex::Complex64;

/// Pseudo-hyperbolic distance `|(z1 - z2) / (1 - conj(z1) z2)|`, in `[0, 1)`.
pub fn pseudo_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    ensure_interior(z1)?;
    ensure_interior(z2)?;
    Ok(((z1 - z2) / (Complex64::ONE - z1.conj() * z2)).norm())
}

/// Hyperbolic distance `log((1 + rho) / (1 - rho))` where `rho` is the
/// pseudo-hyperbolic distance. Invariant under disk automorphisms.
pub fn hyperbolic_distance(z1: Complex64, z2: Complex64) -> Result<f64> {
    let rho = pseudo_distance(z1, z2)?;
    Ok(((1.0 + rho) / (1.0 - rho)).ln())
}

fn ensure_interior(z: Complex64) -> Result<()> {
    ensure_finite(z, "point")?;
    if z.norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "hyperbolic distance needs points inside the open disk, got |{z}| = {}",
            z.norm()
        )))
    }
}
