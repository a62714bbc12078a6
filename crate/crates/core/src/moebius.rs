//! Möbius transformations, disk automorphisms and the cross-ratio.

use crate::complex::{ensure_finite, ensure_in_open_disk};
use crate::tol::{DEGENERATE_EPS, POLE_EPS};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Fractional linear map `z -> (a z + b) / (c z + d)` with `ad - bc != 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MoebiusMap {
    /// Builds the map, rejecting non-finite coefficients and determinants that
    /// vanish relative to the coefficient scale.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        for (z, name) in [(a, "a"), (b, "b"), (c, "c"), (d, "d")] {
            ensure_finite(z, name)?;
        }
        let scale = a.norm().max(b.norm()).max(c.norm()).max(d.norm());
        if scale == 0.0 {
            return Err(Error::Degenerate("all coefficients are zero".into()));
        }
        let m = MoebiusMap { a, b, c, d };
        // det scales quadratically in the coefficients, so compare against scale^2.
        if m.determinant().norm() <= DEGENERATE_EPS * scale * scale {
            return Err(Error::Degenerate(format!(
                "determinant {} vanishes relative to coefficient scale {scale}",
                m.determinant()
            )));
        }
        Ok(m)
    }

    /// The identity map.
    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::ONE,
            b: Complex64::ZERO,
            c: Complex64::ZERO,
            d: Complex64::ONE,
        }
    }

    pub fn determinant(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// Evaluates the map; a denominator of modulus at most [`POLE_EPS`] is a pole.
    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        ensure_finite(z, "z")?;
        let den = self.c * z + self.d;
        if den.norm() <= POLE_EPS {
            return Err(Error::Pole { at: z });
        }
        Ok((self.a * z + self.b) / den)
    }

    /// Composition `self(other(z))`, the matrix product of the coefficient matrices.
    pub fn compose(&self, other: &MoebiusMap) -> Self {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }

    /// The inverse map; the determinant is nonzero by construction.
    pub fn inverse(&self) -> Self {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }
}

/// Automorphism of the unit disk, `z -> e^{it} (z - a) / (1 - conj(a) z)`
/// with `|a| < 1`; maps the unit circle onto itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskAutomorphism {
    center: Complex64,
    phase: f64,
}

impl DiskAutomorphism {
    pub fn new(center: Complex64, phase: f64) -> Result<Self> {
        ensure_in_open_disk(center, "center")?;
        if !phase.is_finite() {
            return Err(Error::Domain("phase must be finite".into()));
        }
        Ok(DiskAutomorphism {
            center,
            phase: phase.rem_euclid(TAU),
        })
    }

    /// The factor `z -> (z - a)/(1 - conj(a) z)` without rotation.
    pub fn centered(center: Complex64) -> Result<Self> {
        DiskAutomorphism::new(center, 0.0)
    }

    pub fn center(&self) -> Complex64 {
        self.center
    }

    /// Rotation angle, normalized to `[0, 2 pi)`.
    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn apply(&self, z: Complex64) -> Result<Complex64> {
        self.as_moebius().apply(z)
    }

    pub fn as_moebius(&self) -> MoebiusMap {
        let rot = Complex64::from_polar(1.0, self.phase);
        MoebiusMap {
            a: rot,
            b: -rot * self.center,
            c: -self.center.conj(),
            d: Complex64::ONE,
        }
    }

    /// The inverse automorphism, again in center/phase form.
    pub fn inverse(&self) -> Self {
        DiskAutomorphism {
            center: -self.center * Complex64::from_polar(1.0, self.phase),
            phase: (-self.phase).rem_euclid(TAU),
        }
    }
}

/// Cross-ratio `((z1 - z3)(z2 - z4)) / ((z1 - z4)(z2 - z3))`.
///
/// Invariant under Möbius transformations applied to all four points.
pub fn cross_ratio(z1: Complex64, z2: Complex64, z3: Complex64, z4: Complex64) -> Result<Complex64> {
    for (z, name) in [(z1, "z1"), (z2, "z2"), (z3, "z3"), (z4, "z4")] {
        ensure_finite(z, name)?;
    }
    let scale = z1.norm().max(z2.norm()).max(z3.norm()).max(z4.norm()).max(1.0);
    let num = (z1 - z3) * (z2 - z4);
    let den = (z1 - z4) * (z2 - z3);
    if den.norm() <= DEGENERATE_EPS * scale * scale {
        return Err(Error::Degenerate(
            "cross-ratio denominator vanishes (coincident points)".into(),
        ));
    }
    Ok(num / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn disk_factor_moves_center_to_origin() {
        let p = DiskAutomorphism::centered(c(0.5, 0.0)).unwrap();
        assert!(p.apply(c(0.5, 0.0)).unwrap().norm() < 1e-15);
        assert!((p.apply(c(1.0, 0.0)).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        assert!((p.apply(c(0.8, 0.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn automorphism_preserves_circle() {
        let q = DiskAutomorphism::new(c(0.3, -0.4), 1.1).unwrap();
        for k in 0..16 {
            let z = Complex64::from_polar(1.0, k as f64 * TAU / 16.0);
            let image = q.apply(z).unwrap();
            assert!(
                (image.norm() - 1.0).abs() < 1e-12,
                "|q({z})| = {}",
                image.norm()
            );
        }
    }

    #[test]
    fn compose_with_inverse_is_identity() {
        let m = MoebiusMap::new(c(1.0, 2.0), c(0.5, 0.0), c(0.0, -0.3), c(2.0, 0.0)).unwrap();
        let id = m.compose(&m.inverse());
        for z in [c(0.2, 0.1), c(-0.7, 0.4), c(3.0, -2.0)] {
            assert!((id.apply(z).unwrap() - z).norm() < 1e-12);
        }
        let q = DiskAutomorphism::new(c(0.3, -0.4), 1.1).unwrap();
        for z in [c(0.2, 0.1), c(-0.7, 0.4)] {
            let round = q.inverse().apply(q.apply(z).unwrap()).unwrap();
            assert!((round - z).norm() < 1e-13);
        }
    }

    #[test]
    fn degenerate_determinant_is_rejected() {
        let err = MoebiusMap::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).unwrap_err();
        assert_eq!(err.code(), "degenerate");
    }

    #[test]
    fn apply_reports_pole() {
        let m = MoebiusMap::new(c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap();
        let err = m.apply(c(1.0, 0.0)).unwrap_err();
        assert_eq!(err.code(), "pole");
    }

    #[test]
    fn cross_ratio_of_integers() {
        let v = cross_ratio(c(0.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)).unwrap();
        assert!((v - c(4.0 / 3.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cross_ratio_is_moebius_invariant() {
        let m = MoebiusMap::new(c(0.3, 1.0), c(-0.2, 0.1), c(0.4, 0.0), c(1.0, -0.5)).unwrap();
        let zs = [c(0.1, 0.2), c(-0.5, 0.3), c(0.7, -0.1), c(-0.2, -0.6)];
        let before = cross_ratio(zs[0], zs[1], zs[2], zs[3]).unwrap();
        let im: Vec<_> = zs.iter().map(|&z| m.apply(z).unwrap()).collect();
        let after = cross_ratio(im[0], im[1], im[2], im[3]).unwrap();
        assert!((before - after).norm() < 1e-12);
    }

    #[test]
    fn cross_ratio_rejects_coincident_points() {
        let err = cross_ratio(c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)).unwrap_err();
        assert_eq!(err.code(), "degenerate");
    }
}
