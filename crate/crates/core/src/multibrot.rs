//! Central hyperbolic component of the Multibrot set for `g_c(z) = z^d + c`.
//!
//! The component is the set of parameters c for which g_c has an attracting
//! fixed point. Its boundary is parameterized by the neutral fixed points
//! `z0 = r_d e^{i alpha}` with `r_d = d^{1/(1-d)}`, giving
//! `c = z0 - z0^d = (r_d/d)(d e^{i alpha} - e^{i d alpha})`, an epicycloid
//! with d - 1 cusps (a cardioid for d = 2, a nephroid for d = 3).

use crate::curve::ClosedPolyline;
use crate::poly::ComplexPolynomial;
use crate::raster::{self, Raster, Rect};
use crate::tol::Tolerances;
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

fn ensure_degree(d: u32) -> Result<()> {
    if d < 2 {
        Err(Error::Domain(format!("degree d must be at least 2, got {d}")))
    } else {
        Ok(())
    }
}

/// Modulus `r_d = d^{1/(1-d)}` of the neutral fixed points along the boundary.
pub fn fixed_point_radius(d: u32) -> Result<f64> {
    ensure_degree(d)?;
    let df = d as f64;
    Ok(df.powf(1.0 / (1.0 - df)))
}

/// The neutral fixed point `r_d e^{i alpha}` behind [`boundary_point`].
pub fn boundary_fixed_point(d: u32, alpha: f64) -> Result<Complex64> {
    Ok(Complex64::from_polar(fixed_point_radius(d)?, alpha))
}

/// Boundary parametrization `c(alpha) = (r_d/d)(d e^{i alpha} - e^{i d alpha})`.
///
/// `g_c` fixes `r_d e^{i alpha}` with multiplier of modulus exactly 1 there.
pub fn boundary_point(d: u32, alpha: f64) -> Result<Complex64> {
    ensure_degree(d)?;
    if !alpha.is_finite() {
        return Err(Error::Domain("alpha must be finite".into()));
    }
    let df = d as f64;
    let r = fixed_point_radius(d)?;
    Ok(r / df * (df * Complex64::from_polar(1.0, alpha) - Complex64::from_polar(1.0, df * alpha)))
}

/// Where a parameter sits relative to the central component.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralStatus {
    /// g_c has an attracting fixed point: c is in the open component.
    Attracting,
    /// The best fixed point is neutral within tolerance: c is on the boundary.
    Neutral,
    /// Every fixed point is repelling: c is outside the closed component.
    Outside,
}

impl CentralStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CentralStatus::Attracting => "attracting",
            CentralStatus::Neutral => "neutral",
            CentralStatus::Outside => "outside",
        }
    }
}

/// Classification of c with the minimizing fixed point when one qualifies.
#[derive(Debug, Clone, Copy)]
pub struct CentralComponentResult {
    pub status: CentralStatus,
    pub fixed_point: Option<Complex64>,
    pub multiplier: Option<Complex64>,
}

/// Solves `z^d - z + c = 0` and inspects the fixed point of minimal
/// multiplier modulus `|d z^{d-1}|`: below `1 - tol` the parameter is
/// attracting, within `tol` of 1 neutral, otherwise outside.
pub fn central_classify(d: u32, c: Complex64, tol: &Tolerances) -> Result<CentralComponentResult> {
    ensure_degree(d)?;
    let mut coeffs = vec![Complex64::ZERO; d as usize + 1];
    coeffs[0] = c;
    coeffs[1] = -Complex64::ONE;
    coeffs[d as usize] = Complex64::ONE;
    let fixed_points = ComplexPolynomial::new(coeffs)?.roots()?;

    let df = d as f64;
    let best = fixed_points
        .into_iter()
        .map(|z| (z, df * z.powu(d - 1)))
        .min_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .expect("degree >= 2 polynomial has roots");
    let modulus = best.1.norm();

    let status = if modulus < 1.0 - tol.boundary {
        CentralStatus::Attracting
    } else if (modulus - 1.0).abs() <= tol.boundary {
        CentralStatus::Neutral
    } else {
        CentralStatus::Outside
    };
    Ok(match status {
        CentralStatus::Outside => CentralComponentResult {
            status,
            fixed_point: None,
            multiplier: None,
        },
        _ => CentralComponentResult {
            status,
            fixed_point: Some(best.0),
            multiplier: Some(best.1),
        },
    })
}

/// Uniform boundary samples with their angles.
pub fn boundary_polyline(d: u32, samples: usize) -> Result<ClosedPolyline> {
    ensure_degree(d)?;
    if samples < 3 {
        return Err(Error::Domain("polyline needs at least 3 samples".into()));
    }
    let mut points = Vec::with_capacity(samples);
    let mut params = Vec::with_capacity(samples);
    for k in 0..samples {
        let alpha = TAU * k as f64 / samples as f64;
        points.push(boundary_point(d, alpha)?);
        params.push(alpha);
    }
    ClosedPolyline::new(points, params)
}

/// Per-pixel [`central_classify`] over a rectangle.
pub fn component_raster(
    d: u32,
    rect: Rect,
    width: usize,
    height: usize,
    tol: &Tolerances,
) -> Result<Raster<CentralStatus>> {
    ensure_degree(d)?;
    raster::map_grid(rect, width, height, |c| {
        central_classify(d, c, tol).map(|r| r.status)
    })
}
