//! The unicritical family `B_w(z) = ((z - w)/(1 - conj(w) z))^d` over the
//! parameter disk.
//!
//! The parabolic locus of the family is the epicycloid
//! `gamma_d(theta) = (e^{i d theta} - d e^{i theta}) / (d + 1)`, traversed
//! once for `theta` in `[0, 2 pi)` with `d - 1` cusps. Parameters inside the
//! curve give elliptic products, parameters outside give hyperbolic ones, and
//! the curve itself carries the parabolic parameters with Denjoy-Wolff point
//! `e^{i d theta}`.

use crate::blaschke::{DynamicsClass, DynamicsKind, FiniteBlaschkeProduct};
use crate::complex::{circle_distance, ensure_finite, ensure_in_open_disk, unit};
use crate::curve::{ClosedPolyline, PolylineIndex};
use crate::tol::{Tolerances, CURVE_SAMPLES};
use crate::{Error, Result};
use num_complex::Complex64;
use once_cell::sync::Lazy;
use std::collections::HashMap;
use std::f64::consts::{PI, TAU};
use std::sync::{Arc, Mutex};

/// Epicycloid traced by a point on a circle of radius r rolling on a circle
/// of radius `k r`: `z(theta) = r (e^{i(k+1) theta} - (k+1) e^{i theta})`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Epicycloid {
    r: f64,
    k: u32,
}

impl Epicycloid {
    pub fn new(r: f64, k: u32) -> Result<Self> {
        if !(r.is_finite() && r > 0.0) {
            return Err(Error::Domain(format!("rolling radius must be positive, got {r}")));
        }
        if k < 1 {
            return Err(Error::Domain("cusp count k must be at least 1".into()));
        }
        Ok(Epicycloid { r, k })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    /// Number of cusps.
    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn point(&self, theta: f64) -> Complex64 {
        let k1 = (self.k + 1) as f64;
        self.r * (unit(k1 * theta) - k1 * unit(theta))
    }

    /// Velocity `dz/dtheta`; vanishes exactly at the cusps.
    pub fn velocity(&self, theta: f64) -> Complex64 {
        let k1 = (self.k + 1) as f64;
        self.r * k1 * Complex64::I * (unit(k1 * theta) - unit(theta))
    }

    /// Cusp parameters `2 pi j / k` for `j = 0..k`.
    pub fn cusps(&self) -> Vec<f64> {
        (0..self.k).map(|j| TAU * j as f64 / self.k as f64).collect()
    }
}

/// Degree guard shared by the gamma-curve operations.
fn ensure_degree(d: u32) -> Result<()> {
    if d < 2 {
        Err(Error::Domain(format!("degree d must be at least 2, got {d}")))
    } else {
        Ok(())
    }
}

/// The parameter curve `gamma_d`, an epicycloid with `d - 1` cusps scaled to
/// touch the unit circle.
pub fn gamma_point(d: u32, theta: f64) -> Result<Complex64> {
    ensure_degree(d)?;
    let df = d as f64;
    Ok((unit(df * theta) - df * unit(theta)) / (df + 1.0))
}

/// `d gamma_d / d theta`.
pub fn gamma_velocity(d: u32, theta: f64) -> Result<Complex64> {
    ensure_degree(d)?;
    let df = d as f64;
    Ok(df * Complex64::I * (unit(df * theta) - unit(theta)) / (df + 1.0))
}

/// Cusp angles `2 pi j / (d - 1)`; the cusp values have modulus
/// `(d - 1)/(d + 1)`.
pub fn cusps(d: u32) -> Result<Vec<f64>> {
    ensure_degree(d)?;
    Ok((0..d - 1).map(|j| TAU * j as f64 / (d - 1) as f64).collect())
}

/// The cusp points themselves, `gamma_d(2 pi j / (d - 1))`.
pub fn cusp_values(d: u32) -> Result<Vec<Complex64>> {
    Ok(cusps(d)?
        .into_iter()
        .map(|theta| gamma_point(d, theta).expect("degree already validated"))
        .collect())
}

/// A parabolic parameter with its Denjoy-Wolff point.
#[derive(Debug, Clone, Copy)]
pub struct ParabolicPoint {
    pub w: Complex64,
    pub dw_point: Complex64,
}

/// Parabolic parametrization of the curve: `w = gamma_d(theta)` gives a
/// parabolic product with boundary fixed point `z0 = e^{i d theta}` and
/// multiplier 1. Angles with `(d-1) theta = pi (mod 2 pi)` are excluded; there
/// `|w| = 1` and the product degenerates.
pub fn parabolic_parameter(d: u32, theta: f64) -> Result<ParabolicPoint> {
    ensure_degree(d)?;
    if !theta.is_finite() {
        return Err(Error::Domain("theta must be finite".into()));
    }
    let offset = ((d - 1) as f64 * theta - PI).rem_euclid(TAU);
    if offset.min(TAU - offset) <= 1e-10 {
        return Err(Error::ExcludedPoint { theta });
    }
    Ok(ParabolicPoint {
        w: gamma_point(d, theta)?,
        dw_point: unit(d as f64 * theta),
    })
}

/// Rotates w by a symmetry rotation `e^{-2 pi i j/(d-1)}` of the curve so the
/// argument lands in the fundamental sector `[0, 2 pi/(d-1))`; returns the
/// reduced parameter and the rotation index j.
pub fn sector_reduce(d: u32, w: Complex64) -> Result<(Complex64, u32)> {
    ensure_degree(d)?;
    ensure_finite(w, "w")?;
    let sector = TAU / (d - 1) as f64;
    if w.norm() == 0.0 {
        return Ok((w, 0));
    }
    let arg = w.arg().rem_euclid(TAU);
    let mut j = (arg / sector).floor() as u32;
    if j >= d - 1 {
        j = d - 2;
    }
    let reduced = w * unit(-(j as f64) * sector);
    Ok((reduced, j))
}

/// Boundary multiplier `d (1 - |w|^2) / |1 - conj(w) z0|^2` of `B_w` at a
/// fixed point `z0` on the unit circle.
pub fn boundary_multiplier(d: u32, w: Complex64, z0: Complex64) -> Result<f64> {
    ensure_degree(d)?;
    ensure_in_open_disk(w, "w")?;
    ensure_finite(z0, "z0")?;
    if circle_distance(z0) > 1e-8 {
        return Err(Error::Domain(format!(
            "z0 must lie on the unit circle, got |z0| = {}",
            z0.norm()
        )));
    }
    let den = (Complex64::ONE - w.conj() * z0).norm_sqr();
    Ok(d as f64 * (1.0 - w.norm_sqr()) / den)
}

/// Which side of the curve a parameter lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Inside,
    Boundary,
    Outside,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::Inside => "inside",
            Region::Boundary => "boundary",
            Region::Outside => "outside",
        }
    }
}

/// Membership verdict; `boundary_theta` is the curve parameter nearest to w
/// when the verdict is `Boundary`.
#[derive(Debug, Clone, Copy)]
pub struct MembershipResult {
    pub region: Region,
    pub boundary_theta: Option<f64>,
}

/// Uniform samples of `gamma_d` with their angles.
pub fn gamma_polyline(d: u32, samples: usize) -> Result<ClosedPolyline> {
    ensure_degree(d)?;
    if samples < 3 {
        return Err(Error::Domain("polyline needs at least 3 samples".into()));
    }
    let mut points = Vec::with_capacity(samples);
    let mut params = Vec::with_capacity(samples);
    for k in 0..samples {
        let theta = TAU * k as f64 / samples as f64;
        points.push(gamma_point(d, theta)?);
        params.push(theta);
    }
    ClosedPolyline::new(points, params)
}

static CURVE_CACHE: Lazy<Mutex<HashMap<(u32, usize), Arc<PolylineIndex>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Query index over the gamma_d polyline, built once per (d, samples) and
/// shared read-only.
pub fn curve_index_with(d: u32, samples: usize) -> Result<Arc<PolylineIndex>> {
    ensure_degree(d)?;
    let key = (d, samples);
    let mut cache = CURVE_CACHE.lock().expect("curve cache poisoned");
    if let Some(index) = cache.get(&key) {
        return Ok(Arc::clone(index));
    }
    let index = Arc::new(PolylineIndex::new(gamma_polyline(d, samples)?));
    cache.insert(key, Arc::clone(&index));
    Ok(index)
}

/// Curve index at the default sampling density.
pub fn curve_index(d: u32) -> Result<Arc<PolylineIndex>> {
    curve_index_with(d, CURVE_SAMPLES)
}

/// Decides whether w lies inside, on, or outside `gamma_d` by winding number
/// against the cached polyline; within the band the nearest curve angle is
/// reported.
pub fn membership(d: u32, w: Complex64, tol: &Tolerances) -> Result<MembershipResult> {
    ensure_degree(d)?;
    ensure_in_open_disk(w, "w")?;
    let index = curve_index(d)?;
    if let Some(hit) = index.nearest_within(w, tol.band) {
        return Ok(MembershipResult {
            region: Region::Boundary,
            boundary_theta: Some(hit.param),
        });
    }
    let region = if index.winding_number(w) != 0 {
        Region::Inside
    } else {
        Region::Outside
    };
    Ok(MembershipResult {
        region,
        boundary_theta: None,
    })
}

/// The unicritical product for parameter w.
pub fn product(d: u32, w: Complex64) -> Result<FiniteBlaschkeProduct> {
    ensure_degree(d)?;
    ensure_in_open_disk(w, "w")?;
    FiniteBlaschkeProduct::unicritical(d, w)
}

/// Classifies `B_w` and cross-checks the dynamics against curve membership.
///
/// Parameters inside the curve must come out elliptic and parameters outside
/// hyperbolic; a mismatch outside the band raises
/// [`Error::InconsistentClassification`]. Within the band the curve wins: the
/// verdict is parabolic with the Denjoy-Wolff point `e^{i d theta}` taken from
/// the nearest curve angle, and the multiplier is evaluated there.
pub fn classify(d: u32, w: Complex64, tol: &Tolerances) -> Result<DynamicsClass> {
    let member = membership(d, w, tol)?;
    if member.region == Region::Boundary {
        let theta = member.boundary_theta.expect("boundary verdict carries theta");
        let dw_point = unit(d as f64 * theta);
        let multiplier = product(d, w)?.derivative(dw_point)?;
        return Ok(DynamicsClass {
            kind: DynamicsKind::Parabolic,
            dw_point,
            multiplier,
        });
    }
    let class = product(d, w)?.classify_dynamics(tol)?;
    let expected = match member.region {
        Region::Inside => DynamicsKind::Elliptic,
        Region::Outside => DynamicsKind::Hyperbolic,
        Region::Boundary => unreachable!(),
    };
    if class.kind != expected {
        return Err(Error::InconsistentClassification(format!(
            "membership of w = {w} says {} but the dynamics came out {}",
            expected.as_str(),
            class.kind.as_str()
        )));
    }
    Ok(class)
}
