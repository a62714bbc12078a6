//! Numerical tolerances used across the crate.
//!
//! Every threshold that a classification or solver decision depends on lives
//! here, either as a named constant or as a field of [`Tolerances`] when a
//! frontend may want to override it.

/// Denominators at or below this modulus count as poles.
pub const POLE_EPS: f64 = 1e-14;

/// Configurations at or below this scale count as degenerate (coincident
/// points, vanishing pivot).
pub const DEGENERATE_EPS: f64 = 1e-14;

/// Root-iteration step size below which the simultaneous solver stops.
pub const ROOT_STEP_EPS: f64 = 1e-13;

/// Iteration cap for the simultaneous root solver.
pub const ROOT_ITERATION_CAP: u32 = 500;

/// Residual bound a reported fixed point must satisfy, relative to scale.
pub const FIXED_POINT_RESIDUAL: f64 = 1e-9;

/// Roots closer than this are treated as one multiple root and re-polished.
pub const ROOT_CLUSTER_RADIUS: f64 = 1e-4;

/// Sign decisions on imaginary parts below this are reported as "on the curve".
pub const SIDE_EPS: f64 = 1e-12;

/// Number of uniformly spaced samples in the membership polyline.
pub const CURVE_SAMPLES: usize = 1 << 17;

/// Runtime-adjustable tolerances for classification decisions.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// A fixed point z counts as a boundary point when ||z| - 1| is below this.
    pub boundary: f64,
    /// A boundary multiplier within this distance of 1 counts as parabolic.
    pub parabolic: f64,
    /// Parameters within this distance of the curve count as on it (point queries).
    pub band: f64,
    /// A parabolic second derivative below this modulus counts as zero
    /// (whole-circle Julia set).
    pub second_derivative: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            boundary: 1e-8,
            parabolic: 1e-8,
            band: 1e-6,
            second_derivative: 1e-8,
        }
    }
}

impl Tolerances {
    /// Band half-width used when cross-validating rasters rather than single
    /// points; pixels this close to the curve are classified as boundary.
    pub const RASTER_BAND: f64 = 1e-3;

    /// Tolerances with a different curve band, keeping the defaults elsewhere.
    pub fn with_band(band: f64) -> Self {
        Tolerances {
            band,
            ..Tolerances::default()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_ordered() {
        let t = Tolerances::default();
        assert!(POLE_EPS < ROOT_STEP_EPS);
        assert!(ROOT_STEP_EPS < t.boundary);
        assert!(t.boundary <= t.band);
        assert!(t.band < Tolerances::RASTER_BAND);
        assert!(t.parabolic > 0.0 && t.second_derivative > 0.0);
    }
}
