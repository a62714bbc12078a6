//! Finite Blaschke products and their disk dynamics.
//!
//! A product of degree d is `B(z) = e^{it} prod (z - w_i) / (1 - conj(w_i) z)`
//! with all zeros in the open disk. The unit circle is completely invariant,
//! every boundary fixed point has a real multiplier, and the Denjoy-Wolff
//! point classifies the map as elliptic, hyperbolic or parabolic. The Julia
//! set is either the whole circle or a Cantor subset of it; in the parabolic
//! case the second derivative at the fixed point decides.

use crate::complex::{circle_distance, ensure_finite, ensure_in_open_disk};
use crate::poly::ComplexPolynomial;
use crate::tol::{Tolerances, FIXED_POINT_RESIDUAL, POLE_EPS};
use crate::{Error, Result};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

/// `B(z) = e^{it} prod (z - w_i)/(1 - conj(w_i) z)` with `|w_i| < 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteBlaschkeProduct {
    phase: f64,
    zeros: Vec<Complex64>,
}

/// A solution of `B(z) = z` with its multiplier `B'(z)`.
#[derive(Debug, Clone, Copy)]
pub struct FixedPoint {
    pub location: Complex64,
    pub multiplier: Complex64,
}

/// Denjoy-Wolff trichotomy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynamicsKind {
    /// Attracting fixed point inside the open disk.
    Elliptic,
    /// Boundary fixed point with real multiplier strictly below 1.
    Hyperbolic,
    /// Boundary fixed point with multiplier 1.
    Parabolic,
}

impl DynamicsKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DynamicsKind::Elliptic => "elliptic",
            DynamicsKind::Hyperbolic => "hyperbolic",
            DynamicsKind::Parabolic => "parabolic",
        }
    }
}

/// Classification outcome: the kind, the Denjoy-Wolff point and its multiplier.
#[derive(Debug, Clone, Copy)]
pub struct DynamicsClass {
    pub kind: DynamicsKind,
    pub dw_point: Complex64,
    pub multiplier: Complex64,
}

/// Topology of the Julia set on the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JuliaKind {
    WholeCircle,
    CantorSubset,
}

impl JuliaKind {
    pub fn as_str(self) -> &'static str {
        match self {
            JuliaKind::WholeCircle => "whole-circle",
            JuliaKind::CantorSubset => "cantor",
        }
    }
}

/// Julia dichotomy together with the dynamics it was derived from. The second
/// derivative at the Denjoy-Wolff point is recorded for parabolic maps, where
/// its vanishing is what produces a whole-circle Julia set.
#[derive(Debug, Clone, Copy)]
pub struct JuliaClass {
    pub dynamics: DynamicsClass,
    pub kind: JuliaKind,
    pub second_derivative: Option<Complex64>,
}

impl FiniteBlaschkeProduct {
    /// Builds the product; the phase is normalized to `[0, 2 pi)` and every
    /// zero must lie in the open unit disk.
    pub fn new(phase: f64, zeros: Vec<Complex64>) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::Domain("phase must be finite".into()));
        }
        if zeros.is_empty() {
            return Err(Error::Domain("a Blaschke product needs at least one zero".into()));
        }
        for &w in &zeros {
            ensure_in_open_disk(w, "zero")?;
        }
        Ok(FiniteBlaschkeProduct {
            phase: phase.rem_euclid(TAU),
            zeros,
        })
    }

    /// The unicritical product `((z - w)/(1 - conj(w) z))^d`.
    pub fn unicritical(d: u32, w: Complex64) -> Result<Self> {
        if d < 1 {
            return Err(Error::Domain("degree must be at least 1".into()));
        }
        FiniteBlaschkeProduct::new(0.0, vec![w; d as usize])
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn phase(&self) -> f64 {
        self.phase
    }

    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.phase)
    }

    fn is_unicritical(&self) -> bool {
        self.zeros.iter().all(|&w| w == self.zeros[0])
    }

    /// Evaluates `B(z)`; evaluation at a reflected zero `1/conj(w_i)` is a pole.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        ensure_finite(z, "z")?;
        let mut out = self.rotation();
        for &w in &self.zeros {
            let den = Complex64::ONE - w.conj() * z;
            if den.norm() <= POLE_EPS {
                return Err(Error::Pole { at: z });
            }
            out *= (z - w) / den;
        }
        Ok(out)
    }

    /// First derivative, from the factor-wise product rule
    /// `B' = e^{it} sum_i f_i' prod_{j != i} f_j` with
    /// `f_i'(z) = (1 - |w_i|^2)/(1 - conj(w_i) z)^2`; this is the expanded form
    /// of logarithmic differentiation and stays finite at the zeros of B.
    pub fn derivative(&self, z: Complex64) -> Result<Complex64> {
        let parts = self.factor_parts(z)?;
        let mut sum = Complex64::ZERO;
        for i in 0..parts.len() {
            sum += parts[i].1 * product_except(&parts, &[i]);
        }
        Ok(self.rotation() * sum)
    }

    /// Second derivative, differentiating the product rule once more:
    /// `B'' = e^{it} (sum_i f_i'' prod_{j != i} f_j
    ///               + sum_{i != j} f_i' f_j' prod_{k != i,j} f_k)`.
    pub fn second_derivative(&self, z: Complex64) -> Result<Complex64> {
        let parts = self.factor_parts(z)?;
        let n = parts.len();
        let mut sum = Complex64::ZERO;
        for i in 0..n {
            sum += parts[i].2 * product_except(&parts, &[i]);
            for j in 0..n {
                if j != i {
                    sum += parts[i].1 * parts[j].1 * product_except(&parts, &[i, j]);
                }
            }
        }
        Ok(self.rotation() * sum)
    }

    /// Derivative of order 1 or 2.
    pub fn derivative_of_order(&self, z: Complex64, order: u32) -> Result<Complex64> {
        match order {
            1 => self.derivative(z),
            2 => self.second_derivative(z),
            _ => Err(Error::Domain(format!(
                "derivative order must be 1 or 2, got {order}"
            ))),
        }
    }

    /// Per-factor value and first two derivatives at z.
    fn factor_parts(&self, z: Complex64) -> Result<Vec<(Complex64, Complex64, Complex64)>> {
        ensure_finite(z, "z")?;
        self.zeros
            .iter()
            .map(|&w| {
                let den = Complex64::ONE - w.conj() * z;
                if den.norm() <= POLE_EPS {
                    return Err(Error::Pole { at: z });
                }
                let unit_mass = 1.0 - w.norm_sqr();
                let f = (z - w) / den;
                let fp = unit_mass / (den * den);
                let fpp = 2.0 * w.conj() * unit_mass / (den * den * den);
                Ok((f, fp, fpp))
            })
            .collect()
    }

    /// The polynomial whose roots are the fixed points of B:
    /// `e^{it} prod (z - w_i) - z prod (1 - conj(w_i) z)`.
    pub fn fixed_point_polynomial(&self) -> ComplexPolynomial {
        let numerator = ComplexPolynomial::from_roots(self.rotation(), &self.zeros);
        let mut denominator = ComplexPolynomial::new(vec![Complex64::ONE]).unwrap();
        for &w in &self.zeros {
            let factor = ComplexPolynomial::new(vec![Complex64::ONE, -w.conj()]).unwrap();
            denominator = denominator.mul(&factor);
        }
        // multiply the denominator by z
        let mut shifted = vec![Complex64::ZERO];
        shifted.extend_from_slice(denominator.coeffs());
        let z_denominator = ComplexPolynomial::new(shifted).unwrap();
        numerator.sub(&z_denominator)
    }

    /// All fixed points in the closed unit disk, with multipliers, ordered by
    /// real then imaginary part. Multiple fixed points are repeated.
    pub fn fixed_points(&self) -> Result<Vec<FixedPoint>> {
        self.fixed_points_with(&Tolerances::default())
    }

    /// A few Newton steps on `B(z) - z` evaluated in product form. The root
    /// finder works on the cleared polynomial, which loses accuracy near the
    /// poles of B; the product form keeps high relative accuracy there, so
    /// repelling boundary roots (whose residual is amplified by the
    /// multiplier) regain the lost digits. Roots with slope near 1 are left
    /// alone: they come out of the cluster polish and Newton would divide by
    /// a vanishing `B'(z) - 1`.
    fn polish_fixed_point(&self, root: Complex64) -> Complex64 {
        let mut z = root;
        for _ in 0..3 {
            let Ok(value) = self.eval(z) else { return root };
            let Ok(slope) = self.derivative(z) else { return root };
            let denom = slope - Complex64::ONE;
            if denom.norm() < 1e-4 {
                return z;
            }
            let step = (value - z) / denom;
            if !step.is_finite() || step.norm() > 1e-6 {
                return z;
            }
            z -= step;
        }
        z
    }

    pub fn fixed_points_with(&self, tol: &Tolerances) -> Result<Vec<FixedPoint>> {
        let cleared = self.fixed_point_polynomial();
        let roots = cleared.roots()?;
        let mut out = Vec::new();
        for root in roots {
            if root.norm() > 1.0 + tol.boundary {
                continue;
            }
            let root = self.polish_fixed_point(root);
            // points straddling the circle by rounding are snapped onto it
            let location = if circle_distance(root) <= tol.boundary && root.norm() > 1.0 {
                root / root.norm()
            } else {
                root
            };
            let residual = (self.eval(location)? - location).norm();
            if residual >= FIXED_POINT_RESIDUAL {
                return Err(Error::Convergence { iterations: 0 });
            }
            out.push(FixedPoint {
                location,
                multiplier: self.derivative(location)?,
            });
        }
        if out.is_empty() {
            return Err(Error::AmbiguousClassification(
                "no fixed point found in the closed disk".into(),
            ));
        }
        Ok(out)
    }

    /// Denjoy-Wolff classification: an attracting interior fixed point means
    /// elliptic; otherwise the boundary fixed point with multiplier at most 1
    /// is the Denjoy-Wolff point, hyperbolic below 1 and parabolic at 1.
    /// The verdict is cross-checked by forward iteration from the origin.
    pub fn classify_dynamics(&self, tol: &Tolerances) -> Result<DynamicsClass> {
        let fixed = self.fixed_points_with(tol)?;
        let interior: Vec<&FixedPoint> = fixed
            .iter()
            .filter(|f| f.location.norm() < 1.0 - tol.boundary)
            .collect();
        let attracting: Vec<&FixedPoint> = interior
            .iter()
            .copied()
            .filter(|f| f.multiplier.norm() < 1.0)
            .collect();

        let class = if let Some(&f) = attracting.first() {
            if attracting.len() > 1 {
                return Err(Error::AmbiguousClassification(
                    "more than one attracting interior fixed point".into(),
                ));
            }
            DynamicsClass {
                kind: DynamicsKind::Elliptic,
                dw_point: f.location,
                multiplier: f.multiplier,
            }
        } else {
            let dw = fixed
                .iter()
                .filter(|f| circle_distance(f.location) <= tol.boundary)
                .min_by(|a, b| a.multiplier.re.partial_cmp(&b.multiplier.re).unwrap())
                .ok_or_else(|| {
                    Error::AmbiguousClassification(
                        "no attracting interior point and no boundary fixed point".into(),
                    )
                })?;
            let m = dw.multiplier.re;
            if (m - 1.0).abs() <= tol.parabolic {
                DynamicsClass {
                    kind: DynamicsKind::Parabolic,
                    dw_point: dw.location,
                    multiplier: dw.multiplier,
                }
            } else if m < 1.0 {
                DynamicsClass {
                    kind: DynamicsKind::Hyperbolic,
                    dw_point: dw.location,
                    multiplier: dw.multiplier,
                }
            } else {
                return Err(Error::AmbiguousClassification(format!(
                    "smallest boundary multiplier {m} exceeds 1"
                )));
            }
        };
        self.check_forward_iteration(&class)?;
        Ok(class)
    }

    /// Forward orbits contract toward the Denjoy-Wolff point: the
    /// pseudo-hyperbolic distance to an interior point is non-increasing
    /// (Schwarz-Pick) and the horocycle quotient `|z0 - z|^2 / (1 - |z|^2)`
    /// at a boundary point is non-increasing (Julia's lemma). A violation
    /// beyond rounding slack means the classification picked the wrong point.
    fn check_forward_iteration(&self, class: &DynamicsClass) -> Result<()> {
        let z0 = class.dw_point;
        let mut z = Complex64::ZERO;
        let mut lyapunov = match class.kind {
            DynamicsKind::Elliptic => {
                ((z - z0) / (Complex64::ONE - z0.conj() * z)).norm()
            }
            _ => z0.norm_sqr(),
        };
        for _ in 0..48 {
            z = self.eval(z)?;
            if z.norm_sqr() >= 1.0 - 1e-12 {
                break;
            }
            let next = match class.kind {
                DynamicsKind::Elliptic => {
                    ((z - z0) / (Complex64::ONE - z0.conj() * z)).norm()
                }
                _ => (z0 - z).norm_sqr() / (1.0 - z.norm_sqr()),
            };
            if next > lyapunov * (1.0 + 1e-6) + 1e-9 {
                return Err(Error::AmbiguousClassification(format!(
                    "forward iteration does not contract toward {z0}"
                )));
            }
            lyapunov = next;
        }
        Ok(())
    }

    /// Julia set dichotomy on top of [`classify_dynamics`].
    pub fn julia_classify(&self, tol: &Tolerances) -> Result<JuliaClass> {
        let dynamics = self.classify_dynamics(tol)?;
        Ok(match dynamics.kind {
            DynamicsKind::Elliptic => JuliaClass {
                dynamics,
                kind: JuliaKind::WholeCircle,
                second_derivative: None,
            },
            DynamicsKind::Hyperbolic => JuliaClass {
                dynamics,
                kind: JuliaKind::CantorSubset,
                second_derivative: None,
            },
            DynamicsKind::Parabolic => {
                let b2 = self.second_derivative(dynamics.dw_point)?;
                let kind = if b2.norm() < tol.second_derivative {
                    JuliaKind::WholeCircle
                } else {
                    JuliaKind::CantorSubset
                };
                JuliaClass {
                    dynamics,
                    kind,
                    second_derivative: Some(b2),
                }
            }
        })
    }

    /// The d preimages of `target` (with multiplicity), sorted by real then
    /// imaginary part. For a unicritical product the preimages come from d-th
    /// roots pushed through the inverse disk factor; otherwise from clearing
    /// `B(z) = target` to a polynomial.
    pub fn inverse_images(&self, target: Complex64) -> Result<Vec<Complex64>> {
        ensure_finite(target, "target")?;
        if target.norm() > 1.0 + 1e-12 {
            return Err(Error::Domain(format!(
                "target must lie in the closed unit disk, got |target| = {}",
                target.norm()
            )));
        }
        let d = self.degree();
        let mut images = if self.is_unicritical() {
            let w = self.zeros[0];
            let rotated = target * Complex64::from_polar(1.0, -self.phase);
            if rotated.norm() == 0.0 {
                vec![w; d]
            } else {
                let r = rotated.norm().powf(1.0 / d as f64);
                let base = rotated.arg() / d as f64;
                (0..d)
                    .map(|k| {
                        let zeta = Complex64::from_polar(r, base + TAU * k as f64 / d as f64);
                        (zeta + w) / (Complex64::ONE + w.conj() * zeta)
                    })
                    .collect()
            }
        } else {
            let numerator = ComplexPolynomial::from_roots(self.rotation(), &self.zeros);
            let mut denominator = ComplexPolynomial::new(vec![Complex64::ONE]).unwrap();
            for &w in &self.zeros {
                let factor = ComplexPolynomial::new(vec![Complex64::ONE, -w.conj()]).unwrap();
                denominator = denominator.mul(&factor);
            }
            numerator.sub(&denominator.scaled(target)).roots()?
        };
        if images.len() != d {
            return Err(Error::Degenerate(format!(
                "expected {d} preimages, found {}",
                images.len()
            )));
        }
        for &z in &images {
            if (self.eval(z)? - target).norm() >= 1e-9 {
                return Err(Error::Convergence { iterations: 0 });
            }
        }
        images.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Ok(images)
    }

    /// Samples the Julia set by a seeded random backward orbit: starting from
    /// a repelling boundary fixed point, repeatedly pick one of the d
    /// preimages uniformly, discard a 100-step burn-in and keep `n` points.
    /// Backward orbits of circle points stay on the circle, so each point is
    /// renormalized to unit modulus to strip rounding drift.
    pub fn julia_sample(&self, n: usize, seed: u64, tol: &Tolerances) -> Result<Vec<Complex64>> {
        let fixed = self.fixed_points_with(tol)?;
        let start = fixed
            .iter()
            .filter(|f| {
                circle_distance(f.location) <= tol.boundary
                    && f.multiplier.re > 1.0 + tol.parabolic
            })
            .max_by(|a, b| {
                (a.multiplier.re, a.location.re, a.location.im)
                    .partial_cmp(&(b.multiplier.re, b.location.re, b.location.im))
                    .unwrap()
            })
            .ok_or(Error::NoRepellingFixedPoint)?;

        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut z = start.location / start.location.norm();
        let mut samples = Vec::with_capacity(n);
        for step in 0..(100 + n) {
            let preimages = self.inverse_images(z)?;
            let pick = preimages[rng.random_range(0..preimages.len())];
            z = pick / pick.norm();
            if step >= 100 {
                samples.push(z);
            }
        }
        Ok(samples)
    }
}

fn product_except(parts: &[(Complex64, Complex64, Complex64)], skip: &[usize]) -> Complex64 {
    let mut out = Complex64::ONE;
    for (k, part) in parts.iter().enumerate() {
        if !skip.contains(&k) {
            out *= part.0;
        }
    }
    out
}
