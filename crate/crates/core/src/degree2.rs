//! Degree-2 Blaschke products `B(z) = ((z-u)/(1-conj(u)z)) ((z-w)/(1-conj(w)z))`.
//!
//! The critical point in the disk is the hyperbolic midpoint c of the zeros,
//! the root with `|c| < 1` of
//! `(conj(wu)(w+u) - conj(w+u)) c^2 + 2 (1-|wu|^2) c + wu conj(w+u) - (w+u) = 0`.
//! Every degree-2 product is conjugate by a disk automorphism to exactly one
//! `B_lambda(z) = ((z-lambda)/(1-conj(lambda)z))^2`, and the invariant lambda
//! is computed in closed form from c and B(c). For real zeros everything
//! collapses to real arithmetic, and the level sets of lambda in the (u, w)
//! square are the graphs of the involution `f_lambda`.

use crate::blaschke::{DynamicsClass, DynamicsKind, FiniteBlaschkeProduct};
use crate::complex::{ensure_finite, ensure_in_open_disk};
use crate::moebius::{DiskAutomorphism, MoebiusMap};
use crate::tol::{Tolerances, DEGENERATE_EPS, POLE_EPS, SIDE_EPS};
use crate::unicritical::{self, Region};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// The product with zero set {u, w}.
pub fn product(u: Complex64, w: Complex64) -> Result<FiniteBlaschkeProduct> {
    FiniteBlaschkeProduct::new(0.0, vec![u, w])
}

/// The critical point of the product inside the disk, which is also the
/// hyperbolic midpoint of u and w.
///
/// The quadratic for c is solved in the rationalized form
/// `c = -conj(A) / (1 - |wu|^2 + sqrt((1-|w|^2)(1-|u|^2) |1 - w conj(u)|^2))`
/// with `A = conj(wu)(w+u) - conj(w+u)`, which avoids cancellation as
/// `w -> -u` and returns exactly 0 there.
pub fn critical_point(u: Complex64, w: Complex64) -> Result<Complex64> {
    ensure_in_open_disk(u, "u")?;
    ensure_in_open_disk(w, "w")?;
    let a = (w * u).conj() * (w + u) - (w + u).conj();
    let radicand =
        (1.0 - w.norm_sqr()) * (1.0 - u.norm_sqr()) * (Complex64::ONE - w * u.conj()).norm_sqr();
    Ok(-a.conj() / (1.0 - (w * u).norm_sqr() + radicand.sqrt()))
}

/// Real-zero specialization of [`critical_point`], in the rationalized form
/// `c = (u + w) / (1 + uw + sqrt((1-u^2)(1-w^2)))`.
pub fn critical_point_real(u: f64, w: f64) -> Result<f64> {
    ensure_real_parameter(u, "u")?;
    ensure_real_parameter(w, "w")?;
    let delta = (1.0 - u * u) * (1.0 - w * w);
    Ok((u + w) / (1.0 + u * w + delta.sqrt()))
}

/// Which side of the hyperbolic geodesic through u and w a point z lies on.
///
/// The disk is rotated so the geodesic becomes the real diameter with u on
/// the positive side: `q(z) = e^{-i arg(p_c(u))} p_c(z)` with `p_c` the
/// centered factor at the midpoint c. Returns +1 or -1 by the sign of
/// `Im q(z)`, or 0 when z is on the geodesic within tolerance.
pub fn geodesic_side(u: Complex64, w: Complex64, z: Complex64) -> Result<i8> {
    if (u - w).norm() <= DEGENERATE_EPS {
        return Err(Error::Degenerate(
            "geodesic through coincident zeros is undefined".into(),
        ));
    }
    ensure_finite(z, "z")?;
    let c = critical_point(u, w)?;
    let p = DiskAutomorphism::centered(c)?;
    let aligned = p.apply(z)? * Complex64::from_polar(1.0, -p.apply(u)?.arg());
    Ok(if aligned.im.abs() < SIDE_EPS {
        0
    } else if aligned.im > 0.0 {
        1
    } else {
        -1
    })
}

/// The conjugacy invariant: the unique parameter with `B` conjugate to
/// `B_lambda`, computed as
/// `lambda = exp(i (pi + 2 arg(1 - conj(c) w) + 2 arg(1 - conj(c) u)
///                + 2 arg(1 - c conj(B(c))))) (B(c) - c)/(1 - conj(c) B(c))`.
pub fn lambda_invariant(u: Complex64, w: Complex64) -> Result<Complex64> {
    let c = critical_point(u, w)?;
    let bc = product(u, w)?.eval(c)?;
    let phase = PI
        + 2.0 * (Complex64::ONE - c.conj() * w).arg()
        + 2.0 * (Complex64::ONE - c.conj() * u).arg()
        + 2.0 * (Complex64::ONE - c * bc.conj()).arg();
    Ok(Complex64::from_polar(1.0, phase) * (bc - c) / (Complex64::ONE - c.conj() * bc))
}

/// Real-zero form of the invariant,
/// `lambda = (w + u - 2wu) / (2 - w - u) = (c - B(c))/(1 - c B(c))`.
pub fn lambda_real(u: f64, w: f64) -> Result<f64> {
    ensure_real_parameter(u, "u")?;
    ensure_real_parameter(w, "w")?;
    Ok((w + u - 2.0 * w * u) / (2.0 - w - u))
}

/// A disk automorphism M with `M(B(z)) = B_lambda(M(z))`, together with the
/// invariant and the verification residual.
#[derive(Debug, Clone)]
pub struct ConjugacyWitness {
    pub lambda: Complex64,
    /// The conjugating map M.
    pub map: MoebiusMap,
    /// `max |M(B(z)) - B_lambda(M(z))|` over the fixed verification samples.
    pub residual: f64,
}

/// Number of disk samples the conjugacy residual is measured on.
const WITNESS_SAMPLES: usize = 50;

fn witness_points() -> impl Iterator<Item = Complex64> {
    // golden-angle spiral, deterministic and well spread over the disk
    (0..WITNESS_SAMPLES).map(|k| {
        let radius = 0.9 * ((k as f64 + 0.5) / WITNESS_SAMPLES as f64).sqrt();
        Complex64::from_polar(radius, TAU * k as f64 * 0.381_966_011_250_105)
    })
}

/// Builds the conjugator `M = R (A^{-1} (p(z)))` where `p = p_c`,
/// `A(z) = e^{i sigma} (z - mu)/(1 - conj(mu) z)` and `R(z) = e^{2 i sigma} z`,
/// with `mu = p(w)^2 p(B(c)) (1 + c conj(p(B(c)))) / (c + p(B(c)))` and
/// `e^{i sigma} = p(B(c)) / (-mu)`. Coincident zeros need no conjugation at
/// all: there `B = B_u` already and M is the identity.
pub fn conjugator(u: Complex64, w: Complex64) -> Result<ConjugacyWitness> {
    ensure_in_open_disk(u, "u")?;
    ensure_in_open_disk(w, "w")?;
    let b = product(u, w)?;
    if (u - w).norm() <= DEGENERATE_EPS {
        let map = MoebiusMap::identity();
        let residual = witness_residual(&b, u, &map)?;
        return Ok(ConjugacyWitness {
            lambda: u,
            map,
            residual,
        });
    }

    let c = critical_point(u, w)?;
    let p = DiskAutomorphism::centered(c)?;
    let v = p.apply(b.eval(c)?)?;
    let pivot = c + v;
    if pivot.norm() <= DEGENERATE_EPS {
        return Err(Error::Degenerate(
            "conjugator pivot c + p(B(c)) vanishes".into(),
        ));
    }
    let pw = p.apply(w)?;
    let mu = pw * pw * v * (Complex64::ONE + c * v.conj()) / pivot;
    let rot = v / -mu;
    let rot = rot / rot.norm();
    let lambda = mu * rot * rot;

    let a_map = MoebiusMap::new(rot, -rot * mu, -mu.conj(), Complex64::ONE)?;
    let r_map = MoebiusMap::new(rot * rot, Complex64::ZERO, Complex64::ZERO, Complex64::ONE)?;
    let map = r_map.compose(&a_map.inverse()).compose(&p.as_moebius());
    let residual = witness_residual(&b, lambda, &map)?;
    Ok(ConjugacyWitness {
        lambda,
        map,
        residual,
    })
}

fn witness_residual(
    b: &FiniteBlaschkeProduct,
    lambda: Complex64,
    map: &MoebiusMap,
) -> Result<f64> {
    if lambda.norm() >= 1.0 {
        return Err(Error::Degenerate(format!(
            "conjugacy target parameter left the disk: |lambda| = {}",
            lambda.norm()
        )));
    }
    let model = FiniteBlaschkeProduct::new(0.0, vec![lambda, lambda])?;
    let mut worst = 0.0_f64;
    for z in witness_points() {
        let lhs = map.apply(b.eval(z)?)?;
        let rhs = model.eval(map.apply(z)?)?;
        worst = worst.max((lhs - rhs).norm());
    }
    Ok(worst)
}

/// The level curve of the invariant through real parameter pairs: for a fixed
/// real `lambda`, `(u, f_lambda(u))` runs over all real-zero pairs with that
/// invariant. It is a strictly decreasing involution with fixed point
/// `f_lambda(lambda) = lambda` and a pole at `u = (1 + lambda)/2`.
pub fn f_lambda(lambda: f64, u: f64) -> Result<f64> {
    ensure_real_parameter(lambda, "lambda")?;
    if !u.is_finite() {
        return Err(Error::Domain("u must be finite".into()));
    }
    let den = 2.0 * u - (1.0 + lambda);
    if den.abs() <= POLE_EPS {
        return Err(Error::Pole {
            at: Complex64::new(u, 0.0),
        });
    }
    Ok(((1.0 + lambda) * u - 2.0 * lambda) / den)
}

/// Classification of the product via its invariant: lambda inside the degree-2
/// parameter curve means elliptic, outside hyperbolic, on it parabolic. The
/// verdict is cross-checked against the dynamics of the product itself;
/// disagreement outside the band is an error. Within the band the reported
/// kind is parabolic while the point data still comes from the computed
/// dynamics.
pub fn classify(u: Complex64, w: Complex64, tol: &Tolerances) -> Result<DynamicsClass> {
    let lambda = lambda_invariant(u, w)?;
    let member = unicritical::membership(2, lambda, tol)?;
    let dynamics = product(u, w)?.classify_dynamics(tol)?;
    match member.region {
        Region::Boundary => Ok(DynamicsClass {
            kind: DynamicsKind::Parabolic,
            ..dynamics
        }),
        Region::Inside | Region::Outside => {
            let expected = if member.region == Region::Inside {
                DynamicsKind::Elliptic
            } else {
                DynamicsKind::Hyperbolic
            };
            if dynamics.kind != expected {
                return Err(Error::InconsistentClassification(format!(
                    "lambda = {lambda} lies {} the curve but the product classifies as {}",
                    member.region.as_str(),
                    dynamics.kind.as_str()
                )));
            }
            Ok(dynamics)
        }
    }
}

fn ensure_real_parameter(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x.abs() >= 1.0 {
        Err(Error::Domain(format!(
            "{what} must be a real number in (-1, 1), got {x}"
        )))
    } else {
        Ok(())
    }
}
