//! Dense complex polynomials and a simultaneous root solver.
//!
//! The solver is an Aberth-Ehrlich iteration started on a circle whose radius
//! is the classical root bound `1 + max |a_k| / |a_n|`. Multiple roots make
//! simultaneous iterations stall at a cluster of perturbed values, so after
//! the sweep converges, clusters are collapsed to their centroid and polished
//! with Newton steps on the matching higher derivative, which sees the
//! multiple root as a simple one.

use crate::complex::ensure_finite;
use crate::tol::{ROOT_CLUSTER_RADIUS, ROOT_ITERATION_CAP, ROOT_STEP_EPS};
use crate::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::TAU;

/// Residual bound every reported root satisfies, relative to coefficient scale.
pub const ROOT_RESIDUAL: f64 = 1e-9;

/// Residuals below this multiple of the evaluation bound count as converged;
/// iterating further only chases rounding noise.
const NOISE_FLOOR: f64 = 1e-14;

/// Polynomial with coefficients stored in ascending degree order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    /// Builds a polynomial from ascending coefficients `a_0, a_1, ...`,
    /// trimming exactly-zero leading terms.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        for &c in &coeffs {
            ensure_finite(c, "coefficient")?;
        }
        let mut p = ComplexPolynomial { coeffs };
        p.trim();
        Ok(p)
    }

    /// `leading * prod (z - r)` over the given roots.
    pub fn from_roots(leading: Complex64, roots: &[Complex64]) -> Self {
        let mut coeffs = vec![leading];
        for &r in roots {
            // multiply by (z - r)
            let mut next = vec![Complex64::ZERO; coeffs.len() + 1];
            for (k, &a) in coeffs.iter().enumerate() {
                next[k + 1] += a;
                next[k] -= a * r;
            }
            coeffs = next;
        }
        let mut p = ComplexPolynomial { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| c.re == 0.0 && c.im == 0.0)
        {
            self.coeffs.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or(Complex64::ZERO)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        ComplexPolynomial { coeffs }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return ComplexPolynomial { coeffs: vec![] };
        }
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        let mut p = ComplexPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
                    - other.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
            })
            .collect();
        let mut p = ComplexPolynomial { coeffs };
        p.trim();
        p
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        let mut p = ComplexPolynomial {
            coeffs: self.coeffs.iter().map(|&c| c * factor).collect(),
        };
        p.trim();
        p
    }

    /// Upper bound on the evaluation magnitude, `sum |a_k| |z|^k`; rounding
    /// noise in `eval` is a small multiple of machine epsilon times this.
    fn eval_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm())
    }

    /// All complex roots, with multiplicity, sorted by real then imaginary part.
    ///
    /// Iteration stops when the largest relative step falls below
    /// [`ROOT_STEP_EPS`] or every residual reaches evaluation noise; the cap of
    /// [`ROOT_ITERATION_CAP`] sweeps signals ill-conditioned input. Every
    /// returned root has `|P(root)| < 1e-9` relative to the coefficient scale.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let n = self
            .degree()
            .ok_or_else(|| Error::Degenerate("zero polynomial has no well-defined roots".into()))?;
        if n == 0 {
            return Err(Error::Domain(
                "constant polynomial has no roots to solve for".into(),
            ));
        }
        if n == 1 {
            return Ok(vec![-self.coeffs[0] / self.coeffs[1]]);
        }

        let lead = self.leading().norm();
        let radius = 1.0
            + self.coeffs[..n]
                .iter()
                .map(|c| c.norm())
                .fold(0.0, f64::max)
                / lead;
        // Irrational angle offset keeps the start set away from real-axis
        // symmetries of real-coefficient inputs.
        let mut z: Vec<Complex64> = (0..n)
            .map(|j| Complex64::from_polar(radius, TAU * (j as f64 + 0.3137515) / n as f64))
            .collect();

        let deriv = self.derivative();
        let mut iterations = 0;
        loop {
            let mut max_step = 0.0_f64;
            let mut all_noise = true;
            for j in 0..n {
                let pj = self.eval(z[j]);
                if pj.norm() <= NOISE_FLOOR * self.eval_bound(z[j]) {
                    continue;
                }
                all_noise = false;
                let dj = deriv.eval(z[j]);
                let newton = if dj.norm() > 0.0 {
                    pj / dj
                } else {
                    // critical point of P; nudge off it
                    Complex64::new(1e-8 * (1.0 + z[j].norm()), 1e-8)
                };
                let mut repulsion = Complex64::ZERO;
                for k in 0..n {
                    if k != j {
                        let diff = z[j] - z[k];
                        if diff.norm() > 1e-300 {
                            repulsion += diff.inv();
                        }
                    }
                }
                let denom = Complex64::ONE - newton * repulsion;
                let step = if denom.norm() > 1e-30 {
                    newton / denom
                } else {
                    newton
                };
                z[j] -= step;
                max_step = max_step.max(step.norm() / z[j].norm().max(1.0));
            }
            iterations += 1;
            if all_noise || max_step < ROOT_STEP_EPS {
                break;
            }
            if iterations >= ROOT_ITERATION_CAP {
                return Err(Error::Convergence {
                    iterations: ROOT_ITERATION_CAP,
                });
            }
        }

        self.collapse_clusters(&mut z);

        let scale = self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        for &root in &z {
            let bound = scale * root.norm().max(1.0).powi(n as i32);
            if !root.is_finite() || self.eval(root).norm() >= ROOT_RESIDUAL * bound {
                return Err(Error::Convergence { iterations });
            }
        }
        z.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        Ok(z)
    }

    /// Replaces each cluster of stalled near-equal roots by one polished value
    /// repeated with the cluster's multiplicity. An m-fold root of P is a
    /// simple root of the (m-1)-th derivative, where Newton converges
    /// quadratically again.
    fn collapse_clusters(&self, roots: &mut [Complex64]) {
        let n = roots.len();
        let mut cluster = (0..n).collect::<Vec<_>>();
        for i in 0..n {
            for j in (i + 1)..n {
                let tol = ROOT_CLUSTER_RADIUS * roots[i].norm().max(1.0);
                if (roots[i] - roots[j]).norm() < tol {
                    let (a, b) = (find(&mut cluster, i), find(&mut cluster, j));
                    if a != b {
                        cluster[a] = b;
                    }
                }
            }
        }
        for rep in 0..n {
            let members: Vec<usize> = (0..n).filter(|&i| find(&mut cluster, i) == find(&mut cluster, rep)).collect();
            if members.len() < 2 || members[0] != rep {
                continue;
            }
            let m = members.len();
            let centroid = members.iter().map(|&i| roots[i]).sum::<Complex64>() / m as f64;
            if let Some(polished) = self.polish_multiple(centroid, m) {
                for &i in &members {
                    roots[i] = polished;
                }
            }
        }
    }

    fn polish_multiple(&self, start: Complex64, multiplicity: usize) -> Option<Complex64> {
        let p = self.nth_derivative(multiplicity - 1);
        let dp = p.derivative();
        let mut z = start;
        for _ in 0..60 {
            let d = dp.eval(z);
            if d.norm() == 0.0 {
                return None;
            }
            let step = p.eval(z) / d;
            z -= step;
            // polishing must stay local to the cluster it came from
            if (z - start).norm() > 8.0 * ROOT_CLUSTER_RADIUS * start.norm().max(1.0) {
                return None;
            }
            if step.norm() <= 1e-14 * z.norm().max(1.0) {
                return Some(z);
            }
        }
        None
    }
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}
