//! Independent root finder (Aberth–Ehrlich simultaneous iteration) used to
//! cross-check every verdict.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::ComplexPolynomial;
use crate::verdict::StabilityVerdict;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleConfig {
    /// A root stops moving once its last correction is below
    /// `tolerance · (1 + |z|)`.
    pub tolerance: f64,
    pub max_iterations: usize,
    /// Residuals must satisfy `|q(z)| ≤ residual_bound · (1 + max|c_j|) · max(1, |z|)^n`.
    pub residual_bound: f64,
    /// Half-width of the band around the imaginary axis treated as undecided.
    pub margin: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            tolerance: 1e-13,
            max_iterations: 500,
            residual_bound: 1e-8,
            margin: 1e-7,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSet {
    #[serde(serialize_with = "serialize_roots")]
    pub roots: Vec<Complex64>,
    pub residuals: Vec<f64>,
    pub converged: bool,
    pub iterations: usize,
}

fn serialize_roots<S: serde::Serializer>(roots: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(roots.len()))?;
    for z in roots {
        seq.serialize_element(&[z.re, z.im])?;
    }
    seq.end()
}

impl RootSet {
    /// Largest real part, or `None` when the iteration did not converge.
    pub fn abscissa(&self) -> Option<f64> {
        self.converged
            .then(|| self.roots.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max))
    }
}

/// Value, derivative and a rounding-error reference `Σ |c_j| |z|^(n-j)`.
fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = coeffs[0];
    let mut dp = Complex64::new(0.0, 0.0);
    let mut e = coeffs[0].norm();
    let az = z.norm();
    for c in &coeffs[1..] {
        dp = dp * z + p;
        p = p * z + c;
        e = e * az + c.norm();
    }
    (p, dp, e)
}

pub fn all_roots(p: &ComplexPolynomial, tol: f64) -> RootSet {
    all_roots_with(
        p,
        &OracleConfig {
            tolerance: tol,
            ..OracleConfig::default()
        },
    )
}

pub fn all_roots_with(p: &ComplexPolynomial, config: &OracleConfig) -> RootSet {
    let coeffs = p.to_complex64();
    let n = p.degree();
    let max_c = p.max_coefficient_norm();
    let radius = 1.0 + max_c;
    let noise = 4.0 * (n as f64 + 1.0) * f64::EPSILON;

    let mut roots: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + 0.4))
        .collect();
    let mut settled = vec![false; n];
    let mut iterations = 0;

    if n == 1 {
        roots[0] = -coeffs[1];
        settled[0] = true;
    }

    while iterations < config.max_iterations && settled.iter().any(|s| !s) {
        iterations += 1;
        for k in 0..n {
            if settled[k] {
                continue;
            }
            let z = roots[k];
            let (pz, dpz, err_ref) = horner(&coeffs, z);
            if pz.norm() <= noise * err_ref {
                settled[k] = true;
                continue;
            }
            let ratio = pz / dpz;
            let repulsion: Complex64 = roots
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, zj)| (z - zj).inv())
                .sum();
            let mut step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if !step.is_finite() {
                step = if ratio.is_finite() {
                    ratio
                } else {
                    // stationary point of q: nudge off it
                    Complex64::from_polar(1e-3 * (1.0 + z.norm()), 0.7 + k as f64)
                };
            }
            // damping: never jump farther than the initial circle
            let len = step.norm();
            if len > radius {
                step *= radius / len;
            }
            roots[k] = z - step;
            if step.norm() <= config.tolerance * (1.0 + roots[k].norm()) {
                settled[k] = true;
            }
        }
    }

    let residuals: Vec<f64> = roots.iter().map(|&z| horner(&coeffs, z).0.norm()).collect();
    let within = roots.iter().zip(&residuals).all(|(z, r)| {
        let bound = config.residual_bound * (1.0 + max_c) * z.norm().max(1.0).powi(n as i32);
        r.is_finite() && *r <= bound
    });
    RootSet {
        converged: within && settled.iter().all(|&s| s),
        roots,
        residuals,
        iterations,
    }
}

/// Maximum real part over the roots.
pub fn spectral_abscissa(p: &ComplexPolynomial) -> Result<f64> {
    all_roots_with(p, &OracleConfig::default())
        .abscissa()
        .ok_or(Error::NoConvergence)
}

/// Hurwitz below `-margin`, not Hurwitz above `+margin`, inconclusive in
/// between or when the iteration fails.
pub fn oracle_verdict(p: &ComplexPolynomial, margin: f64) -> StabilityVerdict {
    match spectral_abscissa(p) {
        Ok(x) if x < -margin => StabilityVerdict::hurwitz(),
        Ok(x) if x > margin => StabilityVerdict::not_hurwitz(None),
        _ => StabilityVerdict::inconclusive(None),
    }
}
