//! Numerical root localization for the characteristic polynomial, plus the
//! exact checks (root at -1, square-freeness) that must not rely on floats.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{characteristic_poly, square_free_test, IntPolynomial};
use crate::set::SubtractionSet;

pub const DEFAULT_ROOT_TOL: f64 = 1e-12;
pub const DEFAULT_UNIT_EPS: f64 = 1e-8;

const MAX_ITERATIONS: usize = 500;
const STEP_TOL: f64 = 1e-14;
/// Fixed angular offset of the initial guesses; breaks the symmetry of the
/// real-coefficient problem so conjugate iterates do not stall each other.
const ANGLE_OFFSET: f64 = 0.3941;

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
    pub modulus: f64,
    pub residual: f64,
}

impl ComplexRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

/// Summary of the root structure of one characteristic polynomial.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootAnalysis {
    pub roots: Vec<ComplexRoot>,
    pub max_modulus: f64,
    /// Decided by exact integer evaluation of chi_S(-1), never numerically.
    pub has_minus_one: bool,
    pub unit_root_count: usize,
    /// Largest modulus among roots other than the one nearest -1 (when -1 is
    /// an exact root); equals max_modulus otherwise.
    pub spectral_gap: f64,
    /// Decided by the exact gcd(p, p') test, never from numerical clustering.
    pub square_free: bool,
}

fn to_f64_coeffs(p: &IntPolynomial) -> Vec<f64> {
    p.coeffs().iter().map(|c| c.to_f64().unwrap()).collect()
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::zero();
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// Backward-error style relative residual |p(z)| / sum |c_i||z|^i.
fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    let mut scale = 0.0;
    let mut pow = 1.0;
    for &c in coeffs {
        scale += c.abs() * pow;
        pow *= r;
    }
    horner(coeffs, z).norm() / scale.max(1.0)
}

/// Simultaneous Aberth-Ehrlich iteration with Newton polishing.
///
/// Initial guesses are equally spaced on a circle of radius
/// `(|c_0|/|c_d|)^{1/d}` with a fixed angular offset. Deterministic:
/// identical inputs give identical outputs.
pub fn find_roots(p: &IntPolynomial, tol: f64) -> Result<Vec<ComplexRoot>> {
    let Some(degree) = p.degree() else {
        return Err(Error::Precondition("zero polynomial has no roots".into()));
    };
    if degree == 0 {
        return Err(Error::Precondition(
            "constant polynomial has no roots".into(),
        ));
    }

    // Zero roots would put the initial radius at 0; split them off exactly.
    let mut zero_roots = 0usize;
    let mut coeffs = to_f64_coeffs(p);
    while coeffs[0] == 0.0 {
        coeffs.remove(0);
        zero_roots += 1;
    }
    let d = coeffs.len() - 1;
    let deriv: Vec<f64> = coeffs[1..]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (i as f64 + 1.0))
        .collect();

    let mut z: Vec<Complex64> = Vec::with_capacity(d);
    if d > 0 {
        let radius = (coeffs[0].abs() / coeffs[d].abs()).powf(1.0 / d as f64);
        for j in 0..d {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + ANGLE_OFFSET;
            z.push(Complex64::from_polar(radius, theta));
        }

        let mut converged = false;
        for _ in 0..MAX_ITERATIONS {
            let mut max_step: f64 = 0.0;
            for j in 0..d {
                let pv = horner(&coeffs, z[j]);
                let dv = horner(&deriv, z[j]);
                if pv.is_zero() {
                    continue;
                }
                let newton = pv / dv;
                let mut repulsion = Complex64::zero();
                for i in 0..d {
                    if i != j {
                        repulsion += (z[j] - z[i]).inv();
                    }
                }
                let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
                let step = if denom.norm() > 1e-300 {
                    newton / denom
                } else {
                    newton
                };
                z[j] -= step;
                max_step = max_step.max(step.norm());
            }
            if max_step < STEP_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            // Accept on residual alone when the step criterion stalls.
            let worst = z
                .iter()
                .map(|&zi| relative_residual(&coeffs, zi))
                .fold(0.0f64, f64::max);
            if worst > tol {
                return Err(Error::NonConvergence(format!(
                    "worst relative residual {worst:.3e} after {MAX_ITERATIONS} iterations (tol {tol:.1e})"
                )));
            }
        }

        // A few Newton steps to tighten each root.
        for zi in z.iter_mut() {
            for _ in 0..3 {
                let pv = horner(&coeffs, *zi);
                let dv = horner(&deriv, *zi);
                if dv.norm() < 1e-300 {
                    break;
                }
                let step = pv / dv;
                if step.norm() > 1e-2 {
                    break; // polishing would leave the basin
                }
                *zi -= step;
            }
        }
    }

    let mut roots: Vec<ComplexRoot> = Vec::with_capacity(degree);
    for _ in 0..zero_roots {
        roots.push(ComplexRoot {
            re: 0.0,
            im: 0.0,
            modulus: 0.0,
            residual: 0.0,
        });
    }
    for &zi in &z {
        let residual = relative_residual(&coeffs, zi);
        if residual > tol {
            return Err(Error::NonConvergence(format!(
                "root near {zi} has relative residual {residual:.3e} (tol {tol:.1e})"
            )));
        }
        roots.push(ComplexRoot {
            re: zi.re,
            im: zi.im,
            modulus: zi.norm(),
            residual,
        });
    }
    // Deterministic report order: by modulus, then argument.
    roots.sort_by(|a, b| {
        a.modulus
            .total_cmp(&b.modulus)
            .then(a.im.atan2(a.re).total_cmp(&b.im.atan2(b.re)))
    });
    Ok(roots)
}

/// Index of the root nearest -1, if any roots exist.
pub fn nearest_minus_one(roots: &[ComplexRoot]) -> Option<usize> {
    roots
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| {
            let da = (a.value() + 1.0).norm();
            let db = (b.value() + 1.0).norm();
            da.total_cmp(&db)
        })
        .map(|(i, _)| i)
}

/// Combines the numerical roots of chi_S with the exact checks.
pub fn analyze_roots(set: &SubtractionSet, tol: f64, unit_eps: f64) -> Result<RootAnalysis> {
    let chi = characteristic_poly(set);
    let roots = find_roots(&chi, tol)?;
    let has_minus_one = chi.eval(&BigInt::from(-1)).is_zero();
    let square_free = square_free_test(&chi);
    let max_modulus = roots.iter().map(|r| r.modulus).fold(0.0f64, f64::max);
    let unit_root_count = roots
        .iter()
        .filter(|r| (r.modulus - 1.0).abs() <= unit_eps)
        .count();
    let spectral_gap = if has_minus_one {
        let skip = nearest_minus_one(&roots).unwrap();
        roots
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != skip)
            .map(|(_, r)| r.modulus)
            .fold(0.0f64, f64::max)
    } else {
        max_modulus
    };
    Ok(RootAnalysis {
        roots,
        max_modulus,
        has_minus_one,
        unit_root_count,
        spectral_gap,
        square_free,
    })
}
