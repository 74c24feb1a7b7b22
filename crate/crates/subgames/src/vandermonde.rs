//! Reconstruction of the closed form `a_n = sum_i alpha_i z_i^n + 1/2` by
//! solving the Vandermonde system in the roots over the base window.
//!
//! This is a double-precision validation path. The exact alpha_1 routes live
//! in the convergence module; this one exists to confirm the recurrence and
//! the closed form describe the same sequence.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::recurrence::SequenceRun;
use crate::roots::{nearest_minus_one, ComplexRoot};

/// Condition estimates above this are flagged; Vandermonde matrices in
/// near-unit roots degrade quickly with the degree.
pub const ILL_CONDITION_THRESHOLD: f64 = 1e12;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosedFormCoefficients {
    /// (root, alpha) pairs, in the same order as the input roots.
    pub alphas: Vec<(ComplexRoot, [f64; 2])>,
    /// Max |sum_i alpha_i z_i^n + 1/2 - a_n| over the base window.
    pub residual_norm: f64,
    /// norm_inf(V) * norm_inf(V^{-1}) estimate.
    pub condition_estimate: f64,
    pub ill_conditioned: bool,
    /// Alpha paired with the root nearest -1, the numerical alpha_1 candidate.
    pub alpha_near_minus_one: [f64; 2],
}

impl ClosedFormCoefficients {
    /// Evaluates the reconstructed closed form at index n.
    pub fn reconstruct(&self, n: u64) -> f64 {
        let mut acc = Complex64::new(0.5, 0.0);
        for (root, alpha) in &self.alphas {
            let a = Complex64::new(alpha[0], alpha[1]);
            acc += a * root.value().powu(n as u32);
        }
        acc.re
    }
}

fn norm_inf(m: &DMatrix<Complex64>) -> f64 {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].norm()).sum::<f64>())
        .fold(0.0f64, f64::max)
}

/// Solves the k_max x k_max system  V alpha = (a_n - 1/2)  with V_{n,j} = z_j^n.
pub fn closed_form_coefficients(
    roots: &[ComplexRoot],
    run: &SequenceRun,
) -> Result<ClosedFormCoefficients> {
    let k = roots.len();
    if (run.n_max() as usize) < k.saturating_sub(1) {
        return Err(Error::Precondition(format!(
            "run covers indices 0..{} but the base window needs 0..{}",
            run.n_max(),
            k - 1
        )));
    }
    let mut v = DMatrix::<Complex64>::zeros(k, k);
    for (j, root) in roots.iter().enumerate() {
        let z = root.value();
        let mut p = Complex64::new(1.0, 0.0);
        for n in 0..k {
            v[(n, j)] = p;
            p *= z;
        }
    }
    let rhs = DVector::<Complex64>::from_iterator(
        k,
        (0..k).map(|n| Complex64::new(run.float_at(n as u64) - 0.5, 0.0)),
    );

    let lu = v.clone().lu();
    let alpha = lu
        .solve(&rhs)
        .ok_or_else(|| Error::Precondition("singular Vandermonde system".into()))?;
    let condition_estimate = match v.clone().try_inverse() {
        Some(inv) => norm_inf(&v) * norm_inf(&inv),
        None => f64::INFINITY,
    };

    let alphas: Vec<(ComplexRoot, [f64; 2])> = roots
        .iter()
        .zip(alpha.iter())
        .map(|(r, a)| (*r, [a.re, a.im]))
        .collect();

    let near = nearest_minus_one(roots).unwrap();
    let alpha_near_minus_one = alphas[near].1;

    let out = ClosedFormCoefficients {
        alphas,
        residual_norm: 0.0,
        condition_estimate,
        ill_conditioned: condition_estimate > ILL_CONDITION_THRESHOLD,
        alpha_near_minus_one,
    };
    let residual_norm = (0..k as u64)
        .map(|n| (out.reconstruct(n) - run.float_at(n)).abs())
        .fold(0.0f64, f64::max);
    Ok(ClosedFormCoefficients {
        residual_norm,
        ..out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{eval_sequence, Mode, DEFAULT_BIT_BUDGET};
    use crate::roots::{analyze_roots, DEFAULT_ROOT_TOL, DEFAULT_UNIT_EPS};
    use crate::set::SubtractionSet;

    fn coeffs_for(elems: &[i64], n_max: u64) -> (ClosedFormCoefficients, SequenceRun) {
        let s = SubtractionSet::new(elems).unwrap();
        let analysis = analyze_roots(&s, DEFAULT_ROOT_TOL, DEFAULT_UNIT_EPS).unwrap();
        let run = eval_sequence(&s, n_max, Mode::Exact, DEFAULT_BIT_BUDGET).unwrap();
        let c = closed_form_coefficients(&analysis.roots, &run).unwrap();
        (c, run)
    }

    #[test]
    fn alpha_near_minus_one_for_1_3() {
        let (c, _) = coeffs_for(&[1, 3], 10);
        assert!((c.alpha_near_minus_one[0] + 0.5).abs() < 1e-9);
        assert!(c.alpha_near_minus_one[1].abs() < 1e-9);
    }

    #[test]
    fn reconstruction_3_5_long_range() {
        let (c, run) = coeffs_for(&[3, 5], 200);
        for n in 0..=200u64 {
            assert!(
                (c.reconstruct(n) - run.float_at(n)).abs() < 1e-8,
                "n={n}"
            );
        }
        assert!(c.residual_norm < 1e-10);
    }

    #[test]
    fn t1_roots_are_plus_minus_i() {
        // S={2}: chi = x^2 + 1, roots +-i; reconstruction gives 0,0,1,1,...
        let (c, run) = coeffs_for(&[2], 20);
        for n in 0..=20u64 {
            assert!((c.reconstruct(n) - run.float_at(n)).abs() < 1e-10);
        }
    }

    #[test]
    fn short_run_rejected() {
        let s = SubtractionSet::new(&[3, 5]).unwrap();
        let analysis = analyze_roots(&s, DEFAULT_ROOT_TOL, DEFAULT_UNIT_EPS).unwrap();
        let run = eval_sequence(&s, 2, Mode::Exact, DEFAULT_BIT_BUDGET).unwrap();
        assert!(closed_form_coefficients(&analysis.roots, &run).is_err());
    }
}
