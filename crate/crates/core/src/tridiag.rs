//! Periodic (cyclic) tridiagonal systems.
//!
//! Row `i` of the system reads
//! `lower[i] * x[i-1] + diag[i] * x[i] + upper[i] * x[i+1] = rhs[i]`
//! with indices taken modulo `n`. The corner couplings are folded in with the
//! Sherman-Morrison correction on top of a Thomas sweep.

use crate::error::{FlowError, Result};

fn thomas(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut beta = diag[0];
    if beta == 0.0 {
        return Err(FlowError::Singular);
    }
    c[0] = upper[0] / beta;
    d[0] = rhs[0] / beta;
    for i in 1..n {
        beta = diag[i] - lower[i] * c[i - 1];
        if beta == 0.0 || !beta.is_finite() {
            return Err(FlowError::Singular);
        }
        c[i] = upper[i] / beta;
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / beta;
    }
    let mut x = d;
    for i in (0..n - 1).rev() {
        x[i] -= c[i] * x[i + 1];
    }
    Ok(x)
}

/// Solves the cyclic tridiagonal system described in the module docs.
pub fn solve_cyclic(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if lower.len() != n || upper.len() != n || rhs.len() != n {
        return Err(FlowError::InvalidParameter(
            "cyclic system bands must share one length".into(),
        ));
    }
    if n < 3 {
        return Err(FlowError::TooFewSamples { got: n, min: 3 });
    }
    let alpha = upper[n - 1]; // A[n-1][0]
    let beta = lower[0]; // A[0][n-1]
    let gamma = -diag[0];

    let mut b = diag.to_vec();
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;

    let x = thomas(lower, &b, upper, rhs)?;
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(lower, &b, upper, &u)?;

    let denom = 1.0 + z[0] + beta * z[n - 1] / gamma;
    if denom == 0.0 {
        return Err(FlowError::Singular);
    }
    let fact = (x[0] + beta * x[n - 1] / gamma) / denom;
    Ok(x.iter().zip(&z).map(|(xi, zi)| xi - fact * zi).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn apply(lower: &[f64], diag: &[f64], upper: &[f64], x: &[f64]) -> Vec<f64> {
        let n = x.len();
        (0..n)
            .map(|i| {
                lower[i] * x[(i + n - 1) % n] + diag[i] * x[i] + upper[i] * x[(i + 1) % n]
            })
            .collect()
    }

    #[test]
    fn periodic_laplacian_shifted() {
        let n = 10;
        let lower = vec![-1.0; n];
        let upper = vec![-1.0; n];
        let diag = vec![3.0; n];
        let rhs: Vec<f64> = (0..n).map(|i| (i as f64).sin()).collect();
        let x = solve_cyclic(&lower, &diag, &upper, &rhs).unwrap();
        let back = apply(&lower, &diag, &upper, &x);
        for (a, b) in back.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_short_systems() {
        assert!(solve_cyclic(&[1.0; 2], &[4.0; 2], &[1.0; 2], &[1.0; 2]).is_err());
    }

    proptest! {
        #[test]
        fn diagonally_dominant_systems_round_trip(
            n in 3usize..40,
            seed in proptest::collection::vec(-1.0f64..1.0, 160),
        ) {
            let lower: Vec<f64> = (0..n).map(|i| seed[i]).collect();
            let upper: Vec<f64> = (0..n).map(|i| seed[40 + i]).collect();
            let diag: Vec<f64> = (0..n)
                .map(|i| 2.5 + lower[i].abs() + upper[i].abs() + seed[80 + i])
                .collect();
            let rhs: Vec<f64> = (0..n).map(|i| seed[120 + i] * 3.0).collect();
            let x = solve_cyclic(&lower, &diag, &upper, &rhs).unwrap();
            let back = apply(&lower, &diag, &upper, &x);
            for (a, b) in back.iter().zip(&rhs) {
                prop_assert!((a - b).abs() < 1e-10);
            }
        }
    }
}
