//! Semi-implicit step for the curvature PDE in the tangent-angle parametrisation:
//! `k_t = σ₁k²k_θθ + σ₁k³ + σ₂k²`.
//!
//! The diffusion coefficient `σ₁k²` is frozen at the old level and `k_θθ` is
//! taken implicitly (one periodic tridiagonal solve); the reaction terms are
//! explicit. The resulting matrix is an M-matrix, so the grid minimum of `k`
//! cannot decrease.

use crate::error::{invalid, FlowError, Result};
use crate::flow::FlowParams;
use crate::profile::AngleProfile;
use crate::tridiag::solve_cyclic;

pub fn step_theta(profile: &AngleProfile, params: &FlowParams, dt: f64) -> Result<AngleProfile> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(invalid(format!("dt must be positive, got {dt}")));
    }
    let k = profile.samples();
    let m = k.len();
    let d2 = profile.spacing().powi(2);
    let mut lower = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut upper = vec![0.0; m];
    let mut rhs = vec![0.0; m];
    for j in 0..m {
        let kj = k[j];
        let coupling = dt * params.sigma1 * kj * kj / d2;
        lower[j] = -coupling;
        upper[j] = -coupling;
        diag[j] = 1.0 + 2.0 * coupling;
        rhs[j] = kj + dt * kj * kj * (params.sigma1 * kj + params.sigma2);
    }
    let next = solve_cyclic(&lower, &diag, &upper, &rhs).map_err(|e| FlowError::StepFailure {
        halvings: 0,
        reason: e.to_string(),
    })?;
    AngleProfile::new(next).map_err(|e| FlowError::StepFailure {
        halvings: 0,
        reason: e.to_string(),
    })
}

/// Step size used by the evolution loop.
pub fn theta_dt(profile: &AngleProfile, params: &FlowParams) -> f64 {
    let kmax = profile.k_max();
    params.theta_step_factor / (params.sigma1 * kmax * kmax + params.sigma2 * kmax)
}
