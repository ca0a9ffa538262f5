//! Explicit normal-velocity step for polygonal curves.

use crate::curve::{CurveGeometry, SampledCurve};
use crate::error::{invalid, FlowError, Result};
use crate::flow::FlowParams;

/// Largest step the explicit scheme accepts: `cfl · min(Δs)² / (2σ₁)`.
pub fn stable_dt(geom: &CurveGeometry, params: &FlowParams) -> f64 {
    let h = geom.min_edge();
    params.cfl_factor * h * h / (2.0 * params.sigma1)
}

/// Moves every vertex by `(σ₁k_i + σ₂) ν_i dt`.
pub fn step_polygon(curve: &SampledCurve, params: &FlowParams, dt: f64) -> Result<SampledCurve> {
    let geom = curve.geometry()?;
    let limit = stable_dt(&geom, params);
    if !(dt > 0.0) || dt > limit * (1.0 + 1e-12) {
        return Err(invalid(format!(
            "dt {dt:e} outside (0, {limit:e}] allowed by the parabolic step limit"
        )));
    }
    displace(curve, &geom, params, dt)
}

pub(crate) fn displace(
    curve: &SampledCurve,
    geom: &CurveGeometry,
    params: &FlowParams,
    dt: f64,
) -> Result<SampledCurve> {
    let points = curve
        .points()
        .iter()
        .zip(geom.curvature.iter().zip(&geom.normals))
        .map(|(p, (k, n))| p + n * (params.speed(*k) * dt))
        .collect();
    let next = SampledCurve::new(points).map_err(|e| FlowError::StepFailure {
        halvings: 0,
        reason: e.to_string(),
    })?;
    Ok(next)
}
