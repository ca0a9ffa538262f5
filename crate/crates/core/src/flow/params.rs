use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Flow coefficients plus step-control and stopping policy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlowParams {
    /// Curvature coefficient σ₁ (length²/time).
    pub sigma1: f64,
    /// Constant normal speed σ₂ (length/time).
    pub sigma2: f64,
    /// Fraction of the explicit parabolic limit `min(Δs)²/(2σ₁)` used by the polygon solver.
    pub cfl_factor: f64,
    /// θ-solver step: `dt = theta_step_factor / (σ₁k_max² + σ₂k_max)`.
    pub theta_step_factor: f64,
    /// Polygon solver resamples to equal arclength at the start and every this
    /// many steps (0 disables both).
    pub resample_interval: usize,
    /// Absolute area floor; defaults to `area_floor_ratio · A₀`.
    pub area_floor: Option<f64>,
    pub area_floor_ratio: f64,
    /// Absolute curvature cap; defaults to `k_cap_factor / L₀`.
    pub k_cap: Option<f64>,
    pub k_cap_factor: f64,
    pub t_cap: Option<f64>,
    pub max_halvings: u32,
    /// A snapshot is stored whenever `|log A|` has moved this far since the last one.
    pub snapshot_log_area: f64,
    pub max_steps: usize,
}

impl Default for FlowParams {
    fn default() -> Self {
        Self {
            sigma1: 1.0,
            sigma2: 1.0,
            cfl_factor: 0.5,
            theta_step_factor: 2e-4,
            resample_interval: 50,
            area_floor: None,
            area_floor_ratio: 1e-3,
            k_cap: None,
            k_cap_factor: 1e4,
            t_cap: None,
            max_halvings: 8,
            snapshot_log_area: 0.02,
            max_steps: 20_000_000,
        }
    }
}

impl FlowParams {
    pub fn new(sigma1: f64, sigma2: f64) -> Self {
        Self {
            sigma1,
            sigma2,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma1 > 0.0 && self.sigma1.is_finite()) {
            return Err(invalid(format!("sigma1 must be positive, got {}", self.sigma1)));
        }
        // σ₂ = 0 is admitted as the classical curve-shortening limit.
        if !(self.sigma2 >= 0.0 && self.sigma2.is_finite()) {
            return Err(invalid(format!("sigma2 must be non-negative, got {}", self.sigma2)));
        }
        if !(self.cfl_factor > 0.0 && self.cfl_factor <= 1.0) {
            return Err(invalid(format!("cfl_factor must lie in (0, 1], got {}", self.cfl_factor)));
        }
        if !(self.theta_step_factor > 0.0 && self.theta_step_factor <= 1.0) {
            return Err(invalid("theta_step_factor must lie in (0, 1]"));
        }
        if !(self.area_floor_ratio > 0.0 && self.area_floor_ratio < 1.0) {
            return Err(invalid("area_floor_ratio must lie in (0, 1)"));
        }
        if self.area_floor.is_some_and(|a| !(a > 0.0)) {
            return Err(invalid("area_floor must be positive"));
        }
        if !(self.k_cap_factor > 0.0) || self.k_cap.is_some_and(|k| !(k > 0.0)) {
            return Err(invalid("curvature cap must be positive"));
        }
        if self.t_cap.is_some_and(|t| !(t > 0.0)) {
            return Err(invalid("t_cap must be positive"));
        }
        if !(self.snapshot_log_area > 0.0) {
            return Err(invalid("snapshot_log_area must be positive"));
        }
        Ok(())
    }

    /// Normal speed `F = σ₁k + σ₂`.
    #[inline]
    pub fn speed(&self, k: f64) -> f64 {
        self.sigma1 * k + self.sigma2
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(FlowParams::default().validate().is_ok());
        assert!(FlowParams::new(0.0, 1.0).validate().is_err());
        assert!(FlowParams::new(1.0, -1.0).validate().is_err());
        assert!(FlowParams::new(1.0, 0.0).validate().is_ok());
        let p = FlowParams {
            cfl_factor: 1.5,
            ..FlowParams::default()
        };
        assert!(p.validate().is_err());
    }

    #[test]
    fn partial_json_uses_defaults() {
        let p: FlowParams = serde_json::from_str(r#"{"sigma1": 2.0}"#).unwrap();
        assert_eq!(p.sigma1, 2.0);
        assert_eq!(p.sigma2, 1.0);
        assert_eq!(p.max_halvings, 8);
    }
}
