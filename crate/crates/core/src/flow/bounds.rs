//! Extinction-time bounds and estimates, the non-convex threshold and the
//! speed bounds for convex runs.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, FlowError, Result};
use crate::flow::{FlowParams, Termination, Trajectory};

/// `T_max = min{L₀/(2πσ₂), A₀/(2πσ₁)}`; the first term is absent when `σ₂ = 0`.
pub fn maximal_time_upper_bound(length: f64, area: f64, params: &FlowParams) -> Result<f64> {
    if !(length > 0.0 && area > 0.0) {
        return Err(invalid(format!("need L, A > 0, got L = {length}, A = {area}")));
    }
    let by_area = area / (TAU * params.sigma1);
    if params.sigma2 > 0.0 {
        Ok(by_area.min(length / (TAU * params.sigma2)))
    } else {
        Ok(by_area)
    }
}

/// Extinction time extrapolated from the tail of an area-floor run.
///
/// Each record gives `τ_j = t_j + A_j/(2πωσ₁ + σ₂L_j)`, the exact remaining
/// time if `L` were frozen. The leading error is linear in
/// `x_j = σ₂A_jL_j/(2πωσ₁ + σ₂L_j)²`, so a least-squares line `τ = T + c·x`
/// over the last 10% of records is extrapolated to `x = 0`.
pub fn extinction_estimate(traj: &Trajectory) -> Result<f64> {
    if traj.termination != Termination::AreaFloor {
        return Err(FlowError::Unavailable(format!(
            "extinction estimate needs an area_floor run, this one stopped by {}",
            traj.termination
        )));
    }
    let p = &traj.params;
    let n = traj.records.len();
    let tail = (n / 10).max(3).min(n);
    let mut pts = Vec::with_capacity(tail);
    for r in &traj.records[n - tail..] {
        let rate = TAU * r.omega as f64 * p.sigma1 + p.sigma2 * r.length;
        if !(rate > 0.0) {
            return Err(FlowError::Unavailable("area is not decreasing".into()));
        }
        pts.push((p.sigma2 * r.area * r.length / (rate * rate), r.t + r.area / rate));
    }
    let last = pts.last().expect("trajectory has records").1;
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx <= 1e-30 * mx.abs().max(1e-300) || pts.len() < 3 {
        return Ok(last);
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Ok(my - sxy / sxx * mx)
}

/// Right-hand side of the non-convex smallness condition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdBound {
    /// Bound on `√L‖k_s‖₂`.
    pub bound: f64,
    /// Bound on `L‖k_s‖₂²` (the square of `bound`).
    pub squared: f64,
}

impl ThresholdBound {
    /// Whether a curve with threshold functional `√L‖k_s‖₂ = value` satisfies the condition.
    pub fn holds(&self, value: f64) -> bool {
        value <= self.bound
    }

    pub fn holds_squared(&self, l_ks2: f64) -> bool {
        l_ks2 <= self.squared
    }
}

/// `(1/14σ₁)(√(25σ₂² + 14σ₁(2-α)/T_max) - 5σ₂)`.
pub fn nonconvex_threshold(params: &FlowParams, t_max: f64, alpha: f64) -> Result<ThresholdBound> {
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(invalid(format!("alpha must lie in (0, 2), got {alpha}")));
    }
    if !(t_max > 0.0) {
        return Err(invalid(format!("T_max must be positive, got {t_max}")));
    }
    let (s1, s2) = (params.sigma1, params.sigma2);
    let root = (25.0 * s2 * s2 + 14.0 * s1 * (2.0 - alpha) / t_max).sqrt();
    let bound = (root - 5.0 * s2) / (14.0 * s1);
    Ok(ThresholdBound {
        bound,
        squared: bound * bound,
    })
}

/// Worst margins of the speed bounds over the snapshots of a convex run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpeedBoundReport {
    /// `M = sup(F² + F_θ²)^{1/2}` at `t = 0`.
    pub m: f64,
    /// `M₁ = max{2πM, 2π + 1/2π}`.
    pub m1: f64,
    /// `min_t [M₁(1 + ∫|F|dθ) - F_max]`.
    pub global_margin: f64,
    /// `min_t min_{|θ-θ*| ≤ 1/4π} [2F(θ) + M/2π - F_max]`.
    pub window_margin: f64,
    pub snapshots_checked: usize,
}

impl SpeedBoundReport {
    pub fn holds(&self) -> bool {
        self.global_margin >= 0.0 && self.window_margin >= 0.0
    }
}

pub fn speed_bounds(traj: &Trajectory) -> Result<SpeedBoundReport> {
    let p = &traj.params;
    let samples = |s: &crate::flow::State| match s {
        crate::flow::State::Curve(c) => s.to_profile(c.len()),
        crate::flow::State::Profile { profile, .. } => Ok(profile.clone()),
    };
    let speeds = |prof: &crate::profile::AngleProfile| -> Vec<f64> {
        prof.samples().iter().map(|&k| p.speed(k)).collect()
    };
    let first = samples(&traj.initial().state)?;
    let f0 = speeds(&first);
    let m0 = f0.len();
    let d = first.spacing();
    let m = (0..m0)
        .map(|j| {
            let ft = (f0[(j + 1) % m0] - f0[(j + m0 - 1) % m0]) / (2.0 * d);
            f0[j] * f0[j] + ft * ft
        })
        .fold(0.0, f64::max)
        .sqrt();
    let m1 = (TAU * m).max(TAU + 1.0 / TAU);
    let mut global_margin = f64::INFINITY;
    let mut window_margin = f64::INFINITY;
    for snap in &traj.snapshots {
        let prof = samples(&snap.state)?;
        let f = speeds(&prof);
        let n = f.len();
        let d = prof.spacing();
        let int_abs = d * f.iter().map(|v| v.abs()).sum::<f64>();
        let (jmax, fmax) = f
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |a, (j, v)| if v > a.1 { (j, v) } else { a });
        global_margin = global_margin.min(m1 * (1.0 + int_abs) - fmax);
        let reach = ((1.0 / (4.0 * PI)) / d).floor() as isize;
        for off in -reach..=reach {
            let j = (jmax as isize + off).rem_euclid(n as isize) as usize;
            window_margin = window_margin.min(2.0 * f[j] + m / TAU - fmax);
        }
    }
    Ok(SpeedBoundReport {
        m,
        m1,
        global_margin,
        window_margin,
        snapshots_checked: traj.snapshots.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flow::{evolve, State};
    use crate::profile::AngleProfile;
    use crate::curve::SampledCurve;
    use crate::vector::Vec2;
    use proptest::prelude::*;

    #[test]
    fn maximal_time_of_circles() {
        let p = FlowParams::new(1.0, 1.0);
        assert!((maximal_time_upper_bound(TAU, PI, &p).unwrap() - 0.5).abs() < 1e-15);
        for lam in [0.1, 3.0, 10.0] {
            let t = maximal_time_upper_bound(lam * TAU, lam * lam * PI, &p).unwrap();
            assert!((t - (lam).min(lam * lam / 2.0)).abs() < 1e-14);
        }
        let csf = FlowParams::new(1.0, 0.0);
        assert_eq!(maximal_time_upper_bound(TAU, PI, &csf).unwrap(), 0.5);
        assert!(maximal_time_upper_bound(0.0, 1.0, &p).is_err());
    }

    #[test]
    fn threshold_value() {
        let b = nonconvex_threshold(&FlowParams::new(1.0, 1.0), 0.5, 1.0).unwrap();
        assert!((b.bound - (53f64.sqrt() - 5.0) / 14.0).abs() < 1e-15);
        assert!((b.bound - 0.162_865).abs() < 1e-6);
        assert!(b.holds(0.0));
        assert!(nonconvex_threshold(&FlowParams::default(), 0.5, 2.0).is_err());
        assert!(nonconvex_threshold(&FlowParams::default(), 0.5, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn threshold_monotonicity(s2 in 0.01f64..5.0, t in 0.01f64..5.0, alpha in 0.05f64..1.95) {
            let b = |s2: f64, t: f64| nonconvex_threshold(&FlowParams::new(1.0, s2), t, alpha).unwrap().bound;
            // ∂/∂σ₂ < 0 and ∂/∂T_max < 0
            prop_assert!(b(s2 * 1.01, t) < b(s2, t));
            prop_assert!(b(s2, t * 0.99) > b(s2, t));
            let tb = nonconvex_threshold(&FlowParams::new(1.0, s2), t, alpha).unwrap();
            prop_assert!((tb.squared - tb.bound * tb.bound).abs() <= 1e-15 * tb.squared.max(1.0));
        }
    }

    #[test]
    fn circle_csf_extinction() {
        let r0: f64 = 1.5;
        let c = SampledCurve::from_fn(256, |t| Vec2::new(r0 * t.cos(), r0 * t.sin())).unwrap();
        let traj = evolve(State::Curve(c), &FlowParams::new(1.0, 0.0)).unwrap();
        let t = traj.t_est.unwrap();
        assert!((t - r0 * r0 / 2.0).abs() < 1e-3, "{t}");
        // with σ₂ = 0 the area bound is attained: T = T_max = R₀²/2σ₁
        let tmax = maximal_time_upper_bound(TAU * r0, PI * r0 * r0, &traj.params).unwrap();
        assert_eq!(tmax, r0 * r0 / 2.0);
        assert!(t <= tmax + 1e-3);
    }

    #[test]
    fn estimate_needs_area_floor() {
        let c = SampledCurve::from_fn(64, |t| Vec2::new(t.cos(), t.sin())).unwrap();
        let params = FlowParams {
            t_cap: Some(0.01),
            ..FlowParams::default()
        };
        let traj = evolve(State::Curve(c), &params).unwrap();
        assert!(matches!(extinction_estimate(&traj), Err(FlowError::Unavailable(_))));
    }

    #[test]
    fn speed_bounds_hold_for_circle_and_oval() {
        let params = FlowParams {
            area_floor_ratio: 1e-2,
            ..FlowParams::new(1.0, 1.0)
        };
        let circle = evolve(State::profile(AngleProfile::from_fn(64, |_| 1.0).unwrap()), &params).unwrap();
        let r = speed_bounds(&circle).unwrap();
        assert!((r.m - 2.0).abs() < 1e-12);
        assert!(r.holds());
        // h = 2 + 0.2cos2θ, 1/k = h + h'' = 2 - 0.6cos2θ
        let oval = AngleProfile::from_fn(128, |t| 1.0 / (2.0 - 0.6 * (2.0 * t).cos())).unwrap();
        let r = speed_bounds(&evolve(State::profile(oval), &params).unwrap()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert!(r.snapshots_checked > 10);
    }
}
