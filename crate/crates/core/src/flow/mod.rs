//! Time evolution under `∂ₜγ = (σ₁k + σ₂)ν`.
//!
//! Two integrators share one driver: an explicit polygon solver valid for
//! any immersed curve, and a semi-implicit solver for the curvature of a
//! convex curve as a function of its tangent angle.

mod bounds;
mod identities;
mod params;
mod polygon;
mod theta;

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::curve::{CurveGeometry, Roundness, SampledCurve};
use crate::error::{FlowError, Result};
use crate::profile::AngleProfile;
use crate::vector::Vec2;

pub use bounds::{
    extinction_estimate, maximal_time_upper_bound, nonconvex_threshold, speed_bounds,
    SpeedBoundReport, ThresholdBound,
};
pub use identities::{central_difference, exact_rates, verify_identities, verify_identities_between, IdentityReport};
pub use params::FlowParams;
pub use polygon::{stable_dt, step_polygon};
pub use theta::{step_theta, theta_dt};

/// Evolving state: a polygon, or a convex curve given by its angle profile
/// together with its Steiner point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum State {
    Curve(SampledCurve),
    Profile { profile: AngleProfile, center: Vec2 },
}

impl State {
    pub fn profile(profile: AngleProfile) -> Self {
        State::Profile {
            profile,
            center: Vec2::zeros(),
        }
    }

    pub fn length(&self) -> f64 {
        match self {
            State::Curve(c) => c.length(),
            State::Profile { profile, .. } => profile.length(),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            State::Curve(c) => c.area(),
            State::Profile { profile, .. } => profile.area(),
        }
    }

    /// Polygon representation; profiles are rebuilt from their support function.
    pub fn to_curve(&self) -> Result<SampledCurve> {
        match self {
            State::Curve(c) => Ok(c.clone()),
            State::Profile { profile, center } => profile.to_curve(*center),
        }
    }

    /// Angle-profile representation; polygons must be convex.
    pub fn to_profile(&self, samples: usize) -> Result<AngleProfile> {
        match self {
            State::Curve(c) => c.angle_profile(samples),
            State::Profile { profile, .. } => Ok(profile.clone()),
        }
    }

    pub fn record(&self, t: f64, params: &FlowParams) -> Result<DiagnosticsRecord> {
        match self {
            State::Curve(c) => Ok(DiagnosticsRecord::from_geometry(t, &c.geometry()?, params)),
            State::Profile { profile, .. } => Ok(DiagnosticsRecord::from_profile(t, profile, params)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Snapshot {
    pub t: f64,
    pub state: State,
}

/// Per-step diagnostics. The serialised form carries the scalar fields only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "A")]
    pub area: f64,
    pub omega: i64,
    #[serde(rename = "E")]
    pub energy: f64,
    pub k_min: f64,
    pub k_max: f64,
    pub int_k2: f64,
    #[serde(rename = "int_F2")]
    pub int_f2: f64,
    pub ks_norm2: f64,
    pub entropy: Option<f64>,
    #[serde(skip)]
    pub median_k: Option<f64>,
    #[serde(skip)]
    pub roundness: Option<Roundness>,
    /// The state was resampled after the step that produced this record.
    #[serde(skip)]
    pub resampled: bool,
}

impl DiagnosticsRecord {
    pub fn from_geometry(t: f64, g: &CurveGeometry, params: &FlowParams) -> Self {
        let convex = g.is_convex();
        Self {
            t,
            length: g.length,
            area: g.area,
            omega: g.winding,
            energy: params.sigma1 * g.length + params.sigma2 * g.area,
            k_min: g.k_min(),
            k_max: g.k_max(),
            int_k2: g.int_k2(),
            int_f2: g.int_f2(params.sigma1, params.sigma2),
            ks_norm2: g.ks_norm2(),
            entropy: if convex { g.entropy() } else { None },
            median_k: if convex { g.median_curvature() } else { None },
            roundness: g.roundness().ok(),
            resampled: false,
        }
    }

    pub fn from_profile(t: f64, p: &AngleProfile, params: &FlowParams) -> Self {
        let length = p.length();
        let area = p.area();
        let roundness = (area > 0.0).then(|| Roundness {
            curvature_ratio: p.k_max() / p.k_min(),
            isoperimetric_ratio: length * length / (2.0 * TAU * area),
        });
        Self {
            t,
            length,
            area,
            omega: 1,
            energy: params.sigma1 * length + params.sigma2 * area,
            k_min: p.k_min(),
            k_max: p.k_max(),
            int_k2: p.int_k2(),
            int_f2: p.int_f2(params.sigma1, params.sigma2),
            ks_norm2: p.ks_norm2(),
            entropy: Some(p.entropy()),
            median_k: Some(p.median_curvature()),
            roundness,
            resampled: false,
        }
    }

    /// `√L · ‖k_s‖₂`, the quantity compared against the non-convex threshold.
    pub fn threshold_functional(&self) -> f64 {
        (self.length * self.ks_norm2).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    AreaFloor,
    KCap,
    TCap,
    StepFailure,
}

impl std::fmt::Display for Termination {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Termination::AreaFloor => "area_floor",
            Termination::KCap => "k_cap",
            Termination::TCap => "t_cap",
            Termination::StepFailure => "step_failure",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub params: FlowParams,
    pub snapshots: Vec<Snapshot>,
    pub records: Vec<DiagnosticsRecord>,
    pub termination: Termination,
    pub t_est: Option<f64>,
    /// Thresholds actually used for this run.
    pub area_floor: f64,
    pub k_cap: f64,
    pub steps: usize,
}

impl Trajectory {
    pub fn initial(&self) -> &Snapshot {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &Snapshot {
        self.snapshots.last().expect("trajectory has at least one snapshot")
    }

    pub fn final_time(&self) -> f64 {
        self.records.last().map_or(0.0, |r| r.t)
    }

    /// Records as JSON lines.
    pub fn records_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(r).expect("records serialise"));
            out.push('\n');
        }
        out
    }

    /// Snapshot nearest to `t`.
    pub fn snapshot_near(&self, t: f64) -> &Snapshot {
        self.snapshots
            .iter()
            .min_by(|a, b| (a.t - t).abs().total_cmp(&(b.t - t).abs()))
            .expect("trajectory has at least one snapshot")
    }

    /// Last snapshot taken at or before `t`.
    pub fn snapshot_before(&self, t: f64) -> &Snapshot {
        self.snapshots
            .iter()
            .rev()
            .find(|s| s.t <= t)
            .unwrap_or_else(|| self.initial())
    }
}

/// Parses JSON-lines records.
pub fn parse_records(text: &str) -> Result<Vec<DiagnosticsRecord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| FlowError::Parse(e.to_string())))
        .collect()
}

struct Recorder {
    snapshots: Vec<Snapshot>,
    records: Vec<DiagnosticsRecord>,
    last_snapshot_log_area: f64,
    log_area_step: f64,
}

impl Recorder {
    fn push(&mut self, record: DiagnosticsRecord, state: impl FnOnce() -> State) {
        let la = record.area.max(f64::MIN_POSITIVE).ln();
        if self.snapshots.is_empty() || (la - self.last_snapshot_log_area).abs() >= self.log_area_step {
            self.snapshots.push(Snapshot { t: record.t, state: state() });
            self.last_snapshot_log_area = la;
        }
        self.records.push(record);
    }

    fn close(&mut self, state: impl FnOnce() -> State) {
        let t = self.records.last().map_or(0.0, |r| r.t);
        if self.snapshots.last().is_none_or(|s| s.t < t) {
            self.snapshots.push(Snapshot { t, state: state() });
        }
    }
}

/// Evolves `initial` until one of the stop conditions fires.
pub fn evolve(initial: State, params: &FlowParams) -> Result<Trajectory> {
    params.validate()?;
    match initial {
        State::Curve(curve) => evolve_polygon(curve, params),
        State::Profile { profile, center } => evolve_theta(profile, center, params),
    }
}

fn thresholds(params: &FlowParams, l0: f64, a0: f64) -> (f64, f64) {
    let floor = params.area_floor.unwrap_or(params.area_floor_ratio * a0.abs());
    let cap = params.k_cap.unwrap_or(params.k_cap_factor / l0);
    (floor, cap)
}

fn stop_reason(r: &DiagnosticsRecord, params: &FlowParams, floor: f64, cap: f64, steps: usize) -> Option<Termination> {
    if r.area.abs() <= floor {
        Some(Termination::AreaFloor)
    } else if r.k_max.abs().max(r.k_min.abs()) >= cap {
        Some(Termination::KCap)
    } else if params.t_cap.is_some_and(|tc| r.t >= tc * (1.0 - 1e-12)) || steps >= params.max_steps {
        Some(Termination::TCap)
    } else {
        None
    }
}

fn evolve_polygon(curve: SampledCurve, params: &FlowParams) -> Result<Trajectory> {
    let mut curve = if params.resample_interval > 0 {
        curve.resample(curve.len())?
    } else {
        curve
    };
    let mut geom = curve.geometry()?;
    let (area_floor, k_cap) = thresholds(params, geom.length, geom.area);
    let omega = geom.winding;
    let n = curve.len();
    let mut rec = Recorder {
        snapshots: Vec::new(),
        records: Vec::new(),
        last_snapshot_log_area: 0.0,
        log_area_step: params.snapshot_log_area,
    };
    let mut t = 0.0;
    let mut steps = 0usize;
    rec.push(DiagnosticsRecord::from_geometry(t, &geom, params), || State::Curve(curve.clone()));
    let termination = loop {
        if let Some(reason) = stop_reason(rec.records.last().unwrap(), params, area_floor, k_cap, steps) {
            break reason;
        }
        let mut dt = stable_dt(&geom, params);
        if let Some(tc) = params.t_cap {
            dt = dt.min(tc - t);
        }
        let mut accepted = None;
        for _ in 0..=params.max_halvings {
            if let Ok(next) = polygon::displace(&curve, &geom, params, dt) {
                if let Ok(g) = next.geometry() {
                    if g.winding == omega && g.area.abs() < geom.area.abs() {
                        accepted = Some((next, g));
                        break;
                    }
                }
            }
            dt *= 0.5;
        }
        let Some((next, g)) = accepted else {
            break Termination::StepFailure;
        };
        t += dt;
        steps += 1;
        curve = next;
        geom = g;
        let mut resampled = false;
        if params.resample_interval > 0 && steps.is_multiple_of(params.resample_interval) {
            if let Ok(c) = curve.resample(n) {
                if let Ok(g) = c.geometry() {
                    if g.winding == omega {
                        curve = c;
                        geom = g;
                        resampled = true;
                    }
                }
            }
        }
        let mut r = DiagnosticsRecord::from_geometry(t, &geom, params);
        r.resampled = resampled;
        rec.push(r, || State::Curve(curve.clone()));
    };
    rec.close(|| State::Curve(curve.clone()));
    finish(rec, params, termination, area_floor, k_cap, steps)
}

/// `ṡ = -(1/π) ∫ F n dθ` with outward normal `n = (sin θ, -cos θ)`.
fn steiner_velocity(profile: &AngleProfile, params: &FlowParams) -> Vec2 {
    let h = profile.spacing();
    let mut v = Vec2::zeros();
    for (j, &k) in profile.samples().iter().enumerate() {
        let th = profile.theta(j);
        v += Vec2::new(th.sin(), -th.cos()) * params.speed(k);
    }
    -v * (h / std::f64::consts::PI)
}

fn evolve_theta(profile: AngleProfile, center: Vec2, params: &FlowParams) -> Result<Trajectory> {
    if !profile.is_closed() {
        let (cx, cy) = profile.closure_residual();
        return Err(FlowError::NotClosed {
            cx,
            cy,
            tol: profile.closure_tolerance(),
        });
    }
    let mut profile = profile;
    let mut center = center;
    let first = DiagnosticsRecord::from_profile(0.0, &profile, params);
    let (area_floor, k_cap) = thresholds(params, first.length, first.area);
    let mut rec = Recorder {
        snapshots: Vec::new(),
        records: Vec::new(),
        last_snapshot_log_area: 0.0,
        log_area_step: params.snapshot_log_area,
    };
    let mut t = 0.0;
    let mut steps = 0usize;
    rec.push(first, || State::Profile {
        profile: profile.clone(),
        center,
    });
    let termination = loop {
        let last = rec.records.last().unwrap();
        if let Some(reason) = stop_reason(last, params, area_floor, k_cap, steps) {
            break reason;
        }
        let area = last.area;
        let mut dt = theta_dt(&profile, params);
        if let Some(tc) = params.t_cap {
            dt = dt.min(tc - t);
        }
        let mut accepted = None;
        for _ in 0..=params.max_halvings {
            if let Ok(next) = step_theta(&profile, params, dt) {
                let r = DiagnosticsRecord::from_profile(t + dt, &next, params);
                if r.area.is_finite() && r.area < area {
                    accepted = Some((next, r));
                    break;
                }
            }
            dt *= 0.5;
        }
        let Some((next, r)) = accepted else {
            break Termination::StepFailure;
        };
        center += steiner_velocity(&profile, params) * dt;
        t = r.t;
        steps += 1;
        profile = next;
        rec.push(r, || State::Profile {
            profile: profile.clone(),
            center,
        });
    };
    rec.close(|| State::Profile {
        profile: profile.clone(),
        center,
    });
    finish(rec, params, termination, area_floor, k_cap, steps)
}

fn finish(
    rec: Recorder,
    params: &FlowParams,
    termination: Termination,
    area_floor: f64,
    k_cap: f64,
    steps: usize,
) -> Result<Trajectory> {
    let mut traj = Trajectory {
        params: params.clone(),
        snapshots: rec.snapshots,
        records: rec.records,
        termination,
        t_est: None,
        area_floor,
        k_cap,
        steps,
    };
    traj.t_est = extinction_estimate(&traj).ok();
    Ok(traj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, r: f64) -> SampledCurve {
        SampledCurve::from_fn(n, |t| Vec2::new(r * t.cos(), r * t.sin())).unwrap()
    }

    fn ellipse(n: usize) -> SampledCurve {
        SampledCurve::from_fn(n, |t| Vec2::new(2.0 * t.cos(), t.sin())).unwrap()
    }

    #[test]
    fn circle_reaches_area_floor_near_ode_time() {
        let traj = evolve(State::Curve(circle(128, 1.0)), &FlowParams::new(1.0, 1.0)).unwrap();
        assert_eq!(traj.termination, Termination::AreaFloor);
        let exact = 1.0 - std::f64::consts::LN_2;
        assert!(traj.final_time() < exact);
        assert!((traj.t_est.unwrap() - exact).abs() < 1e-3, "{:?}", traj.t_est);
        assert!(traj.records.iter().all(|r| r.omega == 1));
    }

    #[test]
    fn theta_circle_matches_ode() {
        let p = AngleProfile::from_fn(64, |_| 1.0).unwrap();
        let params = FlowParams {
            theta_step_factor: 1e-3,
            ..FlowParams::new(1.0, 1.0)
        };
        let traj = evolve(State::profile(p), &params).unwrap();
        assert_eq!(traj.termination, Termination::AreaFloor);
        let exact = 1.0 - std::f64::consts::LN_2;
        assert!((traj.t_est.unwrap() - exact).abs() < 1e-3, "{:?}", traj.t_est);
    }

    #[test]
    fn ellipse_rounds_and_keeps_winding() {
        let traj = evolve(State::Curve(ellipse(128)), &FlowParams::new(1.0, 1.0)).unwrap();
        assert_eq!(traj.termination, Termination::AreaFloor);
        let ratios: Vec<f64> = traj
            .records
            .iter()
            .map(|r| r.roundness.unwrap().curvature_ratio)
            .collect();
        assert!(ratios[0] > 7.9 && ratios.last().unwrap() < &1.05);
        let mut prev = f64::INFINITY;
        for (r, rec) in ratios.iter().zip(&traj.records) {
            if !rec.resampled {
                assert!(*r <= prev * (1.0 + 1e-9));
            }
            prev = *r;
        }
        let mut a = f64::INFINITY;
        let mut e = f64::INFINITY;
        for r in &traj.records {
            assert_eq!(r.omega, 1);
            assert!(r.area < a && r.energy < e || r.resampled);
            a = r.area;
            e = r.energy;
        }
    }

    #[test]
    fn stop_reasons() {
        let params = FlowParams {
            t_cap: Some(0.05),
            ..FlowParams::new(1.0, 1.0)
        };
        let traj = evolve(State::Curve(circle(64, 1.0)), &params).unwrap();
        assert_eq!(traj.termination, Termination::TCap);
        assert!((traj.final_time() - 0.05).abs() < 1e-12);
        assert!(traj.t_est.is_none());
        let params = FlowParams {
            k_cap: Some(2.0),
            ..FlowParams::new(1.0, 1.0)
        };
        let traj = evolve(State::Curve(circle(64, 1.0)), &params).unwrap();
        assert_eq!(traj.termination, Termination::KCap);
        assert!(traj.records.last().unwrap().k_max >= 2.0);
    }

    #[test]
    fn snapshots_are_ordered_and_bracket_the_run() {
        let traj = evolve(State::Curve(circle(64, 1.0)), &FlowParams::new(1.0, 1.0)).unwrap();
        assert!(traj.snapshots.windows(2).all(|w| w[0].t < w[1].t));
        assert_eq!(traj.snapshots[0].t, 0.0);
        assert_eq!(traj.last().t, traj.final_time());
        assert!(traj.snapshots.len() > 100);
    }

    #[test]
    fn records_round_trip_as_json_lines() {
        let params = FlowParams {
            t_cap: Some(0.02),
            ..FlowParams::new(1.0, 1.0)
        };
        let traj = evolve(State::Curve(circle(64, 1.0)), &params).unwrap();
        let text = traj.records_jsonl();
        let first: serde_json::Value = serde_json::from_str(text.lines().next().unwrap()).unwrap();
        let mut keys: Vec<_> = first.as_object().unwrap().keys().cloned().collect();
        keys.sort();
        assert_eq!(
            keys,
            ["A", "E", "L", "entropy", "int_F2", "int_k2", "k_max", "k_min", "ks_norm2", "omega", "t"]
        );
        let back = parse_records(&text).unwrap();
        assert_eq!(back.len(), traj.records.len());
        assert_eq!(back[3].area, traj.records[3].area);
    }

    #[test]
    fn solvers_agree_on_circle_history() {
        let params = FlowParams {
            t_cap: Some(0.2),
            theta_step_factor: 1e-3,
            ..FlowParams::new(1.0, 1.0)
        };
        let poly = evolve(State::Curve(circle(256, 1.0)), &params).unwrap();
        let theta = evolve(State::profile(AngleProfile::from_fn(64, |_| 1.0).unwrap()), &params).unwrap();
        let rp = poly.records.last().unwrap().length / TAU;
        let rt = theta.records.last().unwrap().length / TAU;
        assert!((rp - rt).abs() < 1e-3, "{rp} {rt}");
    }

    #[test]
    fn unclosed_profile_is_rejected() {
        let p = AngleProfile::from_fn(64, |t| 1.0 / (2.0 + t.cos())).unwrap();
        assert!(evolve(State::profile(p), &FlowParams::default()).is_err());
    }
}
