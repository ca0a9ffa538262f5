//! Localised curvature concentration `L_{B_ρ(x)} ∫_{γ⁻¹(B_ρ(x))} k² ds`,
//! the critical radius, and the discrete blowup rescaling.
//!
//! Curvature is a vertex quantity; each vertex owns its dual cell (half of
//! each adjacent edge) with constant `k²`, so `∫k²ds` over the whole curve is
//! `Σ k_i² ds_i`. Balls clip edges exactly.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::curve::{SampledCurve, GAUSS5};
use crate::error::{invalid, FlowError, Result};
use crate::flow::{evolve, FlowParams, State, Termination, Trajectory};
use crate::vector::Vec2;

/// Gradient constant of the smooth cutoff: `|φ_s| ≤ c/ρ`.
pub const GRADIENT_CONSTANT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CutoffProfile {
    /// Characteristic function of `B_ρ(x)`.
    #[default]
    Sharp,
    /// C² bump equal to one on `B_{ρ/2}(x)` and zero outside `B_ρ(x)`.
    Smooth,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffSpec {
    pub center: Vec2,
    pub radius: f64,
    pub profile: CutoffProfile,
}

impl CutoffSpec {
    pub fn sharp(center: Vec2, radius: f64) -> Self {
        Self {
            center,
            radius,
            profile: CutoffProfile::Sharp,
        }
    }

    pub fn smooth(center: Vec2, radius: f64) -> Self {
        Self {
            center,
            radius,
            profile: CutoffProfile::Smooth,
        }
    }
}

/// Smooth cutoff as a function of the distance `r` to the centre: a quintic
/// smoothstep from 1 at `ρ/2` to 0 at `ρ`; `|φ'| ≤ 3.75/ρ`.
pub fn smooth_cutoff(r: f64, rho: f64) -> f64 {
    let u = 2.0 * r / rho - 1.0;
    if u <= 0.0 {
        1.0
    } else if u >= 1.0 {
        0.0
    } else {
        1.0 - u * u * u * (10.0 - 15.0 * u + 6.0 * u * u)
    }
}

pub fn smooth_cutoff_derivative(r: f64, rho: f64) -> f64 {
    let u = 2.0 * r / rho - 1.0;
    if u <= 0.0 || u >= 1.0 {
        0.0
    } else {
        -30.0 * u * u * (1.0 - u) * (1.0 - u) * 2.0 / rho
    }
}

/// Where the supremum over centres is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum CenterSet {
    /// Curve vertices plus a grid over the plane near the curve.
    #[default]
    Plane,
    /// Curve vertices only.
    OnCurve,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchOptions {
    pub centers: CenterSet,
    /// Grid pitch as a fraction of `ρ`.
    pub pitch_factor: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            centers: CenterSet::Plane,
            pitch_factor: 0.25,
        }
    }
}

impl SearchOptions {
    pub fn on_curve() -> Self {
        Self {
            centers: CenterSet::OnCurve,
            ..Self::default()
        }
    }
}

/// Grid centres per plane search; the pitch is coarsened beyond this.
const MAX_GRID_CENTERS: f64 = 250_000.0;

/// Vertex data shared by all evaluations on one curve.
struct Sampled {
    points: Vec<Vec2>,
    curvature: Vec<f64>,
    edges: Vec<f64>,
}

impl Sampled {
    fn new(curve: &SampledCurve) -> Result<Self> {
        let g = curve.geometry()?;
        Ok(Self {
            points: curve.points().to_vec(),
            curvature: g.curvature,
            edges: g.edge_lengths,
        })
    }

    fn n(&self) -> usize {
        self.points.len()
    }

    fn segment(&self, i: usize) -> (Vec2, Vec2) {
        (self.points[i], self.points[(i + 1) % self.n()])
    }

    /// Parameter interval of edge `i` inside the closed ball.
    fn clip(&self, i: usize, x: Vec2, rho: f64) -> Option<(f64, f64)> {
        let (a, b) = self.segment(i);
        let d = b - a;
        let f = a - x;
        let qa = d.norm_squared();
        let qb = 2.0 * f.dot(&d);
        let qc = f.norm_squared() - rho * rho;
        let disc = qb * qb - 4.0 * qa * qc;
        if disc < 0.0 {
            return None;
        }
        let s = disc.sqrt();
        let lo = ((-qb - s) / (2.0 * qa)).max(0.0);
        let hi = ((-qb + s) / (2.0 * qa)).min(1.0);
        (hi > lo).then_some((lo, hi))
    }

    /// `(length, ∫k²)` of edge `i` inside the ball.
    fn sharp_edge(&self, i: usize, x: Vec2, rho: f64) -> (f64, f64) {
        let Some((lo, hi)) = self.clip(i, x, rho) else {
            return (0.0, 0.0);
        };
        let e = self.edges[i];
        let first = (hi.min(0.5) - lo).max(0.0);
        let second = (hi - lo.max(0.5)).max(0.0);
        let k0 = self.curvature[i];
        let k1 = self.curvature[(i + 1) % self.n()];
        (e * (hi - lo), e * (first * k0 * k0 + second * k1 * k1))
    }

    /// Integrals of `φ⁴`, `k²φ⁴`, `k⁴φ⁴`, `k_s²φ⁴` along edge `i`.
    fn smooth_edge(&self, i: usize, x: Vec2, rho: f64) -> [f64; 4] {
        let mut out = [0.0; 4];
        let Some((lo, hi)) = self.clip(i, x, rho) else {
            return out;
        };
        let (a, b) = self.segment(i);
        let e = self.edges[i];
        let k0 = self.curvature[i];
        let k1 = self.curvature[(i + 1) % self.n()];
        let ks = (k1 - k0) / e;
        for (start, end, k) in [(lo, hi.min(0.5), k0), (lo.max(0.5), hi, k1)] {
            if end <= start {
                continue;
            }
            let mid = 0.5 * (start + end);
            let half = 0.5 * (end - start);
            for (node, w) in GAUSS5 {
                let u = mid + half * node;
                let r = (a + (b - a) * u - x).norm();
                let p4 = smooth_cutoff(r, rho).powi(4) * w * half * e;
                out[0] += p4;
                out[1] += k * k * p4;
                out[2] += k.powi(4) * p4;
                out[3] += ks * ks * p4;
            }
        }
        out
    }
}

/// Edges bucketed on a square grid of cell size `cell`.
struct EdgeHash {
    cell: f64,
    buckets: HashMap<(i64, i64), Vec<usize>>,
}

impl EdgeHash {
    fn new(s: &Sampled, cell: f64) -> Self {
        let mut buckets: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        for i in 0..s.n() {
            let (a, b) = s.segment(i);
            let (x0, x1) = (Self::idx(a.x.min(b.x), cell), Self::idx(a.x.max(b.x), cell));
            let (y0, y1) = (Self::idx(a.y.min(b.y), cell), Self::idx(a.y.max(b.y), cell));
            for cx in x0..=x1 {
                for cy in y0..=y1 {
                    buckets.entry((cx, cy)).or_default().push(i);
                }
            }
        }
        Self { cell, buckets }
    }

    fn idx(v: f64, cell: f64) -> i64 {
        (v / cell).floor() as i64
    }

    /// Edges possibly meeting a ball of radius at most `cell` about `x`, without duplicates.
    fn near(&self, x: Vec2, out: &mut Vec<usize>) {
        out.clear();
        let (cx, cy) = (Self::idx(x.x, self.cell), Self::idx(x.y, self.cell));
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(v) = self.buckets.get(&(cx + dx, cy + dy)) {
                    out.extend_from_slice(v);
                }
            }
        }
        out.sort_unstable();
        out.dedup();
    }
}

/// `L_{B_ρ(x)} ∫ k² ds` (sharp) or `∫φ⁴ds · ∫k²φ⁴ds` (smooth).
pub fn local_concentration(curve: &SampledCurve, spec: &CutoffSpec) -> Result<f64> {
    if !(spec.radius > 0.0) {
        return Err(invalid(format!("radius must be positive, got {}", spec.radius)));
    }
    let s = Sampled::new(curve)?;
    let edges: Vec<usize> = (0..s.n()).collect();
    Ok(evaluate(&s, &edges, spec))
}

fn evaluate(s: &Sampled, edges: &[usize], spec: &CutoffSpec) -> f64 {
    match spec.profile {
        CutoffProfile::Sharp => {
            let (mut l, mut k2) = (0.0, 0.0);
            for &i in edges {
                let (a, b) = s.sharp_edge(i, spec.center, spec.radius);
                l += a;
                k2 += b;
            }
            l * k2
        }
        CutoffProfile::Smooth => {
            let (mut l, mut k2) = (0.0, 0.0);
            for &i in edges {
                let v = s.smooth_edge(i, spec.center, spec.radius);
                l += v[0];
                k2 += v[1];
            }
            l * k2
        }
    }
}

/// `L ∫k² ds` over the whole curve.
pub fn total_concentration(curve: &SampledCurve) -> Result<f64> {
    let g = curve.geometry()?;
    Ok(g.length * g.int_k2())
}

/// Supremum of the sharp concentration at radius `rho` and a maximising centre.
pub fn sup_concentration(curve: &SampledCurve, rho: f64, opts: &SearchOptions) -> Result<(f64, Vec2)> {
    if !(rho > 0.0) {
        return Err(invalid(format!("radius must be positive, got {rho}")));
    }
    if !(opts.pitch_factor > 0.0) {
        return Err(invalid("pitch_factor must be positive"));
    }
    let s = Sampled::new(curve)?;
    Ok(sup_sampled(&s, rho, opts))
}

fn sup_sampled(s: &Sampled, rho: f64, opts: &SearchOptions) -> (f64, Vec2) {
    let mean_edge = s.edges.iter().sum::<f64>() / s.n() as f64;
    let hash = EdgeHash::new(s, rho.max(mean_edge));
    let mut scratch = Vec::new();
    let mut best = (f64::NEG_INFINITY, s.points[0]);
    let mut consider = |x: Vec2, best: &mut (f64, Vec2)| {
        hash.near(x, &mut scratch);
        let v = evaluate(s, &scratch, &CutoffSpec::sharp(x, rho));
        if v > best.0 {
            *best = (v, x);
        }
    };
    for &p in &s.points {
        consider(p, &mut best);
    }
    if opts.centers == CenterSet::Plane {
        let length: f64 = s.edges.iter().sum();
        // the band of width 2ρ around the curve holds about 2Lρ/pitch² nodes
        let pitch = (opts.pitch_factor * rho).max((2.0 * length * rho / MAX_GRID_CENTERS).sqrt());
        let mut grid = HashSet::new();
        for i in 0..s.n() {
            let (a, b) = s.segment(i);
            let pieces = (s.edges[i] / rho).ceil().max(1.0) as usize;
            for p in 0..pieces {
                let pa = a + (b - a) * (p as f64 / pieces as f64);
                let pb = a + (b - a) * ((p + 1) as f64 / pieces as f64);
                let i0 = ((pa.x.min(pb.x) - rho) / pitch).floor() as i64;
                let i1 = ((pa.x.max(pb.x) + rho) / pitch).ceil() as i64;
                let j0 = ((pa.y.min(pb.y) - rho) / pitch).floor() as i64;
                let j1 = ((pa.y.max(pb.y) + rho) / pitch).ceil() as i64;
                for gi in i0..=i1 {
                    for gj in j0..=j1 {
                        let x = Vec2::new(gi as f64 * pitch, gj as f64 * pitch);
                        if segment_distance(x, pa, pb) < rho {
                            grid.insert((gi, gj));
                        }
                    }
                }
            }
        }
        let mut cells: Vec<_> = grid.into_iter().collect();
        cells.sort_unstable();
        for (gi, gj) in cells {
            consider(Vec2::new(gi as f64 * pitch, gj as f64 * pitch), &mut best);
        }
    }
    best
}

fn segment_distance(x: Vec2, a: Vec2, b: Vec2) -> f64 {
    let d = b - a;
    let u = ((x - a).dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
    (a + d * u - x).norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalRadius {
    pub radius: f64,
    /// Maximising centre at `radius`.
    pub center: Vec2,
    /// Concentration at `radius`.
    pub eps: f64,
    /// `ε₁` exceeds the whole-curve value, so no radius is critical.
    pub unconstrained: bool,
}

/// `sup{ρ : sup_x L_{B_ρ(x)}∫k² ≤ ε₁}` by bisection on `[1e-6·L, 2·diam]`.
pub fn critical_radius(curve: &SampledCurve, eps1: f64, opts: &SearchOptions) -> Result<CriticalRadius> {
    if !(eps1 > 0.0) {
        return Err(invalid(format!("eps1 must be positive, got {eps1}")));
    }
    let s = Sampled::new(curve)?;
    let length: f64 = s.edges.iter().sum();
    let total = total_concentration(curve)?;
    let hi0 = 2.0 * curve.diameter();
    if eps1 >= total {
        let (eps, center) = sup_sampled(&s, hi0, opts);
        return Ok(CriticalRadius {
            radius: hi0,
            center,
            eps,
            unconstrained: true,
        });
    }
    let mut lo = 1e-6 * length;
    let mut hi = hi0;
    let mut at_lo = sup_sampled(&s, lo, opts);
    if at_lo.0 > eps1 {
        return Err(FlowError::Unavailable(format!(
            "concentration {} already exceeds eps1 at the smallest radius",
            at_lo.0
        )));
    }
    while hi - lo > 1e-10 * hi {
        let mid = 0.5 * (lo + hi);
        let v = sup_sampled(&s, mid, opts);
        if v.0 <= eps1 {
            lo = mid;
            at_lo = v;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalRadius {
        radius: lo,
        center: at_lo.1,
        eps: at_lo.0,
        unconstrained: false,
    })
}

/// One line of the concentration JSON-lines output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationRecord {
    pub t: f64,
    pub rho: f64,
    pub eps: f64,
    pub xstar: [f64; 2],
    pub r_crit: f64,
}

/// Concentration at radius `rho` and critical radius for `eps1` at every
/// `stride`-th snapshot.
pub fn concentration_series(
    traj: &Trajectory,
    rho: f64,
    eps1: f64,
    stride: usize,
    opts: &SearchOptions,
) -> Result<Vec<ConcentrationRecord>> {
    let mut out = Vec::new();
    for snap in traj.snapshots.iter().step_by(stride.max(1)) {
        let curve = snap.state.to_curve()?;
        let (eps, x) = sup_concentration(&curve, rho, opts)?;
        let r = critical_radius(&curve, eps1, opts)?;
        out.push(ConcentrationRecord {
            t: snap.t,
            rho,
            eps,
            xstar: [x.x, x.y],
            r_crit: r.radius,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LifespanReport {
    /// `sup_x` concentration at radius `ρ` at `t = 0`.
    pub eps0: f64,
    pub hypothesis_holds: bool,
    /// `(t, ε at radius ρ/2)` over non-convex snapshots.
    pub series: Vec<(f64, f64)>,
    /// Snapshots skipped because the curve was convex.
    pub convex_skipped: usize,
    /// Smallest `c₀*` with `ε(t) ≤ ε(0) + c₀* t (1 + ρ⁻²) ε₁` on the series.
    pub c0_fit: Option<f64>,
    /// `ρ²/c₀*`.
    pub implied_lower_bound: Option<f64>,
    pub t_est: Option<f64>,
}

pub fn lifespan_monitor(
    traj: &Trajectory,
    rho: f64,
    eps1: f64,
    opts: &SearchOptions,
) -> Result<LifespanReport> {
    if !(rho > 0.0 && eps1 > 0.0) {
        return Err(invalid("rho and eps1 must be positive"));
    }
    let first = traj.initial().state.to_curve()?;
    let (eps0, _) = sup_concentration(&first, rho, opts)?;
    let hypothesis_holds = eps0 <= eps1;
    let mut series = Vec::new();
    let mut convex_skipped = 0;
    if hypothesis_holds {
        for snap in &traj.snapshots {
            let curve = snap.state.to_curve()?;
            if curve.geometry()?.k_min() >= 0.0 {
                convex_skipped += 1;
                continue;
            }
            series.push((snap.t, sup_concentration(&curve, 0.5 * rho, opts)?.0));
        }
    }
    let c0_fit = series.first().and_then(|&(t0, e0)| {
        series
            .iter()
            .filter(|(t, _)| *t > t0)
            .map(|&(t, e)| (e - e0) / ((t - t0) * (1.0 + rho.powi(-2)) * eps1))
            .reduce(f64::max)
    });
    let implied_lower_bound = c0_fit.filter(|c| *c > 0.0).map(|c| rho * rho / c);
    Ok(LifespanReport {
        eps0,
        hypothesis_holds,
        series,
        convex_skipped,
        c0_fit,
        implied_lower_bound,
        t_est: traj.t_est,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CutoffMargins {
    /// `sup_x` concentration at radius `ρ` (smallness hypothesis `≤ 1/16`).
    pub eps: f64,
    pub smallness_holds: bool,
    /// `L_{φ⁴} ∫k⁴φ⁴ ds`.
    pub k4_term: f64,
    /// `L_{φ⁴} ∫k_s²φ⁴ ds`.
    pub ks_term: f64,
    /// `ε²/ρ²`.
    pub eps2_over_rho2: f64,
    /// Smallest `c` with `k4_term ≤ ½ ks_term + c ε²/ρ²`.
    pub c_required: f64,
}

pub fn cutoff_inequality_monitor(curve: &SampledCurve, x: Vec2, rho: f64) -> Result<CutoffMargins> {
    if !(rho > 0.0) {
        return Err(invalid(format!("radius must be positive, got {rho}")));
    }
    let s = Sampled::new(curve)?;
    let (eps, _) = sup_sampled(&s, rho, &SearchOptions::default());
    let mut acc = [0.0; 4];
    for i in 0..s.n() {
        let v = s.smooth_edge(i, x, rho);
        for (a, b) in acc.iter_mut().zip(v) {
            *a += b;
        }
    }
    let k4_term = acc[0] * acc[2];
    let ks_term = acc[0] * acc[3];
    let eps2_over_rho2 = eps * eps / (rho * rho);
    let excess = k4_term - 0.5 * ks_term;
    let c_required = if excess <= 0.0 {
        0.0
    } else if eps2_over_rho2 > 0.0 {
        excess / eps2_over_rho2
    } else {
        f64::INFINITY
    };
    Ok(CutoffMargins {
        eps,
        smallness_holds: eps <= 1.0 / 16.0,
        k4_term,
        ks_term,
        eps2_over_rho2,
        c_required,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct BlowupOptions {
    pub v_max: f64,
    pub v_count: usize,
    pub search: SearchOptions,
}

impl Default for BlowupOptions {
    fn default() -> Self {
        Self {
            v_max: 1.0,
            v_count: 11,
            search: SearchOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupFrame {
    pub v: f64,
    pub curve: SampledCurve,
    pub self_intersections: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupReport {
    pub t: f64,
    pub r_t: f64,
    pub x_t: Vec2,
    /// Additive speed `σ₂r_t` separating the rescaled flow from curve shortening.
    pub sigma2_rt: f64,
    /// Median curvature `k*` of `γ_0^t` when convex.
    pub median_kv: Option<f64>,
    /// `σ₂r_t / (σ₁ k*)`.
    pub drift_ratio: Option<f64>,
    pub frames: Vec<BlowupFrame>,
    /// `max |Δγ/Δv - (σ₁k + σ₂r_t)ν|` over interior frames.
    pub velocity_residual: f64,
    /// Concentration of `γ_0^t` in `B₁(0)` and of `γ_t` in `B_{r_t}(x_t)`.
    pub unit_ball_concentration: f64,
    pub original_concentration: f64,
}

/// Frames `γ_v^t = (γ_{t + v r_t²} - x_t)/r_t` for `v` uniform on `[0, v_max]`,
/// re-integrated from the last snapshot before `t`.
pub fn blowup_rescale(traj: &Trajectory, t: f64, eps1: f64, opts: &BlowupOptions) -> Result<BlowupReport> {
    if !(t >= 0.0 && t < traj.final_time()) {
        return Err(invalid(format!(
            "t = {t} outside the recorded interval [0, {})",
            traj.final_time()
        )));
    }
    if opts.v_count < 3 || !(opts.v_max > 0.0) {
        return Err(invalid("blowup needs v_count ≥ 3 and v_max > 0"));
    }
    let snap = traj.snapshot_before(t);
    let base = FlowParams {
        resample_interval: 0,
        area_floor: Some(traj.area_floor),
        k_cap: Some(traj.k_cap),
        ..traj.params.clone()
    };
    let advance = |state: State, dt: f64| -> Result<Option<State>> {
        if dt <= 0.0 {
            return Ok(Some(state));
        }
        let run = evolve(state, &FlowParams { t_cap: Some(dt), ..base.clone() })?;
        if run.termination != Termination::TCap {
            return Ok(None);
        }
        Ok(Some(State::Curve(run.last().state.to_curve()?)))
    };
    let at_t = advance(State::Curve(snap.state.to_curve()?), t - snap.t)?
        .ok_or_else(|| FlowError::InsufficientData("flow stopped before t".into()))?;
    let gamma_t = at_t.to_curve()?;
    let crit = critical_radius(&gamma_t, eps1, &opts.search)?;
    let (r_t, x_t) = (crit.radius, crit.center);
    let p = &traj.params;
    let dv = opts.v_max / (opts.v_count - 1) as f64;
    let mut frames = Vec::new();
    let mut state = at_t;
    for j in 0..opts.v_count {
        if j > 0 {
            match advance(state.clone(), dv * r_t * r_t)? {
                Some(s) => state = s,
                None => break,
            }
        }
        let c = state.to_curve()?;
        let pts = c.points().iter().map(|q| (q - x_t) / r_t).collect();
        let curve = SampledCurve::new(pts)?;
        frames.push(BlowupFrame {
            v: j as f64 * dv,
            self_intersections: curve.self_intersections(),
            curve,
        });
    }
    if frames.len() < 3 {
        return Err(FlowError::InsufficientData("fewer than three blowup frames".into()));
    }
    let sigma2_rt = p.sigma2 * r_t;
    let mut velocity_residual: f64 = 0.0;
    for w in frames.windows(3) {
        let g = w[1].curve.geometry()?;
        let span = w[2].v - w[0].v;
        for i in 0..w[1].curve.len() {
            let vel = (w[2].curve.points()[i] - w[0].curve.points()[i]) / span;
            let model = g.normals[i] * (p.sigma1 * g.curvature[i] + sigma2_rt);
            velocity_residual = velocity_residual.max((vel - model).norm());
        }
    }
    let g0 = frames[0].curve.geometry()?;
    let median_kv = g0.median_curvature();
    let unit_ball_concentration = local_concentration(&frames[0].curve, &CutoffSpec::sharp(Vec2::zeros(), 1.0))?;
    let original_concentration = local_concentration(&gamma_t, &CutoffSpec::sharp(x_t, r_t))?;
    Ok(BlowupReport {
        t,
        r_t,
        x_t,
        sigma2_rt,
        median_kv,
        drift_ratio: median_kv.map(|k| sigma2_rt / (p.sigma1 * k)),
        frames,
        velocity_residual,
        unit_ball_concentration,
        original_concentration,
    })
}
