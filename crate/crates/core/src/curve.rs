//! Closed polygonal curves and their discrete differential geometry.
//!
//! Curvature lives on vertices: the turning angle between the two incident
//! edges divided by the dual length (half the sum of the incident edge
//! lengths). With that choice the discrete Gauss-Bonnet sum `Σ k_i ds_i`
//! equals `2π·ω` exactly.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::profile::AngleProfile;
use crate::spline::PeriodicSpline;
use crate::vector::{cross, perp, unit, Vec2};

/// Closed plane curve stored as a periodic list of vertices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CurveFile", into = "CurveFile")]
pub struct SampledCurve {
    points: Vec<Vec2>,
}

/// On-disk shape of a curve: `{"points": [[x, y], ...]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveFile {
    pub points: Vec<[f64; 2]>,
}

impl TryFrom<CurveFile> for SampledCurve {
    type Error = FlowError;
    fn try_from(file: CurveFile) -> Result<Self> {
        SampledCurve::new(file.points.iter().map(|p| Vec2::new(p[0], p[1])).collect())
    }
}

impl From<SampledCurve> for CurveFile {
    fn from(curve: SampledCurve) -> Self {
        CurveFile {
            points: curve.points.iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

/// Sign structure of the curvature samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Convexity {
    Strict,
    /// Smallest curvature sits inside the near-zero band `|k| < 1e-10 / L`.
    DegenerateConvex,
    NonConvex,
}

/// Derived geometry of a [`SampledCurve`].
#[derive(Debug, Clone)]
pub struct CurveGeometry {
    /// `|p_{i+1} - p_i|`.
    pub edge_lengths: Vec<f64>,
    /// Dual length at vertex `i`: `(e_{i-1} + e_i) / 2`.
    pub vertex_lengths: Vec<f64>,
    /// Signed turning angle at vertex `i`.
    pub turning: Vec<f64>,
    /// Unwrapped tangent angle at each vertex.
    pub tangent_angles: Vec<f64>,
    pub tangents: Vec<Vec2>,
    /// Inward normals for counter-clockwise curves: `ν = rot(π/2) τ`.
    pub normals: Vec<Vec2>,
    pub curvature: Vec<f64>,
    pub length: f64,
    pub area: f64,
    pub winding: i64,
}

/// `(k_max / k_min, L² / (4πA))`; both equal one on a circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Roundness {
    pub curvature_ratio: f64,
    pub isoperimetric_ratio: f64,
}

/// Support function and width sampled on a uniform normal-angle grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportData {
    pub angles: Vec<f64>,
    pub h: Vec<f64>,
    pub w: Vec<f64>,
    /// Radius of curvature `1/k` at the same normal angles.
    pub radius: Vec<f64>,
}

impl SupportData {
    /// `max_j |h + h_ϑϑ - 1/k|` with a periodic second difference.
    pub fn identity_residual(&self) -> f64 {
        let m = self.h.len();
        let d = TAU / m as f64;
        (0..m)
            .map(|j| {
                let hpp = (self.h[(j + 1) % m] - 2.0 * self.h[j] + self.h[(j + m - 1) % m]) / (d * d);
                (self.h[j] + hpp - self.radius[j]).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn min_width(&self) -> f64 {
        self.w.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_width(&self) -> f64 {
        self.w.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }
}

impl SampledCurve {
    pub const MIN_POINTS: usize = 8;

    pub fn new(points: Vec<Vec2>) -> Result<Self> {
        if points.len() < Self::MIN_POINTS {
            return Err(FlowError::TooFewSamples {
                got: points.len(),
                min: Self::MIN_POINTS,
            });
        }
        if let Some(i) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(FlowError::NonFinite(i));
        }
        let n = points.len();
        for i in 0..n {
            if points[i] == points[(i + 1) % n] {
                return Err(FlowError::DegenerateEdge {
                    index: i,
                    length: 0.0,
                    threshold: 0.0,
                });
            }
        }
        Ok(Self { points })
    }

    /// Samples `f` at `n` uniformly spaced parameters in `[0, 2π)`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Vec2) -> Result<Self> {
        Self::new((0..n).map(|i| f(TAU * i as f64 / n as f64)).collect())
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn into_points(self) -> Vec<Vec2> {
        self.points
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.points.iter().map(|p| p * factor).collect())
    }

    pub fn translated(&self, offset: Vec2) -> Result<Self> {
        Self::new(self.points.iter().map(|p| p + offset).collect())
    }

    /// Same curve traversed in the opposite direction.
    pub fn reversed(&self) -> Self {
        let mut points = self.points.clone();
        points.reverse();
        Self { points }
    }

    pub fn length(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| (self.points[(i + 1) % n] - self.points[i]).norm())
            .sum()
    }

    /// Signed (shoelace) area; positive for counter-clockwise curves.
    pub fn area(&self) -> f64 {
        let n = self.points.len();
        0.5 * (0..n)
            .map(|i| cross(self.points[i], self.points[(i + 1) % n]))
            .sum::<f64>()
    }

    /// Area centroid of the enclosed region.
    pub fn centroid(&self) -> Vec2 {
        let n = self.points.len();
        let mut acc = Vec2::zeros();
        let mut twice_area = 0.0;
        for i in 0..n {
            let (p, q) = (self.points[i], self.points[(i + 1) % n]);
            let c = cross(p, q);
            acc += (p + q) * c;
            twice_area += c;
        }
        acc / (3.0 * twice_area)
    }

    pub fn bounding_box(&self) -> (Vec2, Vec2) {
        let mut lo = Vec2::new(f64::INFINITY, f64::INFINITY);
        let mut hi = Vec2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
        for p in &self.points {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (lo, hi)
    }

    pub fn diameter(&self) -> f64 {
        let (lo, hi) = self.bounding_box();
        (hi - lo).norm()
    }

    pub fn geometry(&self) -> Result<CurveGeometry> {
        let pts = &self.points;
        let n = pts.len();
        let edges: Vec<Vec2> = (0..n).map(|i| pts[(i + 1) % n] - pts[i]).collect();
        let edge_lengths: Vec<f64> = edges.iter().map(|e| e.norm()).collect();
        let length: f64 = edge_lengths.iter().sum();
        if !length.is_finite() {
            return Err(FlowError::NonFinite(0));
        }
        let threshold = 1e-14 * length;
        if let Some((index, &len)) = edge_lengths
            .iter()
            .enumerate()
            .find(|(_, &l)| !(l > threshold))
        {
            return Err(FlowError::DegenerateEdge {
                index,
                length: len,
                threshold,
            });
        }

        let turning: Vec<f64> = (0..n)
            .map(|i| {
                let a = edges[(i + n - 1) % n];
                let b = edges[i];
                cross(a, b).atan2(a.dot(&b))
            })
            .collect();
        let total_turning: f64 = turning.iter().sum();
        let winding = (total_turning / TAU).round() as i64;

        let vertex_lengths: Vec<f64> = (0..n)
            .map(|i| 0.5 * (edge_lengths[(i + n - 1) % n] + edge_lengths[i]))
            .collect();
        let curvature: Vec<f64> = turning
            .iter()
            .zip(&vertex_lengths)
            .map(|(phi, ds)| phi / ds)
            .collect();

        let last = edges[n - 1];
        let mut tangent_angles = Vec::with_capacity(n);
        let mut theta = last.y.atan2(last.x) + 0.5 * turning[0];
        tangent_angles.push(theta);
        for i in 1..n {
            theta += 0.5 * (turning[i - 1] + turning[i]);
            tangent_angles.push(theta);
        }
        let tangents: Vec<Vec2> = tangent_angles.iter().map(|&t| unit(t)).collect();
        let normals: Vec<Vec2> = tangents.iter().map(|&t| perp(t)).collect();

        Ok(CurveGeometry {
            edge_lengths,
            vertex_lengths,
            turning,
            tangent_angles,
            tangents,
            normals,
            curvature,
            length,
            area: self.area(),
            winding,
        })
    }

    /// `σ₁L + σ₂A`.
    pub fn energy(&self, sigma1: f64, sigma2: f64) -> f64 {
        sigma1 * self.length() + sigma2 * self.area()
    }

    pub fn roundness(&self) -> Result<Roundness> {
        let geom = self.geometry()?;
        geom.roundness()
    }

    /// Redistributes `count` points at equal arclength along the periodic cubic
    /// spline through the vertices (chord-length parametrised). The first
    /// output point coincides with the first input vertex.
    pub fn resample(&self, count: usize) -> Result<Self> {
        if count < Self::MIN_POINTS {
            return Err(FlowError::TooFewSamples {
                got: count,
                min: Self::MIN_POINTS,
            });
        }
        let path = SplinePath::new(self)?;
        let total = path.total_length();
        let mut out = Vec::with_capacity(count);
        for j in 0..count {
            let target = total * j as f64 / count as f64;
            out.push(path.point_at_arclength(target));
        }
        Self::new(out)
    }

    /// Support function and width of a convex curve about its area centroid.
    pub fn support_and_width(&self, samples: usize) -> Result<SupportData> {
        let geom = self.geometry()?;
        geom.require_convex()?;
        let sign = geom.winding.signum() as f64;
        if sign < 0.0 {
            return self.reversed().support_and_width(samples);
        }
        let center = self.centroid();
        let n = self.points.len();
        let mut angles = Vec::with_capacity(n);
        let mut h = Vec::with_capacity(n);
        let mut radius = Vec::with_capacity(n);
        for i in 0..n {
            let outward = -geom.normals[i];
            angles.push(geom.tangent_angles[i] - 0.5 * PI);
            h.push((self.points[i] - center).dot(&outward));
            radius.push(1.0 / geom.curvature[i]);
        }
        let h_spline = PeriodicSpline::new(&angles, &h, TAU)?;
        let r_spline = PeriodicSpline::new(&angles, &radius, TAU)?;
        let grid: Vec<f64> = (0..samples).map(|j| TAU * j as f64 / samples as f64).collect();
        let hs: Vec<f64> = grid.iter().map(|&a| h_spline.eval(a)).collect();
        let ws: Vec<f64> = grid
            .iter()
            .map(|&a| h_spline.eval(a) + h_spline.eval(a + PI))
            .collect();
        let rs: Vec<f64> = grid.iter().map(|&a| r_spline.eval(a)).collect();
        Ok(SupportData {
            angles: grid,
            h: hs,
            w: ws,
            radius: rs,
        })
    }

    /// Curvature of a convex curve resampled on a uniform tangent-angle grid.
    pub fn angle_profile(&self, samples: usize) -> Result<AngleProfile> {
        let geom = self.geometry()?;
        geom.require_convex()?;
        if geom.winding != 1 {
            return self.reversed().angle_profile(samples);
        }
        let spline = PeriodicSpline::new(&geom.tangent_angles, &geom.curvature, TAU)?;
        AngleProfile::new(
            (0..samples)
                .map(|j| spline.eval(TAU * j as f64 / samples as f64))
                .collect(),
        )
    }

    /// Number of intersecting pairs of non-adjacent edges.
    pub fn self_intersections(&self) -> usize {
        let pts = &self.points;
        let n = pts.len();
        let mut count = 0;
        for i in 0..n {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            for j in (i + 2)..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                let (c, d) = (pts[j], pts[(j + 1) % n]);
                if segments_cross(a, b, c, d) {
                    count += 1;
                }
            }
        }
        count
    }
}

fn segments_cross(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let d1 = cross(b - a, c - a);
    let d2 = cross(b - a, d - a);
    let d3 = cross(d - c, a - c);
    let d4 = cross(d - c, b - c);
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

impl CurveGeometry {
    pub fn len(&self) -> usize {
        self.curvature.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curvature.is_empty()
    }

    pub fn k_min(&self) -> f64 {
        self.curvature.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn k_max(&self) -> f64 {
        self.curvature.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_edge(&self) -> f64 {
        self.edge_lengths.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// `|Σ k_i ds_i - 2πω|`.
    pub fn gauss_bonnet_residual(&self) -> f64 {
        let total: f64 = self
            .curvature
            .iter()
            .zip(&self.vertex_lengths)
            .map(|(k, ds)| k * ds)
            .sum();
        (total - TAU * self.winding as f64).abs()
    }

    /// `∫ k² ds`.
    pub fn int_k2(&self) -> f64 {
        self.curvature
            .iter()
            .zip(&self.vertex_lengths)
            .map(|(k, ds)| k * k * ds)
            .sum()
    }

    /// `∫ F² ds` with `F = σ₁k + σ₂`.
    pub fn int_f2(&self, sigma1: f64, sigma2: f64) -> f64 {
        self.curvature
            .iter()
            .zip(&self.vertex_lengths)
            .map(|(k, ds)| {
                let f = sigma1 * k + sigma2;
                f * f * ds
            })
            .sum()
    }

    /// `‖k_s‖₂²` with `k_s` constant on each edge.
    pub fn ks_norm2(&self) -> f64 {
        let n = self.curvature.len();
        (0..n)
            .map(|i| {
                let dk = self.curvature[(i + 1) % n] - self.curvature[i];
                dk * dk / self.edge_lengths[i]
            })
            .sum()
    }

    /// `√L · ‖k_s‖₂`, the quantity in the eventual-convexity threshold. It scales like `1/length`.
    pub fn threshold_functional(&self) -> f64 {
        (self.length * self.ks_norm2()).sqrt()
    }

    pub fn convexity(&self) -> Convexity {
        let sign = if self.winding < 0 { -1.0 } else { 1.0 };
        let k_min = self
            .curvature
            .iter()
            .map(|k| sign * k)
            .fold(f64::INFINITY, f64::min);
        let band = 1e-10 / self.length;
        if k_min >= band {
            Convexity::Strict
        } else if k_min > -band {
            Convexity::DegenerateConvex
        } else {
            Convexity::NonConvex
        }
    }

    pub fn is_convex(&self) -> bool {
        self.convexity() == Convexity::Strict
    }

    pub(crate) fn require_convex(&self) -> Result<()> {
        match self.convexity() {
            Convexity::Strict => Ok(()),
            _ => Err(FlowError::NotConvex {
                k_min: self.k_min(),
            }),
        }
    }

    pub fn roundness(&self) -> Result<Roundness> {
        if !(self.area > 0.0) {
            return Err(FlowError::NonPositiveArea(self.area));
        }
        let k_min = self.k_min();
        let curvature_ratio = if k_min > 0.0 {
            self.k_max() / k_min
        } else {
            f64::INFINITY
        };
        Ok(Roundness {
            curvature_ratio,
            isoperimetric_ratio: self.length * self.length / (4.0 * PI * self.area),
        })
    }

    /// `∫ log k dθ = Σ φ_i log k_i` for convex curves.
    pub fn entropy(&self) -> Option<f64> {
        if !self.is_convex() || self.winding != 1 {
            return None;
        }
        Some(
            self.turning
                .iter()
                .zip(&self.curvature)
                .map(|(phi, k)| phi * k.ln())
                .sum(),
        )
    }

    /// Median curvature `k*`: best window minimum over tangent-angle windows of
    /// length π. Only defined for convex, positively oriented curves.
    pub fn median_curvature(&self) -> Option<f64> {
        if !self.is_convex() || self.winding != 1 {
            return None;
        }
        let n = self.len();
        let angle = |i: usize| self.tangent_angles[i % n] + TAU * (i / n) as f64;
        let k = |i: usize| self.curvature[i % n];
        let mut best = f64::NEG_INFINITY;
        let mut deque: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
        let mut end = 0;
        for start in 0..n {
            let limit = angle(start) + PI + 1e-12;
            while end < start + n && angle(end) <= limit {
                while deque.back().is_some_and(|&b| k(b) >= k(end)) {
                    deque.pop_back();
                }
                deque.push_back(end);
                end += 1;
            }
            while deque.front().is_some_and(|&f| f < start) {
                deque.pop_front();
            }
            if let Some(&f) = deque.front() {
                best = best.max(k(f));
            }
        }
        Some(best)
    }
}

/// Arclength-parametrised periodic cubic spline through a polygon.
pub(crate) struct SplinePath {
    x: PeriodicSpline,
    y: PeriodicSpline,
    /// Cumulative arclength at each knot, with the total appended.
    cumulative: Vec<f64>,
}

pub(crate) const GAUSS5: [(f64, f64); 5] = [
    (0.0, 0.568_888_888_888_888_9),
    (-0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (0.538_469_310_105_683_1, 0.478_628_670_499_366_47),
    (-0.906_179_845_938_664, 0.236_926_885_056_189_08),
    (0.906_179_845_938_664, 0.236_926_885_056_189_08),
];

impl SplinePath {
    pub(crate) fn new(curve: &SampledCurve) -> Result<Self> {
        let pts = curve.points();
        let n = pts.len();
        let mut knots = Vec::with_capacity(n);
        let mut u = 0.0;
        for i in 0..n {
            knots.push(u);
            u += (pts[(i + 1) % n] - pts[i]).norm();
        }
        let period = u;
        let xs: Vec<f64> = pts.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.y).collect();
        let x = PeriodicSpline::new(&knots, &xs, period)?;
        let y = PeriodicSpline::new(&knots, &ys, period)?;
        let mut path = Self {
            x,
            y,
            cumulative: Vec::with_capacity(n + 1),
        };
        let mut acc = 0.0;
        path.cumulative.push(0.0);
        for i in 0..n {
            let a = knots[i];
            let b = if i + 1 < n { knots[i + 1] } else { period };
            acc += path.arc(a, b);
            path.cumulative.push(acc);
        }
        Ok(path)
    }

    fn speed(&self, u: f64) -> f64 {
        self.x.deriv(u).hypot(self.y.deriv(u))
    }

    fn arc(&self, a: f64, b: f64) -> f64 {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        GAUSS5
            .iter()
            .map(|(x, w)| w * self.speed(mid + half * x))
            .sum::<f64>()
            * half
    }

    pub(crate) fn total_length(&self) -> f64 {
        *self.cumulative.last().unwrap_or(&0.0)
    }

    pub(crate) fn point_at_arclength(&self, s: f64) -> Vec2 {
        let knots = self.x.knots();
        let n = knots.len();
        let i = match self.cumulative[..n].partition_point(|&c| c <= s) {
            0 => 0,
            p => p - 1,
        };
        let a = knots[i];
        let b = if i + 1 < n { knots[i + 1] } else { self.x.period() };
        let seg = self.cumulative[i + 1] - self.cumulative[i];
        let rest = s - self.cumulative[i];
        let mut u = a + (b - a) * (rest / seg).clamp(0.0, 1.0);
        for _ in 0..8 {
            let err = self.arc(a, u) - rest;
            let step = err / self.speed(u);
            u = (u - step).clamp(a, b);
            if step.abs() < 1e-15 * (b - a).max(1.0) {
                break;
            }
        }
        Vec2::new(self.x.eval(u), self.y.eval(u))
    }
}

/// Parses a curve from either the JSON object form or `x,y` CSV rows.
pub fn parse_curve(text: &str) -> Result<SampledCurve> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        return serde_json::from_str(trimmed).map_err(|e| FlowError::Parse(e.to_string()));
    }
    let mut points = Vec::new();
    for (line_no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(FlowError::Parse(format!(
                "line {}: expected two columns",
                line_no + 1
            )));
        }
        match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
            (Ok(x), Ok(y)) => points.push(Vec2::new(x, y)),
            // header row
            _ if points.is_empty() && line_no == 0 => continue,
            _ => {
                return Err(FlowError::Parse(format!(
                    "line {}: not a number pair",
                    line_no + 1
                )))
            }
        }
    }
    SampledCurve::new(points)
}

pub fn curve_to_csv(curve: &SampledCurve) -> String {
    let mut out = String::from("x,y\n");
    for p in curve.points() {
        out.push_str(&format!("{},{}\n", p.x, p.y));
    }
    out
}

pub fn curve_to_json(curve: &SampledCurve) -> String {
    serde_json::to_string(curve).expect("curve serialises")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(n: usize, r: f64) -> SampledCurve {
        SampledCurve::from_fn(n, |t| Vec2::new(r * t.cos(), r * t.sin())).unwrap()
    }

    fn ellipse(n: usize, a: f64, b: f64) -> SampledCurve {
        SampledCurve::from_fn(n, |t| Vec2::new(a * t.cos(), b * t.sin())).unwrap()
    }

    #[test]
    fn regular_polygon_matches_circle() {
        let g = circle(256, 1.0).geometry().unwrap();
        let h = (PI / 256.0).powi(2);
        assert!((g.length - TAU).abs() < 2.0 * h * TAU);
        assert!((g.area - PI).abs() < 3.0 * h * PI);
        assert_eq!(g.winding, 1);
        for k in &g.curvature {
            assert!((k - 1.0).abs() < h);
        }
        for (t, n) in g.tangents.iter().zip(&g.normals) {
            assert!(t.dot(n).abs() < 1e-12);
            assert!((t.norm() - 1.0).abs() < 1e-12);
            assert!((n.norm() - 1.0).abs() < 1e-12);
        }
        // inward normals
        let p = circle(256, 1.0);
        for (pt, n) in p.points().iter().zip(&g.normals) {
            assert!((pt + n).norm() < 1e-12);
        }
    }

    #[test]
    fn clockwise_flips_winding_and_area() {
        let g = circle(256, 1.0).reversed().geometry().unwrap();
        assert_eq!(g.winding, -1);
        assert!((g.area + PI).abs() < 1e-3);
    }

    #[test]
    fn lemniscate_has_zero_turning_number() {
        let fig8 = SampledCurve::from_fn(400, |t| {
            let d = 1.0 + t.sin().powi(2);
            Vec2::new(t.cos() / d, t.sin() * t.cos() / d)
        })
        .unwrap();
        let g = fig8.geometry().unwrap();
        assert_eq!(g.winding, 0);
        assert!(g.gauss_bonnet_residual() < 1e-12);
        assert_eq!(g.convexity(), Convexity::NonConvex);
        assert!(fig8.self_intersections() >= 1);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            SampledCurve::new(vec![Vec2::zeros(); 4]),
            Err(FlowError::TooFewSamples { .. })
        ));
        let mut pts: Vec<Vec2> = circle(16, 1.0).into_points();
        pts[3] = Vec2::new(f64::NAN, 0.0);
        assert!(matches!(SampledCurve::new(pts), Err(FlowError::NonFinite(3))));
        let mut pts: Vec<Vec2> = circle(16, 1.0).into_points();
        pts[4] = pts[3];
        assert!(SampledCurve::new(pts).is_err());
        let mut pts: Vec<Vec2> = circle(16, 1.0).into_points();
        pts[4] = pts[3] + Vec2::new(1e-16, 0.0);
        let c = SampledCurve::new(pts).unwrap();
        assert!(matches!(c.geometry(), Err(FlowError::DegenerateEdge { index: 3, .. })));
    }

    #[test]
    fn energy_of_unit_circle() {
        let c = circle(4096, 1.0);
        assert!((c.energy(1.0, 1.0) - 3.0 * PI).abs() < 1e-5);
        assert_eq!(c.energy(2.0, 0.0), 2.0 * c.length());
        let scaled = c.scaled(3.0).unwrap();
        let e = scaled.energy(0.7, 1.3);
        assert!((e - (0.7 * 3.0 * c.length() + 1.3 * 9.0 * c.area())).abs() < 1e-10);
    }

    #[test]
    fn ellipse_roundness() {
        let e = ellipse(1024, 2.0, 1.0);
        let r = e.roundness().unwrap();
        assert!((r.curvature_ratio - 8.0).abs() < 1e-3, "{}", r.curvature_ratio);
        // perimeter by adaptive quadrature of the speed
        let perimeter = {
            let m = 200_000;
            let h = TAU / m as f64;
            (0..m)
                .map(|i| {
                    let t = (i as f64 + 0.5) * h;
                    (4.0 * t.sin().powi(2) + t.cos().powi(2)).sqrt() * h
                })
                .sum::<f64>()
        };
        let iso = perimeter * perimeter / (4.0 * PI * 2.0 * PI);
        assert!((iso - 1.188_84).abs() < 1e-4, "{iso}");
        assert!((r.isoperimetric_ratio - iso).abs() < 1e-4);
        let c = circle(512, 1.0).roundness().unwrap();
        assert!((c.curvature_ratio - 1.0).abs() < 1e-9);
        assert!((c.isoperimetric_ratio - 1.0).abs() < 1e-4);
        assert!(matches!(
            circle(64, 1.0).reversed().roundness(),
            Err(FlowError::NonPositiveArea(_))
        ));
    }

    #[test]
    fn resample_uniform_circle_is_identity() {
        let c = circle(128, 1.0);
        let r = c.resample(128).unwrap();
        for (a, b) in c.points().iter().zip(r.points()) {
            assert!((a - b).norm() < 1e-12, "{}", (a - b).norm());
        }
    }

    #[test]
    fn resample_clusters_to_uniform_spacing() {
        let clustered = SampledCurve::from_fn(400, |t| {
            let u = t + 0.45 * t.sin();
            Vec2::new(u.cos(), u.sin())
        })
        .unwrap();
        let out = clustered.resample(300).unwrap();
        let g = out.geometry().unwrap();
        let mean = g.length / 300.0;
        let worst = g
            .edge_lengths
            .iter()
            .map(|e| (e - mean).abs())
            .fold(0.0, f64::max);
        assert!(worst < 1e-6 * g.length, "{worst}");
        assert!(matches!(clustered.resample(7), Err(FlowError::TooFewSamples { .. })));
    }

    #[test]
    fn resample_refines_ellipse_area() {
        let e = ellipse(64, 2.0, 1.0);
        let exact = TAU;
        let coarse = (e.area() - exact).abs();
        let fine = (e.resample(256).unwrap().area() - exact).abs();
        assert!(fine < coarse / 8.0, "{coarse} {fine}");
    }

    #[test]
    fn support_of_circle_and_ellipse() {
        let s = circle(512, 1.0).support_and_width(128).unwrap();
        for (h, w) in s.h.iter().zip(&s.w) {
            assert!((h - 1.0).abs() < 1e-4);
            assert!((w - 2.0).abs() < 1e-4);
        }
        let s = ellipse(1024, 2.0, 1.0).support_and_width(256).unwrap();
        assert!((s.min_width() - 2.0).abs() < 1e-4);
        assert!((s.max_width() - 4.0).abs() < 1e-4);
        // h(ϑ) = sqrt(a² cos² + b² sin²)
        for (a, h) in s.angles.iter().zip(&s.h) {
            let exact = (4.0 * a.cos().powi(2) + a.sin().powi(2)).sqrt();
            assert!((h - exact).abs() < 1e-4);
        }
        let wiggly = SampledCurve::from_fn(200, |t| {
            let r = 1.0 + 0.3 * (3.0 * t).cos();
            Vec2::new(r * t.cos(), r * t.sin())
        })
        .unwrap();
        assert!(matches!(wiggly.support_and_width(64), Err(FlowError::NotConvex { .. })));
    }

    #[test]
    fn oval_support_identity_converges() {
        // h(ϑ) = 2 + 0.2 cos 2ϑ sampled exactly: γ = h n + h' n⊥
        let oval = |n: usize| {
            SampledCurve::from_fn(n, |a| {
                let h = 2.0 + 0.2 * (2.0 * a).cos();
                let hp = -0.4 * (2.0 * a).sin();
                Vec2::new(h * a.cos() - hp * a.sin(), h * a.sin() + hp * a.cos())
            })
            .unwrap()
        };
        let residual = |n: usize| oval(n).support_and_width(1024).unwrap().identity_residual();
        let coarse = residual(128);
        let fine = residual(256);
        assert!(fine < coarse / 3.5, "{coarse} {fine}");
        let s = oval(512).support_and_width(64).unwrap();
        for (a, w) in s.angles.iter().zip(&s.w) {
            assert!((w - (4.0 + 0.4 * (2.0 * a).cos())).abs() < 1e-4);
        }
    }

    #[test]
    fn median_curvature_of_circle_is_below_l_over_a() {
        let g = circle(256, 1.0).geometry().unwrap();
        let kstar = g.median_curvature().unwrap();
        assert!((kstar - 1.0).abs() < 1e-4);
        assert!(kstar < g.length / g.area);
    }

    #[test]
    fn csv_and_json_round_trip() {
        let c = circle(16, 2.0);
        let back = parse_curve(&curve_to_csv(&c)).unwrap();
        assert_eq!(back, c);
        let back = parse_curve(&curve_to_json(&c)).unwrap();
        assert_eq!(back, c);
        assert!(parse_curve("1,2\n3\n").is_err());
    }
}
