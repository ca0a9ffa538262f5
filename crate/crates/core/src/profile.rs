//! Curvature as a function of tangent angle, for strictly convex curves.
//!
//! Samples sit on the uniform grid `θ_j = 2πj/M`. Integrals use the periodic
//! trapezoid rule. Length, area and the support function are computed
//! spectrally from the Fourier coefficients of the radius of curvature `1/k`.

use std::cell::RefCell;
use std::f64::consts::{PI, TAU};

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::curve::SampledCurve;
use crate::error::{FlowError, Result};
use crate::vector::Vec2;

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

/// Forward DFT normalised so that `f(θ_j) = Σ c_n e^{inθ_j}`.
fn fourier(values: &[f64]) -> Vec<Complex<f64>> {
    let m = values.len();
    let mut buf: Vec<Complex<f64>> = values.iter().map(|&v| Complex::new(v, 0.0)).collect();
    PLANNER.with(|p| p.borrow_mut().plan_fft_forward(m).process(&mut buf));
    let scale = 1.0 / m as f64;
    buf.iter_mut().for_each(|c| *c *= scale);
    buf
}

fn inverse_real(coeffs: &[Complex<f64>]) -> Vec<f64> {
    let m = coeffs.len();
    let mut buf = coeffs.to_vec();
    PLANNER.with(|p| p.borrow_mut().plan_fft_inverse(m).process(&mut buf));
    buf.iter().map(|c| c.re).collect()
}

/// Signed wavenumber of DFT slot `idx`.
fn wavenumber(idx: usize, m: usize) -> i64 {
    if idx <= m / 2 {
        idx as i64
    } else {
        idx as i64 - m as i64
    }
}

/// Curvature samples of a convex curve on a uniform tangent-angle grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AngleProfile {
    k: Vec<f64>,
}

impl AngleProfile {
    pub const MIN_SAMPLES: usize = 16;

    pub fn new(k: Vec<f64>) -> Result<Self> {
        if k.len() < Self::MIN_SAMPLES {
            return Err(FlowError::TooFewSamples {
                got: k.len(),
                min: Self::MIN_SAMPLES,
            });
        }
        for (index, &value) in k.iter().enumerate() {
            if !value.is_finite() {
                return Err(FlowError::NonFinite(index));
            }
            if value <= 0.0 {
                return Err(FlowError::NonPositiveCurvature { index, value });
            }
        }
        Ok(Self { k })
    }

    pub fn from_fn(samples: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..samples).map(|j| f(TAU * j as f64 / samples as f64)).collect())
    }

    pub fn samples(&self) -> &[f64] {
        &self.k
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.k
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        TAU / self.k.len() as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        TAU * j as f64 / self.k.len() as f64
    }

    pub fn k_min(&self) -> f64 {
        self.k.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn k_max(&self) -> f64 {
        self.k.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Profile of the curve scaled by `1/factor` (all curvatures multiplied by `factor`).
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.k.iter().map(|k| k * factor).collect())
    }

    /// `(∫ cosθ/k dθ, ∫ sinθ/k dθ)`; both vanish iff the profile closes up.
    pub fn closure_residual(&self) -> (f64, f64) {
        let d = self.spacing();
        self.k
            .iter()
            .enumerate()
            .fold((0.0, 0.0), |(cx, cy), (j, k)| {
                let t = self.theta(j);
                (cx + d * t.cos() / k, cy + d * t.sin() / k)
            })
    }

    /// Default closure tolerance: `1e-6 · mean(1/k)`.
    pub fn closure_tolerance(&self) -> f64 {
        1e-6 * self.k.iter().map(|k| 1.0 / k).sum::<f64>() / self.k.len() as f64
    }

    pub fn is_closed(&self) -> bool {
        let (cx, cy) = self.closure_residual();
        cx.abs().max(cy.abs()) <= self.closure_tolerance()
    }

    /// Integrates `γ' = (cosθ, sinθ)/k` from `γ(0) = 0` with `τ(0) = (1, 0)`.
    pub fn reconstruct(&self) -> Result<SampledCurve> {
        self.reconstruct_with_tolerance(self.closure_tolerance())
    }

    pub fn reconstruct_with_tolerance(&self, tol: f64) -> Result<SampledCurve> {
        let (cx, cy) = self.closure_residual();
        if cx.abs().max(cy.abs()) > tol {
            return Err(FlowError::NotClosed { cx, cy, tol });
        }
        let m = self.k.len();
        let d = self.spacing();
        let velocity = |j: usize| {
            let t = self.theta(j);
            Vec2::new(t.cos(), t.sin()) / self.k[j % m]
        };
        let mut points = Vec::with_capacity(m);
        let mut p = Vec2::zeros();
        for j in 0..m {
            points.push(p);
            p += 0.5 * d * (velocity(j) + velocity(j + 1));
        }
        SampledCurve::new(points)
    }

    /// Median curvature `k* = max over π-windows of the window minimum`
    /// (windows include both endpoints).
    pub fn median_curvature(&self) -> f64 {
        let m = self.k.len();
        let width = m / 2; // grid steps spanning π (rounded down for odd M)
        let mut deque = std::collections::VecDeque::<usize>::new();
        let mut best = f64::NEG_INFINITY;
        for idx in 0..(m + width) {
            let v = self.k[idx % m];
            while deque.back().is_some_and(|&b| self.k[b % m] >= v) {
                deque.pop_back();
            }
            deque.push_back(idx);
            if idx >= width {
                let start = idx - width;
                while deque.front().is_some_and(|&f| f < start) {
                    deque.pop_front();
                }
                best = best.max(self.k[deque[0] % m]);
            }
        }
        best
    }

    /// `∫₀^{2π} log k dθ`.
    pub fn entropy(&self) -> f64 {
        self.spacing() * self.k.iter().map(|k| k.ln()).sum::<f64>()
    }

    /// `(1/2π) ∫ log k dθ`.
    pub fn normalized_entropy(&self) -> f64 {
        self.entropy() / TAU
    }

    /// `(1/L) ∫ log k dθ`, the length-normalised variant.
    pub fn length_normalized_entropy(&self) -> f64 {
        self.entropy() / self.length()
    }

    /// `L = ∫ dθ / k`.
    pub fn length(&self) -> f64 {
        self.spacing() * self.k.iter().map(|k| 1.0 / k).sum::<f64>()
    }

    /// Enclosed area `π Σ_{n≠±1} |c_n|² / (1 - n²)`, `c_n` the Fourier
    /// coefficients of `1/k`.
    pub fn area(&self) -> f64 {
        let m = self.k.len();
        let radius: Vec<f64> = self.k.iter().map(|k| 1.0 / k).collect();
        let c = fourier(&radius);
        let mut acc = 0.0;
        for (idx, cn) in c.iter().enumerate() {
            let n = wavenumber(idx, m);
            if n.abs() == 1 {
                continue;
            }
            acc += cn.norm_sqr() / (1.0 - (n * n) as f64);
        }
        PI * acc
    }

    /// Support function `h(θ)` (tangent-angle parametrisation, outward normal
    /// `(sinθ, -cosθ)`) with Steiner point at the origin, plus `h_θ`.
    pub fn support(&self) -> (Vec<f64>, Vec<f64>) {
        let m = self.k.len();
        let radius: Vec<f64> = self.k.iter().map(|k| 1.0 / k).collect();
        let c = fourier(&radius);
        let mut h = vec![Complex::new(0.0, 0.0); m];
        let mut hp = vec![Complex::new(0.0, 0.0); m];
        for (idx, cn) in c.iter().enumerate() {
            let n = wavenumber(idx, m);
            if n.abs() == 1 {
                continue;
            }
            h[idx] = cn / (1.0 - (n * n) as f64);
            if !(m.is_multiple_of(2) && idx == m / 2) {
                hp[idx] = h[idx] * Complex::new(0.0, n as f64);
            }
        }
        (inverse_real(&h), inverse_real(&hp))
    }

    /// Curve with this curvature profile and Steiner point at `center`,
    /// sampled at the grid angles.
    pub fn to_curve(&self, center: Vec2) -> Result<SampledCurve> {
        let (h, hp) = self.support();
        let points = (0..self.k.len())
            .map(|j| {
                let t = self.theta(j);
                let (s, c) = t.sin_cos();
                let outward = Vec2::new(s, -c);
                let tangent = Vec2::new(c, s);
                center + outward * h[j] + tangent * hp[j]
            })
            .collect();
        SampledCurve::new(points)
    }

    /// `∫ k² ds = ∫ k dθ`.
    pub fn int_k2(&self) -> f64 {
        self.spacing() * self.k.iter().sum::<f64>()
    }

    /// `∫ F² ds = ∫ F²/k dθ`.
    pub fn int_f2(&self, sigma1: f64, sigma2: f64) -> f64 {
        self.spacing()
            * self
                .k
                .iter()
                .map(|k| {
                    let f = sigma1 * k + sigma2;
                    f * f / k
                })
                .sum::<f64>()
    }

    /// `‖k_s‖₂² = ∫ k k_θ² dθ` on the staggered grid.
    pub fn ks_norm2(&self) -> f64 {
        let m = self.k.len();
        let d = self.spacing();
        (0..m)
            .map(|j| {
                let (a, b) = (self.k[j], self.k[(j + 1) % m]);
                let kt = (b - a) / d;
                0.5 * (a + b) * kt * kt * d
            })
            .sum()
    }

    /// Periodic second difference `k_θθ`.
    pub fn second_difference(&self) -> Vec<f64> {
        let m = self.k.len();
        let d2 = self.spacing().powi(2);
        (0..m)
            .map(|j| (self.k[(j + 1) % m] - 2.0 * self.k[j] + self.k[(j + m - 1) % m]) / d2)
            .collect()
    }

    /// Serialises as `theta,k` CSV rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("theta,k\n");
        for (j, k) in self.k.iter().enumerate() {
            out.push_str(&format!("{},{}\n", self.theta(j), k));
        }
        out
    }

    /// Parses `theta,k` rows; the θ column must be the uniform grid.
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut rows = Vec::new();
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 2 {
                return Err(FlowError::Parse(format!("line {}: expected theta,k", line_no + 1)));
            }
            match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
                (Ok(t), Ok(k)) => rows.push((t, k)),
                _ if rows.is_empty() && line_no == 0 => continue,
                _ => return Err(FlowError::Parse(format!("line {}: not numeric", line_no + 1))),
            }
        }
        let m = rows.len();
        for (j, (t, _)) in rows.iter().enumerate() {
            if (t - TAU * j as f64 / m as f64).abs() > 1e-9 * TAU {
                return Err(FlowError::Parse(format!(
                    "row {j}: theta {t} is off the uniform grid"
                )));
            }
        }
        Self::new(rows.into_iter().map(|(_, k)| k).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oval(m: usize) -> AngleProfile {
        AngleProfile::from_fn(m, |t| 1.0 / (2.0 - 0.6 * (2.0 * t).cos())).unwrap()
    }

    /// Composite Simpson with many panels; independent of the trapezoid path.
    fn simpson(f: impl Fn(f64) -> f64, n: usize) -> f64 {
        let h = TAU / n as f64;
        let mut acc = f(0.0) + f(TAU);
        for i in 1..n {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        acc * h / 3.0
    }

    #[test]
    fn closure_of_constant_and_shifted_profiles() {
        let (cx, cy) = AngleProfile::from_fn(64, |_| 1.0).unwrap().closure_residual();
        assert!(cx.abs() < 1e-14 && cy.abs() < 1e-14);

        let p = AngleProfile::from_fn(64, |t| 1.0 / (2.0 + t.cos())).unwrap();
        let (cx, cy) = p.closure_residual();
        assert!((cx - PI).abs() < 1e-12 && cy.abs() < 1e-12);
        assert!(!p.is_closed());
        assert!(matches!(p.reconstruct(), Err(FlowError::NotClosed { .. })));

        let (cx, cy) = oval(64).closure_residual();
        assert!(cx.abs() < 1e-14 && cy.abs() < 1e-14);
    }

    #[test]
    fn rejects_non_positive_samples() {
        let mut k = vec![1.0; 32];
        k[5] = 0.0;
        assert!(matches!(
            AngleProfile::new(k),
            Err(FlowError::NonPositiveCurvature { index: 5, .. })
        ));
        assert!(AngleProfile::new(vec![1.0; 8]).is_err());
    }

    #[test]
    fn reconstruct_constant_profile_is_anchored_circle() {
        let m = 256;
        let c = AngleProfile::from_fn(m, |_| 1.0).unwrap().reconstruct().unwrap();
        // trapezoid chords are shortened by (d/2)cot(d/2) ≈ 1 - d²/12
        let half = 0.5 * TAU / m as f64;
        let scale = half / half.tan();
        for (j, p) in c.points().iter().enumerate() {
            let t = TAU * j as f64 / m as f64;
            let exact = Vec2::new(t.sin(), 1.0 - t.cos()) * scale;
            assert!((p - exact).norm() < 1e-12);
        }
        let big = AngleProfile::from_fn(m, |_| 0.25).unwrap().reconstruct().unwrap();
        let g = big.geometry().unwrap();
        assert!((g.length / TAU - 4.0).abs() < 1e-3);
    }

    #[test]
    fn reconstruct_round_trip_is_second_order() {
        let err = |m: usize| {
            let p = oval(m);
            let g = p.reconstruct().unwrap().geometry().unwrap();
            g.curvature
                .iter()
                .zip(p.samples())
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max)
        };
        let (coarse, fine) = (err(128), err(256));
        assert!(coarse < 1e-2);
        assert!(fine < coarse / 3.5, "{coarse} {fine}");
    }

    #[test]
    fn reconstructed_oval_recovers_support_function() {
        // h(θ) = 2 + 0.2 cos 2θ in the tangent angle; about the centre the
        // support in the outward-normal angle ϑ = θ - π/2 is 2 - 0.2 cos 2ϑ.
        let curve = oval(512).reconstruct().unwrap();
        let s = curve.support_and_width(64).unwrap();
        for (a, h) in s.angles.iter().zip(&s.h) {
            assert!((h - (2.0 - 0.2 * (2.0 * a).cos())).abs() < 1e-4);
        }
    }

    #[test]
    fn spectral_length_area_and_support() {
        let p = oval(128);
        let exact_len = simpson(|t| 2.0 - 0.6 * (2.0 * t).cos(), 2000);
        assert!((p.length() - exact_len).abs() < 1e-12);
        // A = ½∫(h² - h'²) with h = 2 + 0.2cos2θ
        let exact_area = simpson(
            |t| 0.5 * ((2.0 + 0.2 * (2.0 * t).cos()).powi(2) - (0.4 * (2.0 * t).sin()).powi(2)),
            2000,
        );
        assert!((p.area() - exact_area).abs() < 1e-10);
        let (h, _) = p.support();
        for (j, hj) in h.iter().enumerate() {
            assert!((hj - (2.0 + 0.2 * (2.0 * p.theta(j)).cos())).abs() < 1e-12);
        }
        let curve = oval(1024).to_curve(Vec2::new(1.0, -1.0)).unwrap();
        assert!((curve.centroid() - Vec2::new(1.0, -1.0)).norm() < 1e-10);
        let g = curve.geometry().unwrap();
        assert!((g.area - exact_area).abs() < 1e-3);
    }

    #[test]
    fn median_curvature_cases() {
        let p = AngleProfile::from_fn(64, |_| 0.5).unwrap();
        assert_eq!(p.median_curvature(), 0.5);
        let p = AngleProfile::from_fn(64, |t| 1.0 + 0.5 * t.sin()).unwrap();
        assert!((p.median_curvature() - 1.0).abs() < 1e-12);
        let c = AngleProfile::from_fn(64, |_| 1.0).unwrap();
        assert!(c.median_curvature() < c.length() / c.area());
    }

    #[test]
    fn entropy_cases() {
        assert_eq!(AngleProfile::from_fn(32, |_| 1.0).unwrap().entropy(), 0.0);
        let r = 3.0;
        let p = AngleProfile::from_fn(32, |_| 1.0 / r).unwrap();
        assert!((p.entropy() + TAU * r.ln()).abs() < 1e-12);
        assert!((p.normalized_entropy() + r.ln()).abs() < 1e-12);
        let reference = simpson(|t| -(2.0 - 0.6 * (2.0 * t).cos()).ln(), 20_000);
        let e = oval(4096).entropy();
        assert!(((e - reference) / reference).abs() < 1e-8);
    }

    #[test]
    fn csv_round_trip() {
        let p = oval(32);
        assert_eq!(AngleProfile::from_csv(&p.to_csv()).unwrap(), p);
        assert!(AngleProfile::from_csv("0,1\n0.5,1\n").is_err());
    }
}
