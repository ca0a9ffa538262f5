//! Initial curves: circles, ellipses, ovals given by a support function,
//! polar flowers and seeded random perturbations of a circle.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::SampledCurve;
use crate::error::{invalid, FlowError, Result};
use crate::flow::State;
use crate::profile::AngleProfile;
use crate::vector::Vec2;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case", deny_unknown_fields)]
pub enum Preset {
    Circle {
        radius: f64,
    },
    Ellipse {
        a: f64,
        b: f64,
    },
    /// `h(ϑ) = a + Σ_n b[n-1] cos(nϑ)` in the outward-normal angle.
    SupportOval {
        a: f64,
        b: Vec<f64>,
    },
    /// Polar graph `r(t) = R + amp·cos(modes·t)`.
    Flower {
        radius: f64,
        amp: f64,
        modes: u32,
    },
    /// Polar graph `r(t) = R(1 + Σ_{n=2}^{modes} c_n cos(n t + φ_n))` with
    /// `c_n` uniform in `[-amp, amp]/n` and phases uniform, drawn from `seed`.
    Perturbed {
        radius: f64,
        amp: f64,
        modes: u32,
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Representation {
    #[default]
    Polygon,
    /// Curvature on a tangent-angle grid; convex presets only.
    Profile,
}

/// A polar graph `r(t)` with its first two derivatives.
struct Polar {
    terms: Vec<(f64, f64, f64)>,
    base: f64,
}

impl Polar {
    /// `base + Σ c cos(n t + φ)` for `(n, c, φ)` terms.
    fn eval(&self, t: f64) -> (f64, f64, f64) {
        let mut r = self.base;
        let mut rp = 0.0;
        let mut rpp = 0.0;
        for &(n, c, ph) in &self.terms {
            let (s, co) = (n * t + ph).sin_cos();
            r += c * co;
            rp -= c * n * s;
            rpp -= c * n * n * co;
        }
        (r, rp, rpp)
    }

    fn point(&self, t: f64) -> Vec2 {
        let r = self.eval(t).0;
        Vec2::new(r * t.cos(), r * t.sin())
    }

    fn curvature(&self, t: f64) -> f64 {
        let (r, rp, rpp) = self.eval(t);
        (r * r + 2.0 * rp * rp - r * rpp) / (r * r + rp * rp).powf(1.5)
    }

    /// Unwrapped tangent angle `t + atan2(r, r')`, continuous in `t`.
    fn tangent_angle(&self, t: f64) -> f64 {
        let (r, rp, _) = self.eval(t);
        t + r.atan2(rp)
    }

    fn min_curvature(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|j| self.curvature(TAU * j as f64 / samples as f64))
            .fold(f64::INFINITY, f64::min)
    }

    fn min_radius(&self, samples: usize) -> f64 {
        (0..samples)
            .map(|j| self.eval(TAU * j as f64 / samples as f64).0)
            .fold(f64::INFINITY, f64::min)
    }

    /// Curvature at uniform tangent angles, inverting `θ(t)` by safeguarded Newton.
    fn profile(&self, samples: usize) -> Result<AngleProfile> {
        let theta0 = self.tangent_angle(0.0);
        let mut k = Vec::with_capacity(samples);
        let mut t: f64 = 0.0;
        for j in 0..samples {
            let target = theta0 + TAU * j as f64 / samples as f64;
            let (mut lo, mut hi) = (t, TAU);
            for _ in 0..100 {
                let f = self.tangent_angle(t) - target;
                if f.abs() < 1e-14 {
                    break;
                }
                if f > 0.0 {
                    hi = t;
                } else {
                    lo = t;
                }
                let (r, rp, _) = self.eval(t);
                let slope = self.curvature(t) * (r * r + rp * rp).sqrt();
                let next = t - f / slope;
                t = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            }
            k.push(self.curvature(t));
        }
        // the grid starts at θ(0); rotate so that it starts at θ = 0
        let shift = theta0.rem_euclid(TAU);
        rotate_profile(AngleProfile::new(k)?, shift)
    }
}

/// Profile sampled on a grid starting at `shift` re-expressed on the grid starting at 0.
fn rotate_profile(p: AngleProfile, shift: f64) -> Result<AngleProfile> {
    let m = p.len();
    let d = p.spacing();
    let steps = shift / d;
    if (steps - steps.round()).abs() < 1e-9 {
        let s = steps.round() as usize % m;
        let mut k = vec![0.0; m];
        for (j, v) in p.samples().iter().enumerate() {
            k[(j + s) % m] = *v;
        }
        return AngleProfile::new(k);
    }
    Err(invalid("profile grid must start at a multiple of the spacing"))
}

impl Preset {
    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64, what: &str| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(format!("{what} must be positive, got {v}")))
            }
        };
        match self {
            Preset::Circle { radius } => positive(*radius, "radius"),
            Preset::Ellipse { a, b } => positive(*a, "a").and(positive(*b, "b")),
            Preset::SupportOval { a, b } => {
                positive(*a, "a")?;
                if b.iter().any(|v| !v.is_finite()) {
                    return Err(invalid("support coefficients must be finite"));
                }
                Ok(())
            }
            Preset::Flower { radius, amp, modes } => {
                positive(*radius, "radius")?;
                if !(amp.abs() < *radius) {
                    return Err(invalid(format!("flower needs |amp| < radius, got {amp}")));
                }
                if *modes < 2 {
                    return Err(invalid("flower needs at least 2 modes"));
                }
                Ok(())
            }
            Preset::Perturbed { radius, amp, modes, .. } => {
                positive(*radius, "radius")?;
                if !(*amp >= 0.0 && *amp < 0.5) {
                    return Err(invalid(format!("perturbation amplitude must lie in [0, 0.5), got {amp}")));
                }
                if *modes < 2 {
                    return Err(invalid("perturbation needs at least 2 modes"));
                }
                Ok(())
            }
        }
    }

    fn polar(&self) -> Option<Polar> {
        match self {
            Preset::Flower { radius, amp, modes } => Some(Polar {
                base: *radius,
                terms: vec![(*modes as f64, *amp, 0.0)],
            }),
            Preset::Perturbed {
                radius,
                amp,
                modes,
                seed,
            } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let terms = (2..=*modes)
                    .map(|n| {
                        let c = rng.random_range(-1.0..=1.0) * amp / n as f64;
                        let ph = rng.random_range(0.0..TAU);
                        (n as f64, radius * c, ph)
                    })
                    .collect();
                Some(Polar { base: *radius, terms })
            }
            _ => None,
        }
    }

    /// `1/k` of a support-function oval at outward-normal angle `ϑ`.
    fn oval_radius(a: f64, b: &[f64], v: f64) -> f64 {
        a + b
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let n = (i + 1) as f64;
                (1.0 - n * n) * c * (n * v).cos()
            })
            .sum::<f64>()
    }

    /// Whether the preset is a convex curve (checked on a fine grid for polar presets).
    pub fn is_convex(&self) -> bool {
        match self {
            Preset::Circle { .. } | Preset::Ellipse { .. } => true,
            Preset::SupportOval { a, b } => {
                (0..4096).all(|j| Self::oval_radius(*a, b, TAU * j as f64 / 4096.0) > 0.0)
            }
            _ => self
                .polar()
                .is_some_and(|p| p.min_radius(4096) > 0.0 && p.min_curvature(4096) > 0.0),
        }
    }

    pub fn curve(&self, samples: usize) -> Result<SampledCurve> {
        self.validate()?;
        match self {
            Preset::Circle { radius } => {
                SampledCurve::from_fn(samples, |t| Vec2::new(radius * t.cos(), radius * t.sin()))
            }
            Preset::Ellipse { a, b } => SampledCurve::from_fn(samples, |t| Vec2::new(a * t.cos(), b * t.sin())),
            Preset::SupportOval { a, b } => {
                if !self.is_convex() {
                    return Err(FlowError::NotConvex {
                        k_min: (0..4096)
                            .map(|j| Self::oval_radius(*a, b, TAU * j as f64 / 4096.0))
                            .fold(f64::INFINITY, f64::min),
                    });
                }
                SampledCurve::from_fn(samples, |v| {
                    let mut h = *a;
                    let mut hp = 0.0;
                    for (i, c) in b.iter().enumerate() {
                        let n = (i + 1) as f64;
                        h += c * (n * v).cos();
                        hp -= n * c * (n * v).sin();
                    }
                    let (s, co) = v.sin_cos();
                    Vec2::new(h * co - hp * s, h * s + hp * co)
                })
            }
            _ => {
                let p = self.polar().expect("polar preset");
                if p.min_radius(4096) <= 0.0 {
                    return Err(invalid("polar radius must stay positive"));
                }
                SampledCurve::from_fn(samples, |t| p.point(t))
            }
        }
    }

    /// Curvature on a uniform tangent-angle grid; fails for non-convex presets.
    pub fn profile(&self, samples: usize) -> Result<AngleProfile> {
        self.validate()?;
        if !self.is_convex() {
            return Err(FlowError::NotConvex { k_min: f64::NAN });
        }
        match self {
            Preset::Circle { radius } => AngleProfile::from_fn(samples, |_| 1.0 / radius),
            Preset::Ellipse { a, b } => AngleProfile::from_fn(samples, |theta| {
                // 1/k = a²b²/h³ with h the support function at ϑ = θ - π/2
                let v = theta - FRAC_PI_2;
                let h = (a * a * v.cos().powi(2) + b * b * v.sin().powi(2)).sqrt();
                h.powi(3) / (a * a * b * b)
            }),
            Preset::SupportOval { a, b } => {
                AngleProfile::from_fn(samples, |theta| 1.0 / Self::oval_radius(*a, b, theta - FRAC_PI_2))
            }
            _ => self.polar().expect("polar preset").profile(samples),
        }
    }

    pub fn build(&self, samples: usize, repr: Representation) -> Result<State> {
        match repr {
            Representation::Polygon => Ok(State::Curve(self.curve(samples)?)),
            Representation::Profile => Ok(State::profile(self.profile(samples)?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn circle_area_is_second_order() {
        let err = |n| (Preset::Circle { radius: 1.0 }.curve(n).unwrap().area() - PI).abs();
        assert!(err(256) < 1e-3);
        assert!((err(128) / err(256) - 4.0).abs() < 0.01);
    }

    #[test]
    fn ellipse_curvature_ratio() {
        let e = Preset::Ellipse { a: 2.0, b: 1.0 };
        let g = e.curve(2048).unwrap().geometry().unwrap();
        assert!((g.k_max() / g.k_min() - 8.0).abs() < 1e-3);
        let p = e.profile(256).unwrap();
        assert!((p.k_max() / p.k_min() - 8.0).abs() < 1e-12);
        assert!(p.is_closed());
        // spectral area of the profile against πab
        assert!((p.area() - 2.0 * PI).abs() < 1e-10);
    }

    #[test]
    fn flower_convexity_boundary() {
        // r = 1 + a cos 3t loses convexity at a = 1/10
        let convex = Preset::Flower { radius: 1.0, amp: 0.05, modes: 3 };
        let wavy = Preset::Flower { radius: 1.0, amp: 0.3, modes: 3 };
        assert!(convex.is_convex());
        assert!(!wavy.is_convex());
        assert!(convex.curve(512).unwrap().geometry().unwrap().k_min() > 0.0);
        assert!(wavy.curve(512).unwrap().geometry().unwrap().k_min() < 0.0);
        assert!(wavy.profile(64).is_err());
        assert!(Preset::Flower { radius: 1.0, amp: 1.2, modes: 3 }.curve(64).is_err());
    }

    #[test]
    fn flower_profile_matches_polygon() {
        let f = Preset::Flower { radius: 1.0, amp: 0.05, modes: 3 };
        let p = f.profile(256).unwrap();
        assert!(p.is_closed());
        let poly = f.curve(4096).unwrap();
        assert!((p.length() - poly.length()).abs() < 1e-5);
        assert!((p.area() - poly.area()).abs() < 1e-5);
        let kp = poly.geometry().unwrap();
        assert!((p.k_max() - kp.k_max()).abs() < 1e-3);
    }

    #[test]
    fn support_oval() {
        let o = Preset::SupportOval { a: 2.0, b: vec![0.0, 0.2] };
        let c = o.curve(1024).unwrap();
        let s = c.support_and_width(64).unwrap();
        for (v, h) in s.angles.iter().zip(&s.h) {
            assert!((h - (2.0 + 0.2 * (2.0 * v).cos())).abs() < 1e-4);
        }
        let p = o.profile(128).unwrap();
        assert!((p.k_min() - 1.0 / 2.6).abs() < 1e-12);
        let bad = Preset::SupportOval { a: 1.0, b: vec![0.0, 0.5] };
        assert!(matches!(bad.curve(64), Err(FlowError::NotConvex { .. })));
    }

    #[test]
    fn perturbation_is_seeded() {
        let p = |seed| Preset::Perturbed { radius: 1.0, amp: 0.05, modes: 5, seed }.curve(64).unwrap();
        assert_eq!(p(7), p(7));
        assert_ne!(p(7), p(8));
    }

    #[test]
    fn json_form() {
        let p: Preset = serde_json::from_str(r#"{"name":"flower","radius":1,"amp":0.3,"modes":3}"#).unwrap();
        assert_eq!(p, Preset::Flower { radius: 1.0, amp: 0.3, modes: 3 });
        assert!(serde_json::from_str::<Preset>(r#"{"name":"square"}"#).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn flower_convexity_agrees_with_polar_formula(amp in 0.0f64..0.4, modes in 2u32..6) {
            // curvature is smallest in a valley t = π/m, where r = 1 - a and
            // r'' = a m², giving k = (1 - a - a m²)/(1 - a)²
            let f = Preset::Flower { radius: 1.0, amp, modes };
            let m2 = (modes * modes) as f64;
            let valley = (1.0 - amp - amp * m2) / (1.0 - amp).powi(2);
            prop_assume!(valley.abs() > 1e-3);
            let predicted = valley > 0.0;
            prop_assert_eq!(f.is_convex(), predicted);
        }
    }
}
