//! Comparison of finite-difference rates with the exact evolution laws
//! `L' = -σ₁∫k² - 2πωσ₂`, `A' = -2πωσ₁ - σ₂L`, `E' = -∫F²`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{FlowError, Result};
use crate::flow::{DiagnosticsRecord, Trajectory};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub length: f64,
    pub area: f64,
    pub energy: f64,
    /// Records at which the rates were compared.
    pub samples: usize,
}

impl IdentityReport {
    pub fn max(&self) -> f64 {
        self.length.max(self.area).max(self.energy)
    }
}

/// Exact rates `(L', A', E')` for the state behind a record.
pub fn exact_rates(r: &DiagnosticsRecord, sigma1: f64, sigma2: f64) -> (f64, f64, f64) {
    let w = TAU * r.omega as f64;
    (
        -sigma1 * r.int_k2 - w * sigma2,
        -w * sigma1 - sigma2 * r.length,
        -r.int_f2,
    )
}

/// Maximum relative residuals over the whole run.
pub fn verify_identities(traj: &Trajectory) -> Result<IdentityReport> {
    verify_identities_between(traj, f64::NEG_INFINITY, f64::INFINITY)
}

/// Maximum relative residuals over records with `t0 ≤ t ≤ t1`. Records next
/// to a resampling are skipped since the state jumps there.
pub fn verify_identities_between(traj: &Trajectory, t0: f64, t1: f64) -> Result<IdentityReport> {
    let recs = &traj.records;
    if recs.len() < 3 {
        return Err(FlowError::InsufficientData(format!(
            "identity check needs 3 records, got {}",
            recs.len()
        )));
    }
    let (s1, s2) = (traj.params.sigma1, traj.params.sigma2);
    let mut report = IdentityReport {
        length: 0.0,
        area: 0.0,
        energy: 0.0,
        samples: 0,
    };
    for i in 1..recs.len() - 1 {
        let (a, b, c) = (&recs[i - 1], &recs[i], &recs[i + 1]);
        if b.t < t0 || b.t > t1 || b.resampled || c.resampled {
            continue;
        }
        let rate = |f: fn(&DiagnosticsRecord) -> f64| central_difference(a.t, b.t, c.t, f(a), f(b), f(c));
        let (dl, da, de) = exact_rates(b, s1, s2);
        let rel = |num: f64, exact: f64| (num - exact).abs() / exact.abs();
        report.length = report.length.max(rel(rate(|r| r.length), dl));
        report.area = report.area.max(rel(rate(|r| r.area), da));
        report.energy = report.energy.max(rel(rate(|r| r.energy), de));
        report.samples += 1;
    }
    if report.samples == 0 {
        return Err(FlowError::InsufficientData("no records in the window".into()));
    }
    Ok(report)
}

/// Three-point derivative at the middle of a non-uniform stencil.
pub fn central_difference(t0: f64, t1: f64, t2: f64, f0: f64, f1: f64, f2: f64) -> f64 {
    let (h0, h1) = (t1 - t0, t2 - t1);
    (-h1 / (h0 * (h0 + h1))) * f0 + ((h1 - h0) / (h0 * h1)) * f1 + (h0 / (h1 * (h0 + h1))) * f2
}
