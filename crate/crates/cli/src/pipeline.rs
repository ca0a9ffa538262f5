//! evolve → persist → rescale → analyze.

use std::f64::consts::PI;
use std::path::{Path, PathBuf};

use curvflow::concentration::{blowup_rescale, concentration_series, critical_radius, sup_concentration};
use curvflow::curve::curve_to_json;
use curvflow::flow::{
    evolve, maximal_time_upper_bound, nonconvex_threshold, verify_identities, IdentityReport, Termination,
    Trajectory,
};
use curvflow::rescale::{
    ks_decay_track, limit_shape_residual, monotonicity_track, rescale_estimated, rescaled_area_limit,
    rescaled_entropy_track, rescaled_records, AreaLimitReport, LimitShapeReport, RescaledTrajectory,
};
use curvflow::FlowError;
use serde::{Deserialize, Serialize};

use crate::config::ScenarioConfig;
use crate::error::{CliError, Result};
use crate::persist::{load_trajectory, save_trajectory, write_file, write_json, write_jsonl};
use crate::plot::write_frames;

/// Verdict thresholds. These are reporting policy for this tool, not
/// consequences of the flow.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerdictPolicy {
    /// Relative tolerance on `Â` against `σ₁π`.
    pub area_tolerance: f64,
    /// Bound on `k̂_max/k̂_min`.
    pub roundness: f64,
    /// Bound on `sup|⟨γ̂,ν̂⟩ + σ₁k̂|`.
    pub limit_residual: f64,
}

pub const POLICY: VerdictPolicy = VerdictPolicy {
    area_tolerance: 0.02,
    roundness: 1.05,
    limit_residual: 5e-2,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// The rescaled flow ends within policy of the round circle.
    RoundPoint,
    /// The non-convex smallness condition held initially but the rescaled
    /// flow did not end round.
    ThresholdViolated,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::RoundPoint => "round_point",
            Verdict::ThresholdViolated => "threshold_violated",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    pub alpha: f64,
    pub bound: f64,
    pub squared: f64,
    /// `√L‖k_s‖₂` of the initial curve.
    pub value: f64,
    /// `L‖k_s‖₂²` of the initial curve.
    pub value_squared: f64,
    pub holds: bool,
    pub holds_squared: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShapeSummary {
    #[serde(rename = "L")]
    pub length: f64,
    #[serde(rename = "A")]
    pub area: f64,
    pub omega: i64,
    pub k_min: f64,
    pub k_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RescaledSummary {
    pub that_last: f64,
    #[serde(rename = "Ahat_last")]
    pub ahat_last: f64,
    pub roundness_last: f64,
    pub limit_shape: LimitShapeReport,
    pub area_limit: Option<AreaLimitReport>,
    pub monotonicity_max_residual: f64,
    pub monotonicity_max_increase: f64,
    pub monotonicity_nonincreasing_from: Option<f64>,
    pub ks_fitted_rate: Option<f64>,
    pub ks_envelope_holds: Option<bool>,
    pub convex_from: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropySummary {
    pub that0: Option<f64>,
    pub sup_ehat: f64,
    pub skipped: usize,
    pub final_scaled_kmax: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationSummary {
    pub rho: f64,
    pub eps1: f64,
    pub eps0: f64,
    pub r_crit0: f64,
    pub r_crit_min: f64,
    pub records: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlowupSummary {
    pub t: f64,
    pub r_t: f64,
    pub sigma2_rt: f64,
    pub median_kv: Option<f64>,
    pub drift_ratio: Option<f64>,
    pub velocity_residual: f64,
    pub frames: usize,
    pub max_self_intersections: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub name: Option<String>,
    pub verdict: Verdict,
    pub verdict_reason: String,
    #[serde(rename = "T_est")]
    pub t_est: Option<f64>,
    #[serde(rename = "T_max")]
    pub t_max: f64,
    pub threshold: ThresholdSummary,
    pub convex_initial: bool,
    pub termination: Termination,
    pub steps: usize,
    pub final_time: f64,
    pub initial: ShapeSummary,
    #[serde(rename = "final")]
    pub last: ShapeSummary,
    pub winding_constant: bool,
    /// `min (L/A - k*)` over convex snapshots.
    pub geometric_estimate_margin: Option<f64>,
    pub identities: Option<IdentityReport>,
    pub rescaled: Option<RescaledSummary>,
    pub entropy: Option<EntropySummary>,
    pub concentration: Option<ConcentrationSummary>,
    pub blowup: Option<BlowupSummary>,
    /// Analyses that could not run for this trajectory.
    pub notes: Vec<String>,
    /// Analyses that failed.
    pub errors: Vec<String>,
    pub policy: VerdictPolicy,
}

impl Summary {
    /// Reason the run counts as a numerical failure, if any.
    pub fn failure(&self) -> Option<String> {
        if self.termination == Termination::StepFailure {
            return Some("time step could not be accepted".into());
        }
        (!self.errors.is_empty()).then(|| self.errors.join("; "))
    }
}

pub struct RunOutcome {
    pub dir: PathBuf,
    pub summary: Summary,
}

fn shape(r: &curvflow::flow::DiagnosticsRecord) -> ShapeSummary {
    ShapeSummary {
        length: r.length,
        area: r.area,
        omega: r.omega,
        k_min: r.k_min,
        k_max: r.k_max,
    }
}

/// Sorts analysis failures into "not applicable" notes and real errors.
fn triage<T>(what: &str, r: curvflow::Result<T>, notes: &mut Vec<String>, errors: &mut Vec<String>) -> Option<T> {
    match r {
        Ok(v) => Some(v),
        Err(e @ (FlowError::Unavailable(_) | FlowError::InsufficientData(_))) => {
            notes.push(format!("{what}: {e}"));
            None
        }
        Err(e) => {
            errors.push(format!("{what}: {e}"));
            None
        }
    }
}

fn geometric_margin(traj: &Trajectory) -> Option<f64> {
    traj.snapshots
        .iter()
        .filter_map(|s| {
            let c = s.state.to_curve().ok()?;
            let g = c.geometry().ok()?;
            let k_star = g.median_curvature()?;
            Some(c.length() / c.area() - k_star)
        })
        .reduce(f64::min)
}

fn rescaled_summary(rescaled: &RescaledTrajectory, threshold_holds: bool, alpha: f64) -> curvflow::Result<RescaledSummary> {
    let last = rescaled
        .states
        .last()
        .ok_or_else(|| FlowError::InsufficientData("no rescaled states".into()))?;
    let limit_shape = limit_shape_residual(last, rescaled.sigma1)?;
    let mono = monotonicity_track(rescaled);
    let ks = ks_decay_track(rescaled, threshold_holds, alpha, 1e-2);
    Ok(RescaledSummary {
        that_last: last.that,
        ahat_last: last.area,
        roundness_last: if last.k_min > 0.0 { last.k_max / last.k_min } else { f64::INFINITY },
        limit_shape,
        area_limit: rescaled_area_limit(rescaled).ok(),
        monotonicity_max_residual: mono.max_residual,
        monotonicity_max_increase: mono.max_increase,
        monotonicity_nonincreasing_from: mono.nonincreasing_from,
        ks_fitted_rate: ks.fitted_rate,
        ks_envelope_holds: ks.envelope_holds,
        convex_from: ks.convex_from,
    })
}

fn verdict(
    rescaled: Option<&RescaledSummary>,
    sigma1: f64,
    convex_initial: bool,
    threshold_holds: bool,
) -> (Verdict, String) {
    if !convex_initial && !threshold_holds {
        return (
            Verdict::Inconclusive,
            "initial curve is not convex and the smallness condition fails".into(),
        );
    }
    let Some(r) = rescaled else {
        return (Verdict::Inconclusive, "no rescaled trajectory".into());
    };
    let target = sigma1 * PI;
    let mut failed = Vec::new();
    if !((r.ahat_last - target).abs() <= POLICY.area_tolerance * target) {
        failed.push(format!("Ahat = {:.6} not within {} of {:.6}", r.ahat_last, POLICY.area_tolerance, target));
    }
    if !(r.roundness_last < POLICY.roundness) {
        failed.push(format!("roundness {:.6} not below {}", r.roundness_last, POLICY.roundness));
    }
    if !(r.limit_shape.sup < POLICY.limit_residual) {
        failed.push(format!("limit residual {:.3e} not below {}", r.limit_shape.sup, POLICY.limit_residual));
    }
    if failed.is_empty() {
        (Verdict::RoundPoint, format!("round at that = {:.3}", r.that_last))
    } else if !convex_initial {
        (Verdict::ThresholdViolated, failed.join("; "))
    } else {
        (Verdict::Inconclusive, failed.join("; "))
    }
}

/// Runs every enabled analysis on `traj`, writing series into `dir`.
pub fn analyze(cfg: &ScenarioConfig, traj: &Trajectory, dir: &Path) -> Result<Summary> {
    let p = &traj.params;
    let first = &traj.records[0];
    let last = traj.records.last().expect("trajectory has records");
    let t_max = maximal_time_upper_bound(first.length, first.area, p)?;
    let bound = nonconvex_threshold(p, t_max, cfg.alpha)?;
    let value = first.threshold_functional();
    let threshold = ThresholdSummary {
        alpha: cfg.alpha,
        bound: bound.bound,
        squared: bound.squared,
        value,
        value_squared: value * value,
        holds: bound.holds(value),
        holds_squared: bound.holds_squared(value * value),
    };
    let first_curve = traj.initial().state.to_curve()?;
    let convex_initial = first_curve.geometry()?.is_convex();

    let mut notes = Vec::new();
    let mut errors = Vec::new();
    let t = &cfg.analysis;

    let identities = if t.identities {
        triage("identities", verify_identities(traj), &mut notes, &mut errors)
    } else {
        None
    };

    let rescaled = if t.rescaling {
        triage("rescaling", rescale_estimated(traj), &mut notes, &mut errors)
    } else {
        None
    };
    let mut rescaled_sum = None;
    let mut entropy = None;
    if let Some(r) = &rescaled {
        write_jsonl(&dir.join("rescaled.jsonl"), rescaled_records(r))?;
        rescaled_sum = triage(
            "rescaled summary",
            rescaled_summary(r, threshold.holds, cfg.alpha),
            &mut notes,
            &mut errors,
        );
        if t.entropy {
            let e = rescaled_entropy_track(r, 1e-3);
            entropy = Some(EntropySummary {
                that0: e.that0,
                sup_ehat: e.sup_ehat,
                skipped: e.skipped,
                final_scaled_kmax: e.records.last().map(|x| x.scaled_kmax),
            });
        }
    } else if t.entropy && !t.rescaling {
        notes.push("entropy: needs rescaling".into());
    }

    let mut concentration = None;
    let mut blowup = None;
    if t.concentration {
        let c = &cfg.concentration;
        let search = c.search();
        let series = triage(
            "concentration",
            concentration_series(traj, c.rho, c.eps1, c.stride, &search),
            &mut notes,
            &mut errors,
        );
        if let Some(series) = series {
            write_jsonl(&dir.join("concentration.jsonl"), &series)?;
            let initial = sup_concentration(&first_curve, c.rho, &search)
                .and_then(|(eps0, _)| Ok((eps0, critical_radius(&first_curve, c.eps1, &search)?.radius)));
            if let Some((eps0, r0)) = triage("concentration", initial, &mut notes, &mut errors) {
                concentration = Some(ConcentrationSummary {
                    rho: c.rho,
                    eps1: c.eps1,
                    eps0,
                    r_crit0: r0,
                    r_crit_min: series.iter().map(|r| r.r_crit).fold(r0, f64::min),
                    records: series.len(),
                });
            }
        }
    }
    if t.blowup {
        let c = &cfg.concentration;
        let report = match traj.t_est {
            Some(te) => blowup_rescale(traj, c.blowup_fraction * te, c.eps1, &c.blowup()),
            None => Err(FlowError::Unavailable("no extinction estimate".into())),
        };
        if let Some(b) = triage("blowup", report, &mut notes, &mut errors) {
            for (j, f) in b.frames.iter().enumerate() {
                write_file(&dir.join(format!("blowup/v_{j:03}.json")), &curve_to_json(&f.curve))?;
            }
            blowup = Some(BlowupSummary {
                t: b.t,
                r_t: b.r_t,
                sigma2_rt: b.sigma2_rt,
                median_kv: b.median_kv,
                drift_ratio: b.drift_ratio,
                velocity_residual: b.velocity_residual,
                frames: b.frames.len(),
                max_self_intersections: b.frames.iter().map(|f| f.self_intersections).max().unwrap_or(0),
            });
        }
    }

    let (verdict, verdict_reason) = verdict(rescaled_sum.as_ref(), p.sigma1, convex_initial, threshold.holds);
    let summary = Summary {
        name: cfg.name.clone(),
        verdict,
        verdict_reason,
        t_est: traj.t_est,
        t_max,
        threshold,
        convex_initial,
        termination: traj.termination,
        steps: traj.steps,
        final_time: traj.final_time(),
        initial: shape(first),
        last: shape(last),
        winding_constant: traj.records.iter().all(|r| r.omega == first.omega),
        geometric_estimate_margin: geometric_margin(traj),
        identities,
        rescaled: rescaled_sum,
        entropy,
        concentration,
        blowup,
        notes,
        errors,
        policy: POLICY,
    };
    write_json(&dir.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Evolves the configured scenario into `dir`.
pub fn run_in(cfg: &ScenarioConfig, dir: &Path, base: &Path) -> Result<Summary> {
    cfg.validate()?;
    let initial = cfg.initial_state(base)?;
    std::fs::create_dir_all(dir).map_err(CliError::io(dir))?;
    write_json(&dir.join("config.json"), cfg)?;
    let traj = evolve(initial, &cfg.params)?;
    save_trajectory(dir, &traj)?;
    let summary = analyze(cfg, &traj, dir)?;
    write_frames(dir, &traj, cfg.frames)?;
    Ok(summary)
}

/// Runs a scenario below the output root. Relative curve-file paths are
/// resolved against `base`.
pub fn run(cfg: &ScenarioConfig, root: &Path, base: &Path) -> Result<RunOutcome> {
    let dir = cfg.run_dir(root);
    let summary = run_in(cfg, &dir, base)?;
    Ok(RunOutcome { dir, summary })
}

/// Re-analyses a stored run directory.
pub fn analyze_dir(dir: &Path) -> Result<Summary> {
    let cfg = ScenarioConfig::load(&dir.join("config.json"))?;
    let traj = load_trajectory(dir)?;
    analyze(&cfg, &traj, dir)
}
