//! Scenario and sweep configuration files (JSON).

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use curvflow::concentration::{BlowupOptions, CenterSet, SearchOptions};
use curvflow::curve::parse_curve;
use curvflow::flow::{FlowParams, State};
use curvflow::presets::{Preset, Representation};
use serde::{Deserialize, Deserializer, Serialize};
use serde_json::Value;

use crate::error::{CliError, Result};

/// Environment variable naming the directory relative outputs are placed under.
pub const OUTPUT_ROOT_VAR: &str = "CURVFLOW_OUTPUT_ROOT";

/// Where the initial curve comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Initial {
    Preset(Preset),
    /// A curve file: JSON `{"points": [[x, y], ...]}` or `x,y` rows.
    File(PathBuf),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisToggles {
    pub identities: bool,
    pub rescaling: bool,
    pub entropy: bool,
    pub concentration: bool,
    pub blowup: bool,
}

impl Default for AnalysisToggles {
    fn default() -> Self {
        Self {
            identities: true,
            rescaling: true,
            entropy: true,
            concentration: false,
            blowup: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConcentrationSettings {
    pub rho: f64,
    pub eps1: f64,
    /// Use every this many snapshots.
    pub stride: usize,
    pub centers: CenterSet,
    /// Blowup time as a fraction of the extinction estimate.
    pub blowup_fraction: f64,
    pub blowup_frames: usize,
    pub blowup_v_max: f64,
}

impl Default for ConcentrationSettings {
    fn default() -> Self {
        Self {
            rho: 0.5,
            eps1: 1.0,
            stride: 10,
            centers: CenterSet::Plane,
            blowup_fraction: 0.9,
            blowup_frames: 11,
            blowup_v_max: 1.0,
        }
    }
}

impl ConcentrationSettings {
    pub fn search(&self) -> SearchOptions {
        SearchOptions {
            centers: self.centers,
            ..SearchOptions::default()
        }
    }

    pub fn blowup(&self) -> BlowupOptions {
        BlowupOptions {
            v_max: self.blowup_v_max,
            v_count: self.blowup_frames,
            search: self.search(),
        }
    }
}

/// Flow parameters used when a config leaves a field out. Runs go deeper
/// towards extinction than the library default so that rescaled limits are visible.
pub fn default_params() -> FlowParams {
    FlowParams {
        area_floor_ratio: 1e-5,
        ..FlowParams::default()
    }
}

fn params_over_defaults<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<FlowParams, D::Error> {
    let given = Value::deserialize(d)?;
    let mut base = serde_json::to_value(default_params()).map_err(serde::de::Error::custom)?;
    match given {
        Value::Object(fields) => {
            let obj = base.as_object_mut().expect("params serialise to an object");
            for (k, v) in fields {
                if !obj.contains_key(&k) {
                    return Err(serde::de::Error::custom(format!("unknown flow parameter `{k}`")));
                }
                obj.insert(k, v);
            }
        }
        Value::Null => {}
        _ => return Err(serde::de::Error::custom("params must be an object")),
    }
    serde_json::from_value(base).map_err(serde::de::Error::custom)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub name: Option<String>,
    pub initial: Initial,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub representation: Representation,
    #[serde(default = "default_params", deserialize_with = "params_over_defaults")]
    pub params: FlowParams,
    #[serde(default)]
    pub analysis: AnalysisToggles,
    #[serde(default)]
    pub concentration: ConcentrationSettings,
    /// Exponent in the smallness condition for non-convex curves, in (0, 2).
    #[serde(default = "default_alpha")]
    pub alpha: f64,
    /// Number of SVG frames written by `run`.
    #[serde(default = "default_frames")]
    pub frames: usize,
    /// Run directory; relative paths are resolved against the output root.
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Overrides the seed of a `perturbed` preset.
    #[serde(default)]
    pub seed: Option<u64>,
}

fn default_samples() -> usize {
    256
}

fn default_alpha() -> f64 {
    1.0
}

fn default_frames() -> usize {
    12
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::from_json(&text)
    }

    /// The preset with the configured seed applied.
    pub fn preset(&self) -> Option<Preset> {
        match (&self.initial, self.seed) {
            (Initial::Preset(Preset::Perturbed { radius, amp, modes, .. }), Some(seed)) => Some(Preset::Perturbed {
                radius: *radius,
                amp: *amp,
                modes: *modes,
                seed,
            }),
            (Initial::Preset(p), _) => Some(p.clone()),
            (Initial::File(_), _) => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let usage = |e: curvflow::FlowError| CliError::Usage(e.to_string());
        self.params.validate().map_err(usage)?;
        if let Some(p) = self.preset() {
            p.validate().map_err(usage)?;
        }
        if self.samples < 16 {
            return Err(CliError::Usage(format!("samples must be at least 16, got {}", self.samples)));
        }
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(CliError::Usage(format!("alpha must lie in (0, 2), got {}", self.alpha)));
        }
        let c = &self.concentration;
        if !(c.rho > 0.0 && c.eps1 > 0.0 && c.blowup_fraction > 0.0 && c.blowup_fraction < 1.0) {
            return Err(CliError::Usage(
                "concentration needs rho, eps1 > 0 and blowup_fraction in (0, 1)".into(),
            ));
        }
        Ok(())
    }

    /// Builds the initial state; file paths are resolved against `base`.
    pub fn initial_state(&self, base: &Path) -> Result<State> {
        match &self.initial {
            Initial::File(path) => {
                let path = base.join(path);
                let text = std::fs::read_to_string(&path).map_err(CliError::io(&path))?;
                let curve = parse_curve(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
                match self.representation {
                    Representation::Polygon => Ok(State::Curve(curve)),
                    Representation::Profile => Ok(State::profile(curve.angle_profile(self.samples)?)),
                }
            }
            Initial::Preset(_) => {
                let preset = self.preset().expect("preset initial");
                preset.build(self.samples, self.representation).map_err(|e| match e {
                    curvflow::FlowError::NotConvex { .. } | curvflow::FlowError::InvalidParameter(_) => {
                        CliError::Usage(format!("preset: {e}"))
                    }
                    other => CliError::Numerical(other),
                })
            }
        }
    }

    /// Resolved run directory.
    pub fn run_dir(&self, root: &Path) -> PathBuf {
        let leaf = self
            .output
            .clone()
            .or_else(|| self.name.clone().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("run"));
        root.join(leaf)
    }
}

/// Output root: the environment variable if set, else the working directory.
pub fn output_root() -> PathBuf {
    std::env::var_os(OUTPUT_ROOT_VAR).map_or_else(|| PathBuf::from("."), PathBuf::from)
}

/// Parameter grid of a sweep. Cells are the Cartesian product in the order
/// σ₁, σ₂, then preset fields by name.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepGrid {
    pub sigma1: Vec<f64>,
    pub sigma2: Vec<f64>,
    pub preset: BTreeMap<String, Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub template: ScenarioConfig,
    pub grid: SweepGrid,
    #[serde(default)]
    pub output: Option<PathBuf>,
}

/// Values of one sweep cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellParams {
    pub sigma1: f64,
    pub sigma2: f64,
    pub preset: BTreeMap<String, Value>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Usage(format!("sweep config: {e}")))?;
        cfg.cells()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(CliError::io(path))?;
        Self::from_json(&text)
    }

    /// Expands the grid into one scenario per cell.
    pub fn cells(&self) -> Result<Vec<(CellParams, ScenarioConfig)>> {
        let s1 = if self.grid.sigma1.is_empty() { vec![self.template.params.sigma1] } else { self.grid.sigma1.clone() };
        let s2 = if self.grid.sigma2.is_empty() { vec![self.template.params.sigma2] } else { self.grid.sigma2.clone() };
        if !self.grid.preset.is_empty() && !matches!(self.template.initial, Initial::Preset(_)) {
            return Err(CliError::Usage("preset grid needs a preset initial curve".into()));
        }
        let mut combos: Vec<BTreeMap<String, Value>> = vec![BTreeMap::new()];
        for (key, values) in &self.grid.preset {
            if values.is_empty() {
                return Err(CliError::Usage(format!("grid for `{key}` is empty")));
            }
            combos = combos
                .into_iter()
                .flat_map(|c| {
                    values.iter().map(move |v| {
                        let mut c = c.clone();
                        c.insert(key.clone(), v.clone());
                        c
                    })
                })
                .collect();
        }
        let mut out = Vec::new();
        for &a in &s1 {
            for &b in &s2 {
                for combo in &combos {
                    let mut cfg = self.template.clone();
                    cfg.params.sigma1 = a;
                    cfg.params.sigma2 = b;
                    if let Initial::Preset(p) = &cfg.initial {
                        let mut v = serde_json::to_value(p).expect("presets serialise");
                        let obj = v.as_object_mut().expect("preset is an object");
                        for (k, val) in combo {
                            if k == "name" || !obj.contains_key(k) {
                                return Err(CliError::Usage(format!("preset has no parameter `{k}`")));
                            }
                            obj.insert(k.clone(), val.clone());
                        }
                        cfg.initial = Initial::Preset(
                            serde_json::from_value(v).map_err(|e| CliError::Usage(format!("sweep cell: {e}")))?,
                        );
                    }
                    cfg.output = None;
                    cfg.validate()?;
                    out.push((
                        CellParams {
                            sigma1: a,
                            sigma2: b,
                            preset: combo.clone(),
                        },
                        cfg,
                    ));
                }
            }
        }
        Ok(out)
    }

    pub fn sweep_dir(&self, root: &Path) -> PathBuf {
        root.join(self.output.clone().unwrap_or_else(|| PathBuf::from("sweep")))
    }
}
