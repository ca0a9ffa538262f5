//! On-disk layout of a run directory.
//!
//! ```text
//! config.json        resolved scenario
//! trajectory.json    run metadata (params, stop reason, estimate, resample marks)
//! records.jsonl      per-step diagnostics
//! snapshots.jsonl    stored states
//! rescaled.jsonl     rescaled diagnostics (optional)
//! concentration.jsonl
//! blowup/            blowup frames as curve files, indexed by v
//! frames/            SVG figures
//! summary.json
//! ```

use std::fs;
use std::io::Write;
use std::path::Path;

use curvflow::flow::{parse_records, FlowParams, Snapshot, Termination, Trajectory};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
struct TrajectoryMeta {
    params: FlowParams,
    termination: Termination,
    t_est: Option<f64>,
    area_floor: f64,
    k_cap: f64,
    steps: usize,
    /// Indices of records after which the polygon was resampled.
    resampled: Vec<usize>,
}

pub fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).map_err(CliError::io(parent))?;
    }
    let mut f = fs::File::create(path).map_err(CliError::io(path))?;
    f.write_all(contents.as_bytes()).map_err(CliError::io(path))?;
    f.sync_all().map_err(CliError::io(path))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value).expect("outputs serialise");
    text.push('\n');
    write_file(path, &text)
}

pub fn write_jsonl<T: Serialize>(path: &Path, items: impl IntoIterator<Item = T>) -> Result<()> {
    let mut text = String::new();
    for item in items {
        text.push_str(&serde_json::to_string(&item).expect("outputs serialise"));
        text.push('\n');
    }
    write_file(path, &text)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(CliError::io(path))
}

pub fn save_trajectory(dir: &Path, traj: &Trajectory) -> Result<()> {
    write_file(&dir.join("records.jsonl"), &traj.records_jsonl())?;
    write_jsonl(&dir.join("snapshots.jsonl"), &traj.snapshots)?;
    let meta = TrajectoryMeta {
        params: traj.params.clone(),
        termination: traj.termination,
        t_est: traj.t_est,
        area_floor: traj.area_floor,
        k_cap: traj.k_cap,
        steps: traj.steps,
        resampled: traj
            .records
            .iter()
            .enumerate()
            .filter(|(_, r)| r.resampled)
            .map(|(i, _)| i)
            .collect(),
    };
    write_json(&dir.join("trajectory.json"), &meta)
}

pub fn load_trajectory(dir: &Path) -> Result<Trajectory> {
    let bad = |what: &str, e: String| CliError::Usage(format!("{}: {what}: {e}", dir.display()));
    let meta: TrajectoryMeta =
        serde_json::from_str(&read(&dir.join("trajectory.json"))?).map_err(|e| bad("trajectory.json", e.to_string()))?;
    let mut records = parse_records(&read(&dir.join("records.jsonl"))?).map_err(|e| bad("records.jsonl", e.to_string()))?;
    for &i in &meta.resampled {
        if let Some(r) = records.get_mut(i) {
            r.resampled = true;
        }
    }
    let snapshots = read(&dir.join("snapshots.jsonl"))?
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(serde_json::from_str::<Snapshot>)
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| bad("snapshots.jsonl", e.to_string()))?;
    if snapshots.is_empty() {
        return Err(bad("snapshots.jsonl", "no snapshots".into()));
    }
    Ok(Trajectory {
        params: meta.params,
        snapshots,
        records,
        termination: meta.termination,
        t_est: meta.t_est,
        area_floor: meta.area_floor,
        k_cap: meta.k_cap,
        steps: meta.steps,
    })
}
