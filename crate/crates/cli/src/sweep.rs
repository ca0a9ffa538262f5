//! Parameter sweeps: independent runs in parallel, one index file.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{CellParams, SweepConfig};
use crate::error::Result;
use crate::persist::write_json;
use crate::pipeline::{run_in, Verdict};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndexEntry {
    /// Run directory relative to the sweep directory.
    pub dir: PathBuf,
    pub params: CellParams,
    /// Whether the initial curve of the cell is convex; absent if it could not be built.
    pub convex_initial: Option<bool>,
    pub verdict: Option<Verdict>,
    #[serde(rename = "T_est")]
    pub t_est: Option<f64>,
    #[serde(rename = "T_max")]
    pub t_max: Option<f64>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepIndex {
    pub cells: Vec<IndexEntry>,
}

impl SweepIndex {
    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| c.error.is_some()).count()
    }
}

/// Runs every cell below `root/<output>` and writes `index.json` there.
pub fn sweep(cfg: &SweepConfig, root: &Path, base: &Path) -> Result<(PathBuf, SweepIndex)> {
    let dir = cfg.sweep_dir(root);
    let cells = cfg.cells()?;
    let cells: Vec<IndexEntry> = cells
        .into_par_iter()
        .enumerate()
        .map(|(i, (params, scenario))| {
            let leaf = PathBuf::from(format!("cell_{i:04}"));
            let convex_initial = scenario
                .initial_state(base)
                .ok()
                .and_then(|s| s.to_curve().ok())
                .and_then(|c| c.geometry().ok())
                .map(|g| g.is_convex());
            let mut entry = IndexEntry {
                dir: leaf.clone(),
                params,
                convex_initial,
                verdict: None,
                t_est: None,
                t_max: None,
                error: None,
            };
            match run_in(&scenario, &dir.join(&leaf), base) {
                Ok(s) => {
                    entry.error = s.failure();
                    entry.verdict = Some(s.verdict);
                    entry.t_est = s.t_est;
                    entry.t_max = Some(s.t_max);
                }
                Err(e) => entry.error = Some(e.to_string()),
            }
            entry
        })
        .collect();
    let index = SweepIndex { cells };
    write_json(&dir.join("index.json"), &index)?;
    Ok((dir, index))
}
