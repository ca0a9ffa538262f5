//! Configuration-driven experiments for the curvature flow: scenario files,
//! run directories, sweeps and figures.

// `!(x > 0.0)` is used on purpose so that NaN is rejected too
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod persist;
pub mod pipeline;
pub mod plot;
pub mod sweep;

pub use config::{ScenarioConfig, SweepConfig};
pub use error::{CliError, Result};
pub use pipeline::{analyze_dir, run, RunOutcome, Summary, Verdict};
pub use sweep::{sweep, SweepIndex};
