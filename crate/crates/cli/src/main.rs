use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curvflow::flow::Trajectory;
use curvflow_cli::config::{output_root, ScenarioConfig, SweepConfig};
use curvflow_cli::persist::load_trajectory;
use curvflow_cli::plot::write_frames;
use curvflow_cli::{analyze_dir, run, sweep, CliError};

#[derive(Parser)]
#[command(name = "curvflow", version, about = "Curvature flow experiments")]
struct Cli {
    /// Output root for relative run directories [default: $CURVFLOW_OUTPUT_ROOT or .]
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve one scenario and analyse it.
    Run { config: PathBuf },
    /// Run a grid of scenarios in parallel.
    Sweep { config: PathBuf },
    /// Recompute the analyses of a stored run.
    Analyze { dir: PathBuf },
    /// Redraw the SVG frames of a stored run.
    Plot {
        dir: PathBuf,
        #[arg(long, default_value_t = 12)]
        frames: usize,
    },
}

fn config_base(path: &Path) -> PathBuf {
    path.parent().map_or_else(|| PathBuf::from("."), Path::to_path_buf)
}

fn execute(cli: Cli) -> Result<(), CliError> {
    let root = cli.out.unwrap_or_else(output_root);
    match cli.command {
        Command::Run { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            let out = run(&cfg, &root, &config_base(&config))?;
            let s = &out.summary;
            println!("{}", out.dir.display());
            println!(
                "verdict {}  T_est {}  T_max {:.6}  stop {}",
                s.verdict,
                s.t_est.map_or("-".into(), |t| format!("{t:.6}")),
                s.t_max,
                s.termination
            );
            if let Some(f) = s.failure() {
                return Err(CliError::Failed(f));
            }
        }
        Command::Sweep { config } => {
            let cfg = SweepConfig::load(&config)?;
            let (dir, index) = sweep(&cfg, &root, &config_base(&config))?;
            println!("{}", dir.join("index.json").display());
            println!("{} cells, {} failed", index.cells.len(), index.failures());
            if index.failures() > 0 {
                return Err(CliError::Failed(format!("{} sweep cells failed", index.failures())));
            }
        }
        Command::Analyze { dir } => {
            let s = analyze_dir(&dir)?;
            println!("verdict {}  {}", s.verdict, s.verdict_reason);
            if let Some(f) = s.failure() {
                return Err(CliError::Failed(f));
            }
        }
        Command::Plot { dir, frames } => {
            let traj: Trajectory = load_trajectory(&dir)?;
            let n = write_frames(&dir, &traj, frames)?;
            println!("{n} frames in {}", dir.join("frames").display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
