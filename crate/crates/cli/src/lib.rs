//! `peakon-lab`: configuration handling and the four experiment commands.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 blow-up
//! (partial outputs are kept), 3 validation failure.

pub mod config;
pub mod output;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use peakon_core::lab::{
    classification_grid, holder_sweep, holder_sweep_time_derivative, ExponentMap,
};
use peakon_core::validation::{run_suite, CheckRow};
use peakon_core::{solve, Error};

pub use config::{RunConfig, RunManifest, SweepKind};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_BLOW_UP: u8 = 2;
pub const EXIT_VALIDATION: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "peakon-lab",
    version,
    about = "Pseudo-spectral lab for the two-component cubic peakon system"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate a configuration and write trajectory and field snapshots.
    Solve(RunArgs),
    /// Report the Hölder region and exponent of a point, or a whole grid.
    Classify(ClassifyArgs),
    /// Run a Hölder sweep and fit the log-log slope.
    Sweep(RunArgs),
    /// Run a bundled invariant suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// JSON run configuration.
    #[arg(long, value_name = "PATH")]
    pub config: PathBuf,
    /// Output directory, created if missing.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("map").args(["gamma", "mu"]))]
pub struct ClassifyArgs {
    /// Solution exponent γ(s, r).
    #[arg(long, num_args = 2, value_names = ["S", "R"], allow_negative_numbers = true)]
    pub gamma: Option<Vec<f64>>,
    /// Time-derivative exponent μ(s, p).
    #[arg(long, num_args = 2, value_names = ["S", "P"], allow_negative_numbers = true)]
    pub mu: Option<Vec<f64>>,
    /// The ε₀ / ε₁ parameter of the boundary regions.
    #[arg(long)]
    pub eps: Option<f64>,
    /// Print the whole classification grid as CSV for the given map.
    #[arg(long, value_name = "MAP", value_parser = ["gamma", "mu"], conflicts_with = "map")]
    pub table: Option<String>,
    /// Grid window `S_MIN S_MAX X_MIN X_MAX` for --table.
    #[arg(
        long,
        num_args = 4,
        value_names = ["S_MIN", "S_MAX", "X_MIN", "X_MAX"],
        allow_negative_numbers = true,
        default_values_t = [2.5, 4.5, -2.0, 4.5],
        requires = "table"
    )]
    pub window: Vec<f64>,
    /// Points per axis for --table.
    #[arg(long, default_value_t = 200, requires = "table")]
    pub resolution: usize,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Suite name: oracle, conservation, pt, peakon, mollifier or all.
    #[arg(value_name = "SUITE", conflicts_with = "suite")]
    pub name: Option<String>,
    #[arg(long, value_name = "NAME")]
    pub suite: Option<String>,
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> u8 {
    let blew_up = e.chain().any(|c| {
        matches!(
            c.downcast_ref::<Error>(),
            Some(Error::BlowUp { .. } | Error::SweepAborted { .. })
        )
    });
    if blew_up {
        EXIT_BLOW_UP
    } else {
        EXIT_USAGE
    }
}

fn dispatch(command: Command) -> Result<u8> {
    match command {
        Command::Solve(args) => cmd_solve(&args.config, &args.out),
        Command::Classify(args) => cmd_classify(&args),
        Command::Sweep(args) => cmd_sweep(&args.config, &args.out),
        Command::Validate(args) => {
            let name = args.name.or(args.suite).unwrap_or_else(|| "all".into());
            cmd_validate(&name)
        }
    }
}

fn prepare(command: &str, config: &Path, out: &Path) -> Result<RunConfig> {
    let cfg = RunConfig::load(config)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    RunManifest::new(command, &cfg).write(out)?;
    Ok(cfg)
}

pub fn cmd_solve(config: &Path, out: &Path) -> Result<u8> {
    let cfg = prepare("solve", config, out)?;
    let (u0, v0) = cfg.initial_data()?;
    match solve(&u0, &v0, &cfg.solve_config()) {
        Ok(traj) => {
            output::write_trajectory(out, &traj)?;
            println!(
                "solve: {} recorded states up to t = {} in {}",
                traj.len(),
                traj.times.last().copied().unwrap_or(0.0),
                out.display()
            );
            Ok(EXIT_OK)
        }
        Err(Error::BlowUp {
            time,
            reason,
            partial,
        }) => {
            if let Some(traj) = &partial {
                output::write_trajectory(out, traj)?;
            }
            Err(Error::BlowUp {
                time,
                reason,
                partial,
            })
            .context("solve aborted; partial outputs kept")
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_sweep(config: &Path, out: &Path) -> Result<u8> {
    let cfg = prepare("sweep", config, out)?;
    let kind = cfg.sweep_kind()?;
    let (u0, v0) = cfg.initial_data()?;
    let solve_cfg = cfg.solve_config();
    let outcome = match kind {
        SweepKind::Solution(r) => holder_sweep(&u0, &v0, r, &cfg.deltas, &solve_cfg),
        SweepKind::TimeDerivative(p) => {
            holder_sweep_time_derivative(&u0, &v0, p, &cfg.deltas, &solve_cfg)
        }
    };
    match outcome {
        Ok(result) => {
            output::write_sweep(out, &result, None)?;
            println!(
                "sweep: {} at (s, {}) = ({}, {}), slope {} vs predicted {} -> {}",
                result.region,
                result.map.coordinate(),
                result.s,
                result.index,
                result.slope.map_or("n/a".into(), |m| format!("{m:.4}")),
                result.predicted_exponent,
                if result.pass { "pass" } else { "fail" }
            );
            Ok(EXIT_OK)
        }
        Err(Error::SweepAborted {
            delta,
            reason,
            partial,
        }) => {
            output::write_sweep(out, &partial, Some(&reason))?;
            Err(Error::SweepAborted {
                delta,
                reason,
                partial,
            })
            .context("sweep aborted; partial sweep.csv kept")
        }
        Err(e) => Err(e.into()),
    }
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<u8> {
    if let Some(table) = &args.table {
        let map = if table == "mu" {
            ExponentMap::Mu
        } else {
            ExponentMap::Gamma
        };
        let w = &args.window;
        let points = classification_grid(
            map,
            (w[0], w[1]),
            (w[2], w[3]),
            (args.resolution, args.resolution),
        )?;
        print!("{}", output::classification_csv(&points));
        return Ok(EXIT_OK);
    }
    let (map, pair) = match (&args.gamma, &args.mu) {
        (Some(v), None) => (ExponentMap::Gamma, v),
        (None, Some(v)) => (ExponentMap::Mu, v),
        _ => anyhow::bail!("classify needs one of --gamma S R, --mu S P or --table MAP"),
    };
    let result = map.classify(pair[0], pair[1], args.eps)?;
    let json = serde_json::json!({
        "region": result.region,
        "exponent": result.exponent,
        "eps_used": result.eps_param,
    });
    println!("{json}");
    Ok(EXIT_OK)
}

pub fn validation_table(rows: &[CheckRow]) -> String {
    let width = rows.iter().map(|r| r.check.len()).max().unwrap_or(5).max(5);
    let mut out = format!(
        "{:<12} {:<width$} {:>12} {:>12}  result\n",
        "suite", "check", "measured", "tolerance"
    );
    for r in rows {
        let tolerance = if r.tolerance.is_nan() {
            "-".to_owned()
        } else {
            format!("{:.4e}", r.tolerance)
        };
        out.push_str(&format!(
            "{:<12} {:<width$} {:>12.4e} {:>12}  {}\n",
            r.suite,
            r.check,
            r.measured,
            tolerance,
            if r.pass { "PASS" } else { "FAIL" }
        ));
    }
    out
}

pub fn cmd_validate(name: &str) -> Result<u8> {
    let rows = run_suite(name)?;
    print!("{}", validation_table(&rows));
    let failed = rows.iter().filter(|r| !r.pass).count();
    if failed == 0 {
        println!("all {} checks passed", rows.len());
        Ok(EXIT_OK)
    } else {
        println!("{failed} of {} checks failed", rows.len());
        Ok(EXIT_VALIDATION)
    }
}
