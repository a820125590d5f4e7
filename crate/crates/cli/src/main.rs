//! `pursuit` command-line driver.
//!
//! Every flag can also come from an environment variable with the `PURSUIT_`
//! prefix (`--n-games` is `PURSUIT_N_GAMES`). Precedence is flag, then
//! environment, then the `--config` JSON file, then built-in defaults.
//!
//! Exit status: 0 when every embedded assertion holds, 1 when one fails,
//! 2 on bad input or I/O errors.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use config::{EvaderKind, Family, FileConfig, Overrides, Resolved};

#[derive(Debug, Parser)]
#[command(name = "pursuit", version, about = "Three pursuers, one evader: closed forms and simulations")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// JSON configuration file.
    #[arg(long, env = "PURSUIT_CONFIG", global = true)]
    config: Option<PathBuf>,
    /// Master seed for sampled games [default: 2024].
    #[arg(long, env = "PURSUIT_SEED", global = true)]
    seed: Option<u64>,
    /// Directory for CSV, JSON and summary output [default: out].
    #[arg(long, env = "PURSUIT_OUT_DIR", global = true)]
    out_dir: Option<PathBuf>,
    /// Time step [default: 1e-3 times the hull diameter].
    #[arg(long, env = "PURSUIT_DT", global = true)]
    dt: Option<f64>,
    /// Capture radius [default: 2 dt].
    #[arg(long, env = "PURSUIT_CAPTURE_RADIUS", global = true)]
    capture_radius: Option<f64>,
    /// Number of sampled games (montecarlo, table2).
    #[arg(long, env = "PURSUIT_N_GAMES", global = true)]
    n_games: Option<usize>,
    /// Sweep family [default: right].
    #[arg(long, env = "PURSUIT_FAMILY", global = true, value_enum)]
    family: Option<Family>,
    /// Comma-separated, strictly decreasing sweep grid [default: 0.1,0.01,0.001].
    #[arg(long, env = "PURSUIT_GRID", global = true, value_delimiter = ',')]
    grid: Option<Vec<f64>>,
}

#[derive(Debug, Args)]
struct GameArgs {
    /// Index of the sampled game, used when the config has no `players`.
    #[arg(long, env = "PURSUIT_GAME")]
    game: Option<u64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Play one game against the D-strategy and export its trace.
    Simulate {
        #[command(flatten)]
        game: GameArgs,
        /// e, e-replanning, greedy, fixed:<theta> or perturbed:<leg>:<degrees>.
        #[arg(long, env = "PURSUIT_EVADER")]
        evader: Option<EvaderKind>,
    },
    /// Closed-form game length and bounds for one game.
    Bounds {
        #[command(flatten)]
        game: GameArgs,
    },
    /// Bound ratios over many sampled games.
    Montecarlo,
    /// M_D/B along the right-triangle family or M_Chat/M_D along the flat one.
    Sweep,
    /// Closed-form derivative of M_D against finite differences.
    Table2,
}

fn run(cli: Cli) -> Result<bool> {
    let file = match &cli.common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let c = cli.common;
    let mut o = Overrides {
        seed: c.seed,
        out_dir: c.out_dir,
        dt: c.dt,
        capture_radius: c.capture_radius,
        n_games: c.n_games,
        family: c.family,
        grid: c.grid,
        ..Overrides::default()
    };
    match &cli.command {
        Command::Simulate { game, evader } => {
            o.game = game.game;
            o.evader = *evader;
        }
        Command::Bounds { game } => o.game = game.game,
        _ => {}
    }
    let cfg = Resolved::merge(file, o);
    std::fs::create_dir_all(&cfg.out_dir).with_context(|| format!("creating {}", cfg.out_dir.display()))?;

    let report = match cli.command {
        Command::Simulate { .. } => commands::simulate(&cfg)?,
        Command::Bounds { .. } => commands::bounds(&cfg)?,
        Command::Montecarlo => commands::montecarlo_cmd(&cfg)?,
        Command::Sweep => commands::sweep(&cfg)?,
        Command::Table2 => commands::table2(&cfg)?,
    };
    commands::write_summary(&cfg, &report)?;
    for a in &report.assertions {
        let tag = if a.passed { "PASS" } else { "FAIL" };
        eprintln!("{tag} {}: {}", a.name, a.detail);
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
