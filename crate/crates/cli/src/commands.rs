use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use anyhow::{Context, Result};
use pursuit::engine::{write_trace_csv, write_trace_json, TRACE_SCHEMA_VERSION};
use pursuit::experiments::{
    flat_isosceles_sweep, montecarlo, right_triangle_sweep, summarize, table2_check, table2_curve,
    write_flat_sweep_csv, write_montecarlo_csv, write_right_sweep_csv, write_table2_curve_csv, write_table2_games_csv,
    SamplerConfig, CSV_SCHEMA_VERSION,
};
use pursuit::strategies::Perturbation;
use pursuit::{
    run_game, voronoi_cell, BoundsReport, DTeam, EStrategyEvader, EvaderPolicy, FixedHeadingEvader, GreedyVertexEvader,
    PlayerSet,
};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{EvaderKind, Family, Resolved};

pub const SUMMARY_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), passed, detail: detail.into() }
    }

    fn from_result<T, E: std::fmt::Display>(name: &str, r: &std::result::Result<T, E>) -> Self {
        match r {
            Ok(_) => Self::new(name, true, "ok"),
            Err(e) => Self::new(name, false, e.to_string()),
        }
    }
}

/// What a subcommand produced; written to `summary.json`.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub files: Vec<String>,
    pub assertions: Vec<Assertion>,
    pub results: Value,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.passed)
    }
}

/// Six significant digits.
pub fn sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let mag = x.abs().log10().floor() as i32;
    if (-4..6).contains(&mag) {
        format!("{:.*}", (5 - mag).max(0) as usize, x)
    } else {
        format!("{x:.5e}")
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    let path = dir.join(name);
    Ok(BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?))
}

fn write_json(dir: &Path, name: &str, value: &Value) -> Result<()> {
    let mut w = create(dir, name)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    std::io::Write::flush(&mut w)?;
    Ok(())
}

fn evader_for(kind: EvaderKind, players: &PlayerSet) -> Result<Box<dyn EvaderPolicy>> {
    Ok(match kind {
        EvaderKind::E => Box::new(EStrategyEvader::new()),
        EvaderKind::EReplanning => Box::new(EStrategyEvader::new().replanning(true)),
        EvaderKind::Greedy => Box::new(GreedyVertexEvader::new(players)?),
        EvaderKind::Fixed(theta) => Box::new(FixedHeadingEvader::new(players, theta)?),
        EvaderKind::Perturbed { leg, degrees } => {
            Box::new(EStrategyEvader::new().with_perturbation(Perturbation { leg, angle: degrees.to_radians() }))
        }
    })
}

fn players_json(p: &PlayerSet) -> Result<Value> {
    let cell = voronoi_cell(p)?;
    Ok(json!({ "players": p, "angles": cell.angles, "assignment": cell.assignment }))
}

pub fn simulate(cfg: &Resolved) -> Result<Report> {
    let players = cfg.players(SamplerConfig::well_conditioned())?;
    let params = cfg.sim_params(&players)?;
    let mut evader = evader_for(cfg.evader, &players)?;
    let trace = run_game(&players, &mut evader, &mut DTeam::d_strategy(), &params)?;
    write_trace_json(&trace, create(&cfg.out_dir, "trace.json")?)?;
    write_trace_csv(&trace, create(&cfg.out_dir, "trace.csv")?)?;

    let bounds = BoundsReport::compute(&players)?;
    let m_d = bounds.m_d;
    let t = trace.capture_time();
    println!("evader      {}", String::from(cfg.evader));
    println!("dt          {}", sig(params.dt));
    println!("radius      {}", sig(params.capture_radius));
    println!("M_D         {}", sig(m_d));
    println!("B           {}", sig(bounds.b_lower));
    println!("B/M_D       {}", sig(bounds.delta_lower));
    match t {
        Some(t) => println!("capture     {} ({} M_D)", sig(t), sig(t / m_d)),
        None => println!("capture     none by {}", sig(params.max_time)),
    }

    let captured = trace.captured() && t.is_some_and(|t| t <= params.max_time);
    Ok(Report {
        command: "simulate",
        files: vec!["trace.json".into(), "trace.csv".into()],
        assertions: vec![
            Assertion::from_result("trace moves at unit speed", &trace.check_invariants()),
            Assertion::new("evader captured before max_time", captured, format!("capture time {t:?}")),
        ],
        results: json!({
            "game": players_json(&players)?,
            "params": params,
            "evader": cfg.evader,
            "bounds": bounds,
            "capture": trace.capture,
            "steps": trace.samples.len() - 1,
            "trace_schema_version": TRACE_SCHEMA_VERSION,
        }),
    })
}

pub fn bounds(cfg: &Resolved) -> Result<Report> {
    let players = cfg.players(SamplerConfig::well_conditioned())?;
    let report = BoundsReport::compute(&players)?;
    let out = json!({ "game": players_json(&players)?, "bounds": report });
    write_json(&cfg.out_dir, "bounds.json", &out)?;

    let rows = [
        ("l", report.l),
        ("m", report.m),
        ("s", report.s),
        ("M_D", report.m_d),
        ("B", report.b_lower),
        ("B_P", report.b_p),
        ("delta0", report.delta0),
        ("B/M_D", report.delta_lower),
    ];
    for (name, v) in rows {
        println!("{name:<8}{}", sig(v));
    }
    println!("{:<8}P{}", "i*", report.i_star);

    Ok(Report {
        command: "bounds",
        files: vec!["bounds.json".into()],
        assertions: vec![Assertion::from_result("bound chain holds", &report.check_invariants())],
        results: out,
    })
}

pub fn montecarlo_cmd(cfg: &Resolved) -> Result<Report> {
    let sampler = cfg.sampler_or(SamplerConfig::log_radial())?;
    let n = cfg.n_games_or(10_000)?;
    let records = montecarlo(&sampler, n)?;
    let summary = summarize(&records).context("no games")?;
    if summary.passed() {
        write_montecarlo_csv(&records, create(&cfg.out_dir, "montecarlo.csv")?)?;
    }

    println!("{:<10}{:>14}{:>14}{:>14}", "ratio", "min", "median", "max");
    for (name, s) in [("B_P/M_D", summary.bp_over_md), ("M_D/B", summary.md_over_b), ("B/M_D", summary.delta_lower)] {
        println!("{name:<10}{:>14}{:>14}{:>14}", sig(s.min), sig(s.median), sig(s.max));
    }

    let first = summary.violations.first().map(|(i, e)| format!("game {i}: {e}"));
    Ok(Report {
        command: "montecarlo",
        files: if summary.passed() { vec!["montecarlo.csv".into()] } else { vec![] },
        assertions: vec![
            Assertion::new(
                "bound chain holds in every game",
                summary.violations.is_empty(),
                first.unwrap_or_else(|| format!("{n} games")),
            ),
            Assertion::new("B_P >= B in every game", summary.bp_below_b == 0, format!("{} below", summary.bp_below_b)),
        ],
        results: json!({ "sampler": sampler.config, "summary": summary }),
    })
}

pub fn sweep(cfg: &Resolved) -> Result<Report> {
    match cfg.family {
        Family::Right => {
            let sweep = right_triangle_sweep(cfg.sweep.m, &cfg.grid)?;
            write_right_sweep_csv(&sweep, create(&cfg.out_dir, "sweep_right.csv")?)?;
            println!("{:>14}{:>14}{:>14}{:>14}", "s", "M_D", "B", "M_D/B");
            for r in &sweep.rows {
                println!("{:>14}{:>14}{:>14}{:>14}", sig(r.s), sig(r.m_d), sig(r.b_lower), sig(r.ratio));
            }
            let ratios: Vec<f64> = sweep.rows.iter().map(|r| r.ratio).collect();
            Ok(Report {
                command: "sweep",
                files: vec!["sweep_right.csv".into()],
                assertions: vec![Assertion::new(
                    "M_D/B strictly decreases along the grid",
                    sweep.monotone,
                    format!("{ratios:?}"),
                )],
                results: serde_json::to_value(&sweep)?,
            })
        }
        Family::Flat => {
            let sweep = flat_isosceles_sweep(cfg.sweep.l, &cfg.grid, &cfg.sweep.flat)?;
            write_flat_sweep_csv(&sweep, create(&cfg.out_dir, "sweep_flat.csv")?)?;
            println!("{:>14}{:>14}{:>14}{:>14}{:>14}", "eps", "M_D", "M_D sim", "M_Chat sim", "ratio");
            for r in &sweep.rows {
                println!(
                    "{:>14}{:>14}{:>14}{:>14}{:>14}",
                    sig(r.eps),
                    sig(r.m_d),
                    sig(r.m_d_sim),
                    sig(r.m_chat_sim),
                    sig(r.ratio)
                );
            }
            let ratios: Vec<f64> = sweep.rows.iter().map(|r| r.ratio).collect();
            Ok(Report {
                command: "sweep",
                files: vec!["sweep_flat.csv".into()],
                assertions: vec![Assertion::new(
                    "M_Chat/M_D strictly decreases along the grid",
                    sweep.monotone,
                    format!("{ratios:?}"),
                )],
                results: serde_json::to_value(&sweep)?,
            })
        }
    }
}

pub fn table2(cfg: &Resolved) -> Result<Report> {
    let sampler = cfg.sampler_or(SamplerConfig::well_conditioned())?;
    let n = cfg.n_games_or(100)?;
    let games = table2_check(&sampler, n, &cfg.table2)?;
    let curves = games
        .iter()
        .map(|g| Ok((g.index, table2_curve(&sampler.sample(g.index)?, &cfg.table2)?)))
        .collect::<Result<Vec<_>>>()?;
    write_table2_games_csv(&games, create(&cfg.out_dir, "table2_games.csv")?)?;
    write_table2_curve_csv(&curves, create(&cfg.out_dir, "table2_curve.csv")?)?;

    let worst = games.iter().max_by(|a, b| a.max_residual.total_cmp(&b.max_residual)).context("no games")?;
    let failed: Vec<u64> = games.iter().filter(|g| !g.passed).map(|g| g.index).collect();
    println!("games           {n}");
    println!("max residual    {} (game {})", sig(worst.max_residual), worst.index);
    println!("failed          {}", failed.len());

    Ok(Report {
        command: "table2",
        files: vec!["table2_games.csv".into(), "table2_curve.csv".into()],
        assertions: vec![Assertion::new(
            "closed-form derivative matches finite differences and peaks at 0, pi, 2pi - phi1",
            failed.is_empty(),
            format!("failed games {failed:?}, worst residual {}", worst.max_residual),
        )],
        results: json!({
            "sampler": sampler.config,
            "config": cfg.table2,
            "max_residual": worst.max_residual,
            "failed": failed,
        }),
    })
}

/// Writes `summary.json` next to the other outputs.
pub fn write_summary(cfg: &Resolved, report: &Report) -> Result<()> {
    let out = json!({
        "schema_version": SUMMARY_SCHEMA_VERSION,
        "csv_schema_version": CSV_SCHEMA_VERSION,
        "trace_schema_version": TRACE_SCHEMA_VERSION,
        "command": report.command,
        "config": cfg,
        "files": report.files,
        "assertions": report.assertions,
        "passed": report.passed(),
        "results": report.results,
    });
    write_json(&cfg.out_dir, "summary.json", &out)
}
