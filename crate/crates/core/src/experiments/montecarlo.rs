use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::sampler::GameSampler;
use crate::bounds::BoundsReport;
use crate::error::Result;
use crate::geometry::PlayerSet;

pub const MONTECARLO_CSV_HEADER: [&str; 19] = [
    "index",
    "ex",
    "ey",
    "p1x",
    "p1y",
    "p2x",
    "p2y",
    "p3x",
    "p3y",
    "l",
    "m",
    "s",
    "m_d",
    "b_lower",
    "b_p",
    "delta0",
    "delta_lower",
    "i_star",
    "bp_over_md",
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameRecord {
    pub index: u64,
    pub players: PlayerSet,
    pub report: BoundsReport,
}

impl GameRecord {
    pub fn bp_over_md(&self) -> f64 {
        self.report.b_p / self.report.m_d
    }
}

/// Minimum, median and maximum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Spread {
    pub min: f64,
    pub median: f64,
    pub max: f64,
}

impl Spread {
    pub fn of(values: impl IntoIterator<Item = f64>) -> Option<Self> {
        let mut v: Vec<f64> = values.into_iter().collect();
        if v.is_empty() {
            return None;
        }
        v.sort_by(f64::total_cmp);
        let n = v.len();
        let median = if n % 2 == 1 { v[n / 2] } else { 0.5 * (v[n / 2 - 1] + v[n / 2]) };
        Some(Self { min: v[0], median, max: v[n - 1] })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    pub n_games: usize,
    pub bp_over_md: Spread,
    pub md_over_b: Spread,
    pub delta_lower: Spread,
    /// Games breaking some relation of the bound chain, with the reason.
    pub violations: Vec<(u64, String)>,
    /// Games with `B_P < B`.
    pub bp_below_b: usize,
}

impl MonteCarloSummary {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.bp_below_b == 0
    }
}

/// Closed-form quantities for games `0..n` of `sampler`, in index order.
pub fn montecarlo(sampler: &GameSampler, n: usize) -> Result<Vec<GameRecord>> {
    (0..n as u64)
        .into_par_iter()
        .map(|index| {
            let players = sampler.sample(index)?;
            Ok(GameRecord { index, players, report: BoundsReport::compute(&players)? })
        })
        .collect()
}

pub fn summarize(records: &[GameRecord]) -> Option<MonteCarloSummary> {
    Some(MonteCarloSummary {
        n_games: records.len(),
        bp_over_md: Spread::of(records.iter().map(GameRecord::bp_over_md))?,
        md_over_b: Spread::of(records.iter().map(|r| r.report.m_d / r.report.b_lower))?,
        delta_lower: Spread::of(records.iter().map(|r| r.report.delta_lower))?,
        violations: records
            .iter()
            .filter_map(|r| r.report.check_invariants().err().map(|e| (r.index, e.to_string())))
            .collect(),
        bp_below_b: records.iter().filter(|r| r.report.b_p < r.report.b_lower).count(),
    })
}

/// Writes one row per game. Rows failing the bound chain are refused.
pub fn write_montecarlo_csv<W: Write>(records: &[GameRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(MONTECARLO_CSV_HEADER)?;
    for r in records {
        r.report.check_invariants()?;
        let [a, b, c] = r.players.pursuers;
        let e = r.players.evader;
        let q = &r.report;
        let nums =
            [e.x, e.y, a.x, a.y, b.x, b.y, c.x, c.y, q.l, q.m, q.s, q.m_d, q.b_lower, q.b_p, q.delta0, q.delta_lower];
        let mut row = vec![r.index.to_string()];
        row.extend(nums.iter().map(|v| v.to_string()));
        row.push(q.i_star.to_string());
        row.push(r.bp_over_md().to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
