use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::csv_out::write_rows;
use crate::bounds::{game_length, lower_bound};
use crate::engine::{play, SimParams};
use crate::error::{Error, Result};
use crate::geometry::{pursuers_from_cell, PlayerSet, Point, Triangle};
use crate::strategies::{CHatStrategy, DTeam, EStrategyEvader, FlatIsoscelesFamily};

/// Right-angled cell `V1 = (0,0)`, `V3 = (m,0)`, `V2 = (m,s)` with the evader
/// at the centroid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangleFamily {
    pub m: f64,
    pub s: f64,
}

impl RightTriangleFamily {
    pub fn new(m: f64, s: f64) -> Result<Self> {
        if !(m.is_finite() && s.is_finite() && s > 0.0 && s <= m) {
            return Err(Error::InvalidParameter(format!(
                "right-triangle family needs 0 < s <= m, got m = {m}, s = {s}"
            )));
        }
        Ok(Self { m, s })
    }

    pub fn players(&self) -> Result<PlayerSet> {
        let tri = Triangle::new(Point::ORIGIN, Point::new(self.m, self.s), Point::new(self.m, 0.0));
        pursuers_from_cell(&tri, tri.centroid())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RightTriangleRow {
    pub s: f64,
    pub l: f64,
    pub m_d: f64,
    pub b_lower: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RightTriangleSweep {
    pub m: f64,
    pub rows: Vec<RightTriangleRow>,
    /// `M_D / B` strictly decreases along the grid.
    pub monotone: bool,
}

/// `M_D / B` along a shrinking short edge. Closed forms only.
pub fn right_triangle_sweep(m: f64, grid: &[f64]) -> Result<RightTriangleSweep> {
    check_grid(grid)?;
    let rows = grid
        .iter()
        .map(|&s| {
            let p = RightTriangleFamily::new(m, s)?.players()?;
            let (m_d, b) = (game_length(&p)?, lower_bound(&p)?.value);
            Ok(RightTriangleRow { s, l: m.hypot(s), m_d, b_lower: b, ratio: m_d / b })
        })
        .collect::<Result<Vec<_>>>()?;
    let monotone = rows.windows(2).all(|w| w[1].ratio < w[0].ratio);
    Ok(RightTriangleSweep { m, rows, monotone })
}

/// Fixed knobs of the flat-isosceles sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct FlatSweepConfig {
    /// Evader height as a fraction of the apex height.
    pub lambda: f64,
    /// `dt = min(dt_per_length * l, dt_per_height * eps)`.
    pub dt_per_length: f64,
    pub dt_per_height: f64,
    /// Capture radius as a fraction of the evader's height `lambda eps`.
    pub radius_per_height: f64,
}

impl Default for FlatSweepConfig {
    fn default() -> Self {
        Self { lambda: 0.01, dt_per_length: 1e-3, dt_per_height: 1e-2, radius_per_height: 1e-2 }
    }
}

impl FlatSweepConfig {
    pub fn params(&self, l: f64, eps: f64) -> Result<SimParams> {
        let dt = (self.dt_per_length * l).min(self.dt_per_height * eps);
        SimParams::new(dt, self.radius_per_height * self.lambda * eps, 4.0 * l)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FlatRow {
    pub eps: f64,
    pub dt: f64,
    pub capture_radius: f64,
    /// Closed-form decentralized game length.
    pub m_d: f64,
    pub m_d_sim: f64,
    pub m_chat_sim: f64,
    /// Flanking phase duration.
    pub switch_time: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatSweep {
    pub l: f64,
    pub config: FlatSweepConfig,
    pub rows: Vec<FlatRow>,
    /// `M_Chat / M_D` strictly decreases along the grid.
    pub monotone: bool,
}

pub fn flat_isosceles_row(l: f64, eps: f64, config: &FlatSweepConfig) -> Result<FlatRow> {
    let family = FlatIsoscelesFamily::new(l, eps, config.lambda)?;
    let params = config.params(l, eps)?;
    let p = family.players();
    let sim = |team: &mut dyn crate::strategies::PursuerTeam| -> Result<f64> {
        let out = play(&p, &mut EStrategyEvader::new().replanning(true), team, &params)?;
        out.capture_time()
            .ok_or_else(|| Error::Invariant(format!("no capture within {} at eps = {eps}", params.max_time)))
    };
    let m_d_sim = sim(&mut DTeam::d_strategy())?;
    let mut chat = CHatStrategy::new(family);
    let m_chat_sim = sim(&mut chat)?;
    Ok(FlatRow {
        eps,
        dt: params.dt,
        capture_radius: params.capture_radius,
        m_d: game_length(&p)?,
        m_d_sim,
        m_chat_sim,
        switch_time: chat.switch_time.unwrap_or(f64::NAN),
        ratio: m_chat_sim / m_d_sim,
    })
}

/// Simulated cooperative versus decentralized game lengths along a
/// flattening apex. Grid points run in parallel.
pub fn flat_isosceles_sweep(l: f64, grid: &[f64], config: &FlatSweepConfig) -> Result<FlatSweep> {
    check_grid(grid)?;
    let rows = grid.par_iter().map(|&eps| flat_isosceles_row(l, eps, config)).collect::<Result<Vec<_>>>()?;
    let monotone = rows.windows(2).all(|w| w[1].ratio < w[0].ratio);
    Ok(FlatSweep { l, config: *config, rows, monotone })
}

pub const RIGHT_SWEEP_CSV_HEADER: [&str; 5] = ["s", "l", "m_d", "b_lower", "md_over_b"];

pub const FLAT_SWEEP_CSV_HEADER: [&str; 8] =
    ["eps", "dt", "capture_radius", "m_d", "m_d_sim", "m_chat_sim", "switch_time", "mchat_over_md"];

pub fn write_right_sweep_csv<W: Write>(sweep: &RightTriangleSweep, out: W) -> Result<()> {
    let rows = sweep.rows.iter().map(|r| [r.s, r.l, r.m_d, r.b_lower, r.ratio].map(|v| v.to_string()));
    write_rows(out, RIGHT_SWEEP_CSV_HEADER, rows)
}

pub fn write_flat_sweep_csv<W: Write>(sweep: &FlatSweep, out: W) -> Result<()> {
    let rows = sweep.rows.iter().map(|r| {
        [r.eps, r.dt, r.capture_radius, r.m_d, r.m_d_sim, r.m_chat_sim, r.switch_time, r.ratio].map(|v| v.to_string())
    });
    write_rows(out, FLAT_SWEEP_CSV_HEADER, rows)
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() || grid.iter().any(|&g| !(g.is_finite() && g > 0.0)) {
        return Err(Error::InvalidParameter("grid values must be positive".into()));
    }
    if grid.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidParameter("grid values must be strictly decreasing".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::voronoi_cell;
    use approx::assert_abs_diff_eq;

    #[test]
    fn right_family_is_labelled_as_built() {
        let p = RightTriangleFamily::new(1.0, 0.3).unwrap().players().unwrap();
        let cell = voronoi_cell(&p).unwrap();
        assert!(cell.v1().norm() < 1e-12);
        assert_abs_diff_eq!(cell.m, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(cell.s, 0.3, epsilon = 1e-12);
    }

    #[test]
    fn right_sweep_tends_to_one() {
        let sw = right_triangle_sweep(1.0, &[0.1, 0.01, 0.001]).unwrap();
        assert!(sw.monotone);
        assert!(sw.rows[2].ratio <= 1.01);
        for r in &sw.rows {
            assert!(r.m_d >= 1.0 - 1e-12 && r.m_d <= r.l + 1e-12);
        }
    }

    #[test]
    fn right_sweep_csv_rows() {
        let sw = right_triangle_sweep(1.0, &[0.5, 0.25]).unwrap();
        let mut buf = Vec::new();
        write_right_sweep_csv(&sw, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "s,l,m_d,b_lower,md_over_b");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[1].split(',').next(), Some("0.5"));
    }

    #[test]
    fn grid_validation() {
        assert!(right_triangle_sweep(1.0, &[]).is_err());
        assert!(right_triangle_sweep(1.0, &[0.1, 0.2]).is_err());
        assert!(right_triangle_sweep(1.0, &[0.1, -0.2]).is_err());
    }
}
