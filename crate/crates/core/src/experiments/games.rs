use serde::{Deserialize, Serialize};

use crate::bounds::{game_length, lower_bound};
use crate::engine::{play, SimParams};
use crate::error::{Error, Result};
use crate::geometry::{voronoi_cell, PlayerSet};
use crate::strategies::{DTeam, EStrategyEvader, EvaderPolicy, GreedyVertexEvader, Perturbation};

/// Step and capture radius relative to the initial cell's longest edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Resolution {
    pub dt_per_length: f64,
    pub radius_per_dt: f64,
    /// Horizon as a multiple of `M_D`.
    pub horizon: f64,
}

impl Default for Resolution {
    fn default() -> Self {
        Self { dt_per_length: 1e-3, radius_per_dt: 0.1, horizon: 4.0 }
    }
}

impl Resolution {
    pub fn params(&self, players: &PlayerSet) -> Result<SimParams> {
        let dt = self.dt_per_length * voronoi_cell(players)?.l;
        SimParams::new(dt, self.radius_per_dt * dt, self.horizon * game_length(players)?)
    }
}

fn captured_at(players: &PlayerSet, evader: &mut dyn EvaderPolicy, params: &SimParams) -> Result<f64> {
    play(players, evader, &mut DTeam::d_strategy(), params)?
        .capture_time()
        .ok_or_else(|| Error::Invariant(format!("no capture within {}", params.max_time)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurvivalRecord {
    pub index: u64,
    pub dt: f64,
    pub capture_radius: f64,
    /// Closed-form reference: `M_D` or `B` depending on the experiment.
    pub reference: f64,
    pub survival: f64,
}

impl SurvivalRecord {
    pub fn relative_error(&self) -> f64 {
        (self.survival - self.reference).abs() / self.reference
    }
}

/// Decentralized pursuit against the three-leg evader.
pub fn d_vs_e(index: u64, players: &PlayerSet, params: &SimParams) -> Result<SurvivalRecord> {
    let survival = captured_at(players, &mut EStrategyEvader::new(), params)?;
    Ok(SurvivalRecord {
        index,
        dt: params.dt,
        capture_radius: params.capture_radius,
        reference: game_length(players)?,
        survival,
    })
}

/// Same with leg `leg` rotated by `angle` for its nominal duration.
pub fn d_vs_perturbed_e(
    index: u64,
    players: &PlayerSet,
    params: &SimParams,
    leg: usize,
    angle: f64,
) -> Result<SurvivalRecord> {
    let mut evader = EStrategyEvader::new().with_perturbation(Perturbation { leg, angle });
    let survival = captured_at(players, &mut evader, params)?;
    Ok(SurvivalRecord {
        index,
        dt: params.dt,
        capture_radius: params.capture_radius,
        reference: game_length(players)?,
        survival,
    })
}

/// Decentralized pursuit against the greedy-vertex evader; reference is `B`.
pub fn d_vs_greedy(index: u64, players: &PlayerSet, params: &SimParams) -> Result<SurvivalRecord> {
    let survival = captured_at(players, &mut GreedyVertexEvader::new(players)?, params)?;
    Ok(SurvivalRecord {
        index,
        dt: params.dt,
        capture_radius: params.capture_radius,
        reference: lower_bound(players)?.value,
        survival,
    })
}
