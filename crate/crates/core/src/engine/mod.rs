//! Game integration.
//!
//! Continuous mode samples `E' = e`, `P_i' = w_i` with explicit Euler steps of
//! length `dt`. All shipped policies hold a heading between switching events,
//! so the sampled trajectory is exact between switches. Capture is detected
//! inside each step: relative motion over a step is linear, so the first
//! instant at which a pursuer enters the capture disc has a closed form.
//!
//! Discrete mode applies `E(t+1) = E(t) + e(t)` then `P_i(t+1) = P_i(t) + w_i(t)`,
//! the pursuers having seen `e(t)`. Capture is only checked on sampled states.

mod export;

use serde::{Deserialize, Serialize};

use crate::bounds::game_length;
use crate::error::{Error, Result};
use crate::geometry::{voronoi_cell, Direction, PlayerSet, Point};
use crate::strategies::{EvaderPolicy, PursuerTeam};

pub use export::{read_trace_json, write_trace_csv, write_trace_json, TRACE_CSV_HEADER, TRACE_SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Continuous,
    Discrete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimParams {
    pub dt: f64,
    pub capture_radius: f64,
    pub max_time: f64,
    #[serde(default)]
    pub mode: Mode,
}

impl SimParams {
    pub fn new(dt: f64, capture_radius: f64, max_time: f64) -> Result<Self> {
        let p = Self { dt, capture_radius, max_time, mode: Mode::Continuous };
        p.validate()?;
        Ok(p)
    }

    /// `dt = 1e-3 * l`, capture radius `2 dt`, horizon `4 M_D`.
    pub fn defaults_for(players: &PlayerSet) -> Result<Self> {
        let l = voronoi_cell(players)?.l;
        let dt = 1e-3 * l;
        Self::new(dt, 2.0 * dt, 4.0 * game_length(players)?)
    }

    pub fn discrete(max_time: f64, capture_radius: f64) -> Result<Self> {
        let p = Self { dt: 1.0, capture_radius, max_time, mode: Mode::Discrete };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::InvalidParameter(format!("{what} must be finite and positive")));
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return bad("dt");
        }
        if !(self.capture_radius.is_finite() && self.capture_radius > 0.0) {
            return bad("capture_radius");
        }
        if !(self.max_time.is_finite() && self.max_time > 0.0) {
            return bad("max_time");
        }
        Ok(())
    }

    /// Distance covered per step: `dt`, or 1 in discrete mode.
    pub fn step_length(&self) -> f64 {
        match self.mode {
            Mode::Continuous => self.dt,
            Mode::Discrete => 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameState {
    pub t: f64,
    pub evader: Point,
    pub pursuers: [Point; 3],
}

impl GameState {
    pub fn initial(players: &PlayerSet) -> Self {
        Self { t: 0.0, evader: players.evader, pursuers: players.pursuers }
    }

    pub fn players(&self) -> PlayerSet {
        PlayerSet::new(self.evader, self.pursuers)
    }

    /// `[t, Ex, Ey, P1x, P1y, P2x, P2y, P3x, P3y]`.
    pub fn to_row(&self) -> [f64; 9] {
        let [a, b, c] = self.pursuers;
        [self.t, self.evader.x, self.evader.y, a.x, a.y, b.x, b.y, c.x, c.y]
    }

    pub fn from_row(r: [f64; 9]) -> Self {
        Self {
            t: r[0],
            evader: Point::new(r[1], r[2]),
            pursuers: [Point::new(r[3], r[4]), Point::new(r[5], r[6]), Point::new(r[7], r[8])],
        }
    }
}

/// What a policy may know about the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepInfo {
    /// Distance every player covers during the coming step.
    pub dt: f64,
    pub capture_radius: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Capture {
    pub captured: bool,
    pub time: Option<f64>,
    /// Index into the input pursuer order.
    pub pursuer: Option<usize>,
}

impl Capture {
    fn none() -> Self {
        Self { captured: false, time: None, pursuer: None }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GameTrace {
    pub params: SimParams,
    pub samples: Vec<GameState>,
    pub capture: Capture,
}

impl GameTrace {
    pub fn captured(&self) -> bool {
        self.capture.captured
    }

    pub fn capture_time(&self) -> Option<f64> {
        self.capture.time
    }

    pub fn final_state(&self) -> &GameState {
        self.samples.last().expect("a trace holds at least the initial state")
    }

    /// Checks unit speed between consecutive samples and the capture record.
    pub fn check_invariants(&self) -> Result<()> {
        let step = self.params.step_length();
        for w in self.samples.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            let moves = std::iter::once(b.evader - a.evader).chain((0..3).map(|i| b.pursuers[i] - a.pursuers[i]));
            for d in moves {
                if d.norm() > step * (1.0 + 1e-9) {
                    return Err(Error::Invariant(format!(
                        "displacement {} exceeds step {step} at t = {}",
                        d.norm(),
                        b.t
                    )));
                }
            }
        }
        if self.capture.captured != self.capture.time.is_some() {
            return Err(Error::Invariant("capture time must be set iff captured".into()));
        }
        Ok(())
    }
}

/// Summary of a game without the trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GameOutcome {
    pub capture: Capture,
    pub final_state: GameState,
    pub steps: usize,
}

impl GameOutcome {
    pub fn capture_time(&self) -> Option<f64> {
        self.capture.time
    }
}

/// `true` iff some pursuer is within `capture_radius` of the evader (closed disc).
pub fn capture_check(state: &GameState, capture_radius: f64) -> bool {
    state.pursuers.iter().any(|p| p.distance(state.evader) <= capture_radius)
}

/// Earliest fraction `s` in `[0, 1]` of a step at which `|d + s v| <= r`.
fn entry_fraction(d: Point, v: Point, r: f64) -> Option<f64> {
    let c = d.norm_sq() - r * r;
    if c <= 0.0 {
        return Some(0.0);
    }
    let a = v.norm_sq();
    if a == 0.0 {
        return None;
    }
    let b = 2.0 * d.dot(v);
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return None;
    }
    // stable smaller root of a s^2 + b s + c
    let s = if b < 0.0 { 2.0 * c / (-b + disc.sqrt()) } else { (-b - disc.sqrt()) / (2.0 * a) };
    (0.0..=1.0).contains(&s).then_some(s)
}

/// Advances one step. Returns the new state and, if a capture happens during
/// the step, the time fraction and pursuer index.
pub fn step<E, T>(
    state: &GameState,
    evader: &mut E,
    team: &mut T,
    params: &SimParams,
) -> Result<(GameState, Option<(f64, usize)>)>
where
    E: EvaderPolicy + ?Sized,
    T: PursuerTeam + ?Sized,
{
    let info = StepInfo { dt: params.step_length(), capture_radius: params.capture_radius };
    let e = evader.heading(state, &info)?;
    let w = team.headings(state, e, &info)?;
    let h = info.dt;
    let next = GameState {
        t: state.t + h,
        evader: state.evader + e.vector() * h,
        pursuers: std::array::from_fn(|i| state.pursuers[i] + w[i].vector() * h),
    };
    if !(next.evader.is_finite() && next.pursuers.iter().all(|p| p.is_finite())) {
        return Err(Error::NonFinite);
    }
    let hit = match params.mode {
        Mode::Continuous => first_entry(state, e, &w, h, params.capture_radius),
        Mode::Discrete => {
            (0..3).find(|&i| next.pursuers[i].distance(next.evader) <= params.capture_radius).map(|i| (1.0, i))
        }
    };
    Ok((next, hit))
}

fn first_entry(state: &GameState, e: Direction, w: &[Direction; 3], h: f64, r: f64) -> Option<(f64, usize)> {
    let mut best: Option<(f64, usize)> = None;
    for (i, (q, wi)) in state.pursuers.iter().zip(w).enumerate() {
        let d = *q - state.evader;
        let v = (wi.vector() - e.vector()) * h;
        if let Some(s) = entry_fraction(d, v, r) {
            if best.is_none_or(|(b, _)| s < b) {
                best = Some((s, i));
            }
        }
    }
    best
}

fn simulate<E, T>(
    players: &PlayerSet,
    evader: &mut E,
    team: &mut T,
    params: &SimParams,
    mut record: impl FnMut(&GameState),
) -> Result<GameOutcome>
where
    E: EvaderPolicy + ?Sized,
    T: PursuerTeam + ?Sized,
{
    params.validate()?;
    if !players.is_finite() {
        return Err(Error::NonFinite);
    }
    let mut state = GameState::initial(players);
    record(&state);
    if let Some(i) = (0..3).find(|&i| state.pursuers[i].distance(state.evader) <= params.capture_radius) {
        let capture = Capture { captured: true, time: Some(0.0), pursuer: Some(i) };
        return Ok(GameOutcome { capture, final_state: state, steps: 0 });
    }
    let h = params.step_length();
    let max_steps = (params.max_time / h).ceil() as usize;
    for n in 1..=max_steps {
        let (mut next, hit) = step(&state, evader, team, params)?;
        // keep the clock on the grid instead of accumulating rounding
        next.t = n as f64 * h;
        record(&next);
        if let Some((s, i)) = hit {
            let capture = Capture { captured: true, time: Some(state.t + s * h), pursuer: Some(i) };
            return Ok(GameOutcome { capture, final_state: next, steps: n });
        }
        state = next;
    }
    Ok(GameOutcome { capture: Capture::none(), final_state: state, steps: max_steps })
}

/// Runs a game to capture or to `params.max_time`, recording every step.
pub fn run_game<E, T>(players: &PlayerSet, evader: &mut E, team: &mut T, params: &SimParams) -> Result<GameTrace>
where
    E: EvaderPolicy + ?Sized,
    T: PursuerTeam + ?Sized,
{
    let mut samples = Vec::new();
    let outcome = simulate(players, evader, team, params, |s| samples.push(*s))?;
    Ok(GameTrace { params: *params, samples, capture: outcome.capture })
}

/// Same as [`run_game`] without keeping the trajectory.
pub fn play<E, T>(players: &PlayerSet, evader: &mut E, team: &mut T, params: &SimParams) -> Result<GameOutcome>
where
    E: EvaderPolicy + ?Sized,
    T: PursuerTeam + ?Sized,
{
    simulate(players, evader, team, params, |_| {})
}
