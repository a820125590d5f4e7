//! Closed-form game-length quantities.
//!
//! - `M_D = |S - Q| + |Q - V1|`: length of the game when the pursuers play the
//!   decentralized strategy and the evader replies optimally.
//! - `B = max_i (|V_i - P_i| + |V_i - E|) / 2`: a survival time the evader can
//!   guarantee against any pursuit.
//! - `B_P = max_i |z_i| / delta0` with `delta0 = min_{|p|=1} max_i p.z_i/|z_i|`:
//!   the classical upper bound for the decentralized pursuit.
//!
//! For every admissible game `B <= M_D <= 2B`, `m <= M_D <= l` and `B >= l/2`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{anchor_points, voronoi_cell, Direction, PlayerSet, Point, VoronoiCell};

/// Relative slack used when checking the inequality chain.
pub const CHAIN_SLACK: f64 = 1e-9;

/// `delta0` at or below this value is treated as a degenerate direction set.
pub const DELTA0_TOLERANCE: f64 = 1e-12;

/// Decentralized game length `M_D`.
pub fn game_length(players: &PlayerSet) -> Result<f64> {
    game_length_of_cell(&voronoi_cell(players)?)
}

pub fn game_length_of_cell(cell: &VoronoiCell) -> Result<f64> {
    let a = anchor_points(cell, cell.evader)?;
    Ok(a.s.distance(a.q) + a.q.distance(cell.v1()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LowerBound {
    pub value: f64,
    /// 1-based vertex label maximising the bound.
    pub i_star: usize,
    /// Per-vertex candidates `(|V_i - P_i| + |V_i - E|) / 2`.
    pub candidates: [f64; 3],
}

/// Survival-time lower bound `B` and its maximising vertex.
///
/// Exact ties (within `1e-12` relative) go to the smallest label.
pub fn lower_bound(players: &PlayerSet) -> Result<LowerBound> {
    Ok(lower_bound_of_cell(&voronoi_cell(players)?))
}

pub fn lower_bound_of_cell(cell: &VoronoiCell) -> LowerBound {
    let e = cell.evader;
    let candidates: [f64; 3] = std::array::from_fn(|i| {
        let v = cell.vertices[i];
        0.5 * (v.distance(cell.pursuers[i]) + v.distance(e))
    });
    let best = candidates.iter().cloned().fold(f64::MIN, f64::max);
    let i_star = candidates.iter().position(|&c| c >= best - 1e-12 * best.abs()).unwrap() + 1;
    LowerBound { value: best, i_star, candidates }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PshenichnyiBound {
    pub value: f64,
    pub delta0: f64,
    /// A minimising unit vector `p`.
    pub argmin: Direction,
}

/// `B_P = max_i |z_i| / delta0`. Independent of pursuer labelling.
pub fn pshenichnyi_bound(players: &PlayerSet) -> Result<PshenichnyiBound> {
    let z = players.relative();
    let (delta0, argmin) = min_max_projection(&z)?;
    if !(delta0 > DELTA0_TOLERANCE) {
        return Err(Error::DegenerateDirections(delta0));
    }
    let reach = z.iter().map(|v| v.norm()).fold(0.0, f64::max);
    Ok(PshenichnyiBound { value: reach / delta0, delta0, argmin })
}

/// `min_{|p|=1} max_i p.u_i` for the unit vectors `u_i` of `vectors`.
///
/// `max_i p.u_i` is the cosine of the angular distance from `p` to the
/// nearest `u_i`, so the minimum is `cos(g / 2)` for the widest angular gap
/// `g` between neighbouring directions, attained at the gap's middle.
pub fn min_max_projection(vectors: &[Point]) -> Result<(f64, Direction)> {
    let mut units = vectors.iter().map(|v| Direction::new(*v)).collect::<Result<Vec<_>>>()?;
    if units.is_empty() {
        return Err(Error::InvalidParameter("no directions".into()));
    }
    units.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
    let n = units.len();
    let (gap, from) = (0..n)
        .map(|i| {
            let (a, b) = (units[i].vector(), units[(i + 1) % n].vector());
            let g = a.cross(b).atan2(a.dot(b)).rem_euclid(TAU);
            (if n == 1 || g == 0.0 && i == n - 1 { TAU } else { g }, units[i])
        })
        .max_by(|a, b| a.0.total_cmp(&b.0))
        .expect("non-empty");
    Ok(((0.5 * gap).cos(), from.rotated(0.5 * gap)))
}

/// Value of `dM_D/dt` when the evader heads at frame angle `theta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DerivativeCase {
    pub theta: f64,
    /// 1..=6, one per angular interval.
    pub case_index: u8,
    pub value: f64,
}

/// Rate of change of the residual game length for a heading at angle `theta`
/// (measured in the cell frame, see [`crate::geometry::CellFrame`]).
///
/// Intervals are half-open `[a, b)` with boundaries
/// `0, phi2, pi - phi1, pi, pi + phi2, 2 pi - phi1`.
pub fn dmd_dt(theta: f64, phi1: f64, phi2: f64) -> DerivativeCase {
    let t = theta.rem_euclid(TAU);
    let t = if t >= TAU { 0.0 } else { t };
    let (s1, s2) = (phi1.sin(), phi2.sin());
    let a = -(t + phi1).sin() / s1;
    let b = -(t - phi2).sin() / s2;
    let c = t.sin() / s1;
    let (case_index, value) = if t < phi2 {
        (1, a)
    } else if t < PI - phi1 {
        (2, a + b)
    } else if t < PI {
        (3, b)
    } else if t < PI + phi2 {
        (4, b + c)
    } else if t < TAU - phi1 {
        (5, c)
    } else {
        (6, c + a)
    };
    DerivativeCase { theta: t, case_index, value }
}

/// `B / M_D`, a lower bound on the cooperative speed-up ratio.
pub fn delta_ratio(players: &PlayerSet) -> Result<f64> {
    let cell = voronoi_cell(players)?;
    Ok(lower_bound_of_cell(&cell).value / game_length_of_cell(&cell)?)
}

/// Everything the closed forms say about one game.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub m_d: f64,
    pub b_lower: f64,
    pub b_p: f64,
    pub delta0: f64,
    pub delta_lower: f64,
    pub l: f64,
    pub m: f64,
    pub s: f64,
    pub i_star: usize,
}

impl BoundsReport {
    pub fn compute(players: &PlayerSet) -> Result<Self> {
        let cell = voronoi_cell(players)?;
        let m_d = game_length_of_cell(&cell)?;
        let lb = lower_bound_of_cell(&cell);
        let bp = pshenichnyi_bound(players)?;
        Ok(Self {
            m_d,
            b_lower: lb.value,
            b_p: bp.value,
            delta0: bp.delta0,
            delta_lower: lb.value / m_d,
            l: cell.l,
            m: cell.m,
            s: cell.s,
            i_star: lb.i_star,
        })
    }

    /// Checks the inequality chain with `CHAIN_SLACK` relative slack; the
    /// error names the first violated relation.
    pub fn check_invariants(&self) -> Result<()> {
        let tol = CHAIN_SLACK * self.l.max(self.b_p.min(1e300)).max(f64::MIN_POSITIVE);
        let le = |a: f64, b: f64| a <= b + tol;
        let checks: [(&str, bool); 8] = [
            ("edge ordering l >= m >= s > 0", le(self.m, self.l) && le(self.s, self.m) && self.s > 0.0),
            ("M_D <= l", le(self.m_d, self.l)),
            ("m <= M_D", le(self.m, self.m_d)),
            ("B >= l/2", le(0.5 * self.l, self.b_lower)),
            ("B <= M_D", le(self.b_lower, self.m_d)),
            ("M_D <= 2B", le(self.m_d, 2.0 * self.b_lower)),
            ("B_P >= B", le(self.b_lower, self.b_p)),
            ("delta_lower in [0.5, 1]", self.delta_lower >= 0.5 - CHAIN_SLACK && self.delta_lower <= 1.0 + CHAIN_SLACK),
        ];
        match checks.iter().find(|(_, ok)| !ok) {
            Some((name, _)) => Err(Error::Invariant(format!("{name} ({self:?})"))),
            None => Ok(()),
        }
    }
}
