use super::{d_strategy_move, PursuerObservation, PursuerTeam};
use crate::engine::{GameState, StepInfo};
use crate::error::{Error, Result};
use crate::geometry::{pursuers_from_cell, Direction, Line, PlayerSet, Point, Triangle};

/// Angular tolerance (radians) on "`P_k - E` parallel to `V1 - V2`".
pub const PHASE_SWITCH_TOLERANCE: f64 = 1e-6;

/// Isosceles cell with base `V1 = (-l/2, 0)`, `V2 = (l/2, 0)` and apex
/// `V3 = (0, eps)`; the evader sits on the height at `E = (0, lambda eps)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlatIsoscelesFamily {
    pub l: f64,
    pub eps: f64,
    pub lambda: f64,
    pub vertices: [Point; 3],
    /// Foot of the height from `V3`.
    pub h: Point,
    /// Projections of `P1(0)` and `P2(0)` on the base line.
    pub t1: Point,
    pub t2: Point,
    /// `E(0) + 2 (V3(0) - E(0))`.
    pub k: Point,
    players: PlayerSet,
}

impl FlatIsoscelesFamily {
    pub fn new(l: f64, eps: f64, lambda: f64) -> Result<Self> {
        if !(l.is_finite() && l > 0.0) {
            return Err(Error::InvalidParameter(format!("base length {l} must be positive")));
        }
        if !(eps.is_finite() && eps > 0.0 && eps < 0.5 * l) {
            return Err(Error::InvalidParameter(format!("height {eps} must lie in (0, l/2)")));
        }
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(Error::InvalidParameter(format!("evader offset {lambda} must lie in (0, 1)")));
        }
        let vertices = [Point::new(-0.5 * l, 0.0), Point::new(0.5 * l, 0.0), Point::new(0.0, eps)];
        let e = Point::new(0.0, lambda * eps);
        let players = pursuers_from_cell(&Triangle { vertices }, e)?;
        let [p1, p2, _] = players.pursuers;
        Ok(Self {
            l,
            eps,
            lambda,
            vertices,
            h: Point::ORIGIN,
            t1: Point::new(p1.x, 0.0),
            t2: Point::new(p2.x, 0.0),
            k: e + (vertices[2] - e) * 2.0,
            players,
        })
    }

    /// Initial positions, pursuers in label order.
    pub fn players(&self) -> PlayerSet {
        self.players
    }

    /// Decentralized game length `l (1 - lambda) + lambda |V1 - V3|`.
    pub fn m_d_closed_form(&self) -> f64 {
        self.l * (1.0 - self.lambda) + self.lambda * self.vertices[0].distance(self.vertices[2])
    }

    pub fn contains(&self, players: &PlayerSet) -> bool {
        let tol = 1e-9 * self.l;
        let close = |a: Point, b: Point| a.distance(b) <= tol;
        close(players.evader, self.players.evader)
            && (0..3).all(|i| close(players.pursuers[i], self.players.pursuers[i]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChatPhase {
    /// Waiting for the evader's first heading.
    Start,
    /// Flanking. `flanker` is the 0-based index of the pursuer heading for
    /// its base projection.
    Flank {
        flanker: usize,
    },
    Decentralized,
}

/// Two-phase cooperative pursuit for [`FlatIsoscelesFamily`] games.
///
/// If the evader's first heading has a non-negative component along
/// `v12 = unit(V1 - V2)`, `P1` walks to `T1` while `P2` and `P3` mirror the
/// evader across lines `V1V3` and `V1V2`. Otherwise the roles swap by
/// symmetry: `P2` walks to `T2` while `P1` and `P3` mirror across `V2V3` and
/// `V1V2`. Once the flanker's offset from the evader is parallel to the base,
/// everyone plays the decentralized rule.
#[derive(Debug, Clone)]
pub struct CHatStrategy {
    family: FlatIsoscelesFamily,
    phase: ChatPhase,
    side: f64,
    start_sign: f64,
    /// Time spent flanking, once known.
    pub switch_time: Option<f64>,
}

impl CHatStrategy {
    pub fn new(family: FlatIsoscelesFamily) -> Self {
        Self { family, phase: ChatPhase::Start, side: 1.0, start_sign: 0.0, switch_time: None }
    }

    pub fn phase(&self) -> ChatPhase {
        self.phase
    }

    fn base_axis(&self) -> Point {
        Point::new(-1.0, 0.0)
    }

    fn offset_sign(&self, state: &GameState, flanker: usize) -> (f64, f64) {
        let z = state.pursuers[flanker] - state.evader;
        let sin = z.cross(self.base_axis()) / z.norm();
        (sin, sin.signum())
    }

    fn decentralized(state: &GameState, e: Direction) -> Result<[Direction; 3]> {
        let mut out = [e; 3];
        for (i, w) in out.iter_mut().enumerate() {
            *w = d_strategy_move(&PursuerObservation { own: state.pursuers[i], evader: state.evader, heading: e })?;
        }
        Ok(out)
    }
}

impl PursuerTeam for CHatStrategy {
    fn headings(&mut self, state: &GameState, e: Direction, _step: &StepInfo) -> Result<[Direction; 3]> {
        if self.phase == ChatPhase::Start {
            if !self.family.contains(&state.players()) {
                return Err(Error::OutOfFamily);
            }
            self.side = if e.dot(self.base_axis()) >= 0.0 { 1.0 } else { -1.0 };
            let flanker = if self.side > 0.0 { 0 } else { 1 };
            self.start_sign = self.offset_sign(state, flanker).1;
            self.phase = ChatPhase::Flank { flanker };
        }
        let ChatPhase::Flank { flanker } = self.phase else {
            return Self::decentralized(state, e);
        };

        let (sin, sign) = self.offset_sign(state, flanker);
        if sin.abs() <= PHASE_SWITCH_TOLERANCE.sin() || sign != self.start_sign {
            self.phase = ChatPhase::Decentralized;
            self.switch_time = Some(state.t);
            return Self::decentralized(state, e);
        }
        if self.side * e.dot(self.base_axis()) < -1e-9 {
            return Err(Error::AssumptionViolated("evader left the half-plane assumed while flanking"));
        }

        let [v1, v2, v3] = self.family.vertices;
        let mirror = |a: Point, b: Point| -> Result<Direction> { Ok(e.reflected(Line::from_points(a, b)?.normal)) };
        let foot = if flanker == 0 { self.family.t1 } else { self.family.t2 };
        let walk = Direction::new(foot - state.pursuers[flanker])?;
        let base = mirror(v1, v2)?;
        Ok(if flanker == 0 { [walk, mirror(v1, v3)?, base] } else { [mirror(v2, v3)?, walk, base] })
    }
}
