use serde::{Deserialize, Serialize};

use super::EvaderPolicy;
use crate::bounds::lower_bound_of_cell;
use crate::engine::{GameState, StepInfo};
use crate::error::{Error, Result};
use crate::geometry::{anchor_points, voronoi_cell, Direction, Line, PlayerSet, Point, VoronoiCell};

/// Default waypoint margin as a multiple of the capture radius. A pursuer
/// whose bisector is `d` away from the evader is `2d` away from it, so any
/// factor above one half keeps the evader out of the capture disc.
pub const MARGIN_FACTOR: f64 = 0.51;

/// Three-leg reply to the decentralized pursuit: along `v_QE` to `Q`, along
/// `v_V1Q` to `V1`, then along `v_SE` until capture.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvaderPlan {
    /// `[Q, V1, V1 + tau3 v_SE]`.
    pub waypoints: [Point; 3],
    /// `[v_QE, v_V1Q, v_SE]`.
    pub leg_directions: [Direction; 3],
    /// `[tau1, tau2, tau3]`.
    pub leg_durations: [f64; 3],
}

impl EvaderPlan {
    pub fn total(&self) -> f64 {
        self.leg_durations.iter().sum()
    }

    /// Index of the leg active at time `t`.
    pub fn leg_at(&self, t: f64) -> Result<usize> {
        let total = self.total();
        if !(t >= 0.0) {
            return Err(Error::InvalidParameter(format!("plan time {t} is negative")));
        }
        if t >= total {
            return Err(Error::GameOver { t, total });
        }
        let [a, b, _] = self.leg_durations;
        Ok(if t < a {
            0
        } else if t < a + b {
            1
        } else {
            2
        })
    }
}

pub fn e_strategy_plan(players: &PlayerSet) -> Result<EvaderPlan> {
    e_strategy_plan_from_cell(&voronoi_cell(players)?)
}

pub fn e_strategy_plan_from_cell(cell: &VoronoiCell) -> Result<EvaderPlan> {
    let e = cell.evader;
    let a = anchor_points(cell, e)?;
    let v1 = cell.v1();
    let tau = [e.distance(a.q), a.q.distance(v1), a.s.distance(e)];
    Ok(EvaderPlan {
        waypoints: [a.q, v1, v1 + a.v_se.vector() * tau[2]],
        leg_directions: [a.v_qe, a.v_v1q, a.v_se],
        leg_durations: tau,
    })
}

pub fn e_strategy_direction(plan: &EvaderPlan, t: f64) -> Result<Direction> {
    Ok(plan.leg_directions[plan.leg_at(t)?])
}

/// Rotate one leg of the first plan by `angle` (radians, in the cell frame's
/// sense) for that leg's nominal duration, then replan. The rotated heading
/// is held even if it leads into a pursuer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Perturbation {
    pub leg: usize,
    pub angle: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum PerturbStage {
    Pending,
    Active { remaining: f64 },
    Done,
}

#[derive(Debug, Clone, Copy)]
struct ActivePlan {
    plan: EvaderPlan,
    leg: usize,
    /// State indices of `P1, P2, P3`.
    labels: [usize; 3],
    /// `unit(P_i - E)` when planned, in state order.
    normals: [Point; 3],
    orientation: f64,
}

/// Simulated E-strategy.
///
/// Legs end on distance rather than time: leg 0 runs while the evader stays
/// at least `margin` inside edge `V1V3`, leg 1 while it stays `margin` inside
/// edge `V1V2`, and leg 2 runs until capture. The margin defaults to
/// `MARGIN_FACTOR * capture_radius`.
#[derive(Debug, Clone)]
pub struct EStrategyEvader {
    margin: Option<f64>,
    replanning: bool,
    perturbation: Option<(Perturbation, PerturbStage)>,
    active: Option<ActivePlan>,
}

impl Default for EStrategyEvader {
    fn default() -> Self {
        Self::new()
    }
}

impl EStrategyEvader {
    pub fn new() -> Self {
        Self { margin: None, replanning: false, perturbation: None, active: None }
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = Some(margin);
        self
    }

    /// Replan from the current state whenever some bisector turns, which
    /// never happens against decentralized pursuit.
    pub fn replanning(mut self, on: bool) -> Self {
        self.replanning = on;
        self
    }

    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbation = Some((p, PerturbStage::Pending));
        self
    }

    /// The plan currently followed, if any.
    pub fn plan(&self) -> Option<&EvaderPlan> {
        self.active.as_ref().map(|a| &a.plan)
    }

    fn replan(&mut self, state: &GameState) -> Result<()> {
        let cell = match voronoi_cell(&state.players()) {
            Ok(c) => c,
            // a tiny late cell may fail the strictness test; keep the old plan
            Err(_) if self.active.is_some() => return Ok(()),
            Err(err) => return Err(err),
        };
        let plan = match e_strategy_plan_from_cell(&cell) {
            Ok(p) => p,
            Err(_) if self.active.is_some() => return Ok(()),
            Err(err) => return Err(err),
        };
        self.active = Some(ActivePlan {
            plan,
            leg: 0,
            labels: cell.assignment,
            normals: normals(state),
            orientation: cell.frame().orientation,
        });
        Ok(())
    }

    fn bisector_turned(&self, state: &GameState) -> bool {
        let Some(a) = &self.active else { return true };
        let now = normals(state);
        (0..3).any(|i| a.normals[i].cross(now[i]).abs() > 1e-9 || a.normals[i].dot(now[i]) < 0.0)
    }

    fn follow(a: &mut ActivePlan, state: &GameState, dt: f64, margin: f64) -> Direction {
        loop {
            if a.leg >= 2 {
                return a.plan.leg_directions[2];
            }
            let d = a.plan.leg_directions[a.leg];
            let wall = state.pursuers[a.labels[a.leg + 1]];
            if clear_of(state.evader, wall, state.evader + d.vector() * dt, margin) {
                return d;
            }
            a.leg += 1;
        }
    }
}

fn normals(state: &GameState) -> [Point; 3] {
    state.pursuers.map(|p| {
        let z = p - state.evader;
        z * (1.0 / z.norm())
    })
}

/// `true` when `next` is at least `margin` on the evader's side of the
/// bisector of `evader` and `pursuer`.
fn clear_of(evader: Point, pursuer: Point, next: Point, margin: f64) -> bool {
    match Line::bisector(evader, pursuer) {
        Ok(line) => line.signed_distance(next) <= -margin,
        Err(_) => false,
    }
}

impl EvaderPolicy for EStrategyEvader {
    fn heading(&mut self, state: &GameState, step: &StepInfo) -> Result<Direction> {
        let margin = self.margin.unwrap_or(MARGIN_FACTOR * step.capture_radius);
        if self.active.is_none() || (self.replanning && self.bisector_turned(state)) {
            self.replan(state)?;
        }

        if let Some((p, stage)) = self.perturbation {
            let a = self.active.as_mut().expect("planned above");
            match stage {
                PerturbStage::Active { remaining } if remaining > 0.0 => {
                    self.perturbation = Some((p, PerturbStage::Active { remaining: remaining - step.dt }));
                    return Ok(a.plan.leg_directions[p.leg].rotated(a.orientation * p.angle));
                }
                PerturbStage::Active { .. } => {
                    self.perturbation = Some((p, PerturbStage::Done));
                    self.active = None;
                    self.replan(state)?;
                }
                PerturbStage::Pending => {
                    Self::follow(a, state, step.dt, margin);
                    if a.leg == p.leg {
                        let remaining = a.plan.leg_durations[p.leg];
                        self.perturbation = Some((p, PerturbStage::Active { remaining }));
                        return self.heading(state, step);
                    }
                }
                PerturbStage::Done => {}
            }
        }

        let a = self.active.as_mut().expect("planned above");
        Ok(Self::follow(a, state, step.dt, margin))
    }
}

/// Evader from the survival-time argument: head for `V_i*(0)`, sliding along
/// a bisector once within the margin of it, stop a margin short of both
/// bisectors meeting there, then run for the midpoint `Z` between itself and
/// `P_i*`.
///
/// When an angle next to `V_i*` is obtuse the straight run to `Z` leaves the
/// cell. The evader then slides along the edge it would cross instead; that
/// path reaches the bisector of `P_i*` no sooner than the straight one.
#[derive(Debug, Clone)]
pub struct GreedyVertexEvader {
    /// 1-based label of the chosen vertex.
    pub i_star: usize,
    pub target: Point,
    chaser: usize,
    walls: [usize; 2],
    margin: Option<f64>,
    phase: GreedyPhase,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum GreedyPhase {
    ToVertex,
    /// Straight for `Z`.
    ToMidpoint(Point),
    /// Along a cell edge, until capture.
    Slide(Direction),
    Chase,
}

impl GreedyVertexEvader {
    pub fn new(players: &PlayerSet) -> Result<Self> {
        let cell = voronoi_cell(players)?;
        let i_star = lower_bound_of_cell(&cell).i_star;
        let k = i_star - 1;
        let others = [(k + 1) % 3, (k + 2) % 3];
        Ok(Self {
            i_star,
            target: cell.vertices[k],
            chaser: cell.assignment[k],
            walls: others.map(|j| cell.assignment[j]),
            margin: None,
            phase: GreedyPhase::ToVertex,
        })
    }

    pub fn with_margin(mut self, margin: f64) -> Self {
        self.margin = Some(margin);
        self
    }

    /// Straight for the vertex, or along a wall once its margin is reached.
    /// `None` once neither keeps the evader clear.
    fn approach(&self, state: &GameState, dt: f64, margin: f64) -> Option<Direction> {
        let e = state.evader;
        if e.distance(self.target) <= 0.5 * dt {
            return None;
        }
        let d = Direction::new(self.target - e).ok()?;
        let clear =
            |h: Direction| self.walls.iter().all(|&j| clear_of(e, state.pursuers[j], e + h.vector() * dt, margin));
        if clear(d) {
            return Some(d);
        }
        self.walls.iter().find_map(|&j| {
            let n = Line::bisector(e, state.pursuers[j]).ok()?.normal;
            let t = Direction::new(n.vector().perp()).ok()?;
            let t = if t.dot(d.vector()) >= 0.0 { t } else { -t };
            (t.dot(d.vector()) > 0.0 && clear(t)).then_some(t)
        })
    }

    /// Heading towards `z`, or along the first wall that heading would cross.
    fn leave_vertex(&self, state: &GameState, z: Point) -> Result<GreedyPhase> {
        let e = state.evader;
        let d = Direction::new(z - e)?;
        for &j in &self.walls {
            let n = Line::bisector(e, state.pursuers[j])?.normal;
            if n.dot(d.vector()) > 0.0 {
                let t = Direction::new(n.vector().perp())?;
                return Ok(GreedyPhase::Slide(if t.dot(d.vector()) >= 0.0 { t } else { -t }));
            }
        }
        Ok(GreedyPhase::ToMidpoint(z))
    }
}

impl EvaderPolicy for GreedyVertexEvader {
    fn heading(&mut self, state: &GameState, step: &StepInfo) -> Result<Direction> {
        let margin = self.margin.unwrap_or(MARGIN_FACTOR * step.capture_radius);
        let e = state.evader;
        if self.phase == GreedyPhase::ToVertex {
            if let Some(d) = self.approach(state, step.dt, margin) {
                return Ok(d);
            }
            self.phase = self.leave_vertex(state, e.midpoint(state.pursuers[self.chaser]))?;
        }
        match self.phase {
            GreedyPhase::Slide(d) => return Ok(d),
            GreedyPhase::ToMidpoint(z) if e.distance(z) > 0.5 * step.dt => return Direction::new(z - e),
            GreedyPhase::ToMidpoint(_) => self.phase = GreedyPhase::Chase,
            _ => {}
        }
        Direction::new(state.pursuers[self.chaser] - e)
    }
}

/// Constant heading, given as an angle in the initial cell's frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedHeadingEvader {
    pub direction: Direction,
}

impl FixedHeadingEvader {
    pub fn new(players: &PlayerSet, theta: f64) -> Result<Self> {
        if !(0.0..std::f64::consts::TAU).contains(&theta) {
            return Err(Error::InvalidParameter(format!("theta = {theta} outside [0, 2 pi)")));
        }
        let frame = voronoi_cell(players)?.frame();
        Ok(Self { direction: frame.direction(theta) })
    }

    pub fn with_direction(direction: Direction) -> Self {
        Self { direction }
    }
}

impl EvaderPolicy for FixedHeadingEvader {
    fn heading(&mut self, _state: &GameState, _step: &StepInfo) -> Result<Direction> {
        Ok(self.direction)
    }
}
