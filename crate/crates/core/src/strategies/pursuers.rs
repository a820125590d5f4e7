use super::{DecentralizedPursuer, PursuerObservation, PursuerTeam};
use crate::engine::{GameState, StepInfo};
use crate::error::{Error, Result};
use crate::geometry::Direction;

/// Decentralized pursuit rule.
///
/// With `z = P - E`: if `z.e <= 0` the pursuer copies the evader's move;
/// otherwise it heads for `B = E + alpha e`, the point where the evader's
/// line of motion crosses the bisector of `E` and `P`.
pub fn d_strategy_move(obs: &PursuerObservation) -> Result<Direction> {
    let e = obs.heading;
    let z = obs.own - obs.evader;
    let ze = e.dot(z);
    if ze <= 0.0 {
        return Ok(e);
    }
    let alpha = 0.5 * z.norm_sq() / ze;
    if !alpha.is_finite() {
        return Err(Error::ParallelLines);
    }
    let b = obs.evader + e.vector() * alpha;
    Direction::new(b - obs.own).map_err(|_| Error::ParallelLines)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DStrategy;

impl DecentralizedPursuer for DStrategy {
    fn heading(&mut self, obs: &PursuerObservation) -> Result<Direction> {
        d_strategy_move(obs)
    }
}

/// Three independent pursuers, each fed only its own observation.
#[derive(Debug, Clone, Default)]
pub struct Decentralized<P> {
    pub members: [P; 3],
}

pub type DTeam = Decentralized<DStrategy>;

impl Decentralized<DStrategy> {
    pub fn d_strategy() -> Self {
        Self { members: [DStrategy; 3] }
    }
}

impl<P: DecentralizedPursuer> PursuerTeam for Decentralized<P> {
    fn headings(&mut self, state: &GameState, e: Direction, _step: &StepInfo) -> Result<[Direction; 3]> {
        let mut out = [e; 3];
        for (i, member) in self.members.iter_mut().enumerate() {
            let obs = PursuerObservation { own: state.pursuers[i], evader: state.evader, heading: e };
            out[i] = member.heading(&obs)?;
        }
        Ok(out)
    }

    fn is_decentralized(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Line, Point};
    use approx::assert_abs_diff_eq;

    fn obs(p: Point, e: Point, h: Point) -> PursuerObservation {
        PursuerObservation { own: p, evader: e, heading: Direction::new(h).unwrap() }
    }

    #[test]
    fn copies_when_evader_retreats_or_slides() {
        let w = d_strategy_move(&obs(Point::new(0.0, 2.0), Point::ORIGIN, Point::new(1.0, 0.0))).unwrap();
        assert_eq!(w.vector(), Point::new(1.0, 0.0));
    }

    #[test]
    fn head_on_mirrors() {
        let w = d_strategy_move(&obs(Point::new(2.0, 0.0), Point::ORIGIN, Point::new(1.0, 0.0))).unwrap();
        assert_abs_diff_eq!(w.dx(), -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.dy(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn oblique_heads_to_bisector_crossing() {
        let w = d_strategy_move(&obs(Point::new(2.0, 0.0), Point::ORIGIN, Point::new(1.0, 1.0))).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert_abs_diff_eq!(w.dx(), -s, epsilon = 1e-15);
        assert_abs_diff_eq!(w.dy(), s, epsilon = 1e-15);
    }

    #[test]
    fn mirror_branch_is_reflection_across_bisector() {
        let (p, e) = (Point::new(1.3, -0.4), Point::new(-0.2, 0.5));
        let h = Direction::from_angle(-0.3);
        let w = d_strategy_move(&PursuerObservation { own: p, evader: e, heading: h }).unwrap();
        let bis = Line::bisector(e, p).unwrap();
        let want = h.reflected(bis.normal);
        assert_abs_diff_eq!(w.dx(), want.dx(), epsilon = 1e-12);
        assert_abs_diff_eq!(w.dy(), want.dy(), epsilon = 1e-12);
    }
}
