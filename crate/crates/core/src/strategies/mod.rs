//! Pursuer and evader policies.
//!
//! Every policy returns a unit heading. Decentralized pursuers only ever see
//! a [`PursuerObservation`]: their own position and the evader's position and
//! committed heading. Cooperative teams see the whole [`GameState`].

mod cooperative;
mod evaders;
mod pursuers;

pub use cooperative::{CHatStrategy, ChatPhase, FlatIsoscelesFamily, PHASE_SWITCH_TOLERANCE};
pub use evaders::{
    e_strategy_direction, e_strategy_plan, e_strategy_plan_from_cell, EStrategyEvader, EvaderPlan, FixedHeadingEvader,
    GreedyVertexEvader, Perturbation, MARGIN_FACTOR,
};
pub use pursuers::{d_strategy_move, DStrategy, DTeam, Decentralized};

use crate::engine::{GameState, StepInfo};
use crate::error::Result;
use crate::geometry::{Direction, Point};

pub trait EvaderPolicy {
    fn heading(&mut self, state: &GameState, step: &StepInfo) -> Result<Direction>;
}

/// Everything a decentralized pursuer may look at.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PursuerObservation {
    pub own: Point,
    pub evader: Point,
    pub heading: Direction,
}

pub trait DecentralizedPursuer {
    fn heading(&mut self, obs: &PursuerObservation) -> Result<Direction>;
}

pub trait PursuerTeam {
    /// Headings for all pursuers, in the state's pursuer order, given the
    /// evader's committed heading `e`.
    fn headings(&mut self, state: &GameState, e: Direction, step: &StepInfo) -> Result<[Direction; 3]>;

    fn is_decentralized(&self) -> bool {
        false
    }
}

impl<T: EvaderPolicy + ?Sized> EvaderPolicy for Box<T> {
    fn heading(&mut self, state: &GameState, step: &StepInfo) -> Result<Direction> {
        (**self).heading(state, step)
    }
}

impl<T: PursuerTeam + ?Sized> PursuerTeam for Box<T> {
    fn headings(&mut self, state: &GameState, e: Direction, step: &StepInfo) -> Result<[Direction; 3]> {
        (**self).headings(state, e, step)
    }

    fn is_decentralized(&self) -> bool {
        (**self).is_decentralized()
    }
}
