//! Three pursuers, one evader, equal speeds, in the plane.
//!
//! The evader's Voronoi cell is a triangle; [`geometry`] builds and labels
//! it. [`strategies`] holds the decentralized pursuit rule, the evader's
//! optimal reply to it, a greedy survival strategy and a two-phase
//! cooperative pursuit. [`bounds`] evaluates the closed-form game lengths
//! and [`engine`] integrates games. [`experiments`] wires these into Monte
//! Carlo studies, parameter sweeps and derivative checks.

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod engine;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod geometry;
pub mod strategies;

pub use bounds::{
    delta_ratio, dmd_dt, game_length, lower_bound, min_max_projection, pshenichnyi_bound, BoundsReport, DerivativeCase,
    LowerBound, PshenichnyiBound,
};
pub use engine::{capture_check, play, run_game, GameOutcome, GameState, GameTrace, Mode, SimParams, StepInfo};
pub use error::{Error, Result};
pub use geometry::{
    anchor_points, assert_admissible, pursuers_from_cell, voronoi_cell, AnchorPoints, CellFrame, Direction, Line,
    PlayerSet, Point, Triangle, VoronoiCell,
};
pub use strategies::{
    d_strategy_move, e_strategy_direction, e_strategy_plan, CHatStrategy, DStrategy, DTeam, Decentralized,
    EStrategyEvader, EvaderPlan, EvaderPolicy, FixedHeadingEvader, FlatIsoscelesFamily, GreedyVertexEvader,
    PursuerObservation, PursuerTeam,
};
