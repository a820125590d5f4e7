//! Studies built on the closed forms and the simulator.

mod csv_out;
mod games;
mod montecarlo;
mod sampler;
mod sweeps;
mod table2;

pub use games::{d_vs_e, d_vs_greedy, d_vs_perturbed_e, Resolution, SurvivalRecord};
pub use montecarlo::{
    montecarlo, summarize, write_montecarlo_csv, GameRecord, MonteCarloSummary, Spread, MONTECARLO_CSV_HEADER,
};
pub use sampler::{GameSampler, SamplerConfig, SamplerLaw};
pub use sweeps::{
    flat_isosceles_row, flat_isosceles_sweep, right_triangle_sweep, write_flat_sweep_csv, write_right_sweep_csv,
    FlatRow, FlatSweep, FlatSweepConfig, RightTriangleFamily, RightTriangleRow, RightTriangleSweep,
    FLAT_SWEEP_CSV_HEADER, RIGHT_SWEEP_CSV_HEADER,
};
pub use table2::{
    table2_check, table2_curve, table2_game, write_table2_curve_csv, write_table2_games_csv, CurvePoint, LocalMax,
    Table2Config, Table2Game, MAXIMUM_TOLERANCE, RESIDUAL_TOLERANCE, TABLE2_CURVE_CSV_HEADER, TABLE2_GAMES_CSV_HEADER,
};

/// Version of every CSV layout written by this crate.
pub const CSV_SCHEMA_VERSION: u32 = 1;
