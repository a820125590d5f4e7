use thiserror::Error;

/// Errors raised by geometry, strategy, bound and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evader cell is unbounded or collapsed; the evader is not strictly
    /// inside the convex hull of the pursuers.
    #[error("evader cell is not a bounded triangle (evader must lie strictly inside the pursuers' convex hull)")]
    NotATriangle,

    #[error("numerical degeneracy: {0}")]
    NumericalDegeneracy(&'static str),

    #[error("evader is not strictly inside the triangle")]
    EvaderOutsideCell,

    #[error("degenerate cell: {0}")]
    DegenerateCell(&'static str),

    /// The min-max projection of the relative-position directions is not positive.
    #[error("relative-position directions are degenerate (min-max projection {0:.3e} is not positive)")]
    DegenerateDirections(f64),

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("lines do not intersect numerically")]
    ParallelLines,

    #[error("plan exhausted at t = {t} (total duration {total})")]
    GameOver { t: f64, total: f64 },

    #[error("configuration is not a member of the flat isosceles family")]
    OutOfFamily,

    #[error("strategy assumption violated: {0}")]
    AssumptionViolated(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("sampler exhausted after {0} rejected draws")]
    SamplerExhausted(usize),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Io(err.to_string())
    }
}
