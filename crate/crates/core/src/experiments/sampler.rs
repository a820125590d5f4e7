use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{admissible_with_margin, voronoi_cell, PlayerSet, Point};

/// How pursuers are placed before the admissibility filters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SamplerLaw {
    /// Pursuers uniform in the square `[-half_width, half_width]^2`, evader
    /// uniform in their triangle (barycentric sampling).
    Box,
    /// Evader at the origin; each pursuer at a uniform angle and at radius
    /// `half_width * 10^(-decades * u)` with `u` uniform in `[0, 1)`.
    LogRadial { decades: f64 },
}

/// Random game law.
///
/// A draw is rejected unless the evader is at least `evader_margin`
/// (relative to the hull diameter) inside the hull, the closed-form bounds
/// are computable and, when `min_cell_angle > 0`, the evader's cell has no
/// angle below it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplerConfig {
    pub law: SamplerLaw,
    pub half_width: f64,
    pub evader_margin: f64,
    pub min_cell_angle: f64,
    pub max_attempts: usize,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        Self { law: SamplerLaw::Box, half_width: 1.0, evader_margin: 1e-9, min_cell_angle: 0.0, max_attempts: 100_000 }
    }
}

impl SamplerConfig {
    /// Draws suited to simulation: evader well inside and no sliver cells.
    pub fn well_conditioned() -> Self {
        Self { evader_margin: 0.02, min_cell_angle: 10f64.to_radians(), ..Self::default() }
    }

    /// Monte Carlo default. Pursuer distances spread over three decades, which
    /// gives the heavy `B_P / M_D` tail; the box law rarely exceeds 40 at
    /// `10^4` games.
    pub fn log_radial() -> Self {
        Self { law: SamplerLaw::LogRadial { decades: 3.0 }, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if let SamplerLaw::LogRadial { decades } = self.law {
            if !(0.0..=12.0).contains(&decades) {
                return Err(Error::InvalidParameter("sampler decades must lie in [0, 12]".into()));
            }
        }
        if !(self.half_width.is_finite() && self.half_width > 0.0) {
            return Err(Error::InvalidParameter("sampler half_width must be positive".into()));
        }
        if !(self.evader_margin >= 0.0 && self.evader_margin < 0.5) {
            return Err(Error::InvalidParameter("sampler evader_margin must lie in [0, 0.5)".into()));
        }
        if !(self.min_cell_angle >= 0.0 && self.min_cell_angle < std::f64::consts::FRAC_PI_3) {
            return Err(Error::InvalidParameter("sampler min_cell_angle must lie in [0, pi/3)".into()));
        }
        if self.max_attempts == 0 {
            return Err(Error::InvalidParameter("sampler max_attempts must be positive".into()));
        }
        Ok(())
    }
}

/// Seeded sampler; game `i` draws from ChaCha8 stream `i` of `seed`, so any
/// game can be regenerated on its own and in any order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GameSampler {
    pub config: SamplerConfig,
    pub seed: u64,
}

impl GameSampler {
    pub fn new(config: SamplerConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        Ok(Self { config, seed })
    }

    pub fn sample(&self, index: u64) -> Result<PlayerSet> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let w = self.config.half_width;
        for _ in 0..self.config.max_attempts {
            let players = match self.config.law {
                SamplerLaw::Box => {
                    let pursuers: [Point; 3] =
                        std::array::from_fn(|_| Point::new(rng.gen_range(-w..w), rng.gen_range(-w..w)));
                    let (r1, r2): (f64, f64) = (rng.gen(), rng.gen());
                    let s = r1.sqrt();
                    let [a, b, c] = pursuers;
                    PlayerSet::new(a * (1.0 - s) + b * (s * (1.0 - r2)) + c * (s * r2), pursuers)
                }
                SamplerLaw::LogRadial { decades } => {
                    let pursuers: [Point; 3] = std::array::from_fn(|_| {
                        let r = w * 10f64.powf(-decades * rng.gen::<f64>());
                        let a = rng.gen_range(0.0..std::f64::consts::TAU);
                        Point::new(r * a.cos(), r * a.sin())
                    });
                    PlayerSet::new(Point::ORIGIN, pursuers)
                }
            };
            if !admissible_with_margin(&players, self.config.evader_margin) {
                continue;
            }
            let Ok(cell) = voronoi_cell(&players) else { continue };
            if cell.angles.iter().any(|&a| a < self.config.min_cell_angle) {
                continue;
            }
            if crate::bounds::BoundsReport::compute(&players).is_err() {
                continue;
            }
            return Ok(players);
        }
        Err(Error::SamplerExhausted(self.config.max_attempts))
    }

    pub fn sample_many(&self, n: usize) -> Result<Vec<PlayerSet>> {
        (0..n as u64).map(|i| self.sample(i)).collect()
    }
}
