use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use clap::ValueEnum;
use pursuit::experiments::{FlatSweepConfig, GameSampler, SamplerConfig, Table2Config};
use pursuit::{Mode, PlayerSet, SimParams};
use serde::{Deserialize, Serialize};

pub const DEFAULT_SEED: u64 = 2024;
pub const DEFAULT_GRID: [f64; 3] = [0.1, 0.01, 0.001];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Right-angled cell with legs `m` and a shrinking `s` (closed forms).
    Right,
    /// Flat isosceles cell with a shrinking apex (simulated).
    Flat,
}

/// Evader policy for `simulate`: `e`, `e-replanning`, `greedy`,
/// `fixed:<theta>` (radians in the cell frame) or
/// `perturbed:<leg>:<degrees>`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum EvaderKind {
    E,
    EReplanning,
    Greedy,
    Fixed(f64),
    Perturbed { leg: usize, degrees: f64 },
}

impl FromStr for EvaderKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.parse::<f64>().map_err(|e| format!("bad number {t:?} in evader {s:?}: {e}"));
        match parts.as_slice() {
            ["e"] => Ok(Self::E),
            ["e-replanning"] => Ok(Self::EReplanning),
            ["greedy"] => Ok(Self::Greedy),
            ["fixed", t] => Ok(Self::Fixed(num(t)?)),
            ["perturbed", leg, deg] => {
                let leg = leg.parse::<usize>().map_err(|e| format!("bad leg in evader {s:?}: {e}"))?;
                if leg > 2 {
                    return Err(format!("leg must be 0, 1 or 2 in evader {s:?}"));
                }
                Ok(Self::Perturbed { leg, degrees: num(deg)? })
            }
            _ => Err(format!(
                "unknown evader {s:?}; expected e, e-replanning, greedy, fixed:<theta> or perturbed:<leg>:<deg>"
            )),
        }
    }
}

impl TryFrom<String> for EvaderKind {
    type Error = String;

    fn try_from(s: String) -> std::result::Result<Self, String> {
        s.parse()
    }
}

impl From<EvaderKind> for String {
    fn from(k: EvaderKind) -> String {
        match k {
            EvaderKind::E => "e".into(),
            EvaderKind::EReplanning => "e-replanning".into(),
            EvaderKind::Greedy => "greedy".into(),
            EvaderKind::Fixed(t) => format!("fixed:{t}"),
            EvaderKind::Perturbed { leg, degrees } => format!("perturbed:{leg}:{degrees}"),
        }
    }
}

/// Right-triangle and flat-isosceles sweep knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SweepSection {
    /// Long leg of the right-triangle family.
    pub m: f64,
    /// Base of the flat-isosceles family.
    pub l: f64,
    pub flat: FlatSweepConfig,
}

impl Default for SweepSection {
    fn default() -> Self {
        Self { m: 1.0, l: 2.0, flat: FlatSweepConfig::default() }
    }
}

/// Contents of `--config`. Every field is optional.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FileConfig {
    pub seed: Option<u64>,
    pub n_games: Option<usize>,
    pub dt: Option<f64>,
    pub capture_radius: Option<f64>,
    pub max_time: Option<f64>,
    pub mode: Option<Mode>,
    pub family: Option<Family>,
    pub grid: Option<Vec<f64>>,
    pub sampler: Option<SamplerConfig>,
    /// Explicit game for `simulate` and `bounds`.
    pub players: Option<PlayerSet>,
    /// Sampled game used when `players` is absent.
    pub game: Option<u64>,
    pub evader: Option<EvaderKind>,
    pub sweep: SweepSection,
    pub table2: Table2Config,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }
}

/// Flag and environment values; `None` when not given.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub dt: Option<f64>,
    pub capture_radius: Option<f64>,
    pub n_games: Option<usize>,
    pub family: Option<Family>,
    pub grid: Option<Vec<f64>>,
    pub game: Option<u64>,
    pub evader: Option<EvaderKind>,
}

/// Configuration after flags, environment and file are merged.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Resolved {
    pub seed: u64,
    pub out_dir: PathBuf,
    pub n_games: Option<usize>,
    pub dt: Option<f64>,
    pub capture_radius: Option<f64>,
    pub max_time: Option<f64>,
    pub mode: Mode,
    pub family: Family,
    pub grid: Vec<f64>,
    pub sampler: Option<SamplerConfig>,
    pub players: Option<PlayerSet>,
    pub game: u64,
    pub evader: EvaderKind,
    pub sweep: SweepSection,
    pub table2: Table2Config,
}

impl Resolved {
    pub fn merge(file: FileConfig, o: Overrides) -> Self {
        Self {
            seed: o.seed.or(file.seed).unwrap_or(DEFAULT_SEED),
            out_dir: o.out_dir.unwrap_or_else(|| PathBuf::from("out")),
            n_games: o.n_games.or(file.n_games),
            dt: o.dt.or(file.dt),
            capture_radius: o.capture_radius.or(file.capture_radius),
            max_time: file.max_time,
            mode: file.mode.unwrap_or(Mode::Continuous),
            family: o.family.or(file.family).unwrap_or(Family::Right),
            grid: o.grid.or(file.grid).unwrap_or_else(|| DEFAULT_GRID.to_vec()),
            sampler: file.sampler,
            players: file.players,
            game: o.game.or(file.game).unwrap_or(0),
            evader: o.evader.or(file.evader).unwrap_or(EvaderKind::E),
            sweep: file.sweep,
            table2: file.table2,
        }
    }

    pub fn sampler_or(&self, default: SamplerConfig) -> Result<GameSampler> {
        Ok(GameSampler::new(self.sampler.unwrap_or(default), self.seed)?)
    }

    pub fn n_games_or(&self, default: usize) -> Result<usize> {
        match self.n_games.unwrap_or(default) {
            0 => bail!("n_games must be at least 1"),
            n => Ok(n),
        }
    }

    /// The configured game, or game `game` of the sampler.
    pub fn players(&self, default: SamplerConfig) -> Result<PlayerSet> {
        match self.players {
            Some(p) => Ok(p),
            None => Ok(self.sampler_or(default)?.sample(self.game)?),
        }
    }

    /// Defaults `dt = 1e-3 l`, `r = 2 dt`, horizon `4 M_D`, then overrides.
    pub fn sim_params(&self, players: &PlayerSet) -> Result<SimParams> {
        let base = SimParams::defaults_for(players)?;
        let capture_radius = self.capture_radius.unwrap_or(match self.dt {
            Some(dt) if self.mode == Mode::Continuous => 2.0 * dt,
            _ => base.capture_radius,
        });
        let max_time = self.max_time.unwrap_or(base.max_time);
        let params = match self.mode {
            Mode::Continuous => SimParams::new(self.dt.unwrap_or(base.dt), capture_radius, max_time)?,
            Mode::Discrete => SimParams::discrete(max_time, self.capture_radius.unwrap_or(2.0))?,
        };
        Ok(params)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evader_names_roundtrip() {
        for s in ["e", "e-replanning", "greedy", "fixed:0.5", "perturbed:2:10"] {
            let k: EvaderKind = s.parse().unwrap();
            assert_eq!(String::from(k), s);
        }
        assert!("perturbed:3:10".parse::<EvaderKind>().is_err());
        assert!("fast".parse::<EvaderKind>().is_err());
    }

    #[test]
    fn flags_beat_file_values() {
        let file = FileConfig { seed: Some(5), dt: Some(0.1), grid: Some(vec![0.5]), ..FileConfig::default() };
        let r = Resolved::merge(file.clone(), Overrides { seed: Some(9), ..Overrides::default() });
        assert_eq!((r.seed, r.dt, r.grid.clone()), (9, Some(0.1), vec![0.5]));
        let r = Resolved::merge(FileConfig::default(), Overrides::default());
        assert_eq!((r.seed, r.family, r.grid), (DEFAULT_SEED, Family::Right, DEFAULT_GRID.to_vec()));
    }

    #[test]
    fn file_rejects_unknown_keys() {
        assert!(serde_json::from_str::<FileConfig>(r#"{"sed": 1}"#).is_err());
        let c: FileConfig =
            serde_json::from_str(r#"{"evader": "fixed:1.5", "sampler": {"law": {"kind": "box"}}}"#).unwrap();
        assert_eq!(c.evader, Some(EvaderKind::Fixed(1.5)));
    }
}
