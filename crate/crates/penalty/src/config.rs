//! Run configuration, read from a JSON document.

use std::fs;
use std::path::{Path, PathBuf};

use penalty_core::oracles::McConfig;
use penalty_core::{ModelParams, Regime};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed config {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("invalid lambda grid: {0}")]
    Grid(String),
    #[error("invalid Monte Carlo settings: {0}")]
    MonteCarlo(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeName {
    Complete,
    Private,
}

impl From<RegimeName> for Regime {
    fn from(r: RegimeName) -> Regime {
        match r {
            RegimeName::Complete => Regime::Complete,
            RegimeName::Private => Regime::Private,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl LambdaGrid {
    /// `min, min + step, …` up to `max`. A grid with `min == max` has one
    /// point.
    pub fn points(&self) -> Vec<f64> {
        let count = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| self.min + self.step * i as f64).collect()
    }

    fn check(&self) -> Result<(), ConfigError> {
        if !(self.min.is_finite() && self.max.is_finite() && self.step.is_finite()) {
            return Err(ConfigError::Grid("bounds and step must be finite".into()));
        }
        if self.min < 0.0 {
            return Err(ConfigError::Grid(format!("min = {} is negative", self.min)));
        }
        if self.min > self.max {
            return Err(ConfigError::Grid(format!("min = {} exceeds max = {}", self.min, self.max)));
        }
        if self.step <= 0.0 {
            return Err(ConfigError::Grid(format!("step = {} is not positive", self.step)));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloConfig {
    pub n: u64,
    pub seed: u64,
    #[serde(default = "default_batches")]
    pub batches: usize,
}

fn default_batches() -> usize {
    1
}

impl Default for MonteCarloConfig {
    fn default() -> Self {
        MonteCarloConfig { n: 100_000, seed: 42, batches: 1 }
    }
}

impl From<MonteCarloConfig> for McConfig {
    fn from(m: MonteCarloConfig) -> McConfig {
        McConfig::new(m.n, m.seed).with_batches(m.batches)
    }
}

fn default_resolution() -> usize {
    200
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("out")
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(rename = "G")]
    pub gratification: f64,
    pub k: f64,
    #[serde(rename = "M")]
    pub max_man_type: f64,
    pub mu: f64,
    pub alpha: f64,
    pub regime: RegimeName,
    pub lambda_grid: LambdaGrid,
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default)]
    pub monte_carlo: MonteCarloConfig,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io { path: path.into(), source })?;
        Self::parse(&text).map_err(|e| match e {
            ConfigError::Parse { source, .. } => ConfigError::Parse { path: path.into(), source },
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<RunConfig, ConfigError> {
        let cfg: RunConfig =
            serde_json::from_str(text).map_err(|source| ConfigError::Parse { path: PathBuf::new(), source })?;
        cfg.lambda_grid.check()?;
        if cfg.monte_carlo.n == 0 {
            return Err(ConfigError::MonteCarlo("n must be at least 1".into()));
        }
        if cfg.monte_carlo.batches == 0 {
            return Err(ConfigError::MonteCarlo("batches must be at least 1".into()));
        }
        if cfg.resolution < 2 {
            return Err(ConfigError::Grid(format!("resolution = {} is below 2", cfg.resolution)));
        }
        Ok(cfg)
    }

    pub fn params(&self) -> ModelParams {
        ModelParams::new(self.gratification, self.k, self.max_man_type, self.mu, self.alpha)
    }
}
