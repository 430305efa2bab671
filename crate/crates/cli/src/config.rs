//! Defaults and the optional TOML config layer.
//!
//! Resolution order for every parameter: command-line flag, then config
//! file, then built-in default.

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::args::{DetectorChoice, ExponentChoice, StrategyChoice};
use crate::{Stage, StageError};

/// Standard experiment constants.
pub mod defaults {
    pub const ALPHA: f64 = 0.7;
    pub const BETA: f64 = 2.0;
    pub const MU: f64 = 0.15;
    pub const LAMBDA: f64 = 1.5;
    pub const RHO: f64 = 0.03;
    pub const RUNS: usize = 100;
    pub const RNG_SEED: u64 = 42;
    pub const RESOLUTION: f64 = 1.0;
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub input: Option<PathBuf>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub mu: Option<f64>,
    pub lambda: Option<f64>,
    pub rho: Option<f64>,
    pub seeds: Option<usize>,
    pub runs: Option<usize>,
    pub max_steps: Option<usize>,
    pub rng_seed: Option<u64>,
    pub detector: Option<String>,
    pub resolution: Option<f64>,
    pub strategy: Option<String>,
    pub vote_exponent: Option<String>,
    pub lsus_paper_literal: Option<bool>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, StageError> {
        match path {
            None => Ok(FileConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| StageError::new(Stage::Config, format!("{}: {e}", p.display())))?;
                toml::from_str(&text)
                    .map_err(|e| StageError::new(Stage::Config, format!("{}: {e}", p.display())))
            }
        }
    }

    pub fn detector_choice(&self) -> Result<Option<DetectorChoice>, StageError> {
        parse_choice(&self.detector, "detector", &[
            ("louvain", DetectorChoice::Louvain),
            ("leiden", DetectorChoice::Leiden),
        ])
    }

    pub fn strategy_choice(&self) -> Result<Option<StrategyChoice>, StageError> {
        parse_choice(&self.strategy, "strategy", &[
            ("lazy", StrategyChoice::Lazy),
            ("eager", StrategyChoice::Eager),
        ])
    }

    pub fn exponent_choice(&self) -> Result<Option<ExponentChoice>, StageError> {
        parse_choice(&self.vote_exponent, "vote_exponent", &[
            ("algorithm", ExponentChoice::Algorithm),
            ("equation", ExponentChoice::Equation),
        ])
    }
}

fn parse_choice<T: Copy>(
    value: &Option<String>,
    field: &str,
    table: &[(&str, T)],
) -> Result<Option<T>, StageError> {
    match value {
        None => Ok(None),
        Some(s) => table
            .iter()
            .find(|(name, _)| name == s)
            .map(|&(_, v)| Some(v))
            .ok_or_else(|| {
                StageError::new(Stage::Config, format!("invalid {field} value {s:?}"))
            }),
    }
}
