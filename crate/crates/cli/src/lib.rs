//! Command-line orchestration of the influence-maximization pipeline:
//! load an edge list, detect communities, score nodes, select seeds,
//! simulate spread, benchmark methods.

pub mod args;
pub mod config;
pub mod output;
pub mod runner;

use std::fmt;

use thiserror::Error;

/// Pipeline stage, used to attribute every failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Config,
    Load,
    Detect,
    Score,
    Select,
    Simulate,
    Benchmark,
    Output,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Stage::Config => "config",
            Stage::Load => "load",
            Stage::Detect => "detect",
            Stage::Score => "score",
            Stage::Select => "select",
            Stage::Simulate => "simulate",
            Stage::Benchmark => "benchmark",
            Stage::Output => "output",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error)]
#[error("error in stage {stage}: {message}")]
pub struct StageError {
    pub stage: Stage,
    pub message: String,
}

impl StageError {
    pub fn new(stage: Stage, message: impl fmt::Display) -> Self {
        StageError {
            stage,
            message: message.to_string(),
        }
    }
}

/// Environment variable holding the default dataset directory; relative
/// `--input` paths that do not exist locally are retried against it.
pub const DATA_DIR_ENV: &str = "CECHMV_DATA_DIR";

/// JSON output schema version.
pub const SCHEMA_VERSION: u32 = 1;
