//! Serializable output schemas and emission helpers. Field order is
//! fixed by declaration, so repeated runs with the same config produce
//! byte-identical JSON.

use std::io::Write;
use std::path::Path;

use cechmv::GraphSummary;
use serde::Serialize;

use crate::{Stage, StageError};

#[derive(Debug, Serialize)]
pub struct ParamsEcho {
    pub alpha: f64,
    pub beta: f64,
    pub mu: f64,
    pub seed_count: usize,
    pub strategy: String,
    pub vote_exponent: String,
    pub lsus_paper_literal: bool,
    pub detector: String,
    pub resolution: f64,
    pub partition_source: String,
    pub rng_seed: u64,
}

#[derive(Debug, Serialize)]
pub struct SelectOutput {
    pub schema_version: u32,
    pub graph: GraphSummary,
    pub params: ParamsEcho,
    pub seeds: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct SirParamsEcho {
    pub lambda: f64,
    pub infect_prob: f64,
    pub recover_prob: f64,
    pub runs: usize,
    pub max_steps: usize,
    pub rng_seed: u64,
}

#[derive(Debug, Serialize)]
pub struct SimulateOutput {
    pub schema_version: u32,
    pub graph: GraphSummary,
    pub params: SirParamsEcho,
    pub seeds: Vec<String>,
    pub final_scale: f64,
    pub trajectory: Vec<f64>,
    pub mean_stabilization_step: f64,
    pub capped_runs: usize,
}

#[derive(Debug, Serialize)]
pub struct RecordJson {
    pub method: String,
    pub f_tc: f64,
    pub runtime_s: f64,
    pub bi: f64,
}

#[derive(Debug, Serialize)]
pub struct BenchmarkOutput {
    pub schema_version: u32,
    pub graph: GraphSummary,
    pub params: SirParamsEcho,
    pub rho: f64,
    pub records: Vec<RecordJson>,
}

pub fn to_json_line<T: Serialize>(value: &T) -> Result<String, StageError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| StageError::new(Stage::Output, e))
}

/// Writes to the file when given, stdout otherwise. A closed stdout
/// (e.g. piping into `head`) is not an error.
pub fn emit(text: &str, target: Option<&Path>) -> Result<(), StageError> {
    match target {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| StageError::new(Stage::Output, format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            match stdout.write_all(text.as_bytes()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    Err(StageError::new(Stage::Output, e))
                }
                _ => Ok(()),
            }
        }
    }
}
