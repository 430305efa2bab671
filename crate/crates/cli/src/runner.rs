//! Subcommand implementations.

use std::fs::File;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use cechmv::{
    detect_communities, dschi_scores, load_edge_list, run_benchmark, seed_count_from_rho,
    select_seeds, simulate, BaselineMethod, CechmvParams, CommunityAssignment, DetectorKind,
    DetectorParams, ExponentForm, Graph, Method, PartitionFile, SirParams, UpdateStrategy,
    VotingParams,
};

use crate::args::{
    BenchmarkArgs, Cli, Command, CommunitiesArgs, DetectorChoice, ExponentChoice, ScoreArgs,
    ScoringArgs, SelectArgs, SelectionArgs, SimulateArgs, StrategyChoice,
};
use crate::config::{defaults, FileConfig};
use crate::output::{
    emit, to_json_line, BenchmarkOutput, ParamsEcho, RecordJson, SelectOutput, SimulateOutput,
    SirParamsEcho,
};
use crate::{Stage, StageError, DATA_DIR_ENV, SCHEMA_VERSION};

pub fn run(cli: Cli) -> Result<(), StageError> {
    let config = FileConfig::load(cli.config.as_deref())?;
    let graph = load_graph(cli.input.as_deref(), &config)?;
    match cli.command {
        Command::Score(args) => score(&graph, args, &config),
        Command::Communities(args) => communities(&graph, args, &config),
        Command::Select(args) => select(&graph, args, &config),
        Command::Simulate(args) => simulate_cmd(&graph, args, &config),
        Command::Benchmark(args) => benchmark(&graph, args, &config),
    }
}

fn load_graph(input: Option<&Path>, config: &FileConfig) -> Result<Graph, StageError> {
    let path = input
        .map(Path::to_path_buf)
        .or_else(|| config.input.clone())
        .ok_or_else(|| StageError::new(Stage::Load, "no input file given (use --input)"))?;
    let resolved = resolve_input_path(&path);
    let file = File::open(&resolved)
        .map_err(|e| StageError::new(Stage::Load, format!("{}: {e}", resolved.display())))?;
    load_edge_list(BufReader::new(file))
        .map_err(|e| StageError::new(Stage::Load, format!("{}: {e}", resolved.display())))
}

fn resolve_input_path(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    if let Ok(dir) = std::env::var(DATA_DIR_ENV) {
        let candidate = Path::new(&dir).join(path);
        if candidate.exists() {
            return candidate;
        }
    }
    path.to_path_buf()
}

/// Scoring knobs after applying flag > config > default precedence.
struct ResolvedScoring {
    alpha: f64,
    detector: DetectorChoice,
    resolution: f64,
    partition: Option<PathBuf>,
    rng_seed: u64,
}

impl ResolvedScoring {
    fn new(
        args: &ScoringArgs,
        rng_seed: Option<u64>,
        config: &FileConfig,
    ) -> Result<Self, StageError> {
        Ok(ResolvedScoring {
            alpha: args.alpha.or(config.alpha).unwrap_or(defaults::ALPHA),
            detector: args
                .detector
                .or(config.detector_choice()?)
                .unwrap_or(DetectorChoice::Louvain),
            resolution: args
                .resolution
                .or(config.resolution)
                .unwrap_or(defaults::RESOLUTION),
            partition: args.partition.clone(),
            rng_seed: rng_seed.or(config.rng_seed).unwrap_or(defaults::RNG_SEED),
        })
    }

    fn detector_params(&self) -> DetectorParams {
        DetectorParams {
            kind: match self.detector {
                DetectorChoice::Louvain => DetectorKind::Louvain,
                DetectorChoice::Leiden => DetectorKind::Leiden,
            },
            resolution: self.resolution,
        }
    }

    fn detector_name(&self) -> &'static str {
        match self.detector {
            DetectorChoice::Louvain => "louvain",
            DetectorChoice::Leiden => "leiden",
        }
    }

    /// Loads the fixed partition when given, otherwise runs detection.
    fn assignment(&self, g: &Graph) -> Result<(CommunityAssignment, &'static str), StageError> {
        match &self.partition {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    StageError::new(Stage::Detect, format!("{}: {e}", path.display()))
                })?;
                let file: PartitionFile = serde_json::from_str(&text).map_err(|e| {
                    StageError::new(Stage::Detect, format!("{}: {e}", path.display()))
                })?;
                let ca = CommunityAssignment::from_partition(g, &file)
                    .map_err(|e| StageError::new(Stage::Detect, e))?;
                Ok((ca, "file"))
            }
            None => Ok((
                detect_communities(g, &self.detector_params(), self.rng_seed),
                "detected",
            )),
        }
    }
}

/// Selection knobs after applying precedence.
struct ResolvedSelection {
    beta: f64,
    mu: f64,
    strategy: StrategyChoice,
    vote_exponent: ExponentChoice,
    lsus_paper_literal: bool,
}

impl ResolvedSelection {
    fn new(args: &SelectionArgs, config: &FileConfig) -> Result<Self, StageError> {
        Ok(ResolvedSelection {
            beta: args.beta.or(config.beta).unwrap_or(defaults::BETA),
            mu: args.mu.or(config.mu).unwrap_or(defaults::MU),
            strategy: args
                .strategy
                .or(config.strategy_choice()?)
                .unwrap_or(StrategyChoice::Lazy),
            vote_exponent: args
                .vote_exponent
                .or(config.exponent_choice()?)
                .unwrap_or(ExponentChoice::Algorithm),
            lsus_paper_literal: args.lsus_paper_literal
                || config.lsus_paper_literal.unwrap_or(false),
        })
    }

    fn update_strategy(&self) -> UpdateStrategy {
        match self.strategy {
            StrategyChoice::Lazy => UpdateStrategy::Lazy,
            StrategyChoice::Eager => UpdateStrategy::Eager,
        }
    }

    fn exponent_form(&self) -> ExponentForm {
        match self.vote_exponent {
            ExponentChoice::Algorithm => ExponentForm::Algorithm,
            ExponentChoice::Equation => ExponentForm::Equation,
        }
    }

    fn strategy_name(&self) -> &'static str {
        match self.strategy {
            StrategyChoice::Lazy => "lazy",
            StrategyChoice::Eager => "eager",
        }
    }

    fn exponent_name(&self) -> &'static str {
        match self.vote_exponent {
            ExponentChoice::Algorithm => "algorithm",
            ExponentChoice::Equation => "equation",
        }
    }
}

fn resolve_seed_count(
    g: &Graph,
    seeds: Option<usize>,
    rho: Option<f64>,
    config: &FileConfig,
) -> usize {
    match seeds.or(config.seeds) {
        Some(k) => k,
        None => {
            let rho = rho.or(config.rho).unwrap_or(defaults::RHO);
            seed_count_from_rho(g.node_count(), rho)
        }
    }
}

fn score(g: &Graph, args: ScoreArgs, config: &FileConfig) -> Result<(), StageError> {
    let scoring = ResolvedScoring::new(&args.scoring, args.rng_seed, config)?;
    let (assignment, _) = scoring.assignment(g)?;
    let table = dschi_scores::<f64>(g, &assignment, scoring.alpha)
        .map_err(|e| StageError::new(Stage::Score, e))?;

    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| {
        table.dschi[b]
            .partial_cmp(&table.dschi[a])
            .expect("scores are finite")
            .then_with(|| g.label(a).cmp(g.label(b)))
    });

    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["node_label", "ks", "nc", "nc_n", "hce", "hce_n", "dschi"])
        .map_err(|e| StageError::new(Stage::Output, e))?;
    for v in order {
        writer
            .write_record([
                g.label(v).to_string(),
                table.ks[v].to_string(),
                table.nc[v].to_string(),
                table.nc_n[v].to_string(),
                table.hce[v].to_string(),
                table.hce_n[v].to_string(),
                table.dschi[v].to_string(),
            ])
            .map_err(|e| StageError::new(Stage::Output, e))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| StageError::new(Stage::Output, e))?;
    let text = String::from_utf8(bytes).expect("csv is utf-8");
    emit(&text, args.output.as_deref())
}

fn communities(g: &Graph, args: CommunitiesArgs, config: &FileConfig) -> Result<(), StageError> {
    let scoring = ResolvedScoring::new(
        &ScoringArgs {
            alpha: None,
            detector: args.detector,
            resolution: args.resolution,
            partition: None,
        },
        args.rng_seed,
        config,
    )?;
    let assignment = detect_communities(g, &scoring.detector_params(), scoring.rng_seed);
    let text = to_json_line(&assignment.to_partition(g))?;
    emit(&text, args.output.as_deref())
}

fn select(g: &Graph, args: SelectArgs, config: &FileConfig) -> Result<(), StageError> {
    let scoring = ResolvedScoring::new(&args.scoring, args.rng_seed, config)?;
    let selection = ResolvedSelection::new(&args.selection, config)?;
    let k = resolve_seed_count(g, args.seeds, args.rho, config);

    let (assignment, partition_source) = scoring.assignment(g)?;
    let table = dschi_scores::<f64>(g, &assignment, scoring.alpha)
        .map_err(|e| StageError::new(Stage::Score, e))?;
    let voting = VotingParams {
        beta: selection.beta,
        mu: selection.mu,
        exponent_form: selection.exponent_form(),
        seed_count: k,
        lsus_paper_literal: selection.lsus_paper_literal,
    };
    let seeds = select_seeds(g, &table, &voting, selection.update_strategy())
        .map_err(|e| StageError::new(Stage::Select, e))?;

    let output = SelectOutput {
        schema_version: SCHEMA_VERSION,
        graph: g.summary(),
        params: ParamsEcho {
            alpha: scoring.alpha,
            beta: selection.beta,
            mu: selection.mu,
            seed_count: k,
            strategy: selection.strategy_name().to_string(),
            vote_exponent: selection.exponent_name().to_string(),
            lsus_paper_literal: selection.lsus_paper_literal,
            detector: scoring.detector_name().to_string(),
            resolution: scoring.resolution,
            partition_source: partition_source.to_string(),
            rng_seed: scoring.rng_seed,
        },
        seeds: seeds.iter().map(|&v| g.label(v).to_string()).collect(),
    };
    emit(&to_json_line(&output)?, args.output.as_deref())
}

/// Reads a seeds file: either the JSON emitted by `select` (any object
/// with a `seeds` array of labels) or plain text with one label per line.
fn read_seeds_file(g: &Graph, path: &Path) -> Result<Vec<usize>, StageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| StageError::new(Stage::Simulate, format!("{}: {e}", path.display())))?;
    let labels: Vec<String> = match serde_json::from_str::<serde_json::Value>(&text) {
        Ok(value) => value
            .get("seeds")
            .and_then(|s| s.as_array())
            .and_then(|arr| {
                arr.iter()
                    .map(|x| x.as_str().map(str::to_string))
                    .collect::<Option<Vec<_>>>()
            })
            .ok_or_else(|| {
                StageError::new(
                    Stage::Simulate,
                    format!("{}: JSON does not contain a \"seeds\" array of labels", path.display()),
                )
            })?,
        Err(_) => text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect(),
    };
    labels
        .iter()
        .map(|label| {
            g.node_by_label(label).ok_or_else(|| {
                StageError::new(Stage::Simulate, format!("unknown seed label {label:?}"))
            })
        })
        .collect()
}

fn simulate_cmd(g: &Graph, args: SimulateArgs, config: &FileConfig) -> Result<(), StageError> {
    let rng_seed = args.rng_seed.or(config.rng_seed).unwrap_or(defaults::RNG_SEED);
    let lambda = args.lambda.or(config.lambda).unwrap_or(defaults::LAMBDA);
    let runs = args.runs.or(config.runs).unwrap_or(defaults::RUNS);

    let seeds = match &args.seeds_file {
        Some(path) => read_seeds_file(g, path)?,
        None => {
            let scoring = ResolvedScoring::new(&args.scoring, args.rng_seed, config)?;
            let selection = ResolvedSelection::new(&args.selection, config)?;
            let k = resolve_seed_count(g, None, args.rho, config);
            let (assignment, _) = scoring.assignment(g)?;
            let table = dschi_scores::<f64>(g, &assignment, scoring.alpha)
                .map_err(|e| StageError::new(Stage::Score, e))?;
            let voting = VotingParams {
                beta: selection.beta,
                mu: selection.mu,
                exponent_form: selection.exponent_form(),
                seed_count: k,
                lsus_paper_literal: selection.lsus_paper_literal,
            };
            select_seeds(g, &table, &voting, selection.update_strategy())
                .map_err(|e| StageError::new(Stage::Select, e))?
        }
    };

    let mut params = SirParams::<f64>::from_lambda(g, lambda, runs, rng_seed)
        .map_err(|e| StageError::new(Stage::Simulate, e))?;
    if let Some(cap) = args.max_steps.or(config.max_steps) {
        params.max_steps = cap;
    }
    let result = simulate(g, &seeds, &params).map_err(|e| StageError::new(Stage::Simulate, e))?;

    let mean_stabilization_step = result
        .stabilization_steps
        .iter()
        .map(|&t| t as f64)
        .sum::<f64>()
        / result.stabilization_steps.len() as f64;

    let output = SimulateOutput {
        schema_version: SCHEMA_VERSION,
        graph: g.summary(),
        params: SirParamsEcho {
            lambda,
            infect_prob: params.infect_prob,
            recover_prob: params.recover_prob,
            runs: params.runs,
            max_steps: params.max_steps,
            rng_seed,
        },
        seeds: seeds.iter().map(|&v| g.label(v).to_string()).collect(),
        final_scale: result.final_scale,
        trajectory: result.trajectory.clone(),
        mean_stabilization_step,
        capped_runs: result.capped_runs,
    };

    if let Some(path) = &args.trajectory_csv {
        let mut text = String::from("t,f\n");
        for (t, f) in result.trajectory.iter().enumerate() {
            text.push_str(&format!("{t},{f}\n"));
        }
        std::fs::write(path, text)
            .map_err(|e| StageError::new(Stage::Output, format!("{}: {e}", path.display())))?;
    }
    emit(&to_json_line(&output)?, args.output.as_deref())
}

fn parse_methods(
    spec: Option<&str>,
    cechmv_params: CechmvParams<f64>,
) -> Result<Vec<Method<f64>>, StageError> {
    let list = spec.unwrap_or("cechmv,degree,kshell,nc,hindex,voterank");
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|name| {
            if name == "cechmv" {
                Ok(Method::Cechmv(cechmv_params.clone()))
            } else {
                name.parse::<BaselineMethod>()
                    .map(Method::Baseline)
                    .map_err(|e| StageError::new(Stage::Benchmark, e))
            }
        })
        .collect()
}

fn benchmark(g: &Graph, args: BenchmarkArgs, config: &FileConfig) -> Result<(), StageError> {
    let scoring = ResolvedScoring::new(&args.scoring, args.rng_seed, config)?;
    let selection = ResolvedSelection::new(&args.selection, config)?;
    let rng_seed = args.rng_seed.or(config.rng_seed).unwrap_or(defaults::RNG_SEED);
    let lambda = args.lambda.or(config.lambda).unwrap_or(defaults::LAMBDA);
    let runs = args.runs.or(config.runs).unwrap_or(defaults::RUNS);
    let rho = args.rho.or(config.rho).unwrap_or(defaults::RHO);

    let cechmv_params = CechmvParams {
        alpha: scoring.alpha,
        beta: selection.beta,
        mu: selection.mu,
        exponent_form: selection.exponent_form(),
        strategy: selection.update_strategy(),
        lsus_paper_literal: selection.lsus_paper_literal,
        detector: scoring.detector_params(),
        rng_seed,
    };
    let methods = parse_methods(args.methods.as_deref(), cechmv_params)?;

    let sir = SirParams::<f64>::from_lambda(g, lambda, runs, rng_seed)
        .map_err(|e| StageError::new(Stage::Benchmark, e))?;
    let method_runs =
        run_benchmark(g, &methods, &sir, rho).map_err(|e| StageError::new(Stage::Benchmark, e))?;

    let mut csv_text = String::from("method,F_tc,runtime_s,BI\n");
    for run in &method_runs {
        let r = &run.record;
        csv_text.push_str(&format!(
            "{},{},{},{}\n",
            r.method_name, r.final_scale, r.runtime_seconds, r.balance_index
        ));
    }

    if let Some(path) = &args.output_json {
        let output = BenchmarkOutput {
            schema_version: SCHEMA_VERSION,
            graph: g.summary(),
            params: SirParamsEcho {
                lambda,
                infect_prob: sir.infect_prob,
                recover_prob: sir.recover_prob,
                runs: sir.runs,
                max_steps: sir.max_steps,
                rng_seed,
            },
            rho,
            records: method_runs
                .iter()
                .map(|run| RecordJson {
                    method: run.record.method_name.clone(),
                    f_tc: run.record.final_scale,
                    runtime_s: run.record.runtime_seconds,
                    bi: run.record.balance_index,
                })
                .collect(),
        };
        std::fs::write(path, to_json_line(&output)?)
            .map_err(|e| StageError::new(Stage::Output, format!("{}: {e}", path.display())))?;
    }

    if let Some(path) = &args.trajectories_csv {
        let horizon = method_runs
            .iter()
            .map(|r| r.sir.trajectory.len())
            .max()
            .unwrap_or(0);
        let mut text = String::from("t");
        for run in &method_runs {
            text.push(',');
            text.push_str(&run.record.method_name);
        }
        text.push('\n');
        for t in 0..horizon {
            text.push_str(&t.to_string());
            for run in &method_runs {
                let traj = &run.sir.trajectory;
                let value = traj.get(t).copied().unwrap_or(*traj.last().expect("non-empty"));
                text.push_str(&format!(",{value}"));
            }
            text.push('\n');
        }
        std::fs::write(path, text)
            .map_err(|e| StageError::new(Stage::Output, format!("{}: {e}", path.display())))?;
    }

    emit(&csv_text, args.output_csv.as_deref())
}
