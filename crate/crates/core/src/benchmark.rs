//! Baseline seed selectors, the Balance Index and the benchmark harness.

use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::kshell::k_shell;
use crate::pipeline::{cechmv_select, CechmvParams, PipelineError};
use crate::scalar::{from_f64, Real};
use crate::sir::{simulate, SirError, SirParams, SirResult};

#[derive(Debug, Error)]
pub enum BenchmarkError {
    #[error("requested {requested} seeds but the graph has {available} nodes")]
    TooManySeeds { requested: usize, available: usize },
    #[error("unknown method {0:?}")]
    UnknownMethod(String),
    #[error("no method infected anyone beyond the seed ratio; balance index undefined")]
    NoSpread,
    #[error("final scale {scale} of {method:?} is below the seed ratio {rho}")]
    ScaleBelowRho {
        method: String,
        scale: String,
        rho: String,
    },
    #[error("runtimes must be positive")]
    NonPositiveRuntime,
    #[error("need at least one record")]
    NoRecords,
    #[error(transparent)]
    Sir(#[from] SirError),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

/// Classic centrality baselines used for comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaselineMethod {
    Degree,
    KShell,
    Nc,
    HIndex,
    VoteRank,
}

impl BaselineMethod {
    pub const ALL: [BaselineMethod; 5] = [
        BaselineMethod::Degree,
        BaselineMethod::KShell,
        BaselineMethod::Nc,
        BaselineMethod::HIndex,
        BaselineMethod::VoteRank,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaselineMethod::Degree => "degree",
            BaselineMethod::KShell => "kshell",
            BaselineMethod::Nc => "nc",
            BaselineMethod::HIndex => "hindex",
            BaselineMethod::VoteRank => "voterank",
        }
    }
}

impl FromStr for BaselineMethod {
    type Err = BenchmarkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "degree" => Ok(BaselineMethod::Degree),
            "kshell" => Ok(BaselineMethod::KShell),
            "nc" => Ok(BaselineMethod::Nc),
            "hindex" => Ok(BaselineMethod::HIndex),
            "voterank" => Ok(BaselineMethod::VoteRank),
            other => Err(BenchmarkError::UnknownMethod(other.to_string())),
        }
    }
}

/// H-index per node: the largest h such that at least h neighbors have
/// degree at least h.
pub fn h_index_values(g: &Graph) -> Vec<u32> {
    (0..g.node_count())
        .map(|v| {
            let mut degrees: Vec<usize> = g.neighbors(v).iter().map(|&u| g.degree(u)).collect();
            degrees.sort_unstable_by(|a, b| b.cmp(a));
            let mut h = 0;
            for (i, &d) in degrees.iter().enumerate() {
                if d >= i + 1 {
                    h = i + 1;
                } else {
                    break;
                }
            }
            h as u32
        })
        .collect()
}

/// VoteRank: every node starts with voting ability 1; each round the top
/// scorer is elected, silenced, and its neighbors' ability drops by
/// 1 / <D> (floored at 0). Only scores within two hops of the elected
/// node change, so just those are refreshed.
pub fn voterank_select(g: &Graph, k: usize) -> Vec<NodeId> {
    let n = g.node_count();
    let suppression = 1.0 / g.average_degree::<f64>();
    let mut ability = vec![1.0f64; n];
    let mut score: Vec<f64> = (0..n)
        .map(|v| g.neighbors(v).iter().map(|&u| ability[u]).sum())
        .collect();
    let mut selected = vec![false; n];
    let mut seeds = Vec::with_capacity(k);

    for _ in 0..k {
        let mut best: Option<NodeId> = None;
        for v in 0..n {
            if !selected[v] && best.map_or(true, |b| score[v] > score[b]) {
                best = Some(v);
            }
        }
        let seed = best.expect("k <= node_count");
        seeds.push(seed);
        selected[seed] = true;
        ability[seed] = 0.0;
        score[seed] = 0.0;

        for &u in g.neighbors(seed) {
            ability[u] = (ability[u] - suppression).max(0.0);
        }
        // scores depending on a changed ability: neighbors of the seed
        // (ability[seed] changed) and neighbors of its neighbors
        let mut touched: Vec<NodeId> = g.neighbors(seed).to_vec();
        for &u in g.neighbors(seed) {
            touched.extend_from_slice(g.neighbors(u));
        }
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            if !selected[v] {
                score[v] = g.neighbors(v).iter().map(|&u| ability[u]).sum();
            }
        }
    }
    seeds
}

/// Top-k selection for the classic baselines; ties break toward the
/// smaller node index.
pub fn baseline_select(
    g: &Graph,
    method: BaselineMethod,
    k: usize,
) -> Result<Vec<NodeId>, BenchmarkError> {
    if k > g.node_count() {
        return Err(BenchmarkError::TooManySeeds {
            requested: k,
            available: g.node_count(),
        });
    }
    let metric: Vec<u64> = match method {
        BaselineMethod::Degree => (0..g.node_count()).map(|v| g.degree(v) as u64).collect(),
        BaselineMethod::KShell => k_shell(g).values().iter().map(|&x| u64::from(x)).collect(),
        BaselineMethod::Nc => {
            let ks = k_shell(g);
            (0..g.node_count())
                .map(|v| g.neighbors(v).iter().map(|&u| u64::from(ks.get(u))).sum())
                .collect()
        }
        BaselineMethod::HIndex => h_index_values(g).iter().map(|&x| u64::from(x)).collect(),
        BaselineMethod::VoteRank => return Ok(voterank_select(g, k)),
    };
    let mut order: Vec<NodeId> = (0..g.node_count()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(metric[v]), v));
    order.truncate(k);
    Ok(order)
}

/// One benchmarked method: spread, wall-clock selection time, and the
/// balance between them.
#[derive(Debug, Clone)]
pub struct BenchmarkRecord<F> {
    pub method_name: String,
    pub final_scale: F,
    pub runtime_seconds: F,
    pub balance_index: F,
}

/// Balance Index per record:
/// `log2(1 + (F_i - rho) / (F_max - rho)) - log2(1 + T_i^(1/4) / T_max^(1/4)) / (e + <D>)`.
///
/// The fourth root keeps the runtime term scale-free (multiplying every
/// runtime by a constant cancels), and the `1/(e + <D>)` coefficient
/// shrinks the runtime penalty on denser graphs.
pub fn balance_index<F: Real>(
    records: &[BenchmarkRecord<F>],
    avg_degree: F,
    rho: F,
) -> Result<Vec<F>, BenchmarkError> {
    if records.is_empty() {
        return Err(BenchmarkError::NoRecords);
    }
    for r in records {
        if !(r.runtime_seconds > F::zero()) {
            return Err(BenchmarkError::NonPositiveRuntime);
        }
        if r.final_scale < rho {
            return Err(BenchmarkError::ScaleBelowRho {
                method: r.method_name.clone(),
                scale: r.final_scale.to_string(),
                rho: rho.to_string(),
            });
        }
    }
    let f_max = records
        .iter()
        .map(|r| r.final_scale)
        .fold(F::neg_infinity(), F::max);
    let t_max = records
        .iter()
        .map(|r| r.runtime_seconds)
        .fold(F::neg_infinity(), F::max);
    if !(f_max > rho) {
        return Err(BenchmarkError::NoSpread);
    }

    let quarter = from_f64::<F>(0.25);
    let coefficient = F::one() / (F::E() + avg_degree);
    Ok(records
        .iter()
        .map(|r| {
            let accuracy = (F::one() + (r.final_scale - rho) / (f_max - rho)).log2();
            let time_penalty =
                (F::one() + r.runtime_seconds.powf(quarter) / t_max.powf(quarter)).log2();
            accuracy - coefficient * time_penalty
        })
        .collect())
}

/// A method under benchmark: the community-voting pipeline or one of the
/// baselines.
#[derive(Debug, Clone)]
pub enum Method<F> {
    Cechmv(CechmvParams<F>),
    Baseline(BaselineMethod),
}

impl<F> Method<F> {
    pub fn name(&self) -> &str {
        match self {
            Method::Cechmv(_) => "cechmv",
            Method::Baseline(b) => b.name(),
        }
    }
}

/// Everything produced for one method: the record, its seed set and the
/// full SIR outcome for trajectory plots.
#[derive(Debug, Clone)]
pub struct MethodRun<F> {
    pub record: BenchmarkRecord<F>,
    pub seeds: Vec<NodeId>,
    pub sir: SirResult<F>,
}

/// Benchmarks each method sequentially: selection is wall-clocked as the
/// median of three repetitions (graph loading excluded), spread is
/// measured with the shared SIR parameters, and balance indices are
/// computed over the whole record set.
pub fn run_benchmark<F: Real>(
    g: &Graph,
    methods: &[Method<F>],
    sir: &SirParams<F>,
    rho: F,
) -> Result<Vec<MethodRun<F>>, BenchmarkError> {
    if methods.is_empty() {
        return Err(BenchmarkError::NoRecords);
    }
    let k = crate::voting::seed_count_from_rho(
        g.node_count(),
        rho.to_f64().expect("rho fits f64"),
    );

    let mut runs = Vec::with_capacity(methods.len());
    for method in methods {
        let mut seeds = Vec::new();
        let mut timings = Vec::with_capacity(3);
        for _ in 0..3 {
            let start = Instant::now();
            seeds = match method {
                Method::Cechmv(params) => cechmv_select(g, params, k)?,
                Method::Baseline(baseline) => baseline_select(g, *baseline, k)?,
            };
            timings.push(start.elapsed().as_secs_f64());
        }
        timings.sort_by(f64::total_cmp);
        // clock floor keeps the balance index finite on trivial inputs
        let runtime = timings[1].max(1e-9);

        let outcome = simulate(g, &seeds, sir)?;
        runs.push(MethodRun {
            record: BenchmarkRecord {
                method_name: method.name().to_string(),
                final_scale: outcome.final_scale,
                runtime_seconds: from_f64::<F>(runtime),
                balance_index: F::zero(),
            },
            seeds,
            sir: outcome,
        });
    }

    let records: Vec<BenchmarkRecord<F>> = runs.iter().map(|r| r.record.clone()).collect();
    let indices = balance_index(&records, g.average_degree(), rho)?;
    for (run, bi) in runs.iter_mut().zip(indices) {
        run.record.balance_index = bi;
    }
    Ok(runs)
}
