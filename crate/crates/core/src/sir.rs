//! Monte-Carlo SIR propagation for evaluating seed sets.
//!
//! Updates are synchronous: all infections of a step are drawn from the
//! previous step's state, then recoveries are applied to nodes that were
//! already infected, so a node always gets its infection attempts in
//! before it can recover. With both probabilities at 1 the process is
//! exactly a BFS wave.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::scalar::{from_count, Real};

#[derive(Debug, Error)]
pub enum SirError {
    #[error("seed list is empty")]
    EmptySeeds,
    #[error("seed index {0} out of range")]
    InvalidSeed(NodeId),
    #[error("seed {0} listed twice")]
    DuplicateSeed(NodeId),
    #[error("{name} must lie in {range}, got {value}")]
    InvalidProbability {
        name: &'static str,
        range: &'static str,
        value: String,
    },
    #[error("need at least one run")]
    ZeroRuns,
    #[error("epidemic threshold undefined: mean squared degree does not exceed mean degree")]
    ThresholdUndefined,
}

/// Propagation parameters. `infect_prob` and `recover_prob` are the
/// per-step transmission and recovery probabilities; their ratio is the
/// infected rate lambda.
#[derive(Debug, Clone)]
pub struct SirParams<F> {
    pub infect_prob: F,
    pub recover_prob: F,
    pub max_steps: usize,
    pub runs: usize,
    pub rng_seed: u64,
}

impl<F: Real> SirParams<F> {
    pub fn new(
        infect_prob: F,
        recover_prob: F,
        max_steps: usize,
        runs: usize,
        rng_seed: u64,
    ) -> Result<Self, SirError> {
        if !(infect_prob >= F::zero() && infect_prob <= F::one()) {
            return Err(SirError::InvalidProbability {
                name: "infect_prob",
                range: "[0, 1]",
                value: infect_prob.to_string(),
            });
        }
        if !(recover_prob > F::zero() && recover_prob <= F::one()) {
            return Err(SirError::InvalidProbability {
                name: "recover_prob",
                range: "(0, 1]",
                value: recover_prob.to_string(),
            });
        }
        if runs == 0 {
            return Err(SirError::ZeroRuns);
        }
        Ok(SirParams {
            infect_prob,
            recover_prob,
            max_steps,
            runs,
            rng_seed,
        })
    }

    /// Standard experiment setup: the recovery probability is the
    /// graph's epidemic threshold and the infection probability is
    /// `lambda` times that. Both are clamped into valid probability
    /// range, which only matters on small dense graphs where the
    /// threshold formula exceeds 1. The step cap defaults to 10 * |V|.
    pub fn from_lambda(g: &Graph, lambda: F, runs: usize, rng_seed: u64) -> Result<Self, SirError> {
        let threshold: F = epidemic_threshold(g)?;
        let recover = threshold.min(F::one());
        let infect = (lambda * threshold).min(F::one()).max(F::zero());
        Self::new(infect, recover, 10 * g.node_count(), runs, rng_seed)
    }

    /// Effective lambda after any clamping.
    pub fn infected_rate(&self) -> F {
        self.infect_prob / self.recover_prob
    }
}

/// Epidemic threshold `<D> / (<D^2> - <D>)`.
pub fn epidemic_threshold<F: Real>(g: &Graph) -> Result<F, SirError> {
    let mean: F = g.average_degree();
    let mean_sq: F = g.mean_squared_degree();
    if !(mean_sq > mean) {
        return Err(SirError::ThresholdUndefined);
    }
    Ok(mean / (mean_sq - mean))
}

/// Per-step `[susceptible, infected, recovered]` counts of one run.
#[derive(Debug, Clone)]
pub struct SirRun {
    pub counts: Vec<[usize; 3]>,
    /// true if the infected set died out before the step cap
    pub stabilized: bool,
}

impl SirRun {
    /// Infected plus recovered node count at step `t` (held at the final
    /// value past the end of the run).
    pub fn infected_mass(&self, t: usize) -> u64 {
        let idx = t.min(self.counts.len() - 1);
        let [_, i, r] = self.counts[idx];
        (i + r) as u64
    }

    /// Infected scale `(I + R) / n` at step `t`.
    pub fn infected_scale<F: Real>(&self, t: usize, n: usize) -> F {
        F::from_u64(self.infected_mass(t)).expect("count representable") / from_count::<F>(n)
    }

    pub fn final_step(&self) -> usize {
        self.counts.len() - 1
    }
}

/// One simulation run with its own RNG stream.
pub fn run_single<F: Real>(
    g: &Graph,
    seeds: &[NodeId],
    p: &SirParams<F>,
    run_seed: u64,
) -> SirRun {
    const SUSCEPTIBLE: u8 = 0;
    const INFECTED: u8 = 1;
    const RECOVERED: u8 = 2;

    let n = g.node_count();
    let infect = p.infect_prob.to_f64().expect("probability fits f64");
    let recover = p.recover_prob.to_f64().expect("probability fits f64");
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);

    let mut state = vec![SUSCEPTIBLE; n];
    let mut infected: Vec<NodeId> = seeds.to_vec();
    for &s in seeds {
        state[s] = INFECTED;
    }
    let mut recovered_count = 0usize;
    let mut counts = vec![[n - infected.len(), infected.len(), 0]];
    let mut stabilized = false;

    let mut newly: Vec<NodeId> = Vec::new();
    let mut survivors: Vec<NodeId> = Vec::new();
    for _t in 1..=p.max_steps {
        newly.clear();
        for &v in &infected {
            for &u in g.neighbors(v) {
                if state[u] == SUSCEPTIBLE && rng.gen::<f64>() < infect {
                    state[u] = INFECTED;
                    newly.push(u);
                }
            }
        }
        survivors.clear();
        for &v in &infected {
            if rng.gen::<f64>() < recover {
                state[v] = RECOVERED;
                recovered_count += 1;
            } else {
                survivors.push(v);
            }
        }
        infected.clear();
        infected.extend_from_slice(&survivors);
        infected.extend_from_slice(&newly);

        counts.push([n - infected.len() - recovered_count, infected.len(), recovered_count]);
        if infected.is_empty() {
            stabilized = true;
            break;
        }
    }

    SirRun { counts, stabilized }
}

/// Trajectory and final infected scale averaged over all runs.
#[derive(Debug, Clone)]
pub struct SirResult<F> {
    /// mean infected scale F(t) per step, padded with each run's final value
    pub trajectory: Vec<F>,
    /// mean final scale F(t_c)
    pub final_scale: F,
    /// stabilization step of each run (the step cap if never stabilized)
    pub stabilization_steps: Vec<usize>,
    /// runs that hit the step cap with infections still active
    pub capped_runs: usize,
}

/// Runs the Monte-Carlo simulation. Runs execute in parallel but their
/// sub-seeds derive deterministically from `rng_seed` and aggregation
/// folds in run order, so results are identical under any thread count.
pub fn simulate<F: Real>(g: &Graph, seeds: &[NodeId], p: &SirParams<F>) -> Result<SirResult<F>, SirError> {
    if seeds.is_empty() {
        return Err(SirError::EmptySeeds);
    }
    let mut seen = vec![false; g.node_count()];
    for &s in seeds {
        if s >= g.node_count() {
            return Err(SirError::InvalidSeed(s));
        }
        if seen[s] {
            return Err(SirError::DuplicateSeed(s));
        }
        seen[s] = true;
    }
    if p.runs == 0 {
        return Err(SirError::ZeroRuns);
    }

    let runs: Vec<SirRun> = (0..p.runs)
        .into_par_iter()
        .map(|i| run_single(g, seeds, p, derive_run_seed(p.rng_seed, i as u64)))
        .collect();

    let n = g.node_count();
    let horizon = runs.iter().map(|r| r.counts.len()).max().unwrap_or(1);
    // integer mass sums keep the mean exact and order-independent
    let denominator =
        F::from_u64(p.runs as u64 * n as u64).expect("count representable as scalar");

    let mut trajectory = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let sum: u64 = runs.iter().map(|r| r.infected_mass(t)).sum();
        trajectory.push(F::from_u64(sum).expect("count representable") / denominator);
    }
    let final_sum: u64 = runs.iter().map(|r| r.infected_mass(r.final_step())).sum();

    Ok(SirResult {
        final_scale: F::from_u64(final_sum).expect("count representable") / denominator,
        trajectory,
        stabilization_steps: runs.iter().map(SirRun::final_step).collect(),
        capped_runs: runs.iter().filter(|r| !r.stabilized).count(),
    })
}

/// SplitMix64 mix of the master seed and run index.
fn derive_run_seed(master: u64, run: u64) -> u64 {
    let mut z = master.wrapping_add((run.wrapping_add(1)).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn triangle() -> Graph {
        Graph::from_index_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn threshold_on_regular_graphs() {
        assert_eq!(epidemic_threshold::<f64>(&triangle()).unwrap(), 1.0);
        // star with 4 leaves: <D> = 1.6, <D^2> = 4.0
        let star = Graph::from_index_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_relative_eq!(
            epidemic_threshold::<f64>(&star).unwrap(),
            1.6 / 2.4,
            epsilon = 1e-15
        );
    }

    #[test]
    fn threshold_undefined_on_single_edge() {
        let g = Graph::from_index_edges(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            epidemic_threshold::<f64>(&g),
            Err(SirError::ThresholdUndefined)
        ));
    }

    #[test]
    fn zero_infection_leaves_only_seeds() {
        let g = crate::gen::erdos_renyi(30, 0.1, 1);
        let p = SirParams::new(0.0, 0.5, 300, 20, 7).unwrap();
        let result: SirResult<f64> = simulate(&g, &[0, 5, 9], &p).unwrap();
        assert_eq!(result.final_scale, 3.0 / 30.0);
        assert_eq!(result.capped_runs, 0);
    }

    #[test]
    fn certain_infection_covers_connected_graph() {
        let g = crate::gen::barabasi_albert(40, 2, 2);
        let p = SirParams::new(1.0, 1.0, 400, 5, 3).unwrap();
        let result: SirResult<f64> = simulate(&g, &[0], &p).unwrap();
        assert_eq!(result.final_scale, 1.0);
    }

    #[test]
    fn seeding_everything_is_total() {
        let g = triangle();
        let p = SirParams::new(0.3, 0.7, 30, 10, 11).unwrap();
        let result: SirResult<f64> = simulate(&g, &[0, 1, 2], &p).unwrap();
        assert_eq!(result.final_scale, 1.0);
    }

    #[test]
    fn state_is_conserved_every_step() {
        let g = crate::gen::erdos_renyi(50, 0.08, 4);
        let p = SirParams::new(0.4, 0.3, 500, 1, 9).unwrap();
        let run = run_single(&g, &[1, 2], &p, 99);
        for [s, i, r] in run.counts {
            assert_eq!(s + i + r, 50);
        }
    }

    #[test]
    fn infected_scale_is_non_decreasing() {
        let g = crate::gen::barabasi_albert(80, 2, 6);
        let p = SirParams::new(0.35, 0.4, 800, 1, 21).unwrap();
        let run = run_single(&g, &[0], &p, 5);
        let scales: Vec<f64> = (0..run.counts.len())
            .map(|t| run.infected_scale(t, 80))
            .collect();
        assert!(scales.windows(2).all(|w| w[1] >= w[0]));
        // once infections die out, Eq-18 form n_R / n equals the F(t) limit
        assert!(run.stabilized);
        let [_, i, r] = run.counts[run.final_step()];
        assert_eq!(i, 0);
        assert_eq!(
            run.infected_scale::<f64>(run.final_step(), 80),
            r as f64 / 80.0
        );
    }

    #[test]
    fn same_seed_is_reproducible() {
        let g = crate::gen::erdos_renyi(60, 0.07, 8);
        let p = SirParams::new(0.5, 0.4, 600, 16, 1234).unwrap();
        let a: SirResult<f64> = simulate(&g, &[0, 3], &p).unwrap();
        let b: SirResult<f64> = simulate(&g, &[0, 3], &p).unwrap();
        assert_eq!(a.trajectory, b.trajectory);
        assert_eq!(a.final_scale, b.final_scale);
        assert_eq!(a.stabilization_steps, b.stabilization_steps);
    }

    #[test]
    fn seed_validation() {
        let g = triangle();
        let p = SirParams::new(0.5, 0.5, 30, 2, 0).unwrap();
        assert!(matches!(
            simulate::<f64>(&g, &[], &p),
            Err(SirError::EmptySeeds)
        ));
        assert!(matches!(
            simulate::<f64>(&g, &[9], &p),
            Err(SirError::InvalidSeed(9))
        ));
        assert!(matches!(
            simulate::<f64>(&g, &[1, 1], &p),
            Err(SirError::DuplicateSeed(1))
        ));
    }

    #[test]
    fn lambda_setup_clamps_probabilities() {
        // demo-scale graphs can push lambda * threshold past 1
        let g = crate::testutil::demo_graph();
        let p: SirParams<f64> = SirParams::from_lambda(&g, 1.5, 10, 0).unwrap();
        assert!(p.infect_prob <= 1.0);
        assert!(p.recover_prob <= 1.0);
        assert_eq!(p.max_steps, 50);
    }
}
