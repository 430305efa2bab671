//! Cost-Effective Mutual-Influence-based Voting (CEMIV) seed selection.
//!
//! Every node votes for its neighbors with a weight that grows with the
//! receiver's importance; each round the top scorer becomes a seed, its
//! first- and second-order neighbors have their vote strength damped to
//! limit influence overlap, and affected scores are refreshed either
//! eagerly or lazily (LSUS): lazily deferred until a stale node reaches
//! the runner-up spot.

use thiserror::Error;

use crate::dschi::ScoreTable;
use crate::graph::{Graph, NodeId};
use crate::scalar::{from_f64, Real};

#[derive(Debug, Error)]
pub enum VotingError {
    #[error("requested {requested} seeds but the graph has {available} nodes")]
    TooManySeeds { requested: usize, available: usize },
    #[error("seed count must be at least 1")]
    ZeroSeeds,
    #[error("vote-weight base beta must exceed 1, got {0}")]
    InvalidBeta(String),
    #[error("suppression index mu must lie in (0.1, 1], got {0}")]
    InvalidMu(String),
}

/// Which exponent the vote weight uses.
///
/// `Algorithm` follows the pseudocode: `beta^(3*dschi_v)` in the
/// numerator, so the weight keeps its dependence on the receiver's own
/// importance. `Equation` uses `beta^(3 + dschi_v)`, which cancels to a
/// pure function of the voter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentForm {
    Algorithm,
    Equation,
}

/// Score refresh strategy: recompute affected scores every round, or
/// defer via the lazy score updating strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpdateStrategy {
    Lazy,
    Eager,
}

#[derive(Debug, Clone)]
pub struct VotingParams<F> {
    pub beta: F,
    pub mu: F,
    pub exponent_form: ExponentForm,
    pub seed_count: usize,
    /// Restrict the staleness check to the current round's three-hop set
    /// instead of the accumulated stale memory. Kept behind a flag: the
    /// restricted check can return slightly different seed sets.
    pub lsus_paper_literal: bool,
}

impl<F: Real> VotingParams<F> {
    pub fn new(beta: F, mu: F, seed_count: usize) -> Self {
        VotingParams {
            beta,
            mu,
            exponent_form: ExponentForm::Algorithm,
            seed_count,
            lsus_paper_literal: false,
        }
    }

    pub fn validate(&self, g: &Graph) -> Result<(), VotingError> {
        if !(self.beta > F::one()) {
            return Err(VotingError::InvalidBeta(self.beta.to_string()));
        }
        let point_one = from_f64::<F>(0.1);
        if !(self.mu > point_one && self.mu <= F::one()) {
            return Err(VotingError::InvalidMu(self.mu.to_string()));
        }
        if self.seed_count == 0 {
            return Err(VotingError::ZeroSeeds);
        }
        if self.seed_count > g.node_count() {
            return Err(VotingError::TooManySeeds {
                requested: self.seed_count,
                available: g.node_count(),
            });
        }
        Ok(())
    }
}

/// Weight of a vote received by `v` from neighbor `u`, computed as the
/// ratio of beta powers.
pub fn vote_weight<F: Real>(dschi_v: F, dschi_u: F, p: &VotingParams<F>) -> F {
    let three = from_f64::<F>(3.0);
    let numerator = match p.exponent_form {
        ExponentForm::Algorithm => p.beta.powf(three * dschi_v),
        ExponentForm::Equation => p.beta.powf(three + dschi_v),
    };
    numerator / p.beta.powf(dschi_v + dschi_u)
}

/// Mutable state of one selection run.
#[derive(Debug, Clone)]
pub struct VotingState<F> {
    svs: Vec<F>,
    score: Vec<F>,
    seeds: Vec<NodeId>,
    selected: Vec<bool>,
    /// accumulated stale memory (union of suppressed three-hop sets)
    stale: Vec<bool>,
    stale_nodes: Vec<NodeId>,
    /// members of the current round's three-hop set, stamped by round
    round_stamp: Vec<usize>,
    round: usize,
}

impl<F: Real> VotingState<F> {
    pub fn svs(&self) -> &[F] {
        &self.svs
    }

    pub fn score(&self) -> &[F] {
        &self.score
    }

    pub fn seeds(&self) -> &[NodeId] {
        &self.seeds
    }

    pub fn stale_memory(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.stale_nodes.iter().copied()
    }

    fn fresh_score(&self, g: &Graph, st: &ScoreTable<F>, p: &VotingParams<F>, v: NodeId) -> F {
        let mut sum = F::zero();
        for &u in g.neighbors(v) {
            sum = sum + self.svs[u] * vote_weight(st.dschi[v], st.dschi[u], p);
        }
        sum
    }

    /// Highest- and second-highest-score unselected nodes; ties resolve
    /// to the smaller index.
    fn top_two(&self) -> (Option<NodeId>, Option<NodeId>) {
        let mut best: Option<NodeId> = None;
        let mut second: Option<NodeId> = None;
        for v in 0..self.score.len() {
            if self.selected[v] {
                continue;
            }
            match best {
                None => best = Some(v),
                Some(b) if self.score[v] > self.score[b] => {
                    second = best;
                    best = Some(v);
                }
                _ => match second {
                    None => second = Some(v),
                    Some(s) if self.score[v] > self.score[s] => second = Some(v),
                    _ => {}
                },
            }
        }
        (best, second)
    }

    fn recompute_stale(&mut self, g: &Graph, st: &ScoreTable<F>, p: &VotingParams<F>) {
        for i in 0..self.stale_nodes.len() {
            let v = self.stale_nodes[i];
            if !self.selected[v] {
                self.score[v] = self.fresh_score(g, st, p, v);
            }
            self.stale[v] = false;
        }
        self.stale_nodes.clear();
    }
}

/// Initial state: every node's single-vote strength is its DSCHI value
/// and scores are the weighted neighbor sums.
pub fn init_voting<F: Real>(g: &Graph, st: &ScoreTable<F>, p: &VotingParams<F>) -> VotingState<F> {
    let n = g.node_count();
    let mut state = VotingState {
        svs: st.dschi.clone(),
        score: vec![F::zero(); n],
        seeds: Vec::new(),
        selected: vec![false; n],
        stale: vec![false; n],
        stale_nodes: Vec::new(),
        round_stamp: vec![usize::MAX; n],
        round: 0,
    };
    for v in 0..n {
        state.score[v] = state.fresh_score(g, st, p, v);
    }
    state
}

/// Damps vote strength around a freshly selected seed: first-order
/// neighbors by `mu^2 * (mu - 0.1)`, second-order neighbors by `mu^2`.
/// Factors compound across rounds. Everything within three hops is
/// recorded as stale (third-order scores change through recomputation
/// even though their vote strength does not).
pub fn suppress<F: Real>(
    vs: &mut VotingState<F>,
    g: &Graph,
    seed: NodeId,
    p: &VotingParams<F>,
) {
    let shells = g.k_hop_shells(seed, 3).expect("seed index validated");
    let first_factor = p.mu * p.mu * (p.mu - from_f64::<F>(0.1));
    let second_factor = p.mu * p.mu;
    for &u in &shells[0] {
        vs.svs[u] = vs.svs[u] * first_factor;
    }
    for &u in &shells[1] {
        vs.svs[u] = vs.svs[u] * second_factor;
    }
    for shell in &shells {
        for &u in shell {
            vs.round_stamp[u] = vs.round;
            if !vs.stale[u] {
                vs.stale[u] = true;
                vs.stale_nodes.push(u);
            }
        }
    }
}

/// Selects `p.seed_count` seeds. `Eager` refreshes every affected score
/// each round; `Lazy` defers refreshes until the runner-up is stale.
/// Both strategies return the same sequence.
pub fn select_seeds<F: Real>(
    g: &Graph,
    st: &ScoreTable<F>,
    p: &VotingParams<F>,
    strategy: UpdateStrategy,
) -> Result<Vec<NodeId>, VotingError> {
    p.validate(g)?;
    let mut vs = init_voting(g, st, p);

    while vs.seeds.len() < p.seed_count {
        let (best, runner_up) = vs.top_two();
        let seed = best.expect("seed_count <= node_count");
        vs.seeds.push(seed);
        vs.selected[seed] = true;
        vs.svs[seed] = F::zero();
        vs.score[seed] = F::zero();

        suppress(&mut vs, g, seed, p);

        let refresh = match strategy {
            UpdateStrategy::Eager => true,
            UpdateStrategy::Lazy => runner_up.is_some_and(|r| {
                if p.lsus_paper_literal {
                    vs.round_stamp[r] == vs.round
                } else {
                    vs.stale[r]
                }
            }),
        };
        if refresh {
            vs.recompute_stale(g, st, p);
        }
        vs.round += 1;
    }
    Ok(vs.seeds)
}

/// Seed count from a ratio of initially infected nodes.
pub fn seed_count_from_rho(node_count: usize, rho: f64) -> usize {
    ((rho * node_count as f64).floor() as usize).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dschi::dschi_scores;
    use crate::graph::Graph;
    use crate::testutil::{demo_graph, demo_partition};
    use approx::assert_relative_eq;

    fn params(seed_count: usize) -> VotingParams<f64> {
        VotingParams::new(2.0, 0.15, seed_count)
    }

    /// Synthetic table exercising the voting layer in isolation.
    fn table_from_dschi(dschi: Vec<f64>) -> ScoreTable<f64> {
        let n = dschi.len();
        ScoreTable {
            ks: vec![0; n],
            nc: vec![0.0; n],
            nc_n: vec![0.0; n],
            hce: vec![0.0; n],
            hce_n: vec![0.0; n],
            dschi,
            alpha: 0.7,
        }
    }

    #[test]
    fn vote_weight_matches_closed_forms() {
        let mut p = params(1);
        assert_relative_eq!(vote_weight(1.0, 0.5, &p), 2.0_f64.powf(1.5), epsilon = 1e-12);
        assert_relative_eq!(vote_weight(1.0, 0.5, &p), 2.8284271247461903, epsilon = 1e-12);
        p.exponent_form = ExponentForm::Equation;
        assert_relative_eq!(vote_weight(1.0, 0.5, &p), 2.0_f64.powf(2.5), epsilon = 1e-12);
        assert_relative_eq!(vote_weight(1.0, 0.5, &p), 5.656854249492381, epsilon = 1e-12);
    }

    #[test]
    fn vote_weight_of_zero_scores_is_one() {
        let p = params(1);
        assert_eq!(vote_weight(0.0, 0.0, &p), 1.0);
    }

    #[test]
    fn init_scores_on_star() {
        // star center 0 with 4 leaves, uniform dschi x
        let g = Graph::from_index_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let x = 0.6;
        let st = table_from_dschi(vec![x; 5]);
        let p = params(1);
        let vs = init_voting(&g, &st, &p);
        let expected_center = 4.0 * x * 2.0_f64.powf(x);
        let expected_leaf = x * 2.0_f64.powf(x);
        assert_relative_eq!(vs.score()[0], expected_center, epsilon = 1e-12);
        for leaf in 1..5 {
            assert_relative_eq!(vs.score()[leaf], expected_leaf, epsilon = 1e-12);
        }
        assert!(vs.score()[0] > vs.score()[1]);
    }

    #[test]
    fn isolated_node_scores_zero() {
        let g = Graph::from_index_edges(3, &[(0, 1)]).unwrap();
        let st = table_from_dschi(vec![0.9, 0.9, 0.9]);
        let vs = init_voting(&g, &st, &params(1));
        assert_eq!(vs.score()[2], 0.0);
    }

    #[test]
    fn zero_dschi_means_zero_scores() {
        let g = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let st = table_from_dschi(vec![0.0; 4]);
        let vs = init_voting(&g, &st, &params(1));
        assert!(vs.score().iter().all(|&s| s == 0.0));
    }

    #[test]
    fn suppression_factors() {
        let p = params(1);
        let f1 = p.mu * p.mu * (p.mu - 0.1);
        let f2 = p.mu * p.mu;
        assert_relative_eq!(f1, 0.001125, epsilon = 1e-12);
        assert_relative_eq!(f2, 0.0225, epsilon = 1e-12);

        let relaxed = VotingParams::new(2.0, 1.0, 1);
        assert_relative_eq!(relaxed.mu * relaxed.mu * (relaxed.mu - 0.1), 0.9, epsilon = 1e-12);
        assert_eq!(relaxed.mu * relaxed.mu, 1.0);
    }

    #[test]
    fn suppression_compounds_across_rounds() {
        // path 0-1-2: selecting 0 then 2 hits node 1 as a first-order
        // neighbor twice
        let g = Graph::from_index_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let st = table_from_dschi(vec![0.5, 0.5, 0.5]);
        let p = params(1);
        let mut vs = init_voting(&g, &st, &p);
        let f1 = p.mu * p.mu * (p.mu - 0.1);
        suppress(&mut vs, &g, 0, &p);
        assert_relative_eq!(vs.svs()[1], 0.5 * f1, epsilon = 1e-15);
        vs.round += 1;
        suppress(&mut vs, &g, 2, &p);
        assert_relative_eq!(vs.svs()[1], 0.5 * f1 * f1, epsilon = 1e-15);
    }

    #[test]
    fn star_selects_center_first() {
        let g = Graph::from_index_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let st = table_from_dschi(vec![0.6; 5]);
        let seeds = select_seeds(&g, &st, &params(1), UpdateStrategy::Lazy).unwrap();
        assert_eq!(seeds, vec![0]);
    }

    #[test]
    fn exhaustive_selection_is_strategy_independent() {
        let g = crate::gen::erdos_renyi(40, 0.1, 3);
        let dschi: Vec<f64> = (0..40).map(|i| (i % 7) as f64 / 7.0).collect();
        let st = table_from_dschi(dschi);
        let p = params(40);
        let lazy = select_seeds(&g, &st, &p, UpdateStrategy::Lazy).unwrap();
        let eager = select_seeds(&g, &st, &p, UpdateStrategy::Eager).unwrap();
        assert_eq!(lazy, eager);
        assert_eq!(lazy.len(), 40);
        let mut sorted = lazy.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(sorted.len(), 40, "seeds must be distinct");
    }

    #[test]
    fn all_zero_scores_fall_back_to_index_order() {
        let g = Graph::from_index_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let st = table_from_dschi(vec![0.0; 4]);
        let p = params(4);
        let seeds = select_seeds(&g, &st, &p, UpdateStrategy::Lazy).unwrap();
        assert_eq!(seeds, vec![0, 1, 2, 3]);
    }

    #[test]
    fn demo_graph_selection_matches_eager_oracle() {
        let g = demo_graph();
        let ca = demo_partition(&g);
        let st = dschi_scores::<f64>(&g, &ca, 0.7).unwrap();
        let p = params(2);

        let eager = select_seeds(&g, &st, &p, UpdateStrategy::Eager).unwrap();
        let expected: Vec<usize> = ["a", "d"]
            .iter()
            .map(|l| g.node_by_label(l).unwrap())
            .collect();
        assert_eq!(eager, expected, "frozen eager-oracle sequence");

        let lazy = select_seeds(&g, &st, &p, UpdateStrategy::Lazy).unwrap();
        assert_eq!(lazy, eager);
    }

    #[test]
    fn selected_seed_score_is_zeroed() {
        let g = demo_graph();
        let ca = demo_partition(&g);
        let st = dschi_scores::<f64>(&g, &ca, 0.7).unwrap();
        let p = params(1);
        let mut vs = init_voting(&g, &st, &p);
        let (best, _) = vs.top_two();
        let seed = best.unwrap();
        vs.seeds.push(seed);
        vs.selected[seed] = true;
        vs.svs[seed] = 0.0;
        vs.score[seed] = 0.0;
        assert_eq!(vs.score()[seed], 0.0);
        assert_eq!(vs.svs()[seed], 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        let g = demo_graph();
        let st = table_from_dschi(vec![0.5; 5]);
        let too_many = VotingParams::new(2.0, 0.15, 6);
        assert!(matches!(
            select_seeds(&g, &st, &too_many, UpdateStrategy::Lazy),
            Err(VotingError::TooManySeeds { .. })
        ));
        let bad_beta = VotingParams::new(1.0, 0.15, 1);
        assert!(matches!(
            select_seeds(&g, &st, &bad_beta, UpdateStrategy::Lazy),
            Err(VotingError::InvalidBeta(_))
        ));
        let bad_mu = VotingParams::new(2.0, 0.1, 1);
        assert!(matches!(
            select_seeds(&g, &st, &bad_mu, UpdateStrategy::Lazy),
            Err(VotingError::InvalidMu(_))
        ));
    }

    #[test]
    fn scores_stay_non_negative() {
        let g = crate::gen::barabasi_albert(60, 2, 8);
        let ca = crate::community::detect_communities(
            &g,
            &crate::community::DetectorParams::default(),
            8,
        );
        let st = dschi_scores::<f64>(&g, &ca, 0.7).unwrap();
        let p = params(6);
        let mut vs = init_voting(&g, &st, &p);
        for _ in 0..p.seed_count {
            let (best, _) = vs.top_two();
            let seed = best.unwrap();
            vs.seeds.push(seed);
            vs.selected[seed] = true;
            vs.svs[seed] = 0.0;
            vs.score[seed] = 0.0;
            suppress(&mut vs, &g, seed, &p);
            vs.recompute_stale(&g, &st, &p);
            vs.round += 1;
            assert!(vs.score().iter().all(|&s| s >= 0.0));
            assert!(vs.svs().iter().all(|&s| s >= 0.0));
        }
    }
}
