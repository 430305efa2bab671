//! Seeded modularity-based community detection.
//!
//! The default detector is multi-level Louvain local moving with a
//! deterministic seeded node order. The Leiden variant adds a refinement
//! pass between local moving and aggregation, which splits badly
//! connected communities before they are collapsed. Both are
//! bit-reproducible for a fixed `(graph, params, rng_seed)`.

use std::collections::{BTreeMap, HashMap};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::CommunityAssignment;
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectorKind {
    Louvain,
    Leiden,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DetectorParams {
    pub kind: DetectorKind,
    pub resolution: f64,
}

impl Default for DetectorParams {
    fn default() -> Self {
        DetectorParams {
            kind: DetectorKind::Louvain,
            resolution: 1.0,
        }
    }
}

/// Weighted view of the (possibly aggregated) graph at one level.
/// Every edge is stored in both directions; aggregated intra-community
/// weight accumulates on the diagonal entry, counted twice like any
/// other direction pair, so `total_weight` stays the sum of degrees.
/// Ordered maps keep every floating-point accumulation in key order, so
/// detection is bit-identical across processes.
struct LevelGraph {
    n: usize,
    adj: Vec<BTreeMap<usize, f64>>,
    total_weight: f64,
}

impl LevelGraph {
    fn from_graph(g: &Graph) -> Self {
        let n = g.node_count();
        let mut adj = vec![BTreeMap::new(); n];
        for (u, v) in g.edges() {
            *adj[u].entry(v).or_insert(0.0) += 1.0;
            *adj[v].entry(u).or_insert(0.0) += 1.0;
        }
        LevelGraph {
            n,
            adj,
            total_weight: 2.0 * g.edge_count() as f64,
        }
    }

    fn degree(&self, v: usize) -> f64 {
        self.adj[v].values().sum()
    }

    /// Collapses each community of the dense partition into one node.
    fn aggregate(&self, partition: &[usize], num_communities: usize) -> Self {
        let mut adj = vec![BTreeMap::new(); num_communities];
        for node in 0..self.n {
            let c = partition[node];
            for (&nbr, &w) in &self.adj[node] {
                *adj[c].entry(partition[nbr]).or_insert(0.0) += w;
            }
        }
        LevelGraph {
            n: num_communities,
            adj,
            total_weight: self.total_weight,
        }
    }
}

/// Re-labels arbitrary ids densely in first-seen order.
fn densify(values: &[usize]) -> (Vec<usize>, usize) {
    let mut remap: HashMap<usize, usize> = HashMap::new();
    let mut dense = Vec::with_capacity(values.len());
    for &v in values {
        let next = remap.len();
        dense.push(*remap.entry(v).or_insert(next));
    }
    let count = remap.len();
    (dense, count)
}

/// Edge weight from `node` toward each neighboring community, sorted by
/// community id so candidate order (and tie-breaking) is deterministic.
fn neighbor_community_weights(
    state: &LevelGraph,
    node: usize,
    node_to_comm: &[usize],
) -> Vec<(usize, f64)> {
    let mut weights: HashMap<usize, f64> = HashMap::new();
    for (&nbr, &w) in &state.adj[node] {
        if nbr != node {
            *weights.entry(node_to_comm[nbr]).or_insert(0.0) += w;
        }
    }
    let mut sorted: Vec<(usize, f64)> = weights.into_iter().collect();
    sorted.sort_unstable_by_key(|&(c, _)| c);
    sorted
}

/// One level of local moving. Returns true if any node changed
/// community. Ties between equal-gain targets go to the smallest
/// community id.
fn run_one_level(
    state: &LevelGraph,
    node_to_comm: &mut [usize],
    resolution: f64,
    rng: &mut ChaCha8Rng,
) -> bool {
    let m2 = state.total_weight;
    if m2 == 0.0 {
        return false;
    }
    let degrees: Vec<f64> = (0..state.n).map(|v| state.degree(v)).collect();
    let mut community_degrees = vec![0.0f64; state.n];
    for node in 0..state.n {
        community_degrees[node_to_comm[node]] += degrees[node];
    }

    let mut order: Vec<usize> = (0..state.n).collect();
    order.shuffle(rng);

    let mut moved_any = false;
    for _pass in 0..100 {
        let mut moves = 0usize;
        for &node in &order {
            let current = node_to_comm[node];
            let k_i = degrees[node];
            community_degrees[current] -= k_i;

            let candidates = neighbor_community_weights(state, node, node_to_comm);
            let weight_to_current = candidates
                .iter()
                .find(|&&(c, _)| c == current)
                .map_or(0.0, |&(_, w)| w);
            let removal_cost = -weight_to_current / m2
                + resolution * community_degrees[current] * k_i / (m2 * m2);

            let mut best_comm = current;
            let mut best_gain = 0.0f64;
            for &(comm, weight) in &candidates {
                if comm == current {
                    continue;
                }
                let gain = weight / m2 - resolution * community_degrees[comm] * k_i / (m2 * m2);
                let total = removal_cost + gain;
                if total > best_gain {
                    best_gain = total;
                    best_comm = comm;
                }
            }

            community_degrees[best_comm] += k_i;
            if best_comm != current {
                node_to_comm[node] = best_comm;
                moves += 1;
                moved_any = true;
            }
        }
        if moves == 0 {
            break;
        }
    }
    moved_any
}

/// Leiden refinement: within each community, re-grow subcommunities from
/// singletons by merging still-isolated nodes into the best positively
/// contributing subcommunity of the same parent.
///
/// Returns the dense refined partition and, per refined subcommunity,
/// its parent community.
fn refine(
    state: &LevelGraph,
    node_to_comm: &[usize],
    resolution: f64,
    rng: &mut ChaCha8Rng,
) -> (Vec<usize>, usize, Vec<usize>) {
    let m2 = state.total_weight;
    let mut sub: Vec<usize> = (0..state.n).collect();
    let mut sub_sizes = vec![1usize; state.n];
    let mut sub_degrees: Vec<f64> = (0..state.n).map(|v| state.degree(v)).collect();
    let degrees = sub_degrees.clone();

    let mut order: Vec<usize> = (0..state.n).collect();
    order.shuffle(rng);

    for &node in &order {
        if sub_sizes[sub[node]] != 1 {
            continue;
        }
        let parent = node_to_comm[node];
        let k_i = degrees[node];

        let mut weights: HashMap<usize, f64> = HashMap::new();
        for (&nbr, &w) in &state.adj[node] {
            if nbr != node && node_to_comm[nbr] == parent && sub[nbr] != sub[node] {
                *weights.entry(sub[nbr]).or_insert(0.0) += w;
            }
        }
        let mut candidates: Vec<(usize, f64)> = weights.into_iter().collect();
        candidates.sort_unstable_by_key(|&(s, _)| s);

        let mut best_sub = sub[node];
        let mut best_gain = 0.0f64;
        for &(target, weight) in &candidates {
            let gain = weight / m2 - resolution * sub_degrees[target] * k_i / (m2 * m2);
            if gain > best_gain {
                best_gain = gain;
                best_sub = target;
            }
        }
        if best_sub != sub[node] {
            sub_degrees[sub[node]] -= k_i;
            sub_sizes[sub[node]] -= 1;
            sub_degrees[best_sub] += k_i;
            sub_sizes[best_sub] += 1;
            sub[node] = best_sub;
        }
    }

    let (dense, count) = densify(&sub);
    let mut parent_of_sub = vec![usize::MAX; count];
    for node in 0..state.n {
        parent_of_sub[dense[node]] = node_to_comm[node];
    }
    (dense, count, parent_of_sub)
}

/// Detects a modularity-optimizing partition. Deterministic for a fixed
/// `(g, params, rng_seed)`; every community is non-empty and ids are
/// dense in first-seen order of the lowest member index.
pub fn detect_communities(
    g: &Graph,
    params: &DetectorParams,
    rng_seed: u64,
) -> CommunityAssignment {
    let n = g.node_count();
    if g.edge_count() == 0 {
        return CommunityAssignment::from_membership((0..n).collect()).expect("non-empty graph");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut state = LevelGraph::from_graph(g);
    // node -> aggregate node of the current level
    let mut node_to_agg: Vec<usize> = (0..n).collect();
    // starting communities of the current level's aggregate nodes
    let mut init_partition: Vec<usize> = (0..state.n).collect();

    for _level in 0..50 {
        let mut node_to_comm = init_partition.clone();
        let moved = run_one_level(&state, &mut node_to_comm, params.resolution, &mut rng);
        if !moved {
            break;
        }

        // agg_partition collapses the level; next_init seeds the next one
        let (agg_partition, agg_count, next_init) = match params.kind {
            DetectorKind::Louvain => {
                let (dense, count) = densify(&node_to_comm);
                (dense, count, (0..count).collect::<Vec<usize>>())
            }
            DetectorKind::Leiden => {
                let (dense, count, parent_of_sub) =
                    refine(&state, &node_to_comm, params.resolution, &mut rng);
                let (parent_dense, _) = densify(&parent_of_sub);
                (dense, count, parent_dense)
            }
        };

        for agg in node_to_agg.iter_mut() {
            *agg = agg_partition[*agg];
        }
        state = state.aggregate(&agg_partition, agg_count);
        init_partition = next_init;
    }

    let membership: Vec<usize> = node_to_agg.iter().map(|&a| init_partition[a]).collect();
    CommunityAssignment::from_membership(membership).expect("non-empty graph")
}
