//! Deterministic seeded random graph generators.
//!
//! Used by the property and acceptance suites; handy for experiments.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;

/// Erdős–Rényi G(n, p). Isolated nodes are kept.
pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Graph {
    assert!(n > 0, "need at least one node");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::from_index_edges(n, &edges).expect("n > 0")
}

/// Preferential attachment: each new node attaches to `m` distinct
/// existing nodes chosen proportionally to degree.
pub fn barabasi_albert(n: usize, m: usize, seed: u64) -> Graph {
    assert!(m >= 1 && n > m, "need n > m >= 1");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // repeated-endpoints list makes degree-proportional sampling cheap
    let mut endpoints: Vec<usize> = Vec::new();

    // seed with a star over the first m+1 nodes
    for v in 1..=m {
        edges.push((0, v));
        endpoints.extend([0, v]);
    }

    for v in (m + 1)..n {
        let mut targets = Vec::with_capacity(m);
        while targets.len() < m {
            let &candidate = endpoints.choose(&mut rng).expect("non-empty");
            if !targets.contains(&candidate) {
                targets.push(candidate);
            }
        }
        for &t in &targets {
            edges.push((v, t));
            endpoints.extend([v, t]);
        }
    }
    Graph::from_index_edges(n, &edges).expect("n > 0")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn erdos_renyi_is_seed_deterministic() {
        let a = erdos_renyi(50, 0.1, 7);
        let b = erdos_renyi(50, 0.1, 7);
        assert_eq!(a.edge_count(), b.edge_count());
        assert!(a.edges().eq(b.edges()));
    }

    #[test]
    fn barabasi_albert_has_expected_edge_count() {
        let g = barabasi_albert(100, 3, 11);
        assert_eq!(g.node_count(), 100);
        // m seed edges + m per arrival, all distinct: m * (n - m)
        assert_eq!(g.edge_count(), 3 * 97);
    }
}
