//! Structural properties of the graph layer, checked against
//! implementation-independent oracles on seeded random graphs.

use std::io::Cursor;

use cechmv::gen::{barabasi_albert, erdos_renyi};
use cechmv::{k_shell, load_edge_list, neighborhood_coreness, Graph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Brute-force decomposition: for s = 0, 1, 2, ... repeatedly delete
/// every remaining node of degree <= s; a node's shell is the s at which
/// it fell out.
fn brute_force_shells(g: &Graph) -> Vec<u32> {
    let n = g.node_count();
    let mut removed = vec![false; n];
    let mut shell = vec![0u32; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut remaining = n;
    let mut s = 0u32;
    while remaining > 0 {
        loop {
            let targets: Vec<usize> = (0..n)
                .filter(|&v| !removed[v] && degree[v] <= s as usize)
                .collect();
            if targets.is_empty() {
                break;
            }
            for v in targets {
                removed[v] = true;
                shell[v] = s;
                remaining -= 1;
                for &u in g.neighbors(v) {
                    if !removed[u] {
                        degree[u] -= 1;
                    }
                }
            }
        }
        s += 1;
    }
    shell
}

fn random_graph(seed: u64) -> Graph {
    // alternate between models and densities
    match seed % 3 {
        0 => erdos_renyi(40 + (seed as usize * 7) % 161, 0.02 + (seed as f64 % 11.0) / 100.0, seed),
        1 => barabasi_albert(30 + (seed as usize * 13) % 171, 1 + (seed as usize) % 4, seed),
        _ => erdos_renyi(10 + (seed as usize * 3) % 50, 0.15, seed),
    }
}

#[test]
fn k_shell_matches_brute_force_on_random_graphs() {
    for seed in 0..60u64 {
        let g = random_graph(seed);
        assert!(g.node_count() <= 200);
        let fast = k_shell(&g);
        let oracle = brute_force_shells(&g);
        assert_eq!(fast.values(), &oracle[..], "divergence at seed {seed}");
    }
}

#[test]
fn k_shell_is_invariant_under_relabeling() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for seed in 0..20u64 {
        let g = random_graph(seed);
        let n = g.node_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);

        let permuted_edges: Vec<(usize, usize)> =
            g.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        let h = Graph::from_index_edges(n, &permuted_edges).unwrap();

        let ks_g = k_shell(&g);
        let ks_h = k_shell(&h);
        for v in 0..n {
            assert_eq!(ks_g.get(v), ks_h.get(perm[v]), "seed {seed}, node {v}");
        }
    }
}

#[test]
fn coreness_is_bounded_by_degree_times_max_shell() {
    for seed in 0..20u64 {
        let g = random_graph(seed);
        let ks = k_shell(&g);
        let nc: Vec<f64> = neighborhood_coreness(&g, &ks);
        let max_shell = f64::from(ks.max_shell());
        for v in 0..g.node_count() {
            assert!(nc[v] <= g.degree(v) as f64 * max_shell + 1e-12);
        }
    }
}

#[test]
fn reload_of_serialized_edge_list_is_label_isomorphic() {
    for seed in 0..20u64 {
        let g = random_graph(seed);
        let mut text = String::new();
        for (u, v) in g.edges() {
            text.push_str(g.label(u));
            text.push(' ');
            text.push_str(g.label(v));
            text.push('\n');
        }
        // isolated nodes cannot ride along in an edge list
        if g.edges().count() == 0 {
            continue;
        }
        let h = load_edge_list(Cursor::new(text)).unwrap();
        assert_eq!(h.edge_count(), g.edge_count(), "seed {seed}");

        let mut degrees_g: Vec<usize> = (0..g.node_count()).map(|v| g.degree(v)).collect();
        degrees_g.retain(|&d| d > 0);
        degrees_g.sort_unstable();
        let mut degrees_h: Vec<usize> = (0..h.node_count()).map(|v| h.degree(v)).collect();
        degrees_h.sort_unstable();
        assert_eq!(degrees_g, degrees_h, "degree sequences differ at seed {seed}");

        // label-preserving neighborhood equality
        for v in 0..g.node_count() {
            if g.degree(v) == 0 {
                continue;
            }
            let w = h.node_by_label(g.label(v)).expect("label survives");
            let mut ng: Vec<&str> = g.neighbors(v).iter().map(|&u| g.label(u)).collect();
            let mut nh: Vec<&str> = h.neighbors(w).iter().map(|&u| h.label(u)).collect();
            ng.sort_unstable();
            nh.sort_unstable();
            assert_eq!(ng, nh);
        }
    }
}
