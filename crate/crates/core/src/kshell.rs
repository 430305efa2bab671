//! K-shell decomposition and neighborhood coreness.

use crate::graph::{Graph, NodeId};
use crate::scalar::Real;

/// Shell index (core number) per node. Isolated nodes sit in shell 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShellIndex {
    values: Vec<u32>,
}

impl ShellIndex {
    pub fn get(&self, v: NodeId) -> u32 {
        self.values[v]
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn max_shell(&self) -> u32 {
        self.values.iter().copied().max().unwrap_or(0)
    }
}

/// Iterative minimum-degree pruning (Batagelj–Zaveršnik bin sort).
///
/// Nodes of equal degree are processed in ascending index order, so the
/// result is deterministic; shell values themselves are order-free.
pub fn k_shell(g: &Graph) -> ShellIndex {
    let n = g.node_count();
    let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_degree = degree.iter().copied().max().unwrap_or(0);

    // counting sort of nodes by degree
    let mut bin = vec![0usize; max_degree + 2];
    for &d in &degree {
        bin[d] += 1;
    }
    let mut start = 0;
    for b in bin.iter_mut() {
        let count = *b;
        *b = start;
        start += count;
    }
    let mut vert = vec![0usize; n];
    let mut pos = vec![0usize; n];
    {
        let mut next = bin.clone();
        for v in 0..n {
            pos[v] = next[degree[v]];
            vert[pos[v]] = v;
            next[degree[v]] += 1;
        }
    }

    let mut core = degree.clone();
    for i in 0..n {
        let v = vert[i];
        for j in 0..g.neighbors(v).len() {
            let u = g.neighbors(v)[j];
            if core[u] > core[v] {
                // move u to the front of its bin, then shrink its degree
                let du = core[u];
                let pu = pos[u];
                let pw = bin[du];
                let w = vert[pw];
                if u != w {
                    vert[pu] = w;
                    vert[pw] = u;
                    pos[u] = pw;
                    pos[w] = pu;
                }
                bin[du] += 1;
                core[u] -= 1;
            }
        }
    }

    ShellIndex {
        values: core.into_iter().map(|d| d as u32).collect(),
    }
}

/// Neighborhood coreness: the sum of shell values over each node's
/// neighbors. Isolated nodes score 0.
pub fn neighborhood_coreness<F: Real>(g: &Graph, ks: &ShellIndex) -> Vec<F> {
    (0..g.node_count())
        .map(|v| {
            let sum: u64 = g.neighbors(v).iter().map(|&u| u64::from(ks.get(u))).sum();
            F::from_u64(sum).expect("coreness sum representable")
        })
        .collect()
}
