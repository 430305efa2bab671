//! Undirected simple graph with dense node indexing and a label map.
//!
//! Graphs are immutable after construction: loading drops self-loops,
//! collapses duplicate edges and assigns dense internal indices in
//! first-seen order, so two loads of the same file are identical.

use std::collections::HashMap;
use std::io::BufRead;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{from_count, Real};

/// Internal node index, dense in `0..node_count`.
pub type NodeId = usize;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has no nodes")]
    Empty,
    #[error("node index {0} out of range")]
    InvalidNode(NodeId),
    #[error("hop count must lie in 1..=3, got {0}")]
    InvalidHops(usize),
    #[error("edge endpoint {0} exceeds declared node count {1}")]
    EndpointOutOfRange(NodeId, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Immutable undirected simple graph.
#[derive(Debug, Clone)]
pub struct Graph {
    adjacency: Vec<Vec<NodeId>>,
    labels: Vec<String>,
    label_lookup: HashMap<String, NodeId>,
    edge_count: usize,
}

/// Compact JSON-friendly description of a loaded graph.
#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub nodes: usize,
    pub edges: usize,
    pub average_degree: f64,
    pub max_degree: usize,
}

impl Graph {
    /// Builds a graph from labeled edges, interning labels in first-seen
    /// order. Self-loops are dropped (their endpoint is still interned)
    /// and duplicate edges collapse.
    pub fn from_labeled_edges<I, S>(pairs: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut labels: Vec<String> = Vec::new();
        let mut label_lookup: HashMap<String, NodeId> = HashMap::new();
        let mut edges: Vec<(NodeId, NodeId)> = Vec::new();

        let intern = |label: String, labels: &mut Vec<String>, lookup: &mut HashMap<String, NodeId>| {
            if let Some(&id) = lookup.get(&label) {
                id
            } else {
                let id = labels.len();
                lookup.insert(label.clone(), id);
                labels.push(label);
                id
            }
        };

        for (a, b) in pairs {
            let u = intern(a.into(), &mut labels, &mut label_lookup);
            let v = intern(b.into(), &mut labels, &mut label_lookup);
            if u != v {
                edges.push((u, v));
            }
        }

        if labels.is_empty() {
            return Err(GraphError::Empty);
        }

        let adjacency = build_adjacency(labels.len(), &edges);
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            adjacency,
            labels,
            label_lookup,
            edge_count,
        })
    }

    /// Builds a graph over `n` nodes labeled `"0".."n-1"` from index
    /// pairs. Allows isolated nodes; drops self-loops and duplicates.
    pub fn from_index_edges(n: usize, pairs: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = Vec::with_capacity(pairs.len());
        for &(u, v) in pairs {
            if u >= n {
                return Err(GraphError::EndpointOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::EndpointOutOfRange(v, n));
            }
            if u != v {
                edges.push((u, v));
            }
        }
        let adjacency = build_adjacency(n, &edges);
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        Ok(Graph {
            adjacency,
            labels: (0..n).map(|i| i.to_string()).collect(),
            label_lookup: (0..n).map(|i| (i.to_string(), i)).collect(),
            edge_count,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    pub fn label(&self, v: NodeId) -> &str {
        &self.labels[v]
    }

    pub fn node_by_label(&self, label: &str) -> Option<NodeId> {
        self.label_lookup.get(label).copied()
    }

    /// Iterates each undirected edge once as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Average degree `2|E| / |V|`.
    pub fn average_degree<F: Real>(&self) -> F {
        from_count::<F>(2 * self.edge_count) / from_count::<F>(self.node_count())
    }

    /// Mean of squared degrees.
    pub fn mean_squared_degree<F: Real>(&self) -> F {
        let sum: u64 = self
            .adjacency
            .iter()
            .map(|nbrs| (nbrs.len() as u64) * (nbrs.len() as u64))
            .sum();
        F::from_u64(sum).expect("degree sum representable") / from_count::<F>(self.node_count())
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn summary(&self) -> GraphSummary {
        GraphSummary {
            nodes: self.node_count(),
            edges: self.edge_count,
            average_degree: self.average_degree::<f64>(),
            max_degree: self.max_degree(),
        }
    }

    /// Nodes at BFS distance `1..=k` from `v`, excluding `v`, sorted.
    pub fn k_hop_neighbors(&self, v: NodeId, k: usize) -> Result<Vec<NodeId>, GraphError> {
        let shells = self.k_hop_shells(v, k)?;
        let mut all: Vec<NodeId> = shells.into_iter().flatten().collect();
        all.sort_unstable();
        Ok(all)
    }

    /// Nodes partitioned by exact BFS distance: `shells[d-1]` holds the
    /// nodes at distance `d` from `v`, each shell sorted.
    pub fn k_hop_shells(&self, v: NodeId, k: usize) -> Result<Vec<Vec<NodeId>>, GraphError> {
        if v >= self.node_count() {
            return Err(GraphError::InvalidNode(v));
        }
        if !(1..=3).contains(&k) {
            return Err(GraphError::InvalidHops(k));
        }
        let mut visited = vec![false; self.node_count()];
        visited[v] = true;
        let mut frontier = vec![v];
        let mut shells = Vec::with_capacity(k);
        for _ in 0..k {
            let mut next = Vec::new();
            for &u in &frontier {
                for &w in self.neighbors(u) {
                    if !visited[w] {
                        visited[w] = true;
                        next.push(w);
                    }
                }
            }
            next.sort_unstable();
            if next.is_empty() {
                shells.push(next);
                break;
            }
            shells.push(next.clone());
            frontier = next;
        }
        while shells.len() < k {
            shells.push(Vec::new());
        }
        Ok(shells)
    }
}

fn build_adjacency(n: usize, edges: &[(NodeId, NodeId)]) -> Vec<Vec<NodeId>> {
    let mut adjacency = vec![Vec::new(); n];
    for &(u, v) in edges {
        adjacency[u].push(v);
        adjacency[v].push(u);
    }
    for nbrs in &mut adjacency {
        nbrs.sort_unstable();
        nbrs.dedup();
    }
    adjacency
}

/// Parses an edge list: one edge per line, two tokens separated by
/// whitespace or commas; `#` and `%` prefix comment lines.
pub fn load_edge_list<R: BufRead>(reader: R) -> Result<Graph, GraphError> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = trimmed
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .collect();
        if tokens.len() != 2 {
            return Err(GraphError::Parse {
                line: idx + 1,
                message: format!("expected 2 tokens, found {}", tokens.len()),
            });
        }
        pairs.push((tokens[0].to_string(), tokens[1].to_string()));
    }
    Graph::from_labeled_edges(pairs)
}
