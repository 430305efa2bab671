//! Community structure: partitions, the community-level graph and the
//! community coreness/importance scores that feed hierarchical-community
//! entropy.

mod detect;

pub use detect::{detect_communities, DetectorKind, DetectorParams};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::kshell::k_shell;
use crate::scalar::{from_count, Real};

#[derive(Debug, Error)]
pub enum CommunityError {
    #[error("unknown node label {0:?} in partition")]
    UnknownLabel(String),
    #[error("node {0:?} appears in more than one community")]
    DuplicateNode(String),
    #[error("node {0:?} is missing from the partition")]
    MissingNode(String),
    #[error("membership length {got} does not match node count {expected}")]
    LengthMismatch { got: usize, expected: usize },
    #[error("partition has no communities")]
    EmptyPartition,
}

/// A partition of the graph's nodes into dense community ids `0..m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommunityAssignment {
    membership: Vec<usize>,
    sizes: Vec<usize>,
}

/// On-disk partition schema: one label list per community.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionFile {
    pub communities: Vec<Vec<String>>,
}

impl CommunityAssignment {
    /// Wraps a raw membership vector, re-densifying community ids in
    /// first-seen order of ascending node index.
    pub fn from_membership(membership: Vec<usize>) -> Result<Self, CommunityError> {
        if membership.is_empty() {
            return Err(CommunityError::EmptyPartition);
        }
        let mut remap: Vec<Option<usize>> = Vec::new();
        let mut dense = Vec::with_capacity(membership.len());
        let mut next = 0usize;
        for &c in &membership {
            if c >= remap.len() {
                remap.resize(c + 1, None);
            }
            let id = *remap[c].get_or_insert_with(|| {
                let id = next;
                next += 1;
                id
            });
            dense.push(id);
        }
        let mut sizes = vec![0usize; next];
        for &c in &dense {
            sizes[c] += 1;
        }
        Ok(CommunityAssignment {
            membership: dense,
            sizes,
        })
    }

    /// Builds an assignment from explicit label groups; every node must
    /// appear in exactly one group.
    pub fn from_groups(g: &Graph, groups: &[Vec<String>]) -> Result<Self, CommunityError> {
        let mut membership = vec![usize::MAX; g.node_count()];
        for (cid, group) in groups.iter().enumerate() {
            for label in group {
                let v = g
                    .node_by_label(label)
                    .ok_or_else(|| CommunityError::UnknownLabel(label.clone()))?;
                if membership[v] != usize::MAX {
                    return Err(CommunityError::DuplicateNode(label.clone()));
                }
                membership[v] = cid;
            }
        }
        if let Some(v) = membership.iter().position(|&c| c == usize::MAX) {
            return Err(CommunityError::MissingNode(g.label(v).to_string()));
        }
        Self::from_membership(membership)
    }

    pub fn from_partition(g: &Graph, file: &PartitionFile) -> Result<Self, CommunityError> {
        Self::from_groups(g, &file.communities)
    }

    /// Exports label groups ordered by community id.
    pub fn to_partition(&self, g: &Graph) -> PartitionFile {
        let mut communities = vec![Vec::new(); self.sizes.len()];
        for v in 0..self.membership.len() {
            communities[self.membership[v]].push(g.label(v).to_string());
        }
        PartitionFile { communities }
    }

    pub fn community_of(&self, v: NodeId) -> usize {
        self.membership[v]
    }

    pub fn membership(&self) -> &[usize] {
        &self.membership
    }

    /// Number of communities `m`.
    pub fn count(&self) -> usize {
        self.sizes.len()
    }

    /// Node count NN per community.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn validate_for(&self, g: &Graph) -> Result<(), CommunityError> {
        if self.membership.len() != g.node_count() {
            return Err(CommunityError::LengthMismatch {
                got: self.membership.len(),
                expected: g.node_count(),
            });
        }
        Ok(())
    }
}

/// The graph whose nodes are communities; an edge joins two communities
/// iff at least one original edge crosses between them. Simple, no
/// self-loops.
#[derive(Debug, Clone)]
pub struct CommunityGraph {
    graph: Graph,
}

impl CommunityGraph {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

pub fn build_community_graph(g: &Graph, ca: &CommunityAssignment) -> CommunityGraph {
    let m = ca.count();
    let mut cross: Vec<(NodeId, NodeId)> = Vec::new();
    for (u, v) in g.edges() {
        let (cu, cv) = (ca.community_of(u), ca.community_of(v));
        if cu != cv {
            cross.push((cu, cv));
        }
    }
    let graph = Graph::from_index_edges(m, &cross).expect("at least one community");
    CommunityGraph { graph }
}

/// Community coreness (CC), its max-normalized form (CC_N) and the
/// community importance CI = NN * CC_N.
#[derive(Debug, Clone, PartialEq)]
pub struct CommunityScores<F> {
    pub cc: Vec<F>,
    pub cc_n: Vec<F>,
    pub ci: Vec<F>,
    pub ci_max: F,
}

/// Runs the k-shell decomposition on the community graph and derives
/// CC, CC_N and CI. When no edge crosses any community pair, CC_N is
/// defined as 0 everywhere.
pub fn community_scores<F: Real>(
    gc: &CommunityGraph,
    ca: &CommunityAssignment,
) -> CommunityScores<F> {
    let graph = gc.graph();
    let ks = k_shell(graph);
    let cc: Vec<F> = (0..graph.node_count())
        .map(|i| {
            let sum: u64 = graph.neighbors(i).iter().map(|&j| u64::from(ks.get(j))).sum();
            F::from_u64(sum).expect("coreness sum representable")
        })
        .collect();
    let cc_max = cc.iter().copied().fold(F::zero(), F::max);
    let cc_n: Vec<F> = if cc_max > F::zero() {
        cc.iter().map(|&x| x / cc_max).collect()
    } else {
        vec![F::zero(); cc.len()]
    };
    let ci: Vec<F> = cc_n
        .iter()
        .zip(ca.sizes())
        .map(|(&ccn, &nn)| from_count::<F>(nn) * ccn)
        .collect();
    let ci_max = ci.iter().copied().fold(F::zero(), F::max);
    CommunityScores {
        cc,
        cc_n,
        ci,
        ci_max,
    }
}
