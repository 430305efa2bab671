//! Influence maximization via community-hierarchy-based mutual voting.
//!
//! The pipeline: detect communities, score every node with Dual-Scale
//! Community-Hierarchy Information (hierarchical-community entropy
//! blended with neighborhood coreness), then run Cost-Effective
//! Mutual-Influence-based Voting to pick seed nodes. Seed sets are
//! evaluated with a Monte-Carlo SIR simulator, and methods are compared
//! through a Balance Index that trades spread against runtime.
//!
//! Score arithmetic is generic over the [`Real`] scalar (`f32`/`f64`);
//! the `*64` aliases below fix the default precision.

pub mod benchmark;
pub mod community;
pub mod dschi;
pub mod gen;
pub mod graph;
pub mod kshell;
pub mod pipeline;
pub mod scalar;
pub mod sir;
pub mod voting;

#[cfg(test)]
pub(crate) mod testutil;

pub use benchmark::{
    balance_index, baseline_select, run_benchmark, BaselineMethod, BenchmarkError,
    BenchmarkRecord, Method, MethodRun,
};
pub use community::{
    build_community_graph, community_scores, detect_communities, CommunityAssignment,
    CommunityError, CommunityGraph, CommunityScores, DetectorKind, DetectorParams, PartitionFile,
};
pub use dschi::{dschi_scores, hce, normalize_scores, DschiError, ScoreTable};
pub use graph::{load_edge_list, Graph, GraphError, GraphSummary, NodeId};
pub use kshell::{k_shell, neighborhood_coreness, ShellIndex};
pub use pipeline::{cechmv_select, cechmv_select_with_partition, CechmvParams, PipelineError};
pub use scalar::Real;
pub use sir::{epidemic_threshold, simulate, SirError, SirParams, SirResult};
pub use voting::{
    init_voting, seed_count_from_rho, select_seeds, suppress, vote_weight, ExponentForm,
    UpdateStrategy, VotingError, VotingParams, VotingState,
};

/// Default-precision aliases for the scalar-generic types.
pub type ScoreTable64 = ScoreTable<f64>;
pub type CommunityScores64 = CommunityScores<f64>;
pub type VotingParams64 = VotingParams<f64>;
pub type VotingState64 = VotingState<f64>;
pub type SirParams64 = SirParams<f64>;
pub type SirResult64 = SirResult<f64>;
pub type BenchmarkRecord64 = BenchmarkRecord<f64>;
pub type CechmvParams64 = CechmvParams<f64>;
