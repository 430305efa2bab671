//! End-to-end seed selection: detection, scoring, voting.

use thiserror::Error;

use crate::community::{detect_communities, CommunityAssignment, DetectorParams};
use crate::dschi::{dschi_scores, DschiError};
use crate::graph::{Graph, NodeId};
use crate::scalar::{from_f64, Real};
use crate::voting::{select_seeds, UpdateStrategy, VotingError, VotingParams};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Dschi(#[from] DschiError),
    #[error(transparent)]
    Voting(#[from] VotingError),
}

/// Full parameter set of the community-voting method.
#[derive(Debug, Clone)]
pub struct CechmvParams<F> {
    pub alpha: F,
    pub beta: F,
    pub mu: F,
    pub exponent_form: crate::voting::ExponentForm,
    pub strategy: UpdateStrategy,
    pub lsus_paper_literal: bool,
    pub detector: DetectorParams,
    pub rng_seed: u64,
}

impl<F: Real> CechmvParams<F> {
    /// The standard experiment constants: alpha 0.7, beta 2, mu 0.15,
    /// lazy updating, Louvain detection at resolution 1.
    pub fn standard() -> Self {
        CechmvParams {
            alpha: from_f64(0.7),
            beta: from_f64(2.0),
            mu: from_f64(0.15),
            exponent_form: crate::voting::ExponentForm::Algorithm,
            strategy: UpdateStrategy::Lazy,
            lsus_paper_literal: false,
            detector: DetectorParams::default(),
            rng_seed: 42,
        }
    }
}

/// Detects communities, scores every node and selects `k` seeds.
pub fn cechmv_select<F: Real>(
    g: &Graph,
    params: &CechmvParams<F>,
    k: usize,
) -> Result<Vec<NodeId>, PipelineError> {
    let ca = detect_communities(g, &params.detector, params.rng_seed);
    cechmv_select_with_partition(g, &ca, params, k)
}

/// Same as [`cechmv_select`] with an externally supplied partition.
pub fn cechmv_select_with_partition<F: Real>(
    g: &Graph,
    ca: &CommunityAssignment,
    params: &CechmvParams<F>,
    k: usize,
) -> Result<Vec<NodeId>, PipelineError> {
    let table = dschi_scores(g, ca, params.alpha)?;
    let voting = VotingParams {
        beta: params.beta,
        mu: params.mu,
        exponent_form: params.exponent_form,
        seed_count: k,
        lsus_paper_literal: params.lsus_paper_literal,
    };
    Ok(select_seeds(g, &table, &voting, params.strategy)?)
}
