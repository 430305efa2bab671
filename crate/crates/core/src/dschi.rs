//! Dual-Scale Community-Hierarchy Information (DSCHI) scoring.
//!
//! Blends two per-node signals: hierarchical-community entropy (HCE),
//! which measures how a node's neighbors spread across communities
//! weighted by community importance, and neighborhood coreness, which
//! captures how deep the node sits in the k-shell hierarchy. Both are
//! log-normalized to [0, 1] before mixing.

use thiserror::Error;

use crate::community::{build_community_graph, CommunityAssignment, CommunityScores};
use crate::graph::{Graph, NodeId};
use crate::kshell::{k_shell, neighborhood_coreness};
use crate::scalar::{from_count, from_f64, Real};

#[derive(Debug, Error)]
pub enum DschiError {
    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    InvalidAlpha(String),
}

/// Per-node scores produced by the DSCHI pipeline.
#[derive(Debug, Clone)]
pub struct ScoreTable<F> {
    pub ks: Vec<u32>,
    pub nc: Vec<F>,
    pub nc_n: Vec<F>,
    pub hce: Vec<F>,
    pub hce_n: Vec<F>,
    pub dschi: Vec<F>,
    pub alpha: F,
}

/// Hierarchical-community entropy of node `v`.
///
/// Neighbor counts are split per community; each community's share
/// `ne/d(v)` contributes `-(share * log2 share)` weighted by how close
/// that community's importance is to the maximum. The cross-community
/// sum carries an extra 1/2 factor relative to the own-community term.
/// Communities contributing no neighbors add nothing (`0 * log 0 = 0`),
/// and isolated nodes score 0.
pub fn hce<F: Real>(
    g: &Graph,
    ca: &CommunityAssignment,
    cs: &CommunityScores<F>,
    v: NodeId,
) -> F {
    let degree = g.degree(v);
    if degree == 0 {
        return F::zero();
    }
    let own = ca.community_of(v);
    // per-community neighbor counts, in ascending community id order so
    // the floating-point sum is reproducible
    let mut counts: Vec<(usize, usize)> = Vec::new();
    for &u in g.neighbors(v) {
        let c = ca.community_of(u);
        match counts.binary_search_by_key(&c, |&(cid, _)| cid) {
            Ok(i) => counts[i].1 += 1,
            Err(i) => counts.insert(i, (c, 1)),
        }
    }

    let d: F = from_count(degree);
    let mut cross_sum = F::zero();
    let mut own_term = F::zero();
    for &(c, ne) in &counts {
        let share = from_count::<F>(ne) / d;
        let weight = F::one() / (cs.ci_max - cs.ci[c] + F::one());
        let term = weight * share * share.log2();
        if c == own {
            own_term = term;
        } else {
            cross_sum = cross_sum + term;
        }
    }
    let half = from_f64::<F>(0.5);
    (-(half * cross_sum + own_term)).max(F::zero())
}

/// Log-normalization used for both HCE and coreness:
/// `x -> log2(1 + x / max)`, mapping the maximum to 1 and zero to 0.
/// An all-zero input normalizes to all zeros.
pub fn normalize_scores<F: Real>(raw: &[F]) -> Vec<F> {
    let max = raw.iter().copied().fold(F::zero(), F::max);
    if max > F::zero() {
        raw.iter().map(|&x| (F::one() + x / max).log2()).collect()
    } else {
        vec![F::zero(); raw.len()]
    }
}

/// Full score table: shell indices, neighborhood coreness, HCE, the
/// normalized forms and `dschi = alpha * hce_n + (1 - alpha) * nc_n`.
pub fn dschi_scores<F: Real>(
    g: &Graph,
    ca: &CommunityAssignment,
    alpha: F,
) -> Result<ScoreTable<F>, DschiError> {
    if !(alpha > F::zero() && alpha < F::one()) {
        return Err(DschiError::InvalidAlpha(alpha.to_string()));
    }

    let ks = k_shell(g);
    let nc: Vec<F> = neighborhood_coreness(g, &ks);
    let gc = build_community_graph(g, ca);
    let cs: CommunityScores<F> = crate::community::community_scores(&gc, ca);

    let hce_values: Vec<F> = (0..g.node_count()).map(|v| hce(g, ca, &cs, v)).collect();
    let hce_n = normalize_scores(&hce_values);
    let nc_n = normalize_scores(&nc);
    let one_minus = F::one() - alpha;
    let dschi = hce_n
        .iter()
        .zip(&nc_n)
        .map(|(&h, &c)| alpha * h + one_minus * c)
        .collect();

    Ok(ScoreTable {
        ks: ks.values().to_vec(),
        nc,
        nc_n,
        hce: hce_values,
        hce_n,
        dschi,
        alpha,
    })
}
