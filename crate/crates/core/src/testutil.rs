//! Shared fixtures for unit tests.

use crate::community::CommunityAssignment;
use crate::graph::Graph;

/// Five-node demo graph W: edges ab, ac, bc, de, ad.
pub(crate) fn demo_graph() -> Graph {
    Graph::from_labeled_edges([("a", "b"), ("a", "c"), ("b", "c"), ("d", "e"), ("a", "d")]).unwrap()
}

/// Fixed two-community split of the demo graph: {a,b,c} and {d,e}.
pub(crate) fn demo_partition(g: &Graph) -> CommunityAssignment {
    CommunityAssignment::from_groups(
        g,
        &[
            vec!["a".into(), "b".into(), "c".into()],
            vec!["d".into(), "e".into()],
        ],
    )
    .unwrap()
}
