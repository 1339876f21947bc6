//! Graphs, permutation groups, automorphism search, s-arc classification
//! and quotient graphs.

mod arcs;
mod graph;
mod perm;
mod quotient;
mod search;

pub use arcs::{
    basic_report, classify_arc_regularity, classify_with_group, first_s_arc, is_edge_transitive, is_s_arc_transitive,
    s_arc_count, s_arcs, TransitivityReport, MAX_ARC_LEVEL,
};
pub use graph::Graph;
pub use perm::{PermGroup, Permutation, StabChain};
pub use quotient::{quotient_by_orbits, Quotient};
pub use search::{are_isomorphic, automorphism_group, count_automorphisms_by_extension, search_automorphisms, AutSearch};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("images do not form a permutation")]
    NotAPermutation,
    #[error("permutation degree {found} does not match {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("not a subgroup")]
    NotASubgroup,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("graph is not connected")]
    Disconnected,
}

/// Whether `order` has the form `2^r * 3`.
pub fn is_two_power_times_three(order: u128) -> bool {
    order % 3 == 0 && (order / 3).is_power_of_two()
}
