//! Pattern detectors and exact oracles.
//!
//! The K4+ family reduces to a single recogniser: a graph is a subdivision
//! of K4+ exactly when it is a subdivision of K4 on at least five vertices
//! (route the subdivided K4+ edge through any extra vertex).

mod biclique;
mod chromatic;
mod clique;
mod subdivision;
mod witness;

use serde::Serialize;
use thiserror::Error;

pub(crate) use biclique::induced_biclique;
pub use biclique::{
    find_biclique_subgraph, find_induced_biclique, ramsey_extract_k44, BicliqueWitness, RamseyError,
};
pub use chromatic::{chromatic_number, dsatur_greedy, optimal_coloring};
pub(crate) use clique::max_clique_within;
pub use clique::{clique_number, max_clique};
pub use subdivision::{
    find_isk4, find_isk4plus, find_isk4plus_oracle, find_subdivision, find_subdivision_oracle,
    DEFAULT_ORACLE_CEILING,
};
pub use witness::{
    is_k4_subdivision, is_k4plus_subdivision, witness_on, SubdivisionWitness, WitnessError,
    BRANCH_PAIRS,
};

/// Which subdivision family a detector looks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Pattern {
    /// Any subdivision of K4, K4 itself included.
    K4,
    /// Subdivisions of K4+: subdivisions of K4 on at least five vertices.
    K4Plus,
}

impl Pattern {
    pub const fn min_order(self) -> usize {
        match self {
            Pattern::K4 => 4,
            Pattern::K4Plus => 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetectError {
    #[error("graph has {n} vertices, oracle ceiling is {ceiling}")]
    TooLarge { n: usize, ceiling: usize },
}

/// Whether `g` contains a triangle.
pub fn has_triangle(g: &crate::graph::Graph) -> bool {
    g.edges().any(|(u, v)| g.adj(u).intersects(g.adj(v)))
}
