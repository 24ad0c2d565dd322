//! The maximal complete multipartite set `M`, the three claims about the
//! vertices outside it, and the clique cutsets they produce.

mod claims;
mod cutset;
mod multipartite;

use thiserror::Error;

use crate::budget::BudgetExceeded;
use crate::graph::VertexSet;

pub use claims::{
    check_claim1, check_claim2, check_claim3, Actor, ActorValue, ClaimOutcome, ClaimViolation,
};
pub use cutset::{
    find_any_clique_cutset, find_structural_cutset, CutsetSplit, CLIQUE_CUTSET_CEILING,
};
pub use multipartite::{grow_maximal_multipartite, Extension, MultipartiteWitness, BIG_PART};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("seed is not an induced biclique with both sides of size at least 4")]
    InvalidSeed,
    #[error("part {0} is empty")]
    EmptyPart(usize),
    #[error("part {0} has vertices outside the graph")]
    OutOfRange(VertexSet),
    #[error("parts overlap")]
    OverlappingParts,
    #[error("part {0} is not a stable set")]
    PartNotStable(usize),
    #[error("parts {0} and {1} are not complete to each other")]
    PartsNotComplete(usize, usize),
    #[error("{0} parts of size at least 4, need 2")]
    TooFewBigParts(usize),
    #[error("stored metadata does not match the parts")]
    StaleMetadata,
    #[error("precondition failed: claim {claim} does not hold")]
    ClaimPrecondition { claim: u8 },
    #[error("claim {claim}: actors {set} do not induce a K4+ subdivision")]
    ConstructionFailed { claim: u8, set: VertexSet },
    #[error("component neighbourhood {clique} is not a clique")]
    CutsetNotClique { clique: VertexSet },
    #[error("graph has {n} vertices, clique cutset search ceiling is {ceiling}")]
    TooLarge { n: usize, ceiling: usize },
    #[error(transparent)]
    Budget(#[from] BudgetExceeded),
}
