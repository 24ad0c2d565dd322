//! Executable machinery around graphs with no induced subdivision of K4+.
//!
//! * [`graph`]: bitset graphs, graph6 / edge-list / DIMACS I/O.
//! * [`detect`]: induced K4 / K4+ subdivision search with a brute-force
//!   oracle, biclique search, stable-set extraction, exact ω and χ.
//! * [`structure`]: the maximal complete multipartite set `M`, the three
//!   structural claims with constructive violation witnesses, and clique
//!   cutsets.
//! * [`coloring`]: the recursive colouring algorithm and its primitives.
//! * [`harness`]: enumeration and sampling campaigns producing reports.

pub mod budget;
pub mod coloring;
pub mod detect;
pub mod graph;
pub mod harness;
pub mod structure;

pub use budget::{Budget, BudgetExceeded, SearchOutcome};
pub use graph::{Coloring, Graph, GraphError, Relation, VertexSet};
