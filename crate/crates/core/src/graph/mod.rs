//! Small immutable simple graphs with bitset adjacency.
//!
//! Every graph holds at most [`MAX_VERTICES`] vertices, indexed `0..n`.
//! Operations that "delete" vertices return a fresh graph together with an
//! index map from the new vertex indices back to the parent.

mod graph6;
mod set;
mod text;

use serde::Serialize;
use thiserror::Error;

pub use graph6::{parse_graph6, write_graph6, Graph6Error};
pub use set::{Iter as VertexIter, VertexSet, MAX_VERTICES};
pub use text::{parse_dimacs, parse_edge_list, read_graph6_lines, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has {0} vertices, capacity is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("adjacency is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("vertex set {set} is not contained in 0..{n}")]
    SetOutOfRange { set: VertexSet, n: usize },
    #[error("vertex {0} belongs to the set it is compared against")]
    VertexInSet(usize),
    #[error("empty vertex set")]
    EmptySet,
}

/// How a vertex relates to a set of vertices not containing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Complete,
    Anticomplete,
    Mixed,
}

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    label: Option<String>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let edges: Vec<_> = self.edges().collect();
        let mut d = f.debug_struct("Graph");
        d.field("n", &self.n).field("edges", &edges);
        if let Some(label) = &self.label {
            d.field("label", label);
        }
        d.finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph {
            n,
            adj: vec![VertexSet::EMPTY; n],
            label: None,
        })
    }

    /// Builds a graph from an edge list. Duplicate edges are collapsed.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::Loop(u));
            }
            g.adj[u].insert(v);
            g.adj[v].insert(u);
        }
        g.debug_check();
        Ok(g)
    }

    /// Builds a graph from per-vertex neighbourhoods, validating symmetry,
    /// irreflexivity and range.
    pub fn from_adjacency(adj: Vec<VertexSet>) -> Result<Graph, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = VertexSet::prefix(n);
        for (v, &nb) in adj.iter().enumerate() {
            if !nb.is_subset(all) {
                return Err(GraphError::SetOutOfRange { set: nb, n });
            }
            if nb.contains(v) {
                return Err(GraphError::Loop(v));
            }
            for u in nb {
                if !adj[u].contains(v) {
                    return Err(GraphError::Asymmetric(v, u));
                }
            }
        }
        Ok(Graph {
            n,
            adj,
            label: None,
        })
    }

    /// Adjacency rows are trusted; only checked in debug builds.
    pub(crate) fn from_adjacency_unchecked(adj: Vec<VertexSet>) -> Graph {
        let g = Graph {
            n: adj.len(),
            adj,
            label: None,
        };
        g.debug_check();
        g
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = VertexSet::prefix(n);
        Ok(Graph::from_adjacency_unchecked(
            (0..n).map(|v| all.without(v)).collect(),
        ))
    }

    /// Complete multipartite graph with the given part sizes; parts occupy
    /// consecutive index ranges in order.
    pub fn complete_multipartite(sizes: &[usize]) -> Result<Graph, GraphError> {
        let n: usize = sizes.iter().sum();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let all = VertexSet::prefix(n);
        let mut adj = Vec::with_capacity(n);
        let mut start = 0;
        for &s in sizes {
            let part = VertexSet::prefix(start + s) - VertexSet::prefix(start);
            for _ in 0..s {
                adj.push(all - part);
            }
            start += s;
        }
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges)
    }

    #[must_use]
    pub fn with_label(mut self, label: impl Into<String>) -> Graph {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.n
    }

    /// All vertices, `{0, .., n-1}`.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::prefix(self.n)
    }

    /// Neighbourhood of `v`. Panics if `v` is out of range; see
    /// [`Graph::neighbors`] for the checked variant.
    #[inline]
    pub fn adj(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet, GraphError> {
        self.check_vertex(v)?;
        Ok(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> Result<usize, GraphError> {
        Ok(self.neighbors(v)?.len())
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            (self.adj[u] - VertexSet::prefix(u + 1))
                .iter()
                .map(move |v| (u, v))
        })
    }

    /// Union of the neighbourhoods of `s`, minus `s` itself.
    pub fn neighborhood_of_set(&self, s: VertexSet) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in s {
            out |= self.adj[v];
        }
        out - s
    }

    /// Vertices adjacent to every member of `s`.
    pub fn common_neighbors(&self, s: VertexSet) -> VertexSet {
        let mut out = self.vertices();
        for v in s {
            out &= self.adj[v];
        }
        out
    }

    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter().all(|v| (s.without(v)).is_subset(self.adj[v]))
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(s))
    }

    /// Subgraph induced by `s`, with `map[new] = old`. New indices follow
    /// the ascending order of `s`.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<(Graph, Vec<usize>), GraphError> {
        if !s.is_subset(self.vertices()) {
            return Err(GraphError::SetOutOfRange { set: s, n: self.n });
        }
        let map = s.to_vec();
        let mut index = [usize::MAX; MAX_VERTICES];
        for (i, &v) in map.iter().enumerate() {
            index[v] = i;
        }
        let adj = map
            .iter()
            .map(|&v| (self.adj[v] & s).iter().map(|u| index[u]).collect())
            .collect();
        Ok((Graph::from_adjacency_unchecked(adj), map))
    }

    /// `G - v`, with index map.
    pub fn remove_vertex(&self, v: usize) -> Result<(Graph, Vec<usize>), GraphError> {
        self.check_vertex(v)?;
        self.induced_subgraph(self.vertices().without(v))
    }

    /// Vertices reachable from `start` using only vertices of `within`.
    pub fn reachable_within(&self, start: VertexSet, within: VertexSet) -> VertexSet {
        let mut seen = start & within;
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next |= self.adj[v];
            }
            frontier = (next & within) - seen;
            seen |= frontier;
        }
        seen
    }

    /// Connected components of `G[s]`, ordered by smallest member.
    pub fn components_within(&self, s: VertexSet) -> Vec<VertexSet> {
        let mut rest = s;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.reachable_within(VertexSet::singleton(v), rest);
            rest -= comp;
            out.push(comp);
        }
        out
    }

    pub fn components(&self) -> Vec<VertexSet> {
        self.components_within(self.vertices())
    }

    /// The null graph and the single vertex both count as connected.
    pub fn is_connected(&self) -> bool {
        match self.vertices().first() {
            None => true,
            Some(v) => {
                self.reachable_within(VertexSet::singleton(v), self.vertices()) == self.vertices()
            }
        }
    }

    /// Whether `v` is complete, anticomplete or mixed to `s`.
    pub fn relation_to_set(&self, v: usize, s: VertexSet) -> Result<Relation, GraphError> {
        self.check_vertex(v)?;
        if !s.is_subset(self.vertices()) {
            return Err(GraphError::SetOutOfRange { set: s, n: self.n });
        }
        if s.is_empty() {
            return Err(GraphError::EmptySet);
        }
        if s.contains(v) {
            return Err(GraphError::VertexInSet(v));
        }
        Ok(relation_unchecked(self.adj[v], s))
    }

    pub fn to_graph6(&self) -> String {
        write_graph6(self)
    }

    pub fn from_graph6(record: &str) -> Result<Graph, Graph6Error> {
        parse_graph6(record.as_bytes())
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.n {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    #[inline]
    fn debug_check(&self) {
        if cfg!(debug_assertions) {
            let all = self.vertices();
            for (v, &nb) in self.adj.iter().enumerate() {
                assert!(nb.is_subset(all), "adjacency of {v} out of range");
                assert!(!nb.contains(v), "loop at {v}");
                for u in nb {
                    assert!(self.adj[u].contains(v), "asymmetric at ({v},{u})");
                }
            }
        }
    }
}

#[inline]
pub(crate) fn relation_unchecked(nbrs: VertexSet, s: VertexSet) -> Relation {
    let hit = nbrs & s;
    if hit == s {
        Relation::Complete
    } else if hit.is_empty() {
        Relation::Anticomplete
    } else {
        Relation::Mixed
    }
}

/// A proper-or-not assignment of colours `0..` to every vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coloring {
    colors: Vec<usize>,
    palette_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Coloring {
        let palette_size = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring {
            colors,
            palette_size,
        }
    }

    #[inline]
    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// `1 + max colour`, or 0 for the empty colouring.
    pub fn palette_size(&self) -> usize {
        self.palette_size
    }

    pub fn into_colors(self) -> Vec<usize> {
        self.colors
    }
}
