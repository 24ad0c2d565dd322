use serde::Serialize;
use thiserror::Error;

use super::Pattern;
use crate::graph::{Graph, VertexSet};

/// Branch-vertex pairs in path order: `(0,1) (0,2) (0,3) (1,2) (1,3) (2,3)`.
pub const BRANCH_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Four branch vertices and six induced paths certifying an induced
/// subdivision of K4 in a host graph.
///
/// `branch` is sorted ascending and `paths[p]` runs from
/// `branch[BRANCH_PAIRS[p].0]` to `branch[BRANCH_PAIRS[p].1]`, endpoints
/// included.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionWitness {
    pub branch: [usize; 4],
    pub paths: [Vec<usize>; 6],
    pub vertices: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("branch vertex {0} out of range")]
    OutOfRange(usize),
    #[error("branch vertices are not distinct")]
    RepeatedBranch,
    #[error("path {0} does not join its branch pair")]
    WrongEndpoints(usize),
    #[error("path {path} uses non-edge ({u}, {v})")]
    MissingEdge { path: usize, u: usize, v: usize },
    #[error("vertex {0} is used twice")]
    NotDisjoint(usize),
    #[error("recorded vertex set does not match the paths")]
    VertexSetMismatch,
    #[error("chord ({0}, {1}) inside the witness")]
    Chord(usize, usize),
    #[error("witness has {found} vertices, pattern needs at least {needed}")]
    TooSmall { found: usize, needed: usize },
}

impl SubdivisionWitness {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Builds a normalised witness from branch vertices and paths given in
    /// any orientation and order.
    pub(crate) fn normalized(branch: [usize; 4], paths: Vec<Vec<usize>>) -> SubdivisionWitness {
        let mut sorted = branch;
        sorted.sort_unstable();
        let pos = |v: usize| {
            sorted
                .iter()
                .position(|&b| b == v)
                .expect("branch endpoint")
        };
        let mut out: [Vec<usize>; 6] = Default::default();
        let mut vertices = VertexSet::EMPTY;
        for mut p in paths {
            let (mut i, mut j) = (pos(p[0]), pos(*p.last().unwrap()));
            if i > j {
                p.reverse();
                std::mem::swap(&mut i, &mut j);
            }
            let slot = BRANCH_PAIRS.iter().position(|&q| q == (i, j)).unwrap();
            vertices |= p.iter().collect::<VertexSet>();
            out[slot] = p;
        }
        SubdivisionWitness {
            branch: sorted,
            paths: out,
            vertices,
        }
    }

    /// The same witness with every vertex `x` renamed to `map[x]`.
    pub fn relabel(&self, map: &[usize]) -> SubdivisionWitness {
        let branch = self.branch.map(|b| map[b]);
        let paths = self
            .paths
            .iter()
            .map(|p| p.iter().map(|&x| map[x]).collect())
            .collect();
        SubdivisionWitness::normalized(branch, paths)
    }

    /// Re-checks every invariant against `g` from scratch: endpoints,
    /// edges, internal disjointness, absence of chords and minimum order.
    pub fn verify(&self, g: &Graph, pattern: Pattern) -> Result<(), WitnessError> {
        let n = g.order();
        for &b in &self.branch {
            if b >= n {
                return Err(WitnessError::OutOfRange(b));
            }
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if self.branch[i] == self.branch[j] {
                    return Err(WitnessError::RepeatedBranch);
                }
            }
        }
        let mut seen = vec![false; n];
        for &b in &self.branch {
            seen[b] = true;
        }
        let mut union: Vec<usize> = self.branch.to_vec();
        let mut path_edges = 0usize;
        for (p, path) in self.paths.iter().enumerate() {
            let (i, j) = BRANCH_PAIRS[p];
            if path.len() < 2 || path[0] != self.branch[i] || path[path.len() - 1] != self.branch[j]
            {
                return Err(WitnessError::WrongEndpoints(p));
            }
            for w in path.windows(2) {
                if w[1] >= n {
                    return Err(WitnessError::OutOfRange(w[1]));
                }
                if !g.has_edge(w[0], w[1]) {
                    return Err(WitnessError::MissingEdge {
                        path: p,
                        u: w[0],
                        v: w[1],
                    });
                }
            }
            for &x in &path[1..path.len() - 1] {
                if seen[x] {
                    return Err(WitnessError::NotDisjoint(x));
                }
                seen[x] = true;
                union.push(x);
            }
            path_edges += path.len() - 1;
        }
        if union.iter().collect::<VertexSet>() != self.vertices {
            return Err(WitnessError::VertexSetMismatch);
        }
        // Every path edge is present, so the witness is induced iff G[W]
        // has no further edges.
        let mut present = 0usize;
        for (a, &u) in union.iter().enumerate() {
            for &v in &union[a + 1..] {
                if g.has_edge(u, v) {
                    present += 1;
                    let on_path = self.paths.iter().any(|p| {
                        p.windows(2)
                            .any(|w| (w[0] == u && w[1] == v) || (w[0] == v && w[1] == u))
                    });
                    if !on_path {
                        return Err(WitnessError::Chord(u.min(v), u.max(v)));
                    }
                }
            }
        }
        debug_assert_eq!(present, path_edges);
        let needed = pattern.min_order();
        if union.len() < needed {
            return Err(WitnessError::TooSmall {
                found: union.len(),
                needed,
            });
        }
        Ok(())
    }
}

/// Recognises `G[s]` as a subdivision of K4: exactly four vertices of
/// degree 3, all others of degree 2, and suppressing the degree-2 vertices
/// yields a simple K4 covering every vertex of `s`.
pub(crate) fn k4_subdivision_within(g: &Graph, s: VertexSet) -> Option<SubdivisionWitness> {
    if s.len() < 4 {
        return None;
    }
    let mut branch = [0usize; 4];
    let mut nb = 0;
    for v in s {
        match (g.adj(v) & s).len() {
            2 => {}
            3 => {
                if nb == 4 {
                    return None;
                }
                branch[nb] = v;
                nb += 1;
            }
            _ => return None,
        }
    }
    if nb != 4 {
        return None;
    }
    let branch_set: VertexSet = branch.iter().collect();
    let mut covered = branch_set;
    let mut pairs = 0u8;
    let mut paths = Vec::with_capacity(6);
    for (bi, &b) in branch.iter().enumerate() {
        for first in g.adj(b) & s {
            let mut path = vec![b];
            let (mut prev, mut cur) = (b, first);
            while !branch_set.contains(cur) {
                path.push(cur);
                let next = (g.adj(cur) & s).without(prev);
                debug_assert_eq!(next.len(), 1);
                prev = cur;
                cur = next.first()?;
            }
            path.push(cur);
            let bj = branch.iter().position(|&x| x == cur).unwrap();
            if bj == bi {
                return None;
            }
            if bi < bj {
                let bit = 1u8 << BRANCH_PAIRS.iter().position(|&q| q == (bi, bj)).unwrap();
                if pairs & bit != 0 {
                    return None;
                }
                pairs |= bit;
                covered |= path.iter().collect::<VertexSet>();
                paths.push(path);
            }
        }
    }
    if pairs != 0b11_1111 || covered != s {
        return None;
    }
    Some(SubdivisionWitness::normalized(branch, paths))
}

/// Whether the whole graph is a subdivision of K4 (K4 itself included).
pub fn is_k4_subdivision(g: &Graph) -> bool {
    k4_subdivision_within(g, g.vertices()).is_some()
}

/// Whether the whole graph is a subdivision of K4+, i.e. a subdivision of
/// K4 on at least five vertices.
pub fn is_k4plus_subdivision(g: &Graph) -> bool {
    g.order() >= 5 && is_k4_subdivision(g)
}

/// Witness for `G[s]` if it is a subdivision of the pattern.
pub fn witness_on(g: &Graph, s: VertexSet, pattern: Pattern) -> Option<SubdivisionWitness> {
    if s.len() < pattern.min_order() || !s.is_subset(g.vertices()) {
        return None;
    }
    k4_subdivision_within(g, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4plus() -> Graph {
        Graph::from_edges(5, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]).unwrap()
    }

    #[test]
    fn recognizer_examples() {
        let k4 = Graph::complete(4).unwrap();
        assert!(is_k4_subdivision(&k4));
        assert!(!is_k4plus_subdivision(&k4));
        assert!(is_k4_subdivision(&k4plus()));
        assert!(is_k4plus_subdivision(&k4plus()));
        assert!(!is_k4_subdivision(&Graph::cycle(5).unwrap()));
        // K4 with the disjoint edges 01 and 23 each subdivided once.
        let g = Graph::from_edges(
            6,
            &[
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (0, 4),
                (4, 1),
                (2, 5),
                (5, 3),
            ],
        )
        .unwrap();
        assert!(is_k4plus_subdivision(&g));
    }

    #[test]
    fn recognizer_rejects_near_misses() {
        // K4 plus a disjoint triangle: degrees fit but not connected.
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(4, 5), (5, 6), (4, 6)]);
        assert!(!is_k4_subdivision(&Graph::from_edges(7, &edges).unwrap()));
        // Theta graph: two degree-3 vertices only.
        let theta =
            Graph::from_edges(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)]).unwrap();
        assert!(!is_k4_subdivision(&theta));
        // K3,3 is cubic with six branch vertices.
        assert!(!is_k4_subdivision(
            &Graph::complete_multipartite(&[3, 3]).unwrap()
        ));
        // K5: every degree is 4.
        assert!(!is_k4_subdivision(&Graph::complete(5).unwrap()));
        // Four degree-3 vertices joined by a double chain: K4 minus an edge
        // with a doubled path between 0 and 1.
        let double = Graph::from_edges(
            6,
            &[
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (0, 4),
                (4, 1),
                (0, 5),
                (5, 1),
            ],
        )
        .unwrap();
        assert!(!is_k4_subdivision(&double));
    }

    #[test]
    fn witness_normalization_and_verify() {
        let g = k4plus();
        let w = witness_on(&g, g.vertices(), Pattern::K4Plus).unwrap();
        assert_eq!(w.branch, [0, 1, 2, 3]);
        assert_eq!(w.paths[0], vec![0, 4, 1]);
        assert_eq!(w.paths[5], vec![2, 3]);
        assert_eq!(w.verify(&g, Pattern::K4Plus), Ok(()));

        let mut bad = w.clone();
        bad.paths[0] = vec![0, 1];
        assert!(matches!(
            bad.verify(&g, Pattern::K4Plus),
            Err(WitnessError::MissingEdge { .. })
        ));

        let k4 = Graph::complete(4).unwrap();
        let w4 = witness_on(&k4, k4.vertices(), Pattern::K4).unwrap();
        assert_eq!(w4.verify(&k4, Pattern::K4), Ok(()));
        assert_eq!(
            w4.verify(&k4, Pattern::K4Plus),
            Err(WitnessError::TooSmall {
                found: 4,
                needed: 5
            })
        );
        assert!(witness_on(&k4, k4.vertices(), Pattern::K4Plus).is_none());
    }

    #[test]
    fn verify_detects_chords() {
        // Add the chord 0-1 to K4+: vertices {0..4} no longer induce K4+.
        let g = Graph::from_edges(
            5,
            &[
                (0, 1),
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (0, 4),
                (1, 4),
            ],
        )
        .unwrap();
        let w = witness_on(&k4plus(), k4plus().vertices(), Pattern::K4Plus).unwrap();
        assert_eq!(
            w.verify(&g, Pattern::K4Plus),
            Err(WitnessError::Chord(0, 1))
        );
    }
}
