use serde::Serialize;

use super::{MultipartiteWitness, StructureError};
use crate::budget::{Budget, BudgetExceeded};
use crate::graph::{Graph, VertexSet};

/// Largest graph accepted by [`find_any_clique_cutset`].
pub const CLIQUE_CUTSET_CEILING: usize = 24;

/// A clique `K`, a component `C` of `G − K`, and the two sides of the
/// recursion: `G1 = G − C` and `G2 = G[C ∪ K]`, each with its map from
/// local to host indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutsetSplit {
    pub clique: VertexSet,
    pub component: VertexSet,
    #[serde(skip)]
    pub g1: Graph,
    pub g1_map: Vec<usize>,
    #[serde(skip)]
    pub g2: Graph,
    pub g2_map: Vec<usize>,
}

impl CutsetSplit {
    /// Builds the split for `K` and the component `C` of `G − K`.
    pub fn new(g: &Graph, clique: VertexSet, component: VertexSet) -> CutsetSplit {
        let (g1, g1_map) = g
            .induced_subgraph(g.vertices() - component)
            .expect("subset of V(G)");
        let (g2, g2_map) = g
            .induced_subgraph(component | clique)
            .expect("subset of V(G)");
        CutsetSplit {
            clique,
            component,
            g1,
            g1_map,
            g2,
            g2_map,
        }
    }

    pub fn g1_vertices(&self) -> VertexSet {
        self.g1_map.iter().collect()
    }

    pub fn g2_vertices(&self) -> VertexSet {
        self.g2_map.iter().collect()
    }

    /// Checks every invariant of the split against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let v1 = self.g1_vertices();
        let v2 = self.g2_vertices();
        let rest = g.vertices() - self.clique;
        self.clique.is_subset(g.vertices())
            && g.is_clique(self.clique)
            && !self.component.is_empty()
            && self.component.is_subset(rest)
            && g.reachable_within(VertexSet::singleton(self.component.first().unwrap()), rest)
                == self.component
            && v1 & v2 == self.clique
            && v1 | v2 == g.vertices()
            && self.g1.order() < g.order()
            && self.g2.order() < g.order()
            && g.induced_subgraph(v1)
                .is_ok_and(|(h, m)| h == self.g1 && m == self.g1_map)
            && g.induced_subgraph(v2)
                .is_ok_and(|(h, m)| h == self.g2 && m == self.g2_map)
    }
}

/// The split given by the first component `C` of `G − M` and `K = N(C)`.
///
/// `None` when `M` covers the graph. When the claims hold `K` has at most
/// one vertex per part and is therefore a clique; otherwise the error
/// names the offending neighbourhood. For a disconnected `G`, `K` may be
/// empty.
pub fn find_structural_cutset(
    g: &Graph,
    m: &MultipartiteWitness,
) -> Result<Option<CutsetSplit>, StructureError> {
    m.validate(g)?;
    let rest = g.vertices() - m.members();
    let Some(component) = g.components_within(rest).into_iter().next() else {
        return Ok(None);
    };
    let clique = g.neighborhood_of_set(component);
    if !g.is_clique(clique) {
        return Err(StructureError::CutsetNotClique { clique });
    }
    Ok(Some(CutsetSplit::new(g, clique, component)))
}

/// Any clique cutset, by exhaustive search: cliques are tried by size and
/// then lexicographically, the empty clique first.
pub fn find_any_clique_cutset(
    g: &Graph,
    budget: Budget,
) -> Result<Option<CutsetSplit>, StructureError> {
    let n = g.order();
    if n > CLIQUE_CUTSET_CEILING {
        return Err(StructureError::TooLarge {
            n,
            ceiling: CLIQUE_CUTSET_CEILING,
        });
    }
    let mut meter = budget.meter();
    for size in 0..n.saturating_sub(1) {
        // Candidates are consumed in ascending order, so cliques of this
        // size come out lexicographically.
        let mut found = None;
        search(g, size, VertexSet::EMPTY, g.vertices(), &mut |k| {
            meter.tick()?;
            let comps = g.components_within(g.vertices() - k);
            if comps.len() >= 2 {
                found = Some(CutsetSplit::new(g, k, comps[0]));
                return Ok(true);
            }
            Ok(false)
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

fn search(
    g: &Graph,
    size: usize,
    clique: VertexSet,
    cand: VertexSet,
    visit: &mut dyn FnMut(VertexSet) -> Result<bool, BudgetExceeded>,
) -> Result<bool, BudgetExceeded> {
    if clique.len() == size {
        return visit(clique);
    }
    let mut rest = cand;
    while let Some(v) = rest.first() {
        rest.remove(v);
        if search(g, size, clique.with(v), rest & g.adj(v), visit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::BicliqueWitness;
    use crate::structure::grow_maximal_multipartite;

    fn k44_with(extra_n: usize, extra: &[(usize, usize)]) -> (Graph, MultipartiteWitness) {
        let mut edges: Vec<_> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
        edges.extend_from_slice(extra);
        let g = Graph::from_edges(8 + extra_n, &edges).unwrap();
        let seed = BicliqueWitness::new(
            &g,
            VertexSet::prefix(4),
            VertexSet::prefix(8) - VertexSet::prefix(4),
        )
        .unwrap();
        let m = grow_maximal_multipartite(&g, &seed).unwrap();
        (g, m)
    }

    #[test]
    fn structural_examples() {
        let (g, m) = k44_with(1, &[(0, 8)]);
        let s = find_structural_cutset(&g, &m).unwrap().unwrap();
        assert_eq!(s.clique.to_vec(), vec![0]);
        assert_eq!(s.component.to_vec(), vec![8]);
        assert!(s.verify(&g));

        let (g, m) = k44_with(1, &[(0, 8), (4, 8)]);
        let s = find_structural_cutset(&g, &m).unwrap().unwrap();
        assert_eq!(s.clique.to_vec(), vec![0, 4]);
        assert_eq!(s.component.to_vec(), vec![8]);
        assert!(s.verify(&g));
        assert_eq!(s.g2.order(), 3);
        assert_eq!(s.g1.order(), 8);

        let (g, m) = k44_with(0, &[]);
        assert_eq!(find_structural_cutset(&g, &m), Ok(None));
    }

    #[test]
    fn structural_reports_non_clique() {
        let (g, m) = k44_with(2, &[(0, 8), (8, 9), (9, 1)]);
        assert_eq!(
            find_structural_cutset(&g, &m),
            Err(StructureError::CutsetNotClique {
                clique: [0, 1].iter().collect()
            })
        );
    }

    #[test]
    fn any_cutset_examples() {
        let mut edges = vec![];
        for (u, v) in Graph::complete(4).unwrap().edges() {
            edges.push((u, v));
            edges.push((u + 3, v + 3));
        }
        let two_k4 = Graph::from_edges(7, &edges).unwrap();
        let s = find_any_clique_cutset(&two_k4, Budget::UNLIMITED)
            .unwrap()
            .unwrap();
        assert_eq!(s.clique.to_vec(), vec![3]);
        assert!(s.verify(&two_k4));

        assert_eq!(
            find_any_clique_cutset(&Graph::cycle(5).unwrap(), Budget::UNLIMITED),
            Ok(None)
        );

        let p4 = Graph::path(4).unwrap();
        let s = find_any_clique_cutset(&p4, Budget::UNLIMITED)
            .unwrap()
            .unwrap();
        assert_eq!(s.clique.to_vec(), vec![1]);
        assert_eq!(s.component.to_vec(), vec![0]);

        let disconnected = Graph::empty(3).unwrap();
        let s = find_any_clique_cutset(&disconnected, Budget::UNLIMITED)
            .unwrap()
            .unwrap();
        assert!(s.clique.is_empty());
        assert!(s.verify(&disconnected));

        assert_eq!(
            find_any_clique_cutset(&Graph::complete(5).unwrap(), Budget::UNLIMITED),
            Ok(None)
        );
        assert!(matches!(
            find_any_clique_cutset(&Graph::empty(25).unwrap(), Budget::UNLIMITED),
            Err(StructureError::TooLarge { .. })
        ));
    }
}
