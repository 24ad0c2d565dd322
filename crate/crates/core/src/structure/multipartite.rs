use serde::Serialize;

use super::StructureError;
use crate::detect::BicliqueWitness;
use crate::graph::{relation_unchecked, Graph, Relation, VertexSet};

/// Minimum size of a "big" part.
pub const BIG_PART: usize = 4;

/// A vertex set `M` inducing a complete multipartite graph with at least two
/// parts of size at least [`BIG_PART`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultipartiteWitness {
    parts: Vec<VertexSet>,
    big_parts: Vec<usize>,
    members: VertexSet,
}

/// A single-vertex extension of `M` that keeps it complete multipartite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// Anticomplete to this part and complete to every other part.
    JoinPart(usize),
    /// Complete to all of `M`.
    NewPart,
}

impl MultipartiteWitness {
    /// Checks the parts against `g` and builds the witness.
    pub fn new(g: &Graph, parts: Vec<VertexSet>) -> Result<MultipartiteWitness, StructureError> {
        let mut members = VertexSet::EMPTY;
        for (i, &p) in parts.iter().enumerate() {
            if p.is_empty() {
                return Err(StructureError::EmptyPart(i));
            }
            if !p.is_subset(g.vertices()) {
                return Err(StructureError::OutOfRange(p));
            }
            if p.intersects(members) {
                return Err(StructureError::OverlappingParts);
            }
            if !g.is_stable(p) {
                return Err(StructureError::PartNotStable(i));
            }
            members |= p;
        }
        for (i, &p) in parts.iter().enumerate() {
            let others = members - p;
            if let Some(v) = p.iter().find(|&v| !others.is_subset(g.adj(v))) {
                let j = parts
                    .iter()
                    .position(|q| q.intersects(others - g.adj(v)))
                    .unwrap();
                return Err(StructureError::PartsNotComplete(i, j));
            }
        }
        let big_parts: Vec<usize> = (0..parts.len())
            .filter(|&i| parts[i].len() >= BIG_PART)
            .collect();
        if big_parts.len() < 2 {
            return Err(StructureError::TooFewBigParts(big_parts.len()));
        }
        Ok(MultipartiteWitness {
            parts,
            big_parts,
            members,
        })
    }

    pub fn parts(&self) -> &[VertexSet] {
        &self.parts
    }

    pub fn big_parts(&self) -> &[usize] {
        &self.big_parts
    }

    pub fn members(&self) -> VertexSet {
        self.members
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(v))
    }

    /// Re-validates against `g`.
    pub fn validate(&self, g: &Graph) -> Result<(), StructureError> {
        let fresh = MultipartiteWitness::new(g, self.parts.clone())?;
        if fresh != *self {
            return Err(StructureError::StaleMetadata);
        }
        Ok(())
    }

    /// How `v ∉ M` could be added to `M`, if at all.
    pub fn extension_for(&self, g: &Graph, v: usize) -> Option<Extension> {
        if self.members.contains(v) {
            return None;
        }
        let nb = g.adj(v);
        let rel: Vec<Relation> = self
            .parts
            .iter()
            .map(|&p| relation_unchecked(nb, p))
            .collect();
        if rel.iter().all(|&r| r == Relation::Complete) {
            return Some(Extension::NewPart);
        }
        let mut anti = rel
            .iter()
            .enumerate()
            .filter(|(_, &r)| r != Relation::Complete);
        let (i, &r) = anti.next()?;
        if r == Relation::Anticomplete && anti.next().is_none() {
            Some(Extension::JoinPart(i))
        } else {
            None
        }
    }

    /// No single vertex can be added while keeping `M` complete
    /// multipartite.
    pub fn is_inclusion_maximal(&self, g: &Graph) -> bool {
        (g.vertices() - self.members)
            .iter()
            .all(|v| self.extension_for(g, v).is_none())
    }

    fn apply(&mut self, v: usize, ext: Extension) {
        match ext {
            Extension::JoinPart(i) => self.parts[i].insert(v),
            Extension::NewPart => self.parts.push(VertexSet::singleton(v)),
        }
        self.members.insert(v);
    }
}

/// Grows an induced K4,4 (or larger induced biclique with both sides of size
/// at least four) into an inclusion-maximal complete multipartite set.
///
/// Vertices outside `M` are scanned in ascending order, repeatedly, until a
/// full pass adds nothing. Joining an existing part is checked before
/// opening a new singleton part.
pub fn grow_maximal_multipartite(
    g: &Graph,
    seed: &BicliqueWitness,
) -> Result<MultipartiteWitness, StructureError> {
    if !seed.induced
        || !seed.verify(g)
        || seed.side_a.len() < BIG_PART
        || seed.side_b.len() < BIG_PART
    {
        return Err(StructureError::InvalidSeed);
    }
    let mut m = MultipartiteWitness::new(g, vec![seed.side_a, seed.side_b])?;
    loop {
        let mut changed = false;
        for v in g.vertices() - m.members {
            if let Some(ext) = m.extension_for(g, v) {
                m.apply(v, ext);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    m.big_parts = (0..m.parts.len())
        .filter(|&i| m.parts[i].len() >= BIG_PART)
        .collect();
    debug_assert!(m.validate(g).is_ok());
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(g: &Graph) -> BicliqueWitness {
        BicliqueWitness::new(
            g,
            VertexSet::prefix(4),
            VertexSet::prefix(8) - VertexSet::prefix(4),
        )
        .unwrap()
    }

    #[test]
    fn grow_examples() {
        let k44 = Graph::complete_multipartite(&[4, 4]).unwrap();
        let m = grow_maximal_multipartite(&k44, &seed(&k44)).unwrap();
        assert_eq!(m.members(), k44.vertices());
        assert_eq!(m.parts().len(), 2);

        let k441 = Graph::complete_multipartite(&[4, 4, 1]).unwrap();
        let m = grow_maximal_multipartite(&k441, &seed(&k441)).unwrap();
        assert_eq!(m.members(), k441.vertices());
        assert_eq!(m.parts().len(), 3);
        assert_eq!(m.big_parts(), &[0, 1]);

        let mut edges: Vec<_> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
        edges.push((0, 8));
        let pendant = Graph::from_edges(9, &edges).unwrap();
        let m = grow_maximal_multipartite(&pendant, &seed(&pendant)).unwrap();
        assert_eq!(m.members(), VertexSet::prefix(8));
        assert!(m.is_inclusion_maximal(&pendant));
    }

    #[test]
    fn grow_joins_parts() {
        // K5,4,3: seeding with 4+4 must recover all three parts.
        let g = Graph::complete_multipartite(&[5, 4, 3]).unwrap();
        let s = BicliqueWitness::new(
            &g,
            VertexSet::prefix(4),
            VertexSet::prefix(9) - VertexSet::prefix(5),
        )
        .unwrap();
        let m = grow_maximal_multipartite(&g, &s).unwrap();
        assert_eq!(m.members(), g.vertices());
        assert_eq!(m.parts().len(), 3);
        assert_eq!(m.parts()[0], VertexSet::prefix(5));
        assert_eq!(m.big_parts(), &[0, 1]);
    }

    #[test]
    fn invalid_inputs() {
        let k44 = Graph::complete_multipartite(&[4, 4]).unwrap();
        let small = BicliqueWitness::new(
            &k44,
            VertexSet::prefix(3),
            VertexSet::prefix(8) - VertexSet::prefix(4),
        )
        .unwrap();
        assert_eq!(
            grow_maximal_multipartite(&k44, &small),
            Err(StructureError::InvalidSeed)
        );
        assert_eq!(
            MultipartiteWitness::new(&k44, vec![VertexSet::prefix(4)]),
            Err(StructureError::TooFewBigParts(1))
        );
        assert_eq!(
            MultipartiteWitness::new(&k44, vec![VertexSet::prefix(5)]),
            Err(StructureError::PartNotStable(0))
        );
    }
}
