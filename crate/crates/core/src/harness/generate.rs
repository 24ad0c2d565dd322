//! Graph sources: exhaustive labeled enumeration and seeded random models.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::HarnessError;
use crate::graph::{Graph, VertexSet};

/// Largest `n` accepted by [`enumerate_labeled`].
pub const LABELED_MAX_N: usize = 7;

/// Vertex pairs in graph6 bit order: `(0,1), (0,2), (1,2), (0,3), ...`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect()
}

/// All labeled graphs on `n` vertices, ordered by edge bitmask; bit `i` of
/// the mask is the `i`-th pair in graph6 order.
pub fn enumerate_labeled(n: usize) -> Result<LabeledGraphs, HarnessError> {
    if n > LABELED_MAX_N {
        return Err(HarnessError::LabeledTooLarge { n });
    }
    let pairs = pairs(n);
    Ok(LabeledGraphs {
        n,
        end: 1u64 << pairs.len(),
        pairs,
        next: 0,
    })
}

#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    /// The graph with edge bitmask `mask`.
    pub fn graph(&self, mask: u64) -> Graph {
        let mut adj = vec![VertexSet::EMPTY; self.n];
        for (i, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
        Graph::from_adjacency_unchecked(adj)
    }

    /// Number of graphs in the whole enumeration.
    pub fn total(&self) -> u64 {
        self.end
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let g = self.graph(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

/// Edge probabilities used when a model is given none.
pub const DEFAULT_PROBABILITIES: [f64; 3] = [0.2, 0.5, 0.8];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum RandomModel {
    /// Independent edges with probability `p`.
    Gnp { p: Option<f64> },
    /// Pairs visited in random order, each kept with probability `p`
    /// unless it would close a triangle.
    TriangleFree { p: Option<f64> },
    /// A complete multipartite core with at least two parts of size at
    /// least four, plus components hanging off it, mostly through clique
    /// interfaces.
    Planted,
    /// `G(n, p)` with an induced K4,4 forced on eight random vertices.
    PlantedK44 { p: Option<f64> },
}

impl RandomModel {
    /// Smallest order the model can produce.
    pub fn min_order(self) -> usize {
        match self {
            RandomModel::Gnp { .. } | RandomModel::TriangleFree { .. } => 0,
            RandomModel::Planted | RandomModel::PlantedK44 { .. } => 8,
        }
    }
}

/// A reproducible, endless stream of random graphs: the sequence depends
/// only on the model, the order range and the seed.
#[derive(Debug, Clone)]
pub struct RandomGraphs {
    rng: ChaCha8Rng,
    model: RandomModel,
    min_n: usize,
    max_n: usize,
}

impl RandomGraphs {
    pub fn new(
        model: RandomModel,
        min_n: usize,
        max_n: usize,
        seed: u64,
    ) -> Result<RandomGraphs, HarnessError> {
        if min_n > max_n || min_n < model.min_order() || max_n > crate::graph::MAX_VERTICES {
            return Err(HarnessError::InvalidConfig(format!(
                "order range {min_n}..={max_n} is not valid for {model:?}"
            )));
        }
        for p in [model_p(model)].into_iter().flatten() {
            if !(0.0..=1.0).contains(&p) {
                return Err(HarnessError::InvalidConfig(format!(
                    "edge probability {p} outside [0, 1]"
                )));
            }
        }
        Ok(RandomGraphs {
            rng: ChaCha8Rng::seed_from_u64(seed),
            model,
            min_n,
            max_n,
        })
    }
}

fn model_p(model: RandomModel) -> Option<f64> {
    match model {
        RandomModel::Gnp { p }
        | RandomModel::TriangleFree { p }
        | RandomModel::PlantedK44 { p } => p,
        RandomModel::Planted => None,
    }
}

impl Iterator for RandomGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let rng = &mut self.rng;
        let n = rng.gen_range(self.min_n..=self.max_n);
        let p = model_p(self.model).unwrap_or_else(|| *DEFAULT_PROBABILITIES.choose(rng).unwrap());
        Some(match self.model {
            RandomModel::Gnp { .. } => gnp(rng, n, p),
            RandomModel::TriangleFree { .. } => triangle_free(rng, n, p),
            RandomModel::Planted => planted(rng, n),
            RandomModel::PlantedK44 { .. } => planted_k44(rng, n, p),
        })
    }
}

fn from_adj(adj: Vec<VertexSet>) -> Graph {
    Graph::from_adjacency_unchecked(adj)
}

fn add(adj: &mut [VertexSet], u: usize, v: usize) {
    adj[u].insert(v);
    adj[v].insert(u);
}

pub fn gnp<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut adj = vec![VertexSet::EMPTY; n];
    for (u, v) in pairs(n) {
        if rng.gen_bool(p) {
            add(&mut adj, u, v);
        }
    }
    from_adj(adj)
}

pub fn triangle_free<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut adj = vec![VertexSet::EMPTY; n];
    let mut order = pairs(n);
    order.shuffle(rng);
    for (u, v) in order {
        if rng.gen_bool(p) && !adj[u].intersects(adj[v]) {
            add(&mut adj, u, v);
        }
    }
    from_adj(adj)
}

fn permuted<R: Rng>(rng: &mut R, adj: &[VertexSet]) -> Graph {
    let n = adj.len();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut out = vec![VertexSet::EMPTY; n];
    for u in 0..n {
        for v in adj[u] {
            out[perm[u]].insert(perm[v]);
        }
    }
    from_adj(out)
}

pub fn planted_k44<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut adj = vec![VertexSet::EMPTY; n];
    for (u, v) in pairs(n) {
        // Vertices 0..4 and 4..8 become the two sides.
        let forced = match (u < 8, v < 8) {
            (true, true) => Some((u < 4) != (v < 4)),
            _ => None,
        };
        if forced.unwrap_or_else(|| rng.gen_bool(p)) {
            add(&mut adj, u, v);
        }
    }
    permuted(rng, &adj)
}

/// See [`RandomModel::Planted`]. The core takes 8 to `n` vertices; the
/// rest is split into components, each a random tree (sometimes with one
/// extra edge) attached to the core and occasionally to an earlier
/// component. One attachment in five uses an interface that is not a
/// clique.
pub fn planted<R: Rng>(rng: &mut R, n: usize) -> Graph {
    assert!(n >= 8, "planted graphs need at least 8 vertices");
    let mut sizes = vec![4 + usize::from(n >= 9 && rng.gen_bool(0.3)), 4];
    let mut used: usize = sizes.iter().sum();
    while used < n && rng.gen_bool(0.4) {
        let s = rng.gen_range(1..=(n - used).min(4));
        sizes.push(s);
        used += s;
    }
    let core = Graph::complete_multipartite(&sizes).unwrap();
    let mut adj: Vec<VertexSet> = (0..core.order())
        .map(|v| core.adj(v))
        .chain(std::iter::repeat(VertexSet::EMPTY).take(n - used))
        .collect();
    let mut part_of = Vec::with_capacity(used);
    for (i, &s) in sizes.iter().enumerate() {
        part_of.extend(std::iter::repeat(i).take(s));
    }
    let parts: Vec<VertexSet> = (0..sizes.len())
        .map(|i| (0..used).filter(|&v| part_of[v] == i).collect())
        .collect();

    let mut next = used;
    while next < n {
        let size = rng.gen_range(1..=(n - next).min(4));
        let comp: Vec<usize> = (next..next + size).collect();
        for i in 1..size {
            let j = rng.gen_range(0..i);
            add(&mut adj, comp[i], comp[j]);
        }
        if size >= 3 && rng.gen_bool(0.2) {
            let (a, b) = (comp[0], comp[size - 1]);
            add(&mut adj, a, b);
        }
        // Interface: one vertex from each chosen part is a clique.
        let mut k = Vec::new();
        for p in &parts {
            if rng.gen_bool(0.4) {
                k.push(*p.to_vec().choose(rng).unwrap());
            }
        }
        if k.is_empty() {
            k.push(rng.gen_range(0..used));
        }
        if rng.gen_bool(0.2) {
            // Break the clique with a second vertex of some part.
            let v = k[0];
            if let Some(&w) = parts[part_of[v]].without(v).to_vec().choose(rng) {
                k.push(w);
            }
        }
        for &x in &k {
            let c = *comp.choose(rng).unwrap();
            add(&mut adj, x, c);
        }
        if next > used && rng.gen_bool(0.15) {
            let earlier = rng.gen_range(used..next);
            let c = *comp.choose(rng).unwrap();
            add(&mut adj, earlier, c);
        }
        next += size;
    }
    permuted(rng, &adj)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{find_induced_biclique, has_triangle};
    use crate::Budget;

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_labeled(3).unwrap().count(), 8);
        assert_eq!(enumerate_labeled(4).unwrap().count(), 64);
        assert_eq!(enumerate_labeled(7).unwrap().total(), 1 << 21);
        assert_eq!(enumerate_labeled(0).unwrap().count(), 1);
        assert_eq!(
            enumerate_labeled(8).unwrap_err(),
            HarnessError::LabeledTooLarge { n: 8 }
        );
    }

    #[test]
    fn labeled_order_matches_graph6_bits() {
        let all: Vec<Graph> = enumerate_labeled(3).unwrap().collect();
        assert_eq!(all[1].edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(all[2].edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(all[4].edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(all[7], Graph::complete(3).unwrap());
        // Mask order and graph6 order agree: "B" followed by the mask bits.
        assert_eq!(all[1].to_graph6(), "B_");
    }

    #[test]
    fn random_streams_are_reproducible() {
        let a: Vec<Graph> = RandomGraphs::new(RandomModel::Gnp { p: None }, 5, 12, 7)
            .unwrap()
            .take(50)
            .collect();
        let b: Vec<Graph> = RandomGraphs::new(RandomModel::Gnp { p: None }, 5, 12, 7)
            .unwrap()
            .take(50)
            .collect();
        assert_eq!(a, b);
        let c: Vec<Graph> = RandomGraphs::new(RandomModel::Gnp { p: None }, 5, 12, 8)
            .unwrap()
            .take(50)
            .collect();
        assert_ne!(a, c);
    }

    #[test]
    fn models_have_their_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let n = rng.gen_range(8..=14);
            assert!(!has_triangle(&triangle_free(&mut rng, n, 0.6)));
            let g = planted_k44(&mut rng, n, 0.5);
            assert_eq!(g.order(), n);
            assert!(find_induced_biclique(&g, 4, Budget::UNLIMITED).is_found());
            let g = planted(&mut rng, n);
            assert_eq!(g.order(), n);
            assert!(find_induced_biclique(&g, 4, Budget::UNLIMITED).is_found());
        }
    }

    #[test]
    fn invalid_ranges() {
        assert!(RandomGraphs::new(RandomModel::Planted, 5, 10, 0).is_err());
        assert!(RandomGraphs::new(RandomModel::Gnp { p: Some(1.5) }, 5, 10, 0).is_err());
        assert!(RandomGraphs::new(RandomModel::Gnp { p: None }, 10, 5, 0).is_err());
    }
}
