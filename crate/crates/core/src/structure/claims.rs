//! The three structural claims about vertices outside `M`, each with the
//! explicit induced K4+ subdivision that a failure produces.
//!
//! All checks recompute everything from `G` and the parts of `M`; cached
//! metadata is re-validated first.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::{MultipartiteWitness, StructureError};
use crate::detect::{witness_on, Pattern, SubdivisionWitness};
use crate::graph::{relation_unchecked, Graph, Relation, VertexSet};

/// A named participant in a claim's construction: a single vertex or, for
/// the path `P` of claim 3, a vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActorValue {
    Vertex(usize),
    Path(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actor {
    pub role: &'static str,
    pub value: ActorValue,
}

fn vertex(role: &'static str, v: usize) -> Actor {
    Actor {
        role,
        value: ActorValue::Vertex(v),
    }
}

/// A failed claim together with the induced K4+ subdivision built from its
/// actors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimViolation {
    pub claim: u8,
    pub actors: Vec<Actor>,
    pub constructed: SubdivisionWitness,
}

struct ActorMap<'a>(&'a [Actor]);

impl Serialize for ActorMap<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for a in self.0 {
            match &a.value {
                ActorValue::Vertex(v) => map.serialize_entry(a.role, v)?,
                ActorValue::Path(p) => map.serialize_entry(a.role, p)?,
            }
        }
        map.end()
    }
}

impl Serialize for ClaimViolation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("ClaimViolation", 4)?;
        s.serialize_field("claim", &self.claim)?;
        s.serialize_field("actors", &ActorMap(&self.actors))?;
        s.serialize_field("witness_vertices", &self.constructed.vertices)?;
        s.serialize_field("witness_paths", &self.constructed.paths)?;
        s.end()
    }
}

impl ClaimViolation {
    /// The same violation with every vertex `x` renamed to `map[x]`.
    pub fn relabel(&self, map: &[usize]) -> ClaimViolation {
        let actors = self
            .actors
            .iter()
            .map(|a| Actor {
                role: a.role,
                value: match &a.value {
                    ActorValue::Vertex(v) => ActorValue::Vertex(map[*v]),
                    ActorValue::Path(p) => ActorValue::Path(p.iter().map(|&x| map[x]).collect()),
                },
            })
            .collect();
        ClaimViolation {
            claim: self.claim,
            actors,
            constructed: self.constructed.relabel(map),
        }
    }

    /// Vertices named by the actors.
    pub fn actor_vertices(&self) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for a in &self.actors {
            match &a.value {
                ActorValue::Vertex(v) => out.insert(*v),
                ActorValue::Path(p) => out |= p.iter().collect(),
            }
        }
        out
    }
}

/// Result of a claim check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ClaimOutcome {
    Holds,
    Violated(ClaimViolation),
    /// Only from claim 2: `v` could have been added to `M`.
    MaximalityBreach {
        vertex: usize,
    },
}

impl ClaimOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, ClaimOutcome::Holds)
    }

    pub fn violation(&self) -> Option<&ClaimViolation> {
        match self {
            ClaimOutcome::Violated(v) => Some(v),
            _ => None,
        }
    }
}

fn construct(g: &Graph, claim: u8, actors: Vec<Actor>) -> Result<ClaimOutcome, StructureError> {
    let mut set = VertexSet::EMPTY;
    for a in &actors {
        match &a.value {
            ActorValue::Vertex(v) => set.insert(*v),
            ActorValue::Path(p) => set |= p.iter().collect(),
        }
    }
    let constructed = witness_on(g, set, Pattern::K4Plus)
        .ok_or(StructureError::ConstructionFailed { claim, set })?;
    constructed
        .verify(g, Pattern::K4Plus)
        .map_err(|_| StructureError::ConstructionFailed { claim, set })?;
    Ok(ClaimOutcome::Violated(ClaimViolation {
        claim,
        actors,
        constructed,
    }))
}

fn smallest_two(s: VertexSet) -> (usize, usize) {
    let mut it = s.iter();
    (it.next().unwrap(), it.next().unwrap())
}

/// Claim 1: a vertex outside `M` with two neighbours in some part `V_i` is
/// complete or anticomplete to every other part.
///
/// A failure yields `v, a, b ∈ V_i ∩ N(v), c ∈ V_j ∩ N(v), d ∈ V_j − N(v)`,
/// which induce K4+ (branch vertices `v, a, b, c`; the edge `ab` is
/// subdivided by `d`). The lexicographically smallest `(v, a, b, c, d)` is
/// reported.
pub fn check_claim1(g: &Graph, m: &MultipartiteWitness) -> Result<ClaimOutcome, StructureError> {
    m.validate(g)?;
    match claim1_violation(g, m) {
        None => Ok(ClaimOutcome::Holds),
        Some(tuple) => {
            let [v, a, b, c, d] = tuple;
            construct(
                g,
                1,
                vec![
                    vertex("v", v),
                    vertex("a", a),
                    vertex("b", b),
                    vertex("c", c),
                    vertex("d", d),
                ],
            )
        }
    }
}

fn claim1_violation(g: &Graph, m: &MultipartiteWitness) -> Option<[usize; 5]> {
    let parts = m.parts();
    for v in g.vertices() - m.members() {
        let nb = g.adj(v);
        let mut best: Option<[usize; 5]> = None;
        for (i, &vi) in parts.iter().enumerate() {
            if (nb & vi).len() < 2 {
                continue;
            }
            let (a, b) = smallest_two(nb & vi);
            for (j, &vj) in parts.iter().enumerate() {
                if j != i && relation_unchecked(nb, vj) == Relation::Mixed {
                    let t = [
                        v,
                        a,
                        b,
                        (nb & vj).first().unwrap(),
                        (vj - nb).first().unwrap(),
                    ];
                    best = Some(best.map_or(t, |old| old.min(t)));
                }
            }
        }
        if best.is_some() {
            return best;
        }
    }
    None
}

/// Claim 2: every vertex outside `M` has at most one neighbour in each part.
///
/// Requires claim 1. For a vertex `v` with neighbours `a, b` in `V_i`:
/// * two parts anticomplete to `v` give `u, u'` with `v, a, b, u, u'`
///   inducing K4+;
/// * `v` mixed to `V_i` (so the only other part non-adjacent to `v` is a big
///   part `V_j`) gives `c ∈ V_i − N(v)` and `d, d' ∈ V_j` with
///   `v, a, b, c, d, d'` inducing a K4 subdivision on six vertices;
/// * otherwise `M ∪ {v}` is complete multipartite, reported as a
///   maximality breach.
pub fn check_claim2(g: &Graph, m: &MultipartiteWitness) -> Result<ClaimOutcome, StructureError> {
    m.validate(g)?;
    if claim1_violation(g, m).is_some() {
        return Err(StructureError::ClaimPrecondition { claim: 1 });
    }
    let parts = m.parts();
    for v in g.vertices() - m.members() {
        let nb = g.adj(v);
        let Some(i) = parts.iter().position(|&p| (nb & p).len() >= 2) else {
            continue;
        };
        let vi = parts[i];
        let (a, b) = smallest_two(nb & vi);
        let anti: Vec<usize> = (0..parts.len())
            .filter(|&j| j != i && relation_unchecked(nb, parts[j]) == Relation::Anticomplete)
            .collect();
        if anti.len() >= 2 {
            let u = parts[anti[0]].first().unwrap();
            let u2 = parts[anti[1]].first().unwrap();
            return construct(
                g,
                2,
                vec![
                    vertex("v", v),
                    vertex("a", a),
                    vertex("b", b),
                    vertex("u", u),
                    vertex("u'", u2),
                ],
            );
        }
        if relation_unchecked(nb, vi) == Relation::Mixed {
            // Claim 1 forces every part complete to v to be a singleton, so
            // the second big part is the unique anticomplete one.
            let j = match anti.first() {
                Some(&j) if parts[j].len() >= 4 => j,
                _ => return Err(StructureError::ClaimPrecondition { claim: 1 }),
            };
            let c = (vi - nb).first().unwrap();
            let (d, d2) = smallest_two(parts[j]);
            return construct(
                g,
                2,
                vec![
                    vertex("v", v),
                    vertex("a", a),
                    vertex("b", b),
                    vertex("c", c),
                    vertex("d", d),
                    vertex("d'", d2),
                ],
            );
        }
        return Ok(ClaimOutcome::MaximalityBreach { vertex: v });
    }
    Ok(ClaimOutcome::Holds)
}

/// Claim 3: each component of `G − M` has at most one neighbour in each
/// part.
///
/// Requires claim 2. On failure the globally shortest path `P` between two
/// vertices `u, v` of one part `V_i` with interior in `G − M` is chosen
/// (ties: part index, then `u`, then BFS order). With `V_j` the first big
/// part other than `V_i` and `a, b ∈ V_j` non-adjacent to the interior of
/// `P`, the witness is `P + {w, a, b}` for `w ∈ V_i − {u, v}` when
/// `|V_i| ≥ 3`, and `P + {a, c}` for `c` in a third big part otherwise.
pub fn check_claim3(g: &Graph, m: &MultipartiteWitness) -> Result<ClaimOutcome, StructureError> {
    m.validate(g)?;
    let parts = m.parts();
    let rest = g.vertices() - m.members();
    if rest
        .iter()
        .any(|v| parts.iter().any(|&p| (g.adj(v) & p).len() >= 2))
    {
        return Err(StructureError::ClaimPrecondition { claim: 2 });
    }
    let holds = g.components_within(rest).into_iter().all(|c| {
        let nc = g.neighborhood_of_set(c);
        parts.iter().all(|&p| (nc & p).len() <= 1)
    });
    if holds {
        return Ok(ClaimOutcome::Holds);
    }

    let (i, path) =
        shortest_return_path(g, parts, rest).ok_or(StructureError::ConstructionFailed {
            claim: 3,
            set: VertexSet::EMPTY,
        })?;
    let (u, v) = (path[0], *path.last().unwrap());
    let interior: VertexSet = path[1..path.len() - 1].iter().collect();
    let touched = g.neighborhood_of_set(interior);
    let big = m.big_parts();
    let j = *big
        .iter()
        .find(|&&j| j != i)
        .ok_or(StructureError::TooFewBigParts(big.len()))?;
    let free_j = parts[j] - touched;
    if free_j.len() < 2 {
        return Err(StructureError::ConstructionFailed {
            claim: 3,
            set: path.iter().collect(),
        });
    }
    let (a, b) = smallest_two(free_j);
    let p_actor = Actor {
        role: "P",
        value: ActorValue::Path(path.clone()),
    };
    let others = parts[i].without(u).without(v);
    if let Some(w) = others.first() {
        construct(
            g,
            3,
            vec![
                p_actor,
                vertex("u", u),
                vertex("v", v),
                vertex("w", w),
                vertex("a", a),
                vertex("b", b),
            ],
        )
    } else {
        let c = big
            .iter()
            .filter(|&&l| l != i && l != j)
            .find_map(|&l| (parts[l] - touched).first())
            .ok_or(StructureError::ConstructionFailed {
                claim: 3,
                set: path.iter().collect(),
            })?;
        construct(
            g,
            3,
            vec![
                p_actor,
                vertex("u", u),
                vertex("v", v),
                vertex("a", a),
                vertex("c", c),
            ],
        )
    }
}

/// Shortest path with both ends in one part and all interior vertices in
/// `rest`, returned with the part index.
fn shortest_return_path(
    g: &Graph,
    parts: &[VertexSet],
    rest: VertexSet,
) -> Option<(usize, Vec<usize>)> {
    let mut best: Option<(usize, Vec<usize>)> = None;
    for (i, &vi) in parts.iter().enumerate() {
        for u in vi {
            let limit = best.as_ref().map_or(usize::MAX, |(_, p)| p.len());
            if let Some(p) = bfs_return(g, u, vi.without(u), rest, limit) {
                if p.len() < limit {
                    best = Some((i, p));
                }
            }
        }
    }
    best
}

/// BFS from `u` through `rest` until a vertex adjacent to `targets`
/// appears; returns `u, x1, .., xk, t` if shorter than `limit` vertices.
fn bfs_return(
    g: &Graph,
    u: usize,
    targets: VertexSet,
    rest: VertexSet,
    limit: usize,
) -> Option<Vec<usize>> {
    let mut layers: Vec<VertexSet> = vec![g.adj(u) & rest];
    let mut seen = layers[0];
    loop {
        let layer = *layers.last().unwrap();
        if layer.is_empty() || layers.len() + 2 > limit {
            return None;
        }
        if let Some(x) = layer.iter().find(|&x| g.adj(x).intersects(targets)) {
            let t = (g.adj(x) & targets).first().unwrap();
            let mut path = vec![t, x];
            let mut cur = x;
            for prev in layers[..layers.len() - 1].iter().rev() {
                cur = (g.adj(cur) & *prev).first().unwrap();
                path.push(cur);
            }
            path.push(u);
            path.reverse();
            return Some(path);
        }
        let mut next = VertexSet::EMPTY;
        for x in layer {
            next |= g.adj(x);
        }
        let next = (next & rest) - seen;
        seen |= next;
        layers.push(next);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detect::{find_isk4plus_oracle, BicliqueWitness};
    use crate::structure::grow_maximal_multipartite;

    /// K4,4 on 0..8 (A = 0..4, B = 4..8) plus extra vertices and edges.
    fn k44_with(extra_n: usize, extra: &[(usize, usize)]) -> (Graph, MultipartiteWitness) {
        let mut edges: Vec<_> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
        edges.extend_from_slice(extra);
        let g = Graph::from_edges(8 + extra_n, &edges).unwrap();
        let m = MultipartiteWitness::new(
            &g,
            vec![
                VertexSet::prefix(4),
                VertexSet::prefix(8) - VertexSet::prefix(4),
            ],
        )
        .unwrap();
        (g, m)
    }

    fn check_witness(g: &Graph, v: &ClaimViolation) {
        v.constructed.verify(g, Pattern::K4Plus).unwrap();
        let (sub, _) = g.induced_subgraph(v.actor_vertices()).unwrap();
        assert!(find_isk4plus_oracle(&sub).unwrap().is_some());
    }

    #[test]
    fn claim1_examples() {
        let (g, m) = k44_with(1, &[(8, 0), (8, 1), (8, 4)]);
        let out = check_claim1(&g, &m).unwrap();
        let v = out.violation().unwrap();
        assert_eq!(v.constructed.vertices.to_vec(), vec![0, 1, 4, 5, 8]);
        assert_eq!(
            v.actors,
            vec![
                vertex("v", 8),
                vertex("a", 0),
                vertex("b", 1),
                vertex("c", 4),
                vertex("d", 5)
            ]
        );
        check_witness(&g, v);

        let (g, m) = k44_with(1, &[(8, 4), (8, 5), (8, 6), (8, 7)]);
        assert!(check_claim1(&g, &m).unwrap().holds());

        let (g, m) = k44_with(0, &[]);
        assert!(check_claim1(&g, &m).unwrap().holds());
    }

    #[test]
    fn claim2_two_anticomplete_parts() {
        // K4,4,4 + v adjacent to exactly a1, a2.
        let mut edges = vec![];
        for p in 0..3 {
            for q in p + 1..3 {
                for x in 0..4 {
                    for y in 0..4 {
                        edges.push((4 * p + x, 4 * q + y));
                    }
                }
            }
        }
        edges.extend([(12, 0), (12, 1)]);
        let g = Graph::from_edges(13, &edges).unwrap();
        let parts = (0..3)
            .map(|p| VertexSet::prefix(4 * p + 4) - VertexSet::prefix(4 * p))
            .collect();
        let m = MultipartiteWitness::new(&g, parts).unwrap();
        assert!(check_claim1(&g, &m).unwrap().holds());
        let out = check_claim2(&g, &m).unwrap();
        let v = out.violation().unwrap();
        assert_eq!(v.constructed.vertices.to_vec(), vec![0, 1, 4, 8, 12]);
        check_witness(&g, v);
    }

    #[test]
    fn claim2_mixed_part_six_vertex_witness() {
        // K4,4,1: A = 0..4, B = 4..8, singleton 8. v = 9 adjacent to a1, a2
        // and the singleton; anticomplete to B.
        let g0 = Graph::complete_multipartite(&[4, 4, 1]).unwrap();
        let mut edges: Vec<_> = g0.edges().collect();
        edges.extend([(9, 0), (9, 1), (9, 8)]);
        let g = Graph::from_edges(10, &edges).unwrap();
        let m = MultipartiteWitness::new(
            &g,
            vec![
                VertexSet::prefix(4),
                VertexSet::prefix(8) - VertexSet::prefix(4),
                VertexSet::singleton(8),
            ],
        )
        .unwrap();
        assert!(check_claim1(&g, &m).unwrap().holds());
        let out = check_claim2(&g, &m).unwrap();
        let v = out.violation().unwrap();
        assert_eq!(v.constructed.order(), 6);
        assert_eq!(v.constructed.vertices.to_vec(), vec![0, 1, 2, 4, 5, 9]);
        check_witness(&g, v);
    }

    #[test]
    fn claim2_ok_and_breach() {
        let (g, m) = k44_with(1, &[(8, 0), (8, 4)]);
        assert!(check_claim2(&g, &m).unwrap().holds());

        let all: Vec<_> = (0..8).map(|x| (8, x)).collect();
        let (g, m) = k44_with(1, &all);
        assert_eq!(
            check_claim2(&g, &m).unwrap(),
            ClaimOutcome::MaximalityBreach { vertex: 8 }
        );

        let (g, m) = k44_with(1, &[(8, 0), (8, 1), (8, 4)]);
        assert_eq!(
            check_claim2(&g, &m),
            Err(StructureError::ClaimPrecondition { claim: 1 })
        );
    }

    #[test]
    fn claim3_examples() {
        // a1 - x - y - a2 with x = 8, y = 9.
        let (g, m) = k44_with(2, &[(0, 8), (8, 9), (9, 1)]);
        assert!(check_claim2(&g, &m).unwrap().holds());
        let out = check_claim3(&g, &m).unwrap();
        let v = out.violation().unwrap();
        assert_eq!(v.actors[0].value, ActorValue::Path(vec![0, 8, 9, 1]));
        // w = a3, a, b = b1, b2
        assert_eq!(v.constructed.vertices.to_vec(), vec![0, 1, 2, 4, 5, 8, 9]);
        check_witness(&g, v);

        let (g, m) = k44_with(1, &[(0, 8)]);
        assert!(check_claim3(&g, &m).unwrap().holds());
        let (g, m) = k44_with(2, &[(0, 8), (4, 9)]);
        assert!(check_claim3(&g, &m).unwrap().holds());
    }

    #[test]
    fn claim3_small_part_uses_third_big_part() {
        // Parts: {0,1} (small), 2..6, 6..10; path 0 - 10 - 11 - 1.
        let g0 = Graph::complete_multipartite(&[2, 4, 4]).unwrap();
        let mut edges: Vec<_> = g0.edges().collect();
        edges.extend([(0, 10), (10, 11), (11, 1)]);
        let g = Graph::from_edges(12, &edges).unwrap();
        let seed = BicliqueWitness::new(
            &g,
            VertexSet::prefix(6) - VertexSet::prefix(2),
            VertexSet::prefix(10) - VertexSet::prefix(6),
        )
        .unwrap();
        let m = grow_maximal_multipartite(&g, &seed).unwrap();
        assert_eq!(m.parts().len(), 3);
        let out = check_claim3(&g, &m).unwrap();
        let v = out.violation().unwrap();
        assert_eq!(v.constructed.vertices.to_vec(), vec![0, 1, 2, 6, 10, 11]);
        check_witness(&g, v);
    }

    #[test]
    fn violation_json_shape() {
        let (g, m) = k44_with(1, &[(8, 0), (8, 1), (8, 4)]);
        let out = check_claim1(&g, &m).unwrap();
        let json = serde_json::to_string(out.violation().unwrap()).unwrap();
        assert_eq!(
            json,
            r#"{"claim":1,"actors":{"v":8,"a":0,"b":1,"c":4,"d":5},"witness_vertices":[0,1,4,5,8],"witness_paths":[[0,5,1],[0,4],[0,8],[1,4],[1,8],[4,8]]}"#
        );
    }
}
