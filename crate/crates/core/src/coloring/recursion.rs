use serde::Serialize;

use super::{greedy_extend, merge_on_clique, ColoringError};
use crate::budget::{Budget, BudgetExceeded, Meter};
use crate::detect::max_clique_within;
use crate::detect::{
    find_biclique_subgraph, induced_biclique, ramsey_extract_k44, BicliqueWitness, RamseyError,
};
use crate::graph::{Coloring, Graph, VertexSet};
use crate::structure::{
    check_claim1, check_claim2, check_claim3, find_structural_cutset, grow_maximal_multipartite,
    ClaimOutcome, ClaimViolation, StructureError,
};

/// R(4, k) for the values that are known, `k ≤ 5`.
pub fn ramsey_r4(k: usize) -> Option<usize> {
    [1, 1, 4, 9, 18, 25].get(k).copied()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ColoringOptions {
    /// Clique bound; ω(G) when unset.
    pub k: Option<usize>,
    /// Graphs with at most this many vertices get distinct colours; `k`
    /// when unset.
    pub base_size: Option<usize>,
    /// Find `K_{s,s}` with `s = R(4, k)` and extract the induced K4,4 from
    /// it, instead of searching for an induced K4,4 directly.
    pub via_ramsey: bool,
    /// Shared by every search in the run.
    pub budget: Budget,
}

impl Default for ColoringOptions {
    fn default() -> Self {
        ColoringOptions {
            k: None,
            base_size: None,
            via_ramsey: false,
            budget: Budget::UNLIMITED,
        }
    }
}

/// Why the structural branch gave up and the low-degree branch ran
/// instead. Only possible when the graph contains an induced K4+
/// subdivision or the clique bound is wrong.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FallbackReason {
    Claim(ClaimViolation),
    MaximalityBreach {
        vertex: usize,
    },
    CutsetNotClique {
        clique: VertexSet,
    },
    /// A side of the `K_{s,s}` had no stable 4-set; `clique` is a
    /// `(k+1)`-clique when one was found.
    Ramsey {
        clique: Option<VertexSet>,
    },
    Structure {
        message: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    Base,
    ComponentSplit,
    LowDegree {
        vertex: usize,
        degree: usize,
    },
    StructuralSplit {
        clique: VertexSet,
        component: VertexSet,
    },
    MultipartiteDirect {
        parts: Vec<VertexSet>,
    },
    Fallback {
        vertex: usize,
        degree: usize,
        reason: FallbackReason,
    },
    /// The budget ran out while this node was being processed.
    Interrupted,
}

/// One node of the recursion. Vertices are named by their index in the
/// input graph; `palette` is the number of colours used on this node's
/// subgraph (0 when interrupted).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceNode {
    #[serde(flatten)]
    pub step: Step,
    pub n: usize,
    pub palette: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<TraceNode>,
}

pub type ColoringTrace = TraceNode;

impl TraceNode {
    /// Pre-order traversal.
    pub fn nodes(&self) -> Vec<&TraceNode> {
        let mut out = vec![self];
        let mut i = 0;
        while i < out.len() {
            let node = out[i];
            out.splice(i + 1..i + 1, node.children.iter());
            i += 1;
        }
        out
    }

    pub fn fallbacks(&self) -> Vec<&FallbackReason> {
        self.nodes()
            .into_iter()
            .filter_map(|t| match &t.step {
                Step::Fallback { reason, .. } => Some(reason),
                _ => None,
            })
            .collect()
    }

    pub fn count(&self, pred: impl Fn(&Step) -> bool) -> usize {
        self.nodes().into_iter().filter(|t| pred(&t.step)).count()
    }
}

struct Abort {
    limit: u64,
    partial: TraceNode,
}

type Run = Result<(Coloring, TraceNode), Abort>;

struct Ctx {
    k: usize,
    base: usize,
    via_ramsey: bool,
    meter: Meter,
}

fn relabel(s: VertexSet, labels: &[usize]) -> VertexSet {
    s.iter().map(|x| labels[x]).collect()
}

fn compose(map: &[usize], labels: &[usize]) -> Vec<usize> {
    map.iter().map(|&x| labels[x]).collect()
}

fn interrupted(n: usize, e: BudgetExceeded) -> Abort {
    Abort {
        limit: e.limit,
        partial: TraceNode {
            step: Step::Interrupted,
            n,
            palette: 0,
            children: vec![],
        },
    }
}

/// Wraps a child's abort into this node's partial trace.
fn wrap(step: Step, n: usize, mut done: Vec<TraceNode>, a: Abort) -> Abort {
    done.push(a.partial);
    Abort {
        limit: a.limit,
        partial: TraceNode {
            step,
            n,
            palette: 0,
            children: done,
        },
    }
}

enum Structural {
    Done(Coloring, TraceNode),
    Fallback(FallbackReason),
}

impl Ctx {
    fn run(&mut self, g: &Graph, labels: &[usize]) -> Run {
        let n = g.order();
        if n <= self.base {
            let c = Coloring::new((0..n).collect());
            let palette = c.palette_size();
            return Ok((
                c,
                TraceNode {
                    step: Step::Base,
                    n,
                    palette,
                    children: vec![],
                },
            ));
        }

        let comps = g.components();
        if comps.len() > 1 {
            let mut colors = vec![0; n];
            let mut children = Vec::with_capacity(comps.len());
            for comp in comps {
                let (h, map) = g.induced_subgraph(comp).expect("component");
                match self.run(&h, &compose(&map, labels)) {
                    Ok((c, node)) => {
                        for (i, &x) in map.iter().enumerate() {
                            colors[x] = c.color(i);
                        }
                        children.push(node);
                    }
                    Err(a) => return Err(wrap(Step::ComponentSplit, n, children, a)),
                }
            }
            let c = Coloring::new(colors);
            let palette = c.palette_size();
            return Ok((
                c,
                TraceNode {
                    step: Step::ComponentSplit,
                    n,
                    palette,
                    children,
                },
            ));
        }

        match self.structural(g, labels)? {
            Some(Structural::Done(c, node)) => Ok((c, node)),
            Some(Structural::Fallback(reason)) => self.low_degree(g, labels, Some(reason)),
            None => self.low_degree(g, labels, None),
        }
    }

    fn find_k44(
        &mut self,
        g: &Graph,
    ) -> Result<Result<Option<BicliqueWitness>, FallbackReason>, BudgetExceeded> {
        if !self.via_ramsey {
            return Ok(Ok(induced_biclique(g, 4, &mut self.meter)?));
        }
        let s = ramsey_r4(self.k).expect("checked on entry");
        self.meter.tick()?;
        let Some(w) = find_biclique_subgraph(g, s) else {
            return Ok(Ok(None));
        };
        Ok(match ramsey_extract_k44(g, &w, self.k) {
            Ok(Some(k44)) => Ok(Some(k44)),
            Ok(None) => Err(FallbackReason::Ramsey { clique: None }),
            Err(RamseyError::CliqueBoundViolated { clique }) => Err(FallbackReason::Ramsey {
                clique: Some(clique),
            }),
            Err(e) => Err(FallbackReason::Structure {
                message: e.to_string(),
            }),
        })
    }

    /// Steps (c) and (d): `None` when there is no induced K4,4.
    fn structural(&mut self, g: &Graph, labels: &[usize]) -> Result<Option<Structural>, Abort> {
        let n = g.order();
        let seed = match self.find_k44(g).map_err(|e| interrupted(n, e))? {
            Ok(Some(seed)) => seed,
            Ok(None) => return Ok(None),
            Err(reason) => return Ok(Some(Structural::Fallback(reason))),
        };
        let structure_reason = |e: StructureError| FallbackReason::Structure {
            message: e.to_string(),
        };
        let m = match grow_maximal_multipartite(g, &seed) {
            Ok(m) => m,
            Err(e) => return Ok(Some(Structural::Fallback(structure_reason(e)))),
        };

        if m.members() == g.vertices() {
            let mut colors = vec![0; n];
            for (i, part) in m.parts().iter().enumerate() {
                for v in *part {
                    colors[v] = i;
                }
            }
            let c = Coloring::new(colors);
            let node = TraceNode {
                step: Step::MultipartiteDirect {
                    parts: m.parts().iter().map(|&p| relabel(p, labels)).collect(),
                },
                n,
                palette: c.palette_size(),
                children: vec![],
            };
            return Ok(Some(Structural::Done(c, node)));
        }

        for check in [check_claim1, check_claim2, check_claim3] {
            let reason = match check(g, &m) {
                Ok(ClaimOutcome::Holds) => continue,
                Ok(ClaimOutcome::Violated(v)) => FallbackReason::Claim(v.relabel(labels)),
                Ok(ClaimOutcome::MaximalityBreach { vertex }) => FallbackReason::MaximalityBreach {
                    vertex: labels[vertex],
                },
                Err(e) => structure_reason(e),
            };
            return Ok(Some(Structural::Fallback(reason)));
        }

        let split = match find_structural_cutset(g, &m) {
            Ok(Some(split)) => split,
            Ok(None) => unreachable!("M does not cover G"),
            Err(StructureError::CutsetNotClique { clique }) => {
                return Ok(Some(Structural::Fallback(
                    FallbackReason::CutsetNotClique {
                        clique: relabel(clique, labels),
                    },
                )))
            }
            Err(e) => return Ok(Some(Structural::Fallback(structure_reason(e)))),
        };
        let step = Step::StructuralSplit {
            clique: relabel(split.clique, labels),
            component: relabel(split.component, labels),
        };
        let (c1, t1) = self
            .run(&split.g1, &compose(&split.g1_map, labels))
            .map_err(|a| wrap(step.clone(), n, vec![], a))?;
        let (c2, t2) = self
            .run(&split.g2, &compose(&split.g2_map, labels))
            .map_err(|a| wrap(step.clone(), n, vec![t1.clone()], a))?;
        let c = merge_on_clique(&c1, &split.g1_map, &c2, &split.g2_map, split.clique, n)
            .expect("children are proper and meet in a clique");
        let node = TraceNode {
            step,
            n,
            palette: c.palette_size(),
            children: vec![t1, t2],
        };
        Ok(Some(Structural::Done(c, node)))
    }

    fn low_degree(&mut self, g: &Graph, labels: &[usize], reason: Option<FallbackReason>) -> Run {
        let n = g.order();
        let v = g
            .vertices()
            .iter()
            .min_by_key(|&v| (g.adj(v).len(), v))
            .expect("n > base");
        let degree = g.adj(v).len();
        let step = match reason {
            None => Step::LowDegree {
                vertex: labels[v],
                degree,
            },
            Some(reason) => Step::Fallback {
                vertex: labels[v],
                degree,
                reason,
            },
        };
        let (h, map) = g.remove_vertex(v).expect("vertex of g");
        let (c, child) = match self.run(&h, &compose(&map, labels)) {
            Ok(r) => r,
            Err(a) => return Err(wrap(step, n, vec![], a)),
        };
        let mut partial = vec![None; n];
        for (i, &x) in map.iter().enumerate() {
            partial[x] = Some(c.color(i));
        }
        let palette = c.palette_size().max(degree + 1);
        let c = greedy_extend(g, &partial, v, palette).expect("degree below palette");
        let node = TraceNode {
            step,
            n,
            palette: c.palette_size(),
            children: vec![child],
        };
        Ok((c, node))
    }
}

/// Colours `g` following the induction: small graphs directly, components
/// separately, a minimum-degree vertex last when there is no induced
/// K4,4, and otherwise the clique cutset given by the maximal complete
/// multipartite set grown from a K4,4.
///
/// The result is proper on every input. On graphs with no induced K4+
/// subdivision the structural branch never fails; elsewhere a failure is
/// recorded as a [`Step::Fallback`] and the low-degree branch runs.
pub fn color_isk4plus_free(
    g: &Graph,
    opts: ColoringOptions,
) -> Result<(Coloring, ColoringTrace), ColoringError> {
    let mut meter = opts.budget.meter();
    let k = match opts.k {
        Some(k) => k,
        None => match max_clique_within(g, g.vertices(), &mut meter) {
            Ok(c) => c.len(),
            Err(e) => {
                return Err(ColoringError::BudgetExceeded {
                    limit: e.limit,
                    partial: Box::new(interrupted(g.order(), e).partial),
                })
            }
        },
    };
    if opts.via_ramsey && ramsey_r4(k).is_none() {
        return Err(ColoringError::RamseyUnknown { k });
    }
    let mut ctx = Ctx {
        k,
        base: opts.base_size.unwrap_or(k),
        via_ramsey: opts.via_ramsey,
        meter,
    };
    let labels: Vec<usize> = (0..g.order()).collect();
    ctx.run(g, &labels)
        .map_err(|a| ColoringError::BudgetExceeded {
            limit: a.limit,
            partial: Box::new(a.partial),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_proper;
    use crate::detect::chromatic_number;

    fn color(g: &Graph) -> (Coloring, TraceNode) {
        let (c, t) = color_isk4plus_free(g, ColoringOptions::default()).unwrap();
        verify_proper(g, &c).unwrap();
        (c, t)
    }

    #[test]
    fn k44_is_colored_directly() {
        let g = Graph::complete_multipartite(&[4, 4]).unwrap();
        let (c, t) = color(&g);
        assert_eq!(c.palette_size(), 2);
        assert!(matches!(t.step, Step::MultipartiteDirect { .. }));
    }

    #[test]
    fn two_k4_sharing_a_vertex() {
        let mut edges = vec![];
        for (u, v) in Graph::complete(4).unwrap().edges() {
            edges.push((u, v));
            edges.push((u + 3, v + 3));
        }
        let g = Graph::from_edges(7, &edges).unwrap();
        let (c, t) = color(&g);
        assert_eq!(c.palette_size(), 4);
        assert_eq!(chromatic_number(&g, Budget::UNLIMITED), Ok(4));
        assert!(matches!(
            t.step,
            Step::LowDegree {
                vertex: 0,
                degree: 3
            }
        ));
        assert!(t.fallbacks().is_empty());
    }

    #[test]
    fn k44_with_pendant_splits_on_the_attachment() {
        let mut edges: Vec<_> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
        edges.push((0, 8));
        let g = Graph::from_edges(9, &edges).unwrap();
        let (c, t) = color(&g);
        assert_eq!(c.palette_size(), 2);
        assert_eq!(
            t.step,
            Step::StructuralSplit {
                clique: VertexSet::singleton(0),
                component: VertexSet::singleton(8)
            }
        );
        assert!(matches!(
            t.children[0].step,
            Step::MultipartiteDirect { .. }
        ));
        assert_eq!(t.children[1].step, Step::Base);
    }

    #[test]
    fn violation_is_recorded_as_fallback() {
        // K4,4 plus v adjacent to a1, a2, b1: claim 1 fails.
        let mut edges: Vec<_> = (0..4).flat_map(|a| (4..8).map(move |b| (a, b))).collect();
        edges.extend([(8, 0), (8, 1), (8, 4)]);
        let g = Graph::from_edges(9, &edges).unwrap();
        let (_, t) = color(&g);
        match &t.step {
            Step::Fallback {
                reason: FallbackReason::Claim(v),
                ..
            } => assert_eq!(v.claim, 1),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(t.fallbacks().len(), 1);
    }

    #[test]
    fn ramsey_route_matches_on_k44() {
        let g = Graph::complete_multipartite(&[4, 4, 1]).unwrap();
        let opts = ColoringOptions {
            via_ramsey: true,
            ..Default::default()
        };
        // ω = 3 needs K_{9,9}, which is absent: low-degree branch.
        let (c, t) = color_isk4plus_free(&g, opts).unwrap();
        verify_proper(&g, &c).unwrap();
        assert!(t.fallbacks().is_empty());

        let g = Graph::complete_multipartite(&[4, 4]).unwrap();
        let (c, t) = color_isk4plus_free(&g, opts).unwrap();
        assert_eq!(c.palette_size(), 2);
        assert!(matches!(t.step, Step::MultipartiteDirect { .. }));

        let k7 = Graph::complete(7).unwrap();
        assert_eq!(
            color_isk4plus_free(&k7, opts).unwrap_err(),
            ColoringError::RamseyUnknown { k: 7 }
        );
    }

    #[test]
    fn budget_keeps_partial_trace() {
        let g = Graph::complete_multipartite(&[3, 3, 3, 3]).unwrap();
        let opts = ColoringOptions {
            k: Some(4),
            budget: Budget::nodes(3),
            ..Default::default()
        };
        match color_isk4plus_free(&g, opts) {
            Err(ColoringError::BudgetExceeded { limit: 3, partial }) => {
                assert!(partial.nodes().iter().any(|t| t.step == Step::Interrupted));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trace_json_shape() {
        let g = Graph::path(3).unwrap();
        let (_, t) = color(&g);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(
            json,
            r#"{"step":"low_degree","vertex":0,"degree":1,"n":3,"palette":2,"children":[{"step":"base","n":2,"palette":2}]}"#
        );
    }
}
