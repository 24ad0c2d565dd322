use serde::Serialize;
use thiserror::Error;

use super::clique::max_clique_within;
use crate::budget::{Budget, BudgetExceeded, Meter, SearchOutcome};
use crate::graph::{Graph, VertexSet};

/// Two disjoint vertex sets with every cross pair adjacent. `induced` is set
/// when both sides are stable in the host graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BicliqueWitness {
    pub side_a: VertexSet,
    pub side_b: VertexSet,
    pub induced: bool,
}

impl BicliqueWitness {
    /// Validates the pair against `g` and computes the `induced` flag.
    pub fn new(g: &Graph, side_a: VertexSet, side_b: VertexSet) -> Option<BicliqueWitness> {
        let all = g.vertices();
        if side_a.is_empty()
            || side_b.is_empty()
            || side_a.intersects(side_b)
            || !side_a.is_subset(all)
            || !side_b.is_subset(all)
            || !side_a.iter().all(|a| side_b.is_subset(g.adj(a)))
        {
            return None;
        }
        Some(BicliqueWitness {
            side_a,
            side_b,
            induced: g.is_stable(side_a) && g.is_stable(side_b),
        })
    }

    /// Re-checks the invariants, including the `induced` flag.
    pub fn verify(&self, g: &Graph) -> bool {
        BicliqueWitness::new(g, self.side_a, self.side_b).is_some_and(|w| w.induced == self.induced)
    }

    pub fn vertices(&self) -> VertexSet {
        self.side_a | self.side_b
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RamseyError {
    #[error("sides do not form a complete bipartite subgraph")]
    InvalidWitness,
    #[error("clique {clique} exceeds the clique bound")]
    CliqueBoundViolated { clique: VertexSet },
}

/// A (not necessarily induced) `K_{s,s}` subgraph. Side A is the
/// lexicographically first `s`-set with at least `s` common neighbours, side
/// B the `s` smallest of those. `s = 0` yields `None`.
pub fn find_biclique_subgraph(g: &Graph, s: usize) -> Option<BicliqueWitness> {
    fn rec(
        g: &Graph,
        s: usize,
        a: VertexSet,
        common: VertexSet,
        start: usize,
    ) -> Option<(VertexSet, VertexSet)> {
        if a.len() == s {
            return common.take_smallest(s).map(|b| (a, b));
        }
        for v in start..g.order() {
            let c = common & g.adj(v);
            if c.len() < s {
                continue;
            }
            if let Some(found) = rec(g, s, a.with(v), c, v + 1) {
                return Some(found);
            }
        }
        None
    }
    if s == 0 {
        return None;
    }
    let (a, b) = rec(g, s, VertexSet::EMPTY, g.vertices(), 0)?;
    BicliqueWitness::new(g, a, b)
}

/// Lexicographically smallest stable `k`-subset of `within`.
pub(crate) fn stable_subset(
    g: &Graph,
    within: VertexSet,
    k: usize,
    meter: &mut Meter,
) -> Result<Option<VertexSet>, BudgetExceeded> {
    fn rec(
        g: &Graph,
        chosen: VertexSet,
        cand: VertexSet,
        k: usize,
        meter: &mut Meter,
    ) -> Result<Option<VertexSet>, BudgetExceeded> {
        meter.tick()?;
        if chosen.len() == k {
            return Ok(Some(chosen));
        }
        if chosen.len() + cand.len() < k {
            return Ok(None);
        }
        let mut rest = cand;
        while let Some(v) = rest.first() {
            rest.remove(v);
            if chosen.len() + 1 + rest.len() < k {
                break;
            }
            if let Some(s) = rec(g, chosen.with(v), rest - g.adj(v), k, meter)? {
                return Ok(Some(s));
            }
        }
        Ok(None)
    }
    rec(g, VertexSet::EMPTY, within, k, meter)
}

/// An induced `K_{s,s}`: two disjoint stable `s`-sets, complete to each
/// other. Side A is the lexicographically first stable set that works and
/// contains the smallest vertex of the biclique.
pub fn find_induced_biclique(
    g: &Graph,
    s: usize,
    budget: Budget,
) -> SearchOutcome<BicliqueWitness> {
    let mut meter = budget.meter();
    induced_biclique(g, s, &mut meter).into()
}

pub(crate) fn induced_biclique(
    g: &Graph,
    s: usize,
    meter: &mut Meter,
) -> Result<Option<BicliqueWitness>, BudgetExceeded> {
    fn rec(
        g: &Graph,
        s: usize,
        a: VertexSet,
        cand: VertexSet,
        common: VertexSet,
        meter: &mut Meter,
    ) -> Result<Option<(VertexSet, VertexSet)>, BudgetExceeded> {
        meter.tick()?;
        if a.len() == s {
            // B lives above min(A) so each biclique is met once.
            let above = common - VertexSet::prefix(a.first().unwrap() + 1);
            return Ok(stable_subset(g, above, s, meter)?.map(|b| (a, b)));
        }
        let mut rest = cand;
        while let Some(v) = rest.first() {
            rest.remove(v);
            if a.len() + 1 + rest.len() < s {
                break;
            }
            let c = common & g.adj(v);
            if c.len() < s {
                continue;
            }
            if let Some(found) = rec(g, s, a.with(v), rest - g.adj(v), c, meter)? {
                return Ok(Some(found));
            }
        }
        Ok(None)
    }
    if s == 0 || 2 * s > g.order() {
        return Ok(None);
    }
    let degree_ok: VertexSet = g
        .vertices()
        .iter()
        .filter(|&v| g.adj(v).len() >= s)
        .collect();
    Ok(
        rec(g, s, VertexSet::EMPTY, degree_ok, g.vertices(), meter)?.map(|(a, b)| {
            BicliqueWitness {
                side_a: a,
                side_b: b,
                induced: true,
            }
        }),
    )
}

/// Extracts an induced K4,4 from a biclique subgraph by finding a stable
/// 4-set inside each side.
///
/// When `ω(G) ≤ k` and a side has at least R(4, k) vertices such a set must
/// exist: a `k`-clique inside one side together with any vertex of the other
/// side would be a `(k+1)`-clique. If a side has no stable 4-set and
/// does contain a `k`-clique, that `(k+1)`-clique is returned as an error.
/// Otherwise a missing stable set is reported as `Ok(None)`.
pub fn ramsey_extract_k44(
    g: &Graph,
    w: &BicliqueWitness,
    k: usize,
) -> Result<Option<BicliqueWitness>, RamseyError> {
    let w = BicliqueWitness::new(g, w.side_a, w.side_b).ok_or(RamseyError::InvalidWitness)?;
    let mut meter = Budget::UNLIMITED.meter();
    let mut pick = |side: VertexSet, other: VertexSet| -> Result<Option<VertexSet>, RamseyError> {
        if let Some(s) = stable_subset(g, side, 4, &mut meter).expect("unlimited") {
            return Ok(Some(s));
        }
        let clique = max_clique_within(g, side, &mut meter).expect("unlimited");
        if k > 0 && clique.len() >= k {
            let mut big = clique.take_smallest(k).unwrap();
            big.insert(other.first().unwrap());
            return Err(RamseyError::CliqueBoundViolated { clique: big });
        }
        Ok(None)
    };
    let Some(a) = pick(w.side_a, w.side_b)? else {
        return Ok(None);
    };
    let Some(b) = pick(w.side_b, w.side_a)? else {
        return Ok(None);
    };
    Ok(Some(BicliqueWitness {
        side_a: a,
        side_b: b,
        induced: true,
    }))
}
