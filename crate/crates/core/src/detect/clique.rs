//! Maximum clique by branch and bound with greedy colouring bounds over
//! bitsets.

use crate::budget::{Budget, BudgetExceeded, Meter};
use crate::graph::{Graph, VertexSet};

/// A maximum clique of `g`.
pub fn max_clique(g: &Graph, budget: Budget) -> Result<VertexSet, BudgetExceeded> {
    max_clique_within(g, g.vertices(), &mut budget.meter())
}

/// ω(G).
pub fn clique_number(g: &Graph, budget: Budget) -> Result<usize, BudgetExceeded> {
    Ok(max_clique(g, budget)?.len())
}

pub(crate) fn max_clique_within(
    g: &Graph,
    within: VertexSet,
    meter: &mut Meter,
) -> Result<VertexSet, BudgetExceeded> {
    let mut best = VertexSet::EMPTY;
    expand(g, VertexSet::EMPTY, within, &mut best, meter)?;
    Ok(best)
}

fn expand(
    g: &Graph,
    clique: VertexSet,
    mut cand: VertexSet,
    best: &mut VertexSet,
    meter: &mut Meter,
) -> Result<(), BudgetExceeded> {
    meter.tick()?;
    if cand.is_empty() {
        if clique.len() > best.len() {
            *best = clique;
        }
        return Ok(());
    }
    let (order, bounds) = color_sort(g, cand);
    for i in (0..order.len()).rev() {
        if clique.len() + bounds[i] <= best.len() {
            return Ok(());
        }
        let v = order[i];
        expand(g, clique.with(v), cand & g.adj(v), best, meter)?;
        cand.remove(v);
    }
    Ok(())
}

/// Greedy sequential colouring of `cand`; returns vertices ordered by colour
/// class and, for each position, the number of classes used so far (an
/// upper bound on the clique size among the vertices up to that position).
fn color_sort(g: &Graph, cand: VertexSet) -> (Vec<usize>, Vec<usize>) {
    let mut order = Vec::with_capacity(cand.len());
    let mut bounds = Vec::with_capacity(cand.len());
    let mut uncolored = cand;
    let mut color = 0;
    while !uncolored.is_empty() {
        color += 1;
        let mut q = uncolored;
        while let Some(v) = q.first() {
            q.remove(v);
            q -= g.adj(v);
            uncolored.remove(v);
            order.push(v);
            bounds.push(color);
        }
    }
    (order, bounds)
}
