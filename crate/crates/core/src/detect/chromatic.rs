//! Exact chromatic number: a maximum clique gives the lower bound and a
//! pre-coloured seed, DSATUR gives the upper bound, and a DSATUR-ordered
//! backtracking search decides each intermediate palette size.

use super::clique::max_clique_within;
use crate::budget::{Budget, BudgetExceeded, Meter};
use crate::graph::{Coloring, Graph, VertexSet};

/// χ(G).
pub fn chromatic_number(g: &Graph, budget: Budget) -> Result<usize, BudgetExceeded> {
    Ok(optimal_coloring(g, budget)?.palette_size())
}

/// A colouring of `g` with χ(G) colours.
pub fn optimal_coloring(g: &Graph, budget: Budget) -> Result<Coloring, BudgetExceeded> {
    let n = g.order();
    if n == 0 {
        return Ok(Coloring::new(vec![]));
    }
    let mut meter = budget.meter();
    let clique = max_clique_within(g, g.vertices(), &mut meter)?;
    let upper = dsatur_greedy(g);
    let mut best = upper.clone();
    for k in clique.len()..upper.palette_size() {
        let mut state = State::new(g, k);
        for (c, v) in clique.iter().enumerate() {
            state.assign(v, c);
        }
        if state.solve(&mut meter)? {
            best = Coloring::new(state.color.iter().map(|c| c.unwrap()).collect());
            break;
        }
    }
    Ok(best)
}

/// DSATUR greedy colouring (ties: larger uncoloured degree, then smaller
/// index).
pub fn dsatur_greedy(g: &Graph) -> Coloring {
    let mut state = State::new(g, g.order());
    while let Some(v) = state.pick() {
        let c = (0..).find(|&c| !state.blocked(v, c)).unwrap();
        state.assign(v, c);
    }
    Coloring::new(state.color.iter().map(|c| c.unwrap()).collect())
}

struct State<'a> {
    g: &'a Graph,
    k: usize,
    color: Vec<Option<usize>>,
    classes: Vec<VertexSet>,
    uncolored: VertexSet,
}

impl<'a> State<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        State {
            g,
            k,
            color: vec![None; g.order()],
            classes: Vec::new(),
            uncolored: g.vertices(),
        }
    }

    fn blocked(&self, v: usize, c: usize) -> bool {
        c < self.classes.len() && self.classes[c].intersects(self.g.adj(v))
    }

    fn assign(&mut self, v: usize, c: usize) {
        if c == self.classes.len() {
            self.classes.push(VertexSet::EMPTY);
        }
        self.classes[c].insert(v);
        self.color[v] = Some(c);
        self.uncolored.remove(v);
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v].take().unwrap();
        self.classes[c].remove(v);
        while self.classes.last().is_some_and(|s| s.is_empty()) {
            self.classes.pop();
        }
        self.uncolored.insert(v);
    }

    fn saturation(&self, v: usize) -> usize {
        let nb = self.g.adj(v);
        self.classes.iter().filter(|c| c.intersects(nb)).count()
    }

    fn pick(&self) -> Option<usize> {
        self.uncolored.iter().max_by_key(|&v| {
            (
                self.saturation(v),
                (self.g.adj(v) & self.uncolored).len(),
                std::cmp::Reverse(v),
            )
        })
    }

    fn solve(&mut self, meter: &mut Meter) -> Result<bool, BudgetExceeded> {
        meter.tick()?;
        let Some(v) = self.pick() else {
            return Ok(true);
        };
        if self.saturation(v) >= self.k {
            return Ok(false);
        }
        // Colours beyond the first unused one are symmetric.
        let limit = (self.classes.len() + 1).min(self.k);
        for c in 0..limit {
            if self.blocked(v, c) {
                continue;
            }
            self.assign(v, c);
            if self.solve(meter)? {
                return Ok(true);
            }
            self.unassign(v);
        }
        Ok(false)
    }
}
