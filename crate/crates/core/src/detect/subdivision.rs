//! Searches for induced subdivisions of K4 / K4+.

use super::witness::{k4_subdivision_within, SubdivisionWitness, BRANCH_PAIRS};
use super::{DetectError, Pattern};
use crate::budget::{Budget, BudgetExceeded, Meter, SearchOutcome};
use crate::graph::{Graph, VertexSet};

/// Largest graph the brute-force oracle accepts by default.
pub const DEFAULT_ORACLE_CEILING: usize = 16;

/// Brute force: scans every vertex subset in increasing bitset value and
/// returns the first one inducing a subdivision of `pattern`.
pub fn find_subdivision_oracle(
    g: &Graph,
    pattern: Pattern,
    ceiling: usize,
) -> Result<Option<SubdivisionWitness>, DetectError> {
    let n = g.order();
    if n > ceiling || n >= 64 {
        return Err(DetectError::TooLarge { n, ceiling });
    }
    let min = pattern.min_order() as u32;
    for bits in 0u64..(1u64 << n) {
        if bits.count_ones() < min {
            continue;
        }
        if let Some(w) = k4_subdivision_within(g, VertexSet::from_bits(bits as u128)) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// [`find_subdivision_oracle`] for K4+ with the default ceiling.
pub fn find_isk4plus_oracle(g: &Graph) -> Result<Option<SubdivisionWitness>, DetectError> {
    find_subdivision_oracle(g, Pattern::K4Plus, DEFAULT_ORACLE_CEILING)
}

/// Backtracking search for an induced subdivision of `pattern`.
///
/// Branch vertices are tried as 4-sets in lexicographic order; the six
/// connecting paths are grown one at a time, shortest-first, through
/// vertices that have no neighbour among the already placed witness
/// vertices other than the path's own ends. Every induced path is
/// eventually tried, so a `NotFound` is exact.
pub fn find_subdivision(
    g: &Graph,
    pattern: Pattern,
    budget: Budget,
) -> SearchOutcome<SubdivisionWitness> {
    let mut meter = budget.meter();
    search(g, pattern, &mut meter).into()
}

pub fn find_isk4plus(g: &Graph, budget: Budget) -> SearchOutcome<SubdivisionWitness> {
    find_subdivision(g, Pattern::K4Plus, budget)
}

pub fn find_isk4(g: &Graph, budget: Budget) -> SearchOutcome<SubdivisionWitness> {
    find_subdivision(g, Pattern::K4, budget)
}

fn search(
    g: &Graph,
    pattern: Pattern,
    meter: &mut Meter,
) -> Result<Option<SubdivisionWitness>, BudgetExceeded> {
    let cand: Vec<usize> = (0..g.order()).filter(|&v| g.adj(v).len() >= 3).collect();
    let k = cand.len();
    if k < 4 {
        return Ok(None);
    }
    for i0 in 0..k {
        for i1 in i0 + 1..k {
            for i2 in i1 + 1..k {
                for i3 in i2 + 1..k {
                    meter.tick()?;
                    let branch = [cand[i0], cand[i1], cand[i2], cand[i3]];
                    if let Some(w) = try_branch_set(g, pattern, branch, meter)? {
                        return Ok(Some(w));
                    }
                }
            }
        }
    }
    Ok(None)
}

struct Placement<'a> {
    g: &'a Graph,
    pending: Vec<(usize, usize)>,
    paths: Vec<Vec<usize>>,
}

fn try_branch_set(
    g: &Graph,
    pattern: Pattern,
    branch: [usize; 4],
    meter: &mut Meter,
) -> Result<Option<SubdivisionWitness>, BudgetExceeded> {
    let bset: VertexSet = branch.iter().collect();
    let mut paths = Vec::with_capacity(6);
    let mut pending = Vec::with_capacity(6);
    for (i, j) in BRANCH_PAIRS {
        let (x, y) = (branch[i], branch[j]);
        if g.has_edge(x, y) {
            paths.push(vec![x, y]);
        } else {
            pending.push((x, y));
        }
    }
    if pending.is_empty() {
        return Ok(match pattern {
            Pattern::K4 => Some(SubdivisionWitness::normalized(branch, paths)),
            Pattern::K4Plus => None,
        });
    }
    let mut pl = Placement { g, pending, paths };
    if !pl.feasible(bset, 0) {
        return Ok(None);
    }
    if pl.place(0, bset, meter)? {
        Ok(Some(SubdivisionWitness::normalized(branch, pl.paths)))
    } else {
        Ok(None)
    }
}

impl Placement<'_> {
    /// Vertices usable as internal vertices of a path between `x` and `y`
    /// given the witness vertices `used`.
    fn pool(&self, used: VertexSet, x: usize, y: usize) -> VertexSet {
        let others = used.without(x).without(y);
        self.g.vertices() - used - self.g.neighborhood_of_set(others) - others
    }

    /// Relaxed reachability test for every pending pair from `from` on.
    fn feasible(&self, used: VertexSet, from: usize) -> bool {
        self.pending[from..].iter().all(|&(x, y)| {
            let pool = self.pool(used, x, y);
            let start = self.g.adj(x) & pool;
            self.g
                .reachable_within(start, pool)
                .intersects(self.g.adj(y))
        })
    }

    fn place(
        &mut self,
        idx: usize,
        used: VertexSet,
        meter: &mut Meter,
    ) -> Result<bool, BudgetExceeded> {
        if idx == self.pending.len() {
            return Ok(true);
        }
        let (x, y) = self.pending[idx];
        let pool = self.pool(used, x, y);
        let mut chain = Vec::new();
        self.extend(idx, used, x, y, x, pool, &mut chain, meter)
    }

    /// Extends the partial path `x, chain..` ending at `cur`; `avail` holds
    /// the vertices that may still follow without creating a chord.
    #[allow(clippy::too_many_arguments)]
    fn extend(
        &mut self,
        idx: usize,
        used: VertexSet,
        x: usize,
        y: usize,
        cur: usize,
        avail: VertexSet,
        chain: &mut Vec<usize>,
        meter: &mut Meter,
    ) -> Result<bool, BudgetExceeded> {
        meter.tick()?;
        let g = self.g;
        let target = g.adj(y);
        // Distance layers towards y inside avail; candidates outside every
        // layer cannot reach y and are skipped.
        let mut layer = target & avail;
        let mut seen = layer;
        let mut ordered = Vec::new();
        let next = g.adj(cur) & avail;
        while !layer.is_empty() {
            ordered.extend((layer & next).iter());
            let mut grow = VertexSet::EMPTY;
            for v in layer {
                grow |= g.adj(v);
            }
            layer = (grow & avail) - seen;
            seen |= layer;
        }
        for u in ordered {
            chain.push(u);
            if target.contains(u) {
                let used2 = used | chain.iter().collect::<VertexSet>();
                if self.feasible(used2, idx + 1) {
                    let mut path = Vec::with_capacity(chain.len() + 2);
                    path.push(x);
                    path.extend_from_slice(chain);
                    path.push(y);
                    self.paths.push(path);
                    if self.place(idx + 1, used2, meter)? {
                        return Ok(true);
                    }
                    self.paths.pop();
                }
            } else {
                let avail2 = avail - g.adj(cur) - VertexSet::singleton(cur).with(u);
                if self.extend(idx, used, x, y, u, avail2, chain, meter)? {
                    return Ok(true);
                }
            }
            chain.pop();
        }
        Ok(false)
    }
}
