//! The recursive colouring algorithm and its primitives: properness check,
//! greedy extension of a colouring to one more vertex, and merging two
//! colourings that overlap on a clique.

mod recursion;

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Coloring, Graph, VertexSet};

pub use recursion::{
    color_isk4plus_free, ramsey_r4, ColoringOptions, ColoringTrace, FallbackReason, Step, TraceNode,
};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ImproperColoring {
    #[error("vertex {vertex} has no colour")]
    Uncolored { vertex: usize },
    #[error("colouring has {len} entries for {n} vertices")]
    ExtraColors { n: usize, len: usize },
    #[error("edge ({u}, {v}) has both ends coloured {color}")]
    MonochromaticEdge { u: usize, v: usize, color: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("vertex {vertex} has no colour")]
    Uncolored { vertex: usize },
    #[error("vertex {0} out of range")]
    OutOfRange(usize),
    #[error("all {palette} colours are used around vertex {vertex}")]
    PaletteExhausted { vertex: usize, palette: usize },
    #[error("clique vertices {u} and {v} share a colour")]
    NotInjectiveOnClique { u: usize, v: usize },
    #[error("clique vertex {0} is missing from one side")]
    CliqueVertexMissing(usize),
    #[error("vertex {0} is on both sides but not in the clique")]
    SharedOutsideClique(usize),
    #[error("R(4, {k}) is not known; the Ramsey route needs k <= 5")]
    RamseyUnknown { k: usize },
    #[error("search budget of {limit} nodes exhausted")]
    BudgetExceeded { limit: u64, partial: Box<TraceNode> },
}

/// `Ok` iff every vertex of `g` is coloured and no edge is monochromatic;
/// otherwise the first problem, edges in lexicographic order.
pub fn verify_proper(g: &Graph, c: &Coloring) -> Result<(), ImproperColoring> {
    let n = g.order();
    if c.len() < n {
        return Err(ImproperColoring::Uncolored { vertex: c.len() });
    }
    if c.len() > n {
        return Err(ImproperColoring::ExtraColors { n, len: c.len() });
    }
    match g.edges().find(|&(u, v)| c.color(u) == c.color(v)) {
        Some((u, v)) => Err(ImproperColoring::MonochromaticEdge {
            u,
            v,
            color: c.color(u),
        }),
        None => Ok(()),
    }
}

/// Colours `v` with the smallest colour below `palette` that none of its
/// neighbours uses. Every other vertex must already be coloured.
pub fn greedy_extend(
    g: &Graph,
    partial: &[Option<usize>],
    v: usize,
    palette: usize,
) -> Result<Coloring, ColoringError> {
    if v >= g.order() {
        return Err(ColoringError::OutOfRange(v));
    }
    let mut colors = Vec::with_capacity(g.order());
    for u in 0..g.order() {
        match partial.get(u).copied().flatten() {
            Some(c) => colors.push(c),
            None if u == v => colors.push(0),
            None => return Err(ColoringError::Uncolored { vertex: u }),
        }
    }
    let mut used = vec![false; palette];
    for u in g.adj(v) {
        if colors[u] < palette {
            used[colors[u]] = true;
        }
    }
    colors[v] = used
        .iter()
        .position(|&b| !b)
        .ok_or(ColoringError::PaletteExhausted { vertex: v, palette })?;
    Ok(Coloring::new(colors))
}

/// Combines a colouring `c1` of `G1` and `c2` of `G2`, whose vertex sets
/// (given by the host-index maps) meet exactly in the clique `K`, into a
/// colouring of the `n`-vertex host graph.
///
/// `c2` is composed with a permutation `π` that sends `c2(x)` to `c1(x)` on
/// `K`; colours of `c2` not used on `K` go, in increasing order, to the
/// smallest colours not yet in the image. The result equals `c1` on `G1`
/// and uses at most `max(palette(c1), palette(c2))` colours.
pub fn merge_on_clique(
    c1: &Coloring,
    map1: &[usize],
    c2: &Coloring,
    map2: &[usize],
    clique: VertexSet,
    n: usize,
) -> Result<Coloring, ColoringError> {
    let mut slot1 = vec![None; n];
    let mut slot2 = vec![None; n];
    for (i, &x) in map1.iter().enumerate() {
        *slot1.get_mut(x).ok_or(ColoringError::OutOfRange(x))? = Some(c1.color(i));
    }
    for (i, &x) in map2.iter().enumerate() {
        *slot2.get_mut(x).ok_or(ColoringError::OutOfRange(x))? = Some(c2.color(i));
    }

    let mut pi: Vec<Option<usize>> = vec![None; c2.palette_size()];
    let mut image = vec![false; c1.palette_size().max(c2.palette_size())];
    let mut owner: Vec<Option<usize>> = vec![None; image.len()];
    for k in clique {
        let (Some(a), Some(b)) = (
            slot1.get(k).copied().flatten(),
            slot2.get(k).copied().flatten(),
        ) else {
            return Err(ColoringError::CliqueVertexMissing(k));
        };
        if let Some(u) = owner[a] {
            return Err(ColoringError::NotInjectiveOnClique { u, v: k });
        }
        if pi[b].is_some() {
            let u = clique.iter().find(|&u| slot2[u] == Some(b)).unwrap();
            return Err(ColoringError::NotInjectiveOnClique { u, v: k });
        }
        owner[a] = Some(k);
        pi[b] = Some(a);
        image[a] = true;
    }
    let mut next = 0;
    for entry in pi.iter_mut().filter(|e| e.is_none()) {
        while image[next] {
            next += 1;
        }
        *entry = Some(next);
        image[next] = true;
    }

    let mut colors = Vec::with_capacity(n);
    for x in 0..n {
        let c = match (slot1[x], slot2[x]) {
            (Some(a), None) => a,
            (None, Some(b)) => pi[b].unwrap(),
            (Some(a), Some(_)) if clique.contains(x) => a,
            (Some(_), Some(_)) => return Err(ColoringError::SharedOutsideClique(x)),
            (None, None) => return Err(ColoringError::Uncolored { vertex: x }),
        };
        colors.push(c);
    }
    Ok(Coloring::new(colors))
}
