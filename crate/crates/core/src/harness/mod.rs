//! Enumeration and sampling campaigns.
//!
//! Every campaign maps a pure per-graph function over a graph source in
//! parallel and folds the results sequentially in input order, so reports
//! do not depend on the number of worker threads.

mod campaigns;
mod generate;

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::budget::{Budget, BudgetExceeded};
use crate::detect::{find_subdivision, has_triangle, Pattern};
use crate::graph::{Graph, MAX_VERTICES};

pub use campaigns::{
    check_cited_bounds, coloring_quality, survey_chi_vs_omega, verify_claims_campaign,
    BoundViolation, BoundsReport, ClaimFailure, ClaimsReport, QualityReport, QualityRow,
    SurveyReport, SurveyRow,
};
pub use generate::{
    enumerate_labeled, gnp, planted, planted_k44, triangle_free, LabeledGraphs, RandomGraphs,
    RandomModel, DEFAULT_PROBABILITIES, LABELED_MAX_N,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("labeled enumeration is limited to n <= {LABELED_MAX_N}, got {n}")]
    LabeledTooLarge { n: usize },
    #[error("invalid campaign configuration: {0}")]
    InvalidConfig(String),
    #[error("report output failed: {0}")]
    Output(String),
}

/// Hereditary-class filter applied before a graph is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Filter {
    #[serde(rename = "isk4p-free")]
    Isk4PlusFree,
    #[serde(rename = "isk4-free")]
    Isk4Free,
    #[serde(rename = "triangle-free")]
    TriangleFree,
}

impl Filter {
    pub const ALL: [Filter; 3] = [Filter::Isk4PlusFree, Filter::Isk4Free, Filter::TriangleFree];

    pub fn name(self) -> &'static str {
        match self {
            Filter::Isk4PlusFree => "isk4p-free",
            Filter::Isk4Free => "isk4-free",
            Filter::TriangleFree => "triangle-free",
        }
    }

    pub fn accepts(self, g: &Graph, budget: Budget) -> Result<bool, BudgetExceeded> {
        let pattern = match self {
            Filter::TriangleFree => return Ok(!has_triangle(g)),
            Filter::Isk4PlusFree => Pattern::K4Plus,
            Filter::Isk4Free => Pattern::K4,
        };
        match find_subdivision(g, pattern, budget) {
            crate::SearchOutcome::Found(_) => Ok(false),
            crate::SearchOutcome::NotFound => Ok(true),
            crate::SearchOutcome::BudgetExceeded => Err(BudgetExceeded {
                limit: budget.limit().unwrap_or(0),
            }),
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Filter {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Filter::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                format!("unknown filter {s:?} (expected isk4p-free, isk4-free or triangle-free)")
            })
    }
}

/// Whether `g` passes every filter. Cheap filters run first.
pub fn passes_filters(
    g: &Graph,
    filters: &[Filter],
    budget: Budget,
) -> Result<bool, BudgetExceeded> {
    let mut sorted = filters.to_vec();
    sorted.sort_by_key(|&f| std::cmp::Reverse(f));
    for f in sorted {
        if !f.accepts(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub enum Source {
    /// Graphs supplied by the caller, for instance parsed from graph6.
    Graphs(Vec<Graph>),
    /// Every labeled graph on `1..=max_n` vertices.
    Labeled,
    /// `count` graphs from a seeded model, orders in `min_n..=max_n`.
    Random {
        model: RandomModel,
        count: usize,
        min_n: usize,
        seed: u64,
    },
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub source: Source,
    pub filters: Vec<Filter>,
    /// Larger graphs from a supplied stream are skipped and counted.
    pub max_n: usize,
    /// Per-graph search budget.
    pub budget: Budget,
    /// Worker threads; reports do not depend on it.
    pub jobs: usize,
}

impl CampaignConfig {
    pub fn new(source: Source, max_n: usize) -> CampaignConfig {
        CampaignConfig {
            source,
            filters: Vec::new(),
            max_n,
            budget: Budget::UNLIMITED,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.max_n > MAX_VERTICES {
            return Err(HarnessError::InvalidConfig(format!(
                "max_n {} exceeds the capacity of {MAX_VERTICES}",
                self.max_n
            )));
        }
        match &self.source {
            Source::Labeled if self.max_n > LABELED_MAX_N => {
                Err(HarnessError::LabeledTooLarge { n: self.max_n })
            }
            Source::Random {
                model, min_n, seed, ..
            } => RandomGraphs::new(*model, *min_n, self.max_n, *seed).map(|_| ()),
            _ => Ok(()),
        }
    }
}

const CHUNK: usize = 4096;

/// Runs `work` over every graph of the source of order at most `max_n`
/// and feeds `(index, graph, result)` to `fold` in input order. Returns the
/// number of skipped (too large) graphs.
pub(crate) fn drive<T, W, F>(
    cfg: &CampaignConfig,
    work: W,
    mut fold: F,
) -> Result<usize, HarnessError>
where
    T: Send,
    W: Fn(&Graph) -> T + Sync,
    F: FnMut(usize, &Graph, T),
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs.max(1))
        .build()
        .map_err(|e| HarnessError::InvalidConfig(e.to_string()))?;
    let mut index = 0;
    let mut skipped = 0;
    let mut run = |chunk: Vec<Graph>| {
        let results: Vec<Option<T>> = pool.install(|| {
            chunk
                .par_iter()
                .map(|g| (g.order() <= cfg.max_n).then(|| work(g)))
                .collect()
        });
        for (g, r) in chunk.iter().zip(results) {
            match r {
                Some(r) => fold(index, g, r),
                None => skipped += 1,
            }
            index += 1;
        }
    };
    let mut feed = |mut it: Box<dyn Iterator<Item = Graph> + '_>| loop {
        let chunk: Vec<Graph> = it.by_ref().take(CHUNK).collect();
        if chunk.is_empty() {
            break;
        }
        run(chunk);
    };
    match &cfg.source {
        Source::Graphs(gs) => feed(Box::new(gs.iter().cloned())),
        Source::Labeled => {
            for n in 1..=cfg.max_n {
                feed(Box::new(enumerate_labeled(n)?));
            }
        }
        Source::Random {
            model,
            count,
            min_n,
            seed,
        } => feed(Box::new(
            RandomGraphs::new(*model, *min_n, cfg.max_n, *seed)?.take(*count),
        )),
    }
    Ok(skipped)
}

/// Writes rows as CSV with a header line; column order is the field order
/// of `T`.
pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<(), HarnessError> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)
            .map_err(|e| HarnessError::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| HarnessError::Output(e.to_string()))
}

/// Writes a value as pretty JSON followed by a newline.
pub fn write_json<T: Serialize, W: Write>(value: &T, mut out: W) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut out, value)
        .map_err(|e| HarnessError::Output(e.to_string()))?;
    writeln!(out).map_err(|e| HarnessError::Output(e.to_string()))
}
