use std::collections::BTreeMap;

use serde::Serialize;

use super::{drive, passes_filters, CampaignConfig, Filter, HarnessError};
use crate::budget::{Budget, BudgetExceeded};
use crate::coloring::{color_isk4plus_free, verify_proper, ColoringError, ColoringOptions};
use crate::detect::{
    chromatic_number, clique_number, find_induced_biclique, find_isk4plus, find_isk4plus_oracle,
    Pattern, DEFAULT_ORACLE_CEILING,
};
use crate::graph::Graph;
use crate::structure::{
    check_claim1, check_claim2, check_claim3, find_structural_cutset, grow_maximal_multipartite,
    ClaimOutcome,
};
use crate::SearchOutcome;

/// Per-graph result shared by the campaigns.
enum Item<T> {
    Filtered,
    Budget,
    Done(T),
}

fn filtered<T>(
    g: &Graph,
    cfg: &CampaignConfig,
    f: impl FnOnce() -> Result<T, BudgetExceeded>,
) -> Item<T> {
    match passes_filters(g, &cfg.filters, cfg.budget) {
        Ok(false) => Item::Filtered,
        Err(_) => Item::Budget,
        Ok(true) => match f() {
            Ok(t) => Item::Done(t),
            Err(_) => Item::Budget,
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyRow {
    pub n: usize,
    pub omega: usize,
    pub max_chi_observed: usize,
    pub count_graphs: usize,
    /// First graph in input order attaining `max_chi_observed`.
    pub example_graph6: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurveyReport {
    pub seen: usize,
    pub passed: usize,
    pub skipped: usize,
    pub budget_exhausted: usize,
    pub rows: Vec<SurveyRow>,
}

/// For each graph passing the filters, the largest χ observed per
/// `(n, ω)`.
pub fn survey_chi_vs_omega(cfg: &CampaignConfig) -> Result<SurveyReport, HarnessError> {
    let mut buckets: BTreeMap<(usize, usize), SurveyRow> = BTreeMap::new();
    let (mut seen, mut passed, mut budget) = (0, 0, 0);
    let skipped = drive(
        cfg,
        |g| {
            filtered(g, cfg, || {
                Ok((
                    clique_number(g, cfg.budget)?,
                    chromatic_number(g, cfg.budget)?,
                ))
            })
        },
        |_, g, item| {
            seen += 1;
            match item {
                Item::Filtered => {}
                Item::Budget => budget += 1,
                Item::Done((omega, chi)) => {
                    passed += 1;
                    let row = buckets
                        .entry((g.order(), omega))
                        .or_insert_with(|| SurveyRow {
                            n: g.order(),
                            omega,
                            max_chi_observed: chi,
                            count_graphs: 0,
                            example_graph6: g.to_graph6(),
                        });
                    row.count_graphs += 1;
                    if chi > row.max_chi_observed {
                        row.max_chi_observed = chi;
                        row.example_graph6 = g.to_graph6();
                    }
                }
            }
        },
    )?;
    Ok(SurveyReport {
        seen,
        passed,
        skipped,
        budget_exhausted: budget,
        rows: buckets.into_values().collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundViolation {
    pub index: usize,
    pub graph6: String,
    pub chi: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub filters: Vec<Filter>,
    pub bound: usize,
    pub seen: usize,
    pub checked: usize,
    pub skipped: usize,
    pub budget_exhausted: usize,
    pub max_chi: usize,
    pub max_chi_graph6: Option<String>,
    /// `chi_histogram[c]` graphs have χ = c.
    pub chi_histogram: Vec<usize>,
    pub violations: Vec<BoundViolation>,
}

/// χ ≤ 3 for triangle-free ISK4-free graphs and χ ≤ 24 for ISK4-free
/// graphs, checked on every graph passing the filters. The filters must
/// include `isk4-free`; the bound is 3 when `triangle-free` is present.
pub fn check_cited_bounds(cfg: &CampaignConfig) -> Result<BoundsReport, HarnessError> {
    if !cfg.filters.contains(&Filter::Isk4Free) {
        return Err(HarnessError::InvalidConfig(
            "bound checks need the isk4-free filter".into(),
        ));
    }
    let bound = if cfg.filters.contains(&Filter::TriangleFree) {
        3
    } else {
        24
    };
    let mut filters = cfg.filters.clone();
    filters.sort();
    filters.dedup();
    let mut report = BoundsReport {
        filters,
        bound,
        seen: 0,
        checked: 0,
        skipped: 0,
        budget_exhausted: 0,
        max_chi: 0,
        max_chi_graph6: None,
        chi_histogram: vec![],
        violations: vec![],
    };
    report.skipped = drive(
        cfg,
        |g| filtered(g, cfg, || chromatic_number(g, cfg.budget)),
        |index, g, item| {
            report.seen += 1;
            match item {
                Item::Filtered => {}
                Item::Budget => report.budget_exhausted += 1,
                Item::Done(chi) => {
                    report.checked += 1;
                    if report.chi_histogram.len() <= chi {
                        report.chi_histogram.resize(chi + 1, 0);
                    }
                    report.chi_histogram[chi] += 1;
                    if chi > report.max_chi || report.max_chi_graph6.is_none() {
                        report.max_chi = chi;
                        report.max_chi_graph6 = Some(g.to_graph6());
                    }
                    if chi > bound {
                        report.violations.push(BoundViolation {
                            index,
                            graph6: g.to_graph6(),
                            chi,
                        });
                    }
                }
            }
        },
    )?;
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClaimFailure {
    pub index: usize,
    pub graph6: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ClaimsReport {
    pub seen: usize,
    pub skipped: usize,
    pub filtered: usize,
    pub without_k44: usize,
    pub checked: usize,
    pub all_claims_hold: usize,
    pub claim1_violations: usize,
    pub claim2_violations: usize,
    pub claim3_violations: usize,
    pub maximality_breaches: usize,
    pub isk4plus_free: usize,
    pub oracle_confirmed: usize,
    pub cutsets_verified: usize,
    pub witnesses_verified: usize,
    pub budget_exhausted: usize,
    pub failures: Vec<ClaimFailure>,
}

#[derive(Default)]
struct ClaimsItem {
    has_k44: bool,
    violated: Option<u8>,
    breach: bool,
    free: bool,
    oracle: bool,
    cutset: bool,
    witnesses: usize,
    failure: Option<String>,
}

fn claims_one(g: &Graph, budget: Budget) -> Result<ClaimsItem, BudgetExceeded> {
    let mut item = ClaimsItem::default();
    let over = |_| BudgetExceeded {
        limit: budget.limit().unwrap_or(0),
    };
    let seed = match find_induced_biclique(g, 4, budget) {
        SearchOutcome::Found(w) => w,
        SearchOutcome::NotFound => return Ok(item),
        SearchOutcome::BudgetExceeded => return Err(over(())),
    };
    item.has_k44 = true;
    let fail = |item: &mut ClaimsItem, msg: String| {
        item.failure.get_or_insert(msg);
    };
    let m = match grow_maximal_multipartite(g, &seed) {
        Ok(m) => m,
        Err(e) => {
            fail(&mut item, format!("growing M: {e}"));
            return Ok(item);
        }
    };
    if !m.is_inclusion_maximal(g) {
        fail(&mut item, "grown M is not inclusion-maximal".into());
    }

    let detected = match find_isk4plus(g, budget) {
        SearchOutcome::Found(w) => {
            if let Err(e) = w.verify(g, Pattern::K4Plus) {
                fail(&mut item, format!("detector witness invalid: {e}"));
            }
            item.witnesses += 1;
            true
        }
        SearchOutcome::NotFound => false,
        SearchOutcome::BudgetExceeded => return Err(over(())),
    };
    item.free = !detected;
    if g.order() <= DEFAULT_ORACLE_CEILING {
        item.oracle = true;
        let oracle = find_isk4plus_oracle(g).expect("within ceiling").is_some();
        if oracle != detected {
            fail(
                &mut item,
                format!("detector says {detected}, oracle says {oracle}"),
            );
        }
    }

    for (id, check) in [
        (1u8, check_claim1 as fn(_, _) -> _),
        (2, check_claim2),
        (3, check_claim3),
    ] {
        match check(g, &m) {
            Ok(ClaimOutcome::Holds) => continue,
            Ok(ClaimOutcome::Violated(v)) => {
                item.violated = Some(id);
                match v.constructed.verify(g, Pattern::K4Plus) {
                    Ok(()) => item.witnesses += 1,
                    Err(e) => fail(&mut item, format!("claim {id} witness invalid: {e}")),
                }
                let (sub, _) = g
                    .induced_subgraph(v.actor_vertices())
                    .expect("actors in range");
                if !matches!(find_isk4plus_oracle(&sub), Ok(Some(_))) {
                    fail(
                        &mut item,
                        format!("claim {id} actors do not induce a K4+ subdivision"),
                    );
                }
                if !detected {
                    fail(
                        &mut item,
                        format!("claim {id} violated but the detector finds no K4+ subdivision"),
                    );
                }
            }
            Ok(ClaimOutcome::MaximalityBreach { vertex }) => {
                item.breach = true;
                fail(
                    &mut item,
                    format!("maximality breach at {vertex} for an inclusion-maximal M"),
                );
            }
            Err(e) => fail(&mut item, format!("claim {id}: {e}")),
        }
        break;
    }

    let holds = item.violated.is_none() && !item.breach && item.failure.is_none();
    if item.free && !holds && item.failure.is_none() {
        fail(&mut item, "ISK4+-free but a claim fails".into());
    }
    if holds && m.members() != g.vertices() && g.is_connected() {
        match find_structural_cutset(g, &m) {
            Ok(Some(split)) if split.verify(g) => item.cutset = true,
            Ok(Some(_)) => fail(&mut item, "structural cutset is malformed".into()),
            Ok(None) => fail(
                &mut item,
                "no structural cutset although G - M is non-empty".into(),
            ),
            Err(e) => fail(&mut item, format!("structural cutset: {e}")),
        }
    }
    Ok(item)
}

/// For every graph with an induced K4,4: grows `M`, runs the three claim
/// checks, and cross-checks the outcome against the detectors. Any
/// violation must come with a valid witness and a detector-confirmed K4+
/// subdivision; an ISK4+-free graph must pass all claims and, when `G − M`
/// is non-empty and `G` connected, yield a valid cutset.
pub fn verify_claims_campaign(cfg: &CampaignConfig) -> Result<ClaimsReport, HarnessError> {
    let mut r = ClaimsReport::default();
    r.skipped = drive(
        cfg,
        |g| filtered(g, cfg, || claims_one(g, cfg.budget)),
        |index, g, item| {
            r.seen += 1;
            let item = match item {
                Item::Filtered => {
                    r.filtered += 1;
                    return;
                }
                Item::Budget => {
                    r.budget_exhausted += 1;
                    return;
                }
                Item::Done(item) => item,
            };
            if !item.has_k44 {
                r.without_k44 += 1;
                return;
            }
            r.checked += 1;
            match item.violated {
                Some(1) => r.claim1_violations += 1,
                Some(2) => r.claim2_violations += 1,
                Some(_) => r.claim3_violations += 1,
                None if !item.breach => r.all_claims_hold += 1,
                None => {}
            }
            r.maximality_breaches += usize::from(item.breach);
            r.isk4plus_free += usize::from(item.free);
            r.oracle_confirmed += usize::from(item.oracle);
            r.cutsets_verified += usize::from(item.cutset);
            r.witnesses_verified += item.witnesses;
            if let Some(reason) = item.failure {
                r.failures.push(ClaimFailure {
                    index,
                    graph6: g.to_graph6(),
                    reason,
                });
            }
        },
    )?;
    Ok(r)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityRow {
    pub n: usize,
    pub graphs: usize,
    pub mean_gap: f64,
    pub max_gap: usize,
    pub max_chi: usize,
    pub max_palette: usize,
    pub fallbacks: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub seen: usize,
    pub skipped: usize,
    pub budget_exhausted: usize,
    pub rows: Vec<QualityRow>,
    /// Graphs whose colouring was improper or not at least χ colours.
    pub failures: Vec<ClaimFailure>,
}

/// Palette used by the recursive colouring minus χ, per order.
pub fn coloring_quality(cfg: &CampaignConfig) -> Result<QualityReport, HarnessError> {
    struct Acc {
        graphs: usize,
        gap_sum: usize,
        max_gap: usize,
        max_chi: usize,
        max_palette: usize,
        fallbacks: usize,
    }
    let mut acc: BTreeMap<usize, Acc> = BTreeMap::new();
    let (mut seen, mut budget) = (0, 0);
    let mut failures = vec![];
    let opts = ColoringOptions {
        budget: cfg.budget,
        ..Default::default()
    };
    let skipped = drive(
        cfg,
        |g| {
            filtered(g, cfg, || {
                let chi = chromatic_number(g, cfg.budget)?;
                match color_isk4plus_free(g, opts) {
                    Ok((c, trace)) => Ok(Some((
                        chi,
                        c.palette_size(),
                        trace.fallbacks().len(),
                        verify_proper(g, &c),
                    ))),
                    Err(ColoringError::BudgetExceeded { limit, .. }) => {
                        Err(BudgetExceeded { limit })
                    }
                    Err(_) => Ok(None),
                }
            })
        },
        |index, g, item| {
            seen += 1;
            let fail = |reason: String| ClaimFailure {
                index,
                graph6: g.to_graph6(),
                reason,
            };
            match item {
                Item::Filtered => {}
                Item::Budget => budget += 1,
                Item::Done(None) => failures.push(fail("colouring failed".into())),
                Item::Done(Some((chi, palette, fallbacks, proper))) => {
                    if let Err(e) = proper {
                        failures.push(fail(format!("improper colouring: {e}")));
                    } else if palette < chi {
                        failures.push(fail(format!("{palette} colours is below χ = {chi}")));
                    }
                    let a = acc.entry(g.order()).or_insert(Acc {
                        graphs: 0,
                        gap_sum: 0,
                        max_gap: 0,
                        max_chi: 0,
                        max_palette: 0,
                        fallbacks: 0,
                    });
                    let gap = palette.saturating_sub(chi);
                    a.graphs += 1;
                    a.gap_sum += gap;
                    a.max_gap = a.max_gap.max(gap);
                    a.max_chi = a.max_chi.max(chi);
                    a.max_palette = a.max_palette.max(palette);
                    a.fallbacks += fallbacks;
                }
            }
        },
    )?;
    let rows = acc
        .into_iter()
        .map(|(n, a)| QualityRow {
            n,
            graphs: a.graphs,
            mean_gap: (a.gap_sum as f64 / a.graphs as f64 * 1e4).round() / 1e4,
            max_gap: a.max_gap,
            max_chi: a.max_chi,
            max_palette: a.max_palette,
            fallbacks: a.fallbacks,
        })
        .collect();
    Ok(QualityReport {
        seen,
        skipped,
        budget_exhausted: budget,
        rows,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{RandomModel, Source};

    #[test]
    fn survey_small_labeled() {
        let mut cfg = CampaignConfig::new(Source::Labeled, 5);
        cfg.filters = vec![Filter::Isk4PlusFree];
        let r = survey_chi_vs_omega(&cfg).unwrap();
        let row = r.rows.iter().find(|r| r.n == 5 && r.omega == 2).unwrap();
        assert_eq!(row.max_chi_observed, 3);
        let c5 = Graph::from_graph6(&row.example_graph6).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!(r.rows.iter().all(|r| r.max_chi_observed >= r.omega));
    }

    #[test]
    fn survey_multipartite_family() {
        let gs = vec![
            Graph::complete_multipartite(&[4, 4]).unwrap(),
            Graph::complete_multipartite(&[4, 4, 4]).unwrap(),
        ];
        let mut cfg = CampaignConfig::new(Source::Graphs(gs), 16);
        cfg.filters = vec![Filter::Isk4PlusFree];
        let r = survey_chi_vs_omega(&cfg).unwrap();
        assert_eq!(r.passed, 2);
        assert_eq!(
            r.rows
                .iter()
                .map(|r| (r.n, r.omega, r.max_chi_observed))
                .collect::<Vec<_>>(),
            vec![(8, 2, 2), (12, 3, 3)]
        );
        let empty = survey_chi_vs_omega(&CampaignConfig::new(Source::Graphs(vec![]), 16)).unwrap();
        assert!(empty.rows.is_empty());
    }

    #[test]
    fn bounds_on_small_corpus() {
        let mut cfg = CampaignConfig::new(Source::Labeled, 6);
        cfg.filters = vec![Filter::TriangleFree, Filter::Isk4Free];
        let r = check_cited_bounds(&cfg).unwrap();
        assert_eq!(r.bound, 3);
        assert_eq!(r.max_chi, 3);
        assert!(r.violations.is_empty());
        cfg.filters = vec![Filter::TriangleFree];
        assert!(check_cited_bounds(&cfg).is_err());
    }

    #[test]
    fn claims_on_planted_graphs() {
        let mut cfg = CampaignConfig::new(
            Source::Random {
                model: RandomModel::Planted,
                count: 300,
                min_n: 8,
                seed: 3,
            },
            14,
        );
        cfg.jobs = 2;
        let r = verify_claims_campaign(&cfg).unwrap();
        assert_eq!(r.failures, vec![]);
        assert_eq!(r.checked, 300);
        assert!(r.cutsets_verified > 0);
        assert!(r.claim1_violations + r.claim2_violations + r.claim3_violations > 0);
    }

    #[test]
    fn quality_is_deterministic_across_jobs() {
        let mut cfg = CampaignConfig::new(
            Source::Random {
                model: RandomModel::Gnp { p: None },
                count: 200,
                min_n: 4,
                seed: 11,
            },
            10,
        );
        let a = coloring_quality(&cfg).unwrap();
        cfg.jobs = 4;
        let b = coloring_quality(&cfg).unwrap();
        assert_eq!(a, b);
        assert!(a.failures.is_empty());
    }
}
