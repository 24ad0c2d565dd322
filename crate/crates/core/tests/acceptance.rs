//! Acceptance gate: one `[PASS]`/`[FAIL]` line per criterion, non-zero
//! exit status if any criterion fails.
//!
//! Run with `cargo test -p isk4plus --test acceptance`.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use isk4plus::coloring::{color_isk4plus_free, verify_proper, ColoringOptions};
use isk4plus::detect::{chromatic_number, find_isk4plus, find_isk4plus_oracle, Pattern};
use isk4plus::graph::read_graph6_lines;
use isk4plus::harness::{
    check_cited_bounds, coloring_quality, enumerate_labeled, gnp, passes_filters,
    survey_chi_vs_omega, verify_claims_campaign, write_csv, write_json, CampaignConfig, Filter,
    RandomGraphs, RandomModel, Source,
};
use isk4plus::{Budget, Graph, SearchOutcome};

const SEED: u64 = 20_240_601;
const DETECT_BUDGET: Budget = Budget::nodes(5_000_000);

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(4, |n| n.get())
}

struct Gate {
    failed: usize,
}

impl Gate {
    fn record(&mut self, id: u8, title: &str, pass: bool, detail: String) {
        if !pass {
            self.failed += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        println!("[{tag}] criterion {id} {title}: {detail}");
    }
}

#[derive(Default, Clone, Copy)]
struct DetectStats {
    graphs: u64,
    agree: u64,
    found: u64,
    budget: u64,
    witnesses_ok: u64,
    witnesses_bad: u64,
    first_disagreement: Option<u64>,
}

impl DetectStats {
    fn merge(mut self, o: DetectStats) -> DetectStats {
        self.graphs += o.graphs;
        self.agree += o.agree;
        self.found += o.found;
        self.budget += o.budget;
        self.witnesses_ok += o.witnesses_ok;
        self.witnesses_bad += o.witnesses_bad;
        self.first_disagreement = match (self.first_disagreement, o.first_disagreement) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        self
    }
}

fn detect_one(mask: u64, g: &Graph) -> DetectStats {
    let mut s = DetectStats {
        graphs: 1,
        ..Default::default()
    };
    let oracle = find_isk4plus_oracle(g).expect("n = 7");
    let mut check = |w: &isk4plus::detect::SubdivisionWitness| {
        if w.verify(g, Pattern::K4Plus).is_ok() {
            s.witnesses_ok += 1;
        } else {
            s.witnesses_bad += 1;
        }
    };
    if let Some(w) = &oracle {
        check(w);
    }
    let fast = find_isk4plus(g, DETECT_BUDGET);
    if let SearchOutcome::Found(w) = &fast {
        check(w);
        s.found += 1;
    }
    if fast.is_budget_exceeded() {
        s.budget += 1;
    } else if fast.is_found() == oracle.is_some() {
        s.agree += 1;
    } else {
        s.first_disagreement = Some(mask);
    }
    s
}

/// Draws from `stream` in parallel chunks until `target` graphs pass
/// `keep`, returning the kept values in stream order and the number drawn.
fn collect_passing<T: Send>(
    stream: RandomGraphs,
    target: usize,
    cap: usize,
    keep: impl Fn(&Graph) -> Option<T> + Sync,
) -> (Vec<T>, usize) {
    let mut out = Vec::with_capacity(target);
    let mut drawn = 0;
    let mut stream = stream;
    while out.len() < target && drawn < cap {
        let chunk: Vec<Graph> = stream.by_ref().take(20_000).collect();
        drawn += chunk.len();
        let kept: Vec<Option<T>> = chunk.par_iter().map(&keep).collect();
        out.extend(kept.into_iter().flatten());
    }
    out.truncate(target);
    (out, drawn)
}

fn main() {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs())
        .build_global()
        .ok();
    let mut gate = Gate { failed: 0 };
    let mut witnesses_ok: u64 = 0;
    let mut witnesses_bad: u64 = 0;

    // 1. Fast detector against the subset oracle on every labeled 7-vertex graph.
    let t = Instant::now();
    let lab = enumerate_labeled(7).unwrap();
    let stats = (0..lab.total())
        .into_par_iter()
        .map(|mask| detect_one(mask, &lab.graph(mask)))
        .reduce(DetectStats::default, DetectStats::merge);
    witnesses_ok += stats.witnesses_ok;
    witnesses_bad += stats.witnesses_bad;
    gate.record(
        1,
        "oracle equivalence",
        stats.agree == lab.total() && stats.budget == 0,
        format!(
            "{}/{} agree, {} contain K4+ subdivisions, {} budget outcomes, first disagreement {:?}, {:.1}s",
            stats.agree,
            stats.graphs,
            stats.found,
            stats.budget,
            stats.first_disagreement,
            t.elapsed().as_secs_f64()
        ),
    );

    // 3 and 4 on labeled graphs.
    let labeled = |filters: Vec<Filter>| {
        let mut cfg = CampaignConfig::new(Source::Labeled, 7);
        cfg.filters = filters;
        cfg.jobs = jobs();
        check_cited_bounds(&cfg).unwrap()
    };
    let t = Instant::now();
    let tf_labeled = labeled(vec![Filter::TriangleFree, Filter::Isk4Free]);
    let isk4_labeled = labeled(vec![Filter::Isk4Free]);

    let (tf_random, tf_drawn) = collect_passing(
        RandomGraphs::new(RandomModel::TriangleFree { p: None }, 8, 14, SEED).unwrap(),
        100_000,
        5_000_000,
        |g| {
            passes_filters(
                g,
                &[Filter::TriangleFree, Filter::Isk4Free],
                Budget::UNLIMITED,
            )
            .unwrap()
            .then(|| {
                (
                    chromatic_number(g, Budget::UNLIMITED).unwrap(),
                    g.to_graph6(),
                )
            })
        },
    );
    let tf_max = tf_random.iter().map(|r| r.0).max().unwrap_or(0);
    let tf_bad: Vec<&String> = tf_random.iter().filter(|r| r.0 > 3).map(|r| &r.1).collect();
    gate.record(
        3,
        "triangle-free ISK4-free graphs have chi <= 3",
        tf_labeled.violations.is_empty() && tf_random.len() == 100_000 && tf_bad.is_empty(),
        format!(
            "labeled n<=7: {} graphs, max chi {} ({}); random n in [8,14]: {} graphs (of {} drawn), max chi {}, {} violations {:?}, {:.1}s",
            tf_labeled.checked,
            tf_labeled.max_chi,
            tf_labeled.max_chi_graph6.clone().unwrap_or_default(),
            tf_random.len(),
            tf_drawn,
            tf_max,
            tf_bad.len(),
            tf_bad.first(),
            t.elapsed().as_secs_f64()
        ),
    );

    let t = Instant::now();
    let (isk4_random, isk4_drawn) = collect_passing(
        RandomGraphs::new(RandomModel::Gnp { p: None }, 8, 14, SEED + 1).unwrap(),
        100_000,
        5_000_000,
        |g| {
            passes_filters(g, &[Filter::Isk4Free], Budget::UNLIMITED)
                .unwrap()
                .then(|| {
                    (
                        chromatic_number(g, Budget::UNLIMITED).unwrap(),
                        g.to_graph6(),
                    )
                })
        },
    );
    let all_max = isk4_random
        .iter()
        .chain(&tf_random)
        .map(|r| r.0)
        .max()
        .unwrap_or(0);
    let max_graph = isk4_random
        .iter()
        .chain(&tf_random)
        .find(|r| r.0 == all_max)
        .map(|r| r.1.clone());
    let over: usize = isk4_random
        .iter()
        .chain(&tf_random)
        .filter(|r| r.0 > 24)
        .count();
    gate.record(
        4,
        "ISK4-free graphs have chi <= 24",
        isk4_labeled.violations.is_empty() && over == 0 && isk4_random.len() == 100_000,
        format!(
            "labeled n<=7: {} graphs, max chi {} ({}); random n in [8,14]: {} G(n,p) graphs (of {} drawn) plus the {} triangle-free ones, max chi {} ({}), {:.1}s",
            isk4_labeled.checked,
            isk4_labeled.max_chi,
            isk4_labeled.max_chi_graph6.clone().unwrap_or_default(),
            isk4_random.len(),
            isk4_drawn,
            tf_random.len(),
            all_max,
            max_graph.unwrap_or_default(),
            t.elapsed().as_secs_f64()
        ),
    );

    // 5. Claims contrapositive suite.
    let t = Instant::now();
    let claims = |model: RandomModel, seed: u64| {
        let mut cfg = CampaignConfig::new(
            Source::Random {
                model,
                count: 10_000,
                min_n: 8,
                seed,
            },
            14,
        );
        cfg.jobs = jobs();
        cfg.budget = DETECT_BUDGET;
        verify_claims_campaign(&cfg).unwrap()
    };
    let planted = claims(RandomModel::Planted, SEED + 2);
    let random_k44 = claims(RandomModel::PlantedK44 { p: None }, SEED + 3);
    witnesses_ok += (planted.witnesses_verified + random_k44.witnesses_verified) as u64;
    let describe = |r: &isk4plus::harness::ClaimsReport| {
        format!(
            "{} checked, {} hold all claims, violations {}/{}/{}, {} ISK4+-free, {} cutsets verified, {} budget, {} failures",
            r.checked,
            r.all_claims_hold,
            r.claim1_violations,
            r.claim2_violations,
            r.claim3_violations,
            r.isk4plus_free,
            r.cutsets_verified,
            r.budget_exhausted,
            r.failures.len()
        )
    };
    let ok = |r: &isk4plus::harness::ClaimsReport| {
        r.checked == 10_000
            && r.failures.is_empty()
            && r.budget_exhausted == 0
            && r.oracle_confirmed == 10_000
    };
    gate.record(
        5,
        "claims contrapositive suite",
        ok(&planted) && ok(&random_k44),
        format!(
            "planted: {}; random with induced K4,4: {}; first failure {:?}; {:.1}s",
            describe(&planted),
            describe(&random_k44),
            planted.failures.first().or(random_k44.failures.first()),
            t.elapsed().as_secs_f64()
        ),
    );

    // 6. Properness on arbitrary graphs, no fallback on the class.
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let arbitrary: Vec<Graph> = (0..10_000)
        .map(|_| {
            let n = rng.gen_range(1..=20);
            let p = rng.gen_range(0.05..0.95);
            gnp(&mut rng, n, p)
        })
        .collect();
    let improper = arbitrary
        .par_iter()
        .filter(|g| {
            let (c, _) = color_isk4plus_free(g, ColoringOptions::default()).unwrap();
            verify_proper(g, &c).is_err()
        })
        .count();

    let n8 = read_graph6_lines(
        fs::File::open(fixture("all_graphs_n1_8.g6"))
            .map(std::io::BufReader::new)
            .unwrap(),
    )
    .unwrap();
    let mut class: Vec<Graph> = n8.clone();
    class.extend(
        RandomGraphs::new(RandomModel::Planted, 8, 14, SEED + 5)
            .unwrap()
            .take(10_000),
    );
    class.extend(
        RandomGraphs::new(RandomModel::Gnp { p: None }, 9, 14, SEED + 6)
            .unwrap()
            .take(10_000),
    );
    let (free, fallbacks, class_improper) = class
        .par_iter()
        .filter(|g| find_isk4plus_oracle(g).unwrap().is_none())
        .map(|g| {
            let (c, trace) = color_isk4plus_free(g, ColoringOptions::default()).unwrap();
            (
                1usize,
                trace.fallbacks().len(),
                usize::from(verify_proper(g, &c).is_err()),
            )
        })
        .reduce(|| (0, 0, 0), |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2));
    gate.record(
        6,
        "colouring totality and properness",
        improper == 0 && fallbacks == 0 && class_improper == 0,
        format!(
            "{} arbitrary graphs (n<=20), {} improper; {} oracle-verified ISK4+-free graphs (n<=14), {} fallback nodes, {} improper; {:.1}s",
            arbitrary.len(),
            improper,
            free,
            fallbacks,
            class_improper,
            t.elapsed().as_secs_f64()
        ),
    );

    // 7. Quality table over all ISK4+-free graphs up to isomorphism, n <= 8.
    let t = Instant::now();
    let mut cfg = CampaignConfig::new(Source::Graphs(n8.clone()), 8);
    cfg.filters = vec![Filter::Isk4PlusFree];
    cfg.jobs = jobs();
    let quality = coloring_quality(&cfg).unwrap();
    let mut table = Vec::new();
    write_csv(&quality.rows, &mut table).unwrap();
    let graphs: usize = quality.rows.iter().map(|r| r.graphs).sum();
    gate.record(
        7,
        "colouring quality report",
        quality.failures.is_empty() && graphs > 0,
        format!(
            "{} ISK4+-free graphs of {} isomorphism classes, {} failures, {:.1}s; palette - chi per n:\n{}",
            graphs,
            quality.seen,
            quality.failures.len(),
            t.elapsed().as_secs_f64(),
            String::from_utf8(table).unwrap().trim_end()
        ),
    );

    // 8. Determinism under different worker counts.
    let t = Instant::now();
    let render = |jobs: usize| -> Vec<u8> {
        let mut out = Vec::new();
        let random = |model, count, min_n, max_n| {
            let mut c = CampaignConfig::new(
                Source::Random {
                    model,
                    count,
                    min_n,
                    seed: SEED + 7,
                },
                max_n,
            );
            c.jobs = jobs;
            c
        };
        let mut survey = random(RandomModel::Gnp { p: None }, 3_000, 4, 10);
        survey.filters = vec![Filter::Isk4PlusFree];
        write_csv(&survey_chi_vs_omega(&survey).unwrap().rows, &mut out).unwrap();
        let mut labeled = CampaignConfig::new(Source::Labeled, 6);
        labeled.jobs = jobs;
        labeled.filters = vec![Filter::Isk4Free];
        write_json(&check_cited_bounds(&labeled).unwrap(), &mut out).unwrap();
        write_json(
            &verify_claims_campaign(&random(RandomModel::Planted, 2_000, 8, 14)).unwrap(),
            &mut out,
        )
        .unwrap();
        let quality =
            coloring_quality(&random(RandomModel::Gnp { p: None }, 2_000, 1, 12)).unwrap();
        write_json(&quality, &mut out).unwrap();
        out
    };
    let one = render(1);
    let eight = render(8);
    let again = render(8);
    gate.record(
        8,
        "determinism",
        one == eight && eight == again,
        format!(
            "{} report bytes, jobs 1 vs 8 identical: {}, repeated run identical: {}, {:.1}s",
            one.len(),
            one == eight,
            eight == again,
            t.elapsed().as_secs_f64()
        ),
    );

    // 9. graph6 round trip.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 8);
    let mut random_ok = 0;
    for _ in 0..1_000 {
        let n = rng.gen_range(0..=100);
        let p = rng.gen_range(0.0..1.0);
        let g = gnp(&mut rng, n, p);
        let s = g.to_graph6();
        let back = Graph::from_graph6(&s).unwrap();
        if back == g && back.to_graph6() == s {
            random_ok += 1;
        }
    }
    let records = fs::read_to_string(fixture("graph6_records.tsv")).unwrap();
    let (mut hand_total, mut hand_ok) = (0, 0);
    for line in records
        .lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
    {
        hand_total += 1;
        let mut cols = line.split('\t');
        let (rec, n, edges) = (
            cols.next().unwrap(),
            cols.next().unwrap(),
            cols.next().unwrap_or(""),
        );
        let n: usize = n.parse().unwrap();
        let edges: Vec<(usize, usize)> = edges
            .split_whitespace()
            .map(|e| {
                let (u, v) = e.split_once('-').unwrap();
                (u.parse().unwrap(), v.parse().unwrap())
            })
            .collect();
        let expected = Graph::from_edges(n, &edges).unwrap();
        if Graph::from_graph6(rec).is_ok_and(|g| g == expected) && expected.to_graph6() == rec {
            hand_ok += 1;
        }
    }
    let text = fs::read_to_string(fixture("all_graphs_n1_8.g6")).unwrap();
    let geng_ok = text
        .lines()
        .zip(&n8)
        .filter(|(l, g)| g.to_graph6() == *l)
        .count();
    gate.record(
        9,
        "graph6 round trip",
        random_ok == 1_000 && hand_ok == hand_total && hand_total > 0 && geng_ok == n8.len(),
        format!(
            "random n<=100: {random_ok}/1000 byte-exact; hand-written records: {hand_ok}/{hand_total}; generator output: {geng_ok}/{}",
            n8.len()
        ),
    );

    // 2 is reported last: it counts witnesses from 1 and 5.
    gate.record(
        2,
        "witness soundness",
        witnesses_bad == 0 && witnesses_ok >= 100_000,
        format!("{witnesses_ok} witnesses re-verified, {witnesses_bad} invalid"),
    );

    if gate.failed > 0 {
        println!("{} criteria failed", gate.failed);
        std::process::exit(1);
    }
    println!("all criteria passed");
}
