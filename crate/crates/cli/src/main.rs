//! `isk4p`: detectors, colouring, claim verification and campaigns for
//! graphs with no induced subdivision of K4+.
//!
//! Exit codes: 0 success, 2 assertion failure found by a campaign, 3 search
//! budget exhausted, 64 usage error, 65 malformed input, 66 unreadable
//! input, 70 internal error (an improper colouring under `--verify` is one).

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use isk4plus::coloring::{
    color_isk4plus_free, verify_proper, ColoringError, ColoringOptions, ColoringTrace,
};
use isk4plus::detect::{find_subdivision, Pattern, SubdivisionWitness};
use isk4plus::graph::{parse_dimacs, parse_edge_list, read_graph6_lines, ParseError};
use isk4plus::harness::{
    check_cited_bounds, survey_chi_vs_omega, verify_claims_campaign, write_csv, write_json,
    CampaignConfig, Filter, HarnessError, RandomModel, Source,
};
use isk4plus::{Budget, Graph};

const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(
    name = "isk4p",
    version,
    about = "Graphs with no induced subdivision of K4+"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search each input graph for an induced subdivision; one JSON line per graph.
    Detect(DetectArgs),
    /// Colour each input graph recursively; one JSON line per graph.
    Color(ColorArgs),
    /// Check the three structural claims on graphs with an induced K4,4.
    VerifyClaims(CampaignArgs),
    /// Largest chromatic number per (n, clique number).
    Survey(SurveyArgs),
    /// Check chi <= 3 (triangle-free, ISK4-free) or chi <= 24 (ISK4-free).
    CheckBounds(CampaignArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Edgelist,
    Dimacs,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or "-" for standard input.
    #[arg(default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    /// Write output here instead of standard output.
    #[arg(long, short)]
    output: Option<String>,
    /// Node budget per search; unlimited when absent.
    #[arg(long)]
    budget: Option<u64>,
    /// Worker threads.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum PatternArg {
    /// Subdivisions of K4 on at least five vertices.
    K4plus,
    /// All subdivisions of K4.
    K4,
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    io: InputArgs,
    #[arg(long, value_enum, default_value = "k4plus")]
    pattern: PatternArg,
}

#[derive(Args)]
struct ColorArgs {
    #[command(flatten)]
    io: InputArgs,
    /// Find K_{s,s} with s = R(4, k) and extract the induced K4,4 from it.
    #[arg(long)]
    via_ramsey: bool,
    /// Re-check properness before exiting.
    #[arg(long)]
    verify: bool,
    /// Clique bound; the clique number when absent.
    #[arg(long)]
    k: Option<usize>,
    /// Graphs this small get distinct colours; k when absent.
    #[arg(long)]
    base_size: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModelArg {
    Gnp,
    TriangleFree,
    Planted,
    PlantedK44,
}

#[derive(Args)]
struct CampaignArgs {
    /// graph6 stream ("-" for standard input). Without it, graphs come from
    /// --model, or from labeled enumeration up to --max-n.
    input: Option<String>,
    /// Random model to sample from.
    #[arg(long, value_enum)]
    model: Option<ModelArg>,
    /// Number of random graphs.
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Smallest random graph.
    #[arg(long, default_value_t = 8)]
    min_n: usize,
    /// Largest graph considered (labeled enumeration: at most 7).
    #[arg(long)]
    max_n: Option<usize>,
    /// Edge probability; drawn from {0.2, 0.5, 0.8} per graph when absent.
    #[arg(long)]
    p: Option<f64>,
    /// Filters every counted graph must pass (repeat or comma-separate).
    #[arg(long, value_delimiter = ',')]
    filter: Vec<Filter>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Node budget per search and graph.
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, short)]
    output: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct SurveyArgs {
    #[command(flatten)]
    campaign: CampaignArgs,
    #[arg(long, value_enum, default_value = "csv")]
    report: ReportFormat,
}

/// A failure and the exit code it maps to.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Input(ParseError),
    Unreadable(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Input(_) => 65,
            Failure::Unreadable(_) => 66,
            Failure::Internal(_) => 70,
        }
    }
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        match e {
            HarnessError::Output(m) => Failure::Internal(m),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn budget(nodes: Option<u64>) -> Budget {
    nodes.map_or(Budget::UNLIMITED, Budget::nodes)
}

fn read_input(path: &str) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    let res = if path == "-" {
        io::stdin().read_to_end(&mut buf)
    } else {
        File::open(path).and_then(|mut f| f.read_to_end(&mut buf))
    };
    res.map_err(|e| Failure::Unreadable(format!("{path}: {e}")))?;
    Ok(buf)
}

fn read_graphs(path: &str, format: Format) -> Result<Vec<Graph>, Failure> {
    let bytes = read_input(path)?;
    let text = || {
        String::from_utf8(bytes.clone()).map_err(|e| {
            let line = 1 + bytes[..e.utf8_error().valid_up_to()]
                .iter()
                .filter(|&&b| b == b'\n')
                .count();
            Failure::Input(ParseError {
                line,
                message: "input is not UTF-8".into(),
            })
        })
    };
    match format {
        Format::Graph6 => read_graph6_lines(BufReader::new(&bytes[..])).map_err(Failure::Input),
        Format::Edgelist => Ok(vec![parse_edge_list(&text()?).map_err(Failure::Input)?]),
        Format::Dimacs => Ok(vec![parse_dimacs(&text()?).map_err(Failure::Input)?]),
    }
}

fn open_output(path: &Option<String>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Failure::Usage(format!("{p}: {e}")))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn pool(jobs: usize) -> Result<rayon::ThreadPool, Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Failure::Internal(e.to_string()))
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer(&mut *out, value).map_err(|e| Failure::Internal(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

#[derive(Serialize)]
struct DetectLine {
    input_index: usize,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<SubdivisionWitness>,
}

fn detect(args: DetectArgs) -> Result<u8, Failure> {
    let graphs = read_graphs(&args.io.input, args.io.format)?;
    let pattern = match args.pattern {
        PatternArg::K4plus => Pattern::K4Plus,
        PatternArg::K4 => Pattern::K4,
    };
    let b = budget(args.io.budget);
    let outcomes: Vec<_> = pool(args.io.jobs)?.install(|| {
        graphs
            .par_iter()
            .map(|g| find_subdivision(g, pattern, b))
            .collect()
    });
    let mut out = open_output(&args.io.output)?;
    let mut exhausted = false;
    for (i, o) in outcomes.into_iter().enumerate() {
        exhausted |= o.is_budget_exceeded();
        let verdict = o.verdict();
        json_line(
            &mut out,
            &DetectLine {
                input_index: i,
                verdict,
                witness: o.found(),
            },
        )?;
    }
    out.flush()?;
    Ok(if exhausted { 3 } else { 0 })
}

#[derive(Serialize)]
struct ColorLine {
    input_index: usize,
    palette_size: usize,
    colors: Vec<usize>,
    trace: ColoringTrace,
}

fn color(args: ColorArgs) -> Result<u8, Failure> {
    let graphs = read_graphs(&args.io.input, args.io.format)?;
    let opts = ColoringOptions {
        k: args.k,
        base_size: args.base_size,
        via_ramsey: args.via_ramsey,
        budget: budget(args.io.budget),
    };
    let results: Vec<_> = pool(args.io.jobs)?.install(|| {
        graphs
            .par_iter()
            .map(|g| color_isk4plus_free(g, opts))
            .collect()
    });
    let mut out = open_output(&args.io.output)?;
    let mut code = 0;
    for (i, (g, r)) in graphs.iter().zip(results).enumerate() {
        match r {
            Ok((c, trace)) => {
                if args.verify {
                    if let Err(e) = verify_proper(g, &c) {
                        eprintln!("graph {i}: improper colouring: {e}");
                        code = 70;
                    }
                }
                json_line(
                    &mut out,
                    &ColorLine {
                        input_index: i,
                        palette_size: c.palette_size(),
                        colors: c.into_colors(),
                        trace,
                    },
                )?;
            }
            Err(ColoringError::BudgetExceeded { limit, partial }) => {
                eprintln!("graph {i}: search budget of {limit} nodes exhausted");
                json_line(
                    &mut out,
                    &serde_json::json!({ "input_index": i, "budget_exhausted": true, "partial_trace": partial }),
                )?;
                if code == 0 {
                    code = 3;
                }
            }
            Err(e @ ColoringError::RamseyUnknown { .. }) => {
                return Err(Failure::Usage(e.to_string()))
            }
            Err(e) => return Err(Failure::Internal(e.to_string())),
        }
    }
    out.flush()?;
    Ok(code)
}

fn campaign_config(a: &CampaignArgs) -> Result<CampaignConfig, Failure> {
    let seed = a.seed.unwrap_or(DEFAULT_SEED);
    eprintln!("seed: {seed}");
    let (source, max_n) = match (&a.input, a.model) {
        (Some(_), Some(_)) => {
            return Err(Failure::Usage(
                "give either an input stream or --model, not both".into(),
            ))
        }
        (Some(path), None) => (
            Source::Graphs(read_graphs(path, Format::Graph6)?),
            a.max_n.unwrap_or(isk4plus::graph::MAX_VERTICES),
        ),
        (None, Some(m)) => {
            let model = match m {
                ModelArg::Gnp => RandomModel::Gnp { p: a.p },
                ModelArg::TriangleFree => RandomModel::TriangleFree { p: a.p },
                ModelArg::Planted => RandomModel::Planted,
                ModelArg::PlantedK44 => RandomModel::PlantedK44 { p: a.p },
            };
            (
                Source::Random {
                    model,
                    count: a.count,
                    min_n: a.min_n,
                    seed,
                },
                a.max_n.unwrap_or(14),
            )
        }
        (None, None) => (Source::Labeled, a.max_n.unwrap_or(5)),
    };
    let cfg = CampaignConfig {
        source,
        filters: a.filter.clone(),
        max_n,
        budget: budget(a.budget),
        jobs: a.jobs,
    };
    cfg.validate()?;
    Ok(cfg)
}

fn verify_claims(a: CampaignArgs) -> Result<u8, Failure> {
    let cfg = campaign_config(&a)?;
    let r = verify_claims_campaign(&cfg)?;
    write_json(&r, open_output(&a.output)?)?;
    eprintln!(
        "{} graphs, {} with an induced K4,4, {} hold all claims, {} failures, {} budget",
        r.seen,
        r.checked,
        r.all_claims_hold,
        r.failures.len(),
        r.budget_exhausted
    );
    Ok(if !r.failures.is_empty() {
        2
    } else if r.budget_exhausted > 0 {
        3
    } else {
        0
    })
}

fn survey(a: SurveyArgs) -> Result<u8, Failure> {
    let cfg = campaign_config(&a.campaign)?;
    let r = survey_chi_vs_omega(&cfg)?;
    let out = open_output(&a.campaign.output)?;
    match a.report {
        ReportFormat::Csv => write_csv(&r.rows, out)?,
        ReportFormat::Json => write_json(&r, out)?,
    }
    eprintln!(
        "{} graphs, {} passed the filters, {} budget",
        r.seen, r.passed, r.budget_exhausted
    );
    Ok(if r.budget_exhausted > 0 { 3 } else { 0 })
}

fn check_bounds(a: CampaignArgs) -> Result<u8, Failure> {
    let mut cfg = campaign_config(&a)?;
    if cfg.filters.is_empty() {
        cfg.filters = vec![Filter::Isk4Free];
    }
    let r = check_cited_bounds(&cfg)?;
    write_json(&r, open_output(&a.output)?)?;
    eprintln!(
        "{} graphs checked against chi <= {}, max chi {}, {} violations",
        r.checked,
        r.bound,
        r.max_chi,
        r.violations.len()
    );
    for v in &r.violations {
        eprintln!("violation: {} has chi {}", v.graph6, v.chi);
    }
    Ok(if !r.violations.is_empty() {
        2
    } else if r.budget_exhausted > 0 {
        3
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 64 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Detect(a) => detect(a),
        Command::Color(a) => color(a),
        Command::VerifyClaims(a) => verify_claims(a),
        Command::Survey(a) => survey(a),
        Command::CheckBounds(a) => check_bounds(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            match &f {
                Failure::Input(e) => eprintln!("error: malformed input: {e}"),
                Failure::Usage(m) | Failure::Unreadable(m) | Failure::Internal(m) => {
                    eprintln!("error: {m}")
                }
            }
            ExitCode::from(f.code())
        }
    }
}
