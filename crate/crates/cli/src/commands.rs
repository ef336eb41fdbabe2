use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hopspan::generators::generate;
use hopspan::graph::{build_graph, verify_edges, GraphError, GraphMode, IntersectionGraph};
use hopspan::instance::{GenSpec, Instance};
use hopspan::io::{read_edge_list, write_edge_list};
use hopspan::spanners::{build_with_graph, BuildConfig, BuilderId, Fallback, Oracle};

use crate::bench::{run_bench, write_csv, Sweep};
use crate::report::{summarize, write_summary};

/// Exit code for a failed verification.
pub const EXIT_VERIFY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "hopspan", version, about = "Hop spanners of geometric intersection graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Intersection graph of an instance as an edge list.
    Graph(GraphArgs),
    /// Build and verify a spanner.
    Build(BuildArgs),
    /// Check a spanner edge list against a graph.
    Verify(VerifyArgs),
    /// Run a sweep and write one CSV row per cell.
    Bench(BenchArgs),
    /// Summarize a bench CSV with fitted exponents.
    Report(ReportArgs),
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub k: Option<u64>,
    #[arg(long)]
    pub n: Option<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    /// Scale `M` (side length or radius, family dependent).
    #[arg(long)]
    pub m: Option<String>,
    /// Digit base.
    #[arg(long)]
    pub b: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long)]
    pub aspect: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GraphArgs {
    #[arg(long)]
    pub instance: PathBuf,
    /// Only the U x V edges of a labelled instance (always on for
    /// incidence families).
    #[arg(long)]
    pub bipartite_only: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FallbackArg {
    Direct,
    Fail,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub builder: String,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub oracle: Option<String>,
    /// Partition fan-out of the recursive builder.
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long)]
    pub t_net: Option<usize>,
    #[arg(long)]
    pub group_size: Option<usize>,
    /// Alignment constant of the fat builders.
    #[arg(long)]
    pub c: Option<u32>,
    #[arg(long, value_enum, default_value = "direct")]
    pub fallback: FallbackArg,
    #[arg(long)]
    pub bipartite_only: bool,
    /// Spanner edge list; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// JSON stats; defaults to `<out>.stats.json`, or stderr without `--out`.
    #[arg(long)]
    pub stats: Option<PathBuf>,
    /// Include wall-clock build time in the stats.
    #[arg(long)]
    pub timings: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Graph edge list.
    #[arg(long, required_unless_present = "instance", conflicts_with = "instance")]
    pub graph: Option<PathBuf>,
    /// Or an instance whose intersection graph is computed.
    #[arg(long)]
    pub instance: Option<PathBuf>,
    #[arg(long)]
    pub bipartite_only: bool,
    #[arg(long)]
    pub spanner: PathBuf,
    #[arg(long)]
    pub t: u32,
    /// Vertex count when reading edge lists; defaults to the largest id + 1.
    #[arg(long)]
    pub n: Option<usize>,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// JSON sweep file; flags below override nothing and are ignored when given.
    #[arg(long)]
    pub sweep: Option<PathBuf>,
    #[arg(long, value_delimiter = ',')]
    pub family: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub builder: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub n: Vec<u64>,
    #[arg(long, value_delimiter = ',', default_value = "0")]
    pub seed: Vec<u64>,
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long)]
    pub t: Option<u32>,
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long)]
    pub aspect: Option<f64>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub oracle: Option<String>,
    #[arg(long)]
    pub r: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    #[arg(long, default_value_t = 60_000)]
    pub timeout_ms: u64,
    #[arg(long)]
    pub timings: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReportArgs {
    pub input: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
}

pub fn load_instance(p: &Path) -> Result<Instance> {
    Instance::from_json(&read(p)?).with_context(|| format!("parsing instance {}", p.display()))
}

fn mode(inst: &Instance, bipartite_only: bool) -> GraphMode {
    if bipartite_only || inst.incidence_only() {
        GraphMode::BipartiteOnly
    } else {
        GraphMode::Full
    }
}

/// Runs a parsed command; the returned value is the process exit code.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Gen(a) => gen(a),
        Command::Graph(a) => graph(a),
        Command::Build(a) => build(a),
        Command::Verify(a) => verify(a),
        Command::Bench(a) => bench(a),
        Command::Report(a) => report(a),
    }
}

fn gen(a: GenArgs) -> Result<i32> {
    let mut spec = GenSpec::new(&a.family);
    spec.k = a.k;
    spec.n = a.n;
    spec.d = a.d;
    spec.m = a.m;
    spec.b = a.b;
    spec.seed = a.seed;
    spec.density = a.density;
    spec.aspect = a.aspect;
    spec.p = a.p;
    let inst = generate(&spec)?;
    emit(a.out.as_deref(), &(inst.to_json()? + "\n"))?;
    Ok(0)
}

fn graph(a: GraphArgs) -> Result<i32> {
    let inst = load_instance(&a.instance)?;
    let g = build_graph(&inst, mode(&inst, a.bipartite_only))?;
    let edges: Vec<(u32, u32)> = g.edges().collect();
    emit(a.out.as_deref(), &write_edge_list(&edges))?;
    Ok(0)
}

#[derive(Serialize)]
struct BuildOutput<'a> {
    #[serde(flatten)]
    stats: &'a hopspan::graph::SpannerStats,
    verified: bool,
}

fn build(a: BuildArgs) -> Result<i32> {
    let inst = load_instance(&a.instance)?;
    let builder: BuilderId = a.builder.parse()?;
    let mut cfg = BuildConfig::new(builder).with_seed(a.seed);
    if let Some(t) = a.t {
        cfg.t = t;
    }
    if let Some(o) = &a.oracle {
        cfg.oracle = o.parse::<Oracle>()?;
    }
    if let Some(r) = a.r {
        cfg.r = r;
    }
    if let Some(tn) = a.t_net {
        cfg.t_net = tn;
    }
    cfg.group_size = a.group_size;
    cfg.c = a.c;
    cfg.fallback = match a.fallback {
        FallbackArg::Direct => Fallback::DirectEdge,
        FallbackArg::Fail => Fallback::Fail,
    };
    cfg.bipartite_only = a.bipartite_only;
    let start = Instant::now();
    let g = build_graph(&inst, cfg.graph_mode_for(&inst))?;
    let mut h = build_with_graph(&inst, &g, &cfg)?;
    if a.timings {
        h.stats.build_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let report = verify_edges(&g, &h.edges, cfg.t)?;
    emit(a.out.as_deref(), &write_edge_list(&h.edges))?;
    let stats = serde_json::to_string_pretty(&BuildOutput { stats: &h.stats, verified: report.ok })? + "\n";
    match (&a.stats, &a.out) {
        (Some(p), _) => fs::write(p, stats)?,
        (None, Some(o)) => fs::write(format!("{}.stats.json", o.display()), stats)?,
        (None, None) => eprint!("{stats}"),
    }
    if let Some((u, v)) = report.worst_edge {
        eprintln!("verification failed at t={}: violating edge {u} {v}", cfg.t);
        return Ok(EXIT_VERIFY);
    }
    Ok(0)
}

#[derive(Serialize)]
struct VerifyOutput {
    ok: bool,
    t: u32,
    graph_edges: usize,
    spanner_edges: usize,
    violating_edge: Option<(u32, u32)>,
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let h = read_edge_list(&read(&a.spanner)?).with_context(|| format!("parsing {}", a.spanner.display()))?;
    let g = match (&a.graph, &a.instance) {
        (Some(p), _) => {
            let edges = read_edge_list(&read(p)?).with_context(|| format!("parsing {}", p.display()))?;
            let top = edges.iter().chain(&h).map(|&(_, v)| v as usize + 1).max().unwrap_or(0);
            IntersectionGraph::from_edges(a.n.unwrap_or(top), &edges, None)
        }
        (None, Some(p)) => {
            let inst = load_instance(p)?;
            build_graph(&inst, mode(&inst, a.bipartite_only))?
        }
        (None, None) => bail!("need --graph or --instance"),
    };
    let report = match verify_edges(&g, &h, a.t) {
        Err(GraphError::NotSubgraph(u, v)) => {
            eprintln!("spanner edge {u} {v} is not a graph edge");
            return Ok(EXIT_VERIFY);
        }
        r => r?,
    };
    let out = VerifyOutput { ok: report.ok, t: a.t, graph_edges: g.edge_count(), spanner_edges: h.len(), violating_edge: report.worst_edge };
    println!("{}", serde_json::to_string(&out)?);
    if let Some((u, v)) = report.worst_edge {
        eprintln!("violating edge {u} {v}: no path of at most {} hops", a.t);
        return Ok(EXIT_VERIFY);
    }
    Ok(0)
}

fn bench(a: BenchArgs) -> Result<i32> {
    let sweep = match &a.sweep {
        Some(p) => serde_json::from_str::<Sweep>(&read(p)?).with_context(|| format!("parsing sweep {}", p.display()))?,
        None => {
            let builders = a.builder.iter().map(|b| b.parse::<BuilderId>()).collect::<Result<Vec<_>, _>>()?;
            let fams: Vec<&str> = a.family.iter().map(String::as_str).collect();
            let mut s = Sweep::new(&fams, &builders, &a.n, &a.seed);
            s.d = a.d;
            s.t = a.t;
            s.density = a.density;
            s.aspect = a.aspect;
            s.p = a.p;
            s.oracle = a.oracle.as_deref().map(str::parse).transpose()?;
            s.r = a.r;
            s.workers = a.workers;
            s.timeout_ms = a.timeout_ms;
            s.timings = a.timings;
            s
        }
    };
    let out = run_bench(&sweep)?;
    for s in &out.skipped {
        eprintln!("skipped: {s}");
    }
    if !out.failures.is_empty() {
        for f in &out.failures {
            eprintln!("FAILED: {f}");
        }
        return Ok(EXIT_VERIFY);
    }
    emit(a.out.as_deref(), &write_csv(&out.rows)?)?;
    Ok(0)
}

fn report(a: ReportArgs) -> Result<i32> {
    let rows = crate::bench::read_csv(&read(&a.input)?)?;
    emit(a.out.as_deref(), &write_summary(&summarize(&rows))?)?;
    Ok(0)
}
