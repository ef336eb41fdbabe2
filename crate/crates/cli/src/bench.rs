//! Benchmark sweeps: families x builders x n-ladder x seeds, one CSV row per cell.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{mpsc, Mutex};
use std::thread;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};

use hopspan::generators::{generate, GenError, FAMILIES};
use hopspan::graph::{build_graph, estimate_exponent, verify_spanner};
use hopspan::instance::{GenSpec, Instance};
use hopspan::spanners::{build_with_graph, BuildConfig, BuildError, BuilderId, Oracle};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Sweep {
    pub families: Vec<String>,
    pub builders: Vec<BuilderId>,
    /// Target vertex counts; each family rounds to the nearest size it can build.
    pub ns: Vec<u64>,
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub d: Option<u64>,
    #[serde(default)]
    pub t: Option<u32>,
    #[serde(default)]
    pub density: Option<f64>,
    #[serde(default)]
    pub aspect: Option<f64>,
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default)]
    pub oracle: Option<Oracle>,
    #[serde(default)]
    pub r: Option<usize>,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_timeout")]
    pub timeout_ms: u64,
    /// Record wall-clock times; off by default so reruns are byte-identical.
    #[serde(default)]
    pub timings: bool,
}

fn default_workers() -> usize {
    1
}

fn default_timeout() -> u64 {
    60_000
}

impl Sweep {
    pub fn new(families: &[&str], builders: &[BuilderId], ns: &[u64], seeds: &[u64]) -> Sweep {
        Sweep {
            families: families.iter().map(|s| s.to_string()).collect(),
            builders: builders.to_vec(),
            ns: ns.to_vec(),
            seeds: seeds.to_vec(),
            d: None,
            t: None,
            density: None,
            aspect: None,
            p: None,
            oracle: None,
            r: None,
            workers: default_workers(),
            timeout_ms: default_timeout(),
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.ns.windows(2).any(|w| w[1] <= w[0]) {
            bail!("n ladder must be strictly increasing");
        }
        for f in &self.families {
            if !FAMILIES.iter().any(|(name, _)| name == f) {
                bail!("unknown family {f:?}");
            }
        }
        if self.workers == 0 {
            bail!("workers must be positive");
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub family: String,
    pub n: usize,
    pub dimension: usize,
    pub builder: String,
    pub t: u32,
    pub edges: Option<usize>,
    pub graph_edges: Option<usize>,
    pub bound_ratio: Option<f64>,
    pub verify_ok: Option<bool>,
    pub fitted_exponent: Option<f64>,
    pub seed: u64,
    pub runtime_ms: Option<f64>,
    /// `ok` or `timeout`.
    pub status: String,
}

pub fn default_dimension(family: &str) -> u64 {
    match family {
        "erdos" | "chazelle" | "random_balls" => 2,
        "thin_tetrahedra" | "touching_tetrahedra" | "bipartite_boxes" | "random_boxes" => 3,
        "redblue_hypercubes" => 4,
        "halfspace_lift_r5" | "congruent_balls_r5" => 5,
        _ => 0,
    }
}

fn largest_prime_at_most(x: u64) -> Option<u64> {
    (2..=x).rev().find(|&q| (2..).take_while(|i| i * i <= q).all(|i| q % i != 0))
}

/// Generator parameters giving roughly `n` vertices. Incidence families are
/// sized by their grid parameter (`3k^3` objects), digit nets by the largest
/// power of two not above `n`, the projective plane by the largest prime `q`
/// with `2(q^2 + q + 1) <= n`.
pub fn family_spec(family: &str, n: u64, seed: u64, sweep: &Sweep) -> GenSpec {
    let mut s = GenSpec::new(family);
    let d = sweep.d.unwrap_or_else(|| default_dimension(family));
    match family {
        "erdos" | "thin_tetrahedra" | "touching_tetrahedra" | "halfspace_lift_r5" | "congruent_balls_r5" => {
            s.k = Some(((n as f64 / 3.0).cbrt().round() as u64).max(1));
        }
        "chazelle" | "bipartite_boxes" | "redblue_hypercubes" => {
            s.n = Some(1u64 << (63 - n.max(1).leading_zeros()));
            s.d = Some(d);
        }
        "projective_plane" => {
            let q = (1..).take_while(|q| 2 * (q * q + q + 1) <= n).last().unwrap_or(2);
            s.k = largest_prime_at_most(q.max(2));
        }
        _ => {
            s.n = Some(n);
            s.d = Some(d);
            s.seed = Some(seed);
            s.density = sweep.density;
            s.aspect = sweep.aspect;
            s.p = sweep.p;
        }
    }
    s
}

/// Size the construction is measured against, for the bound-ratio column.
pub fn reference_bound(builder: BuilderId, n: usize, d: usize) -> f64 {
    let n = n.max(2) as f64;
    let lg = n.log2();
    match builder {
        BuilderId::Box3 => n * lg.powi(d.saturating_sub(1) as i32),
        BuilderId::Fatbox2 => n * lg.powi(d as i32 + 1),
        _ => n.powf(1.5),
    }
}

#[derive(Clone, Debug)]
pub struct Cell {
    pub family: String,
    pub target_n: u64,
    pub seed: u64,
    pub builder: BuilderId,
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Row(BenchRow),
    /// The family cannot be built at this size, or the builder does not apply.
    Skipped(String),
    /// Verification failed or the pipeline errored; aborts the sweep.
    Failed(String),
}

#[derive(Clone, Debug, Default)]
pub struct BenchOutput {
    pub rows: Vec<BenchRow>,
    pub skipped: Vec<String>,
    pub failures: Vec<String>,
}

pub fn cells(sweep: &Sweep) -> Vec<Cell> {
    let mut out = Vec::new();
    for f in &sweep.families {
        for &b in &sweep.builders {
            for &n in &sweep.ns {
                for &seed in &sweep.seeds {
                    out.push(Cell { family: f.clone(), target_n: n, seed, builder: b });
                }
            }
        }
    }
    out
}

/// Builds the instance of a cell; families without randomness ignore the seed.
pub fn cell_instance(cell: &Cell, sweep: &Sweep) -> Result<Instance, GenError> {
    generate(&family_spec(&cell.family, cell.target_n, cell.seed, sweep))
}

pub fn cell_config(cell: &Cell, sweep: &Sweep) -> BuildConfig {
    let mut cfg = BuildConfig::new(cell.builder).with_seed(cell.seed);
    if let Some(t) = sweep.t {
        cfg.t = t.max(cell.builder.stretch().unwrap_or(1));
    }
    if let Some(o) = sweep.oracle {
        cfg.oracle = o;
    }
    if let Some(r) = sweep.r {
        cfg.r = r;
    }
    cfg
}

fn timed_build(inst: Instance, cfg: BuildConfig) -> Result<(usize, usize, bool, f64), BuildError> {
    let start = Instant::now();
    let g = build_graph(&inst, cfg.graph_mode_for(&inst))?;
    let h = build_with_graph(&inst, &g, &cfg)?;
    let ok = verify_spanner(&g, &h, cfg.t)?.ok;
    Ok((h.len(), g.edge_count(), ok, start.elapsed().as_secs_f64() * 1e3))
}

pub fn run_cell(cell: &Cell, sweep: &Sweep) -> Outcome {
    let inst = match cell_instance(cell, sweep) {
        Ok(i) => i,
        Err(e) => return Outcome::Skipped(format!("{} n~{}: {e}", cell.family, cell.target_n)),
    };
    let cfg = cell_config(cell, sweep);
    let mut row = BenchRow {
        family: cell.family.clone(),
        n: inst.n,
        dimension: inst.dimension,
        builder: cell.builder.to_string(),
        t: cfg.t,
        edges: None,
        graph_edges: None,
        bound_ratio: None,
        verify_ok: None,
        fitted_exponent: None,
        seed: cell.seed,
        runtime_ms: None,
        status: "timeout".into(),
    };
    let (tx, rx) = mpsc::channel();
    // A cell past its budget is abandoned; its thread finishes in the background.
    thread::spawn(move || {
        let _ = tx.send(timed_build(inst, cfg));
    });
    match rx.recv_timeout(Duration::from_millis(sweep.timeout_ms)) {
        Err(_) => Outcome::Row(row),
        Ok(Err(BuildError::NotApplicable { reason, .. })) => Outcome::Skipped(format!("{} on {}: {reason}", cell.builder, cell.family)),
        // A side condition the family does not meet (V independent, U a clique).
        Ok(Err(BuildError::Precondition(reason))) => Outcome::Skipped(format!("{} on {}: {reason}", cell.builder, cell.family)),
        Ok(Err(e)) => Outcome::Failed(format!("{} on {} n={} seed={}: {e}", cell.builder, cell.family, row.n, cell.seed)),
        Ok(Ok((edges, graph_edges, ok, ms))) => {
            if !ok {
                return Outcome::Failed(format!(
                    "{} on {} n={} seed={}: verification failed at t={}",
                    cell.builder, cell.family, row.n, cell.seed, row.t
                ));
            }
            row.edges = Some(edges);
            row.graph_edges = Some(graph_edges);
            row.bound_ratio = Some(edges as f64 / reference_bound(cell.builder, row.n, row.dimension));
            row.verify_ok = Some(true);
            row.runtime_ms = sweep.timings.then_some(ms);
            row.status = "ok".into();
            Outcome::Row(row)
        }
    }
}

/// Runs every cell on up to `workers` threads; output order is cell order.
pub fn run_bench(sweep: &Sweep) -> Result<BenchOutput> {
    sweep.validate()?;
    let cells = cells(sweep);
    let results: Mutex<Vec<Option<Outcome>>> = Mutex::new(vec![None; cells.len()]);
    let next = AtomicUsize::new(0);
    thread::scope(|s| {
        for _ in 0..sweep.workers.min(cells.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(cell) = cells.get(i) else { break };
                let out = run_cell(cell, sweep);
                results.lock().unwrap()[i] = Some(out);
            });
        }
    });
    let mut out = BenchOutput::default();
    for r in results.into_inner().unwrap().into_iter().flatten() {
        match r {
            Outcome::Row(row) => out.rows.push(row),
            Outcome::Skipped(s) => out.skipped.push(s),
            Outcome::Failed(s) => out.failures.push(s),
        }
    }
    fill_exponents(&mut out.rows);
    Ok(out)
}

pub type GroupKey = (String, String, u32, usize);

/// `(n, mean edges over seeds)` per group of completed rows, n increasing.
pub fn series(rows: &[BenchRow]) -> BTreeMap<GroupKey, Vec<(f64, f64)>> {
    let mut acc: BTreeMap<GroupKey, BTreeMap<usize, (f64, usize)>> = BTreeMap::new();
    for r in rows {
        if let (Some(e), Some(true)) = (r.edges, r.verify_ok) {
            let slot = acc.entry((r.family.clone(), r.builder.clone(), r.t, r.dimension)).or_default().entry(r.n).or_default();
            slot.0 += e as f64;
            slot.1 += 1;
        }
    }
    acc.into_iter().map(|(k, m)| (k, m.into_iter().map(|(n, (s, c))| (n as f64, s / c as f64)).collect())).collect()
}

pub fn fitted_exponents(rows: &[BenchRow]) -> BTreeMap<GroupKey, Option<f64>> {
    series(rows).into_iter().map(|(k, s)| (k, estimate_exponent(&s).ok())).collect()
}

fn fill_exponents(rows: &mut [BenchRow]) {
    let fits = fitted_exponents(rows);
    for r in rows.iter_mut() {
        r.fitted_exponent = fits.get(&(r.family.clone(), r.builder.clone(), r.t, r.dimension)).copied().flatten();
    }
}

pub fn write_csv(rows: &[BenchRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(["family", "n", "dimension", "builder", "t", "edges", "graph_edges", "bound_ratio", "verify_ok", "fitted_exponent", "seed", "runtime_ms", "status"])?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner().context("flushing csv")?)?)
}

pub fn read_csv(text: &str) -> Result<Vec<BenchRow>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    rd.deserialize().map(|r| r.context("malformed bench row")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_header_only() {
        let out = run_bench(&Sweep::new(&[], &[], &[], &[])).unwrap();
        assert_eq!(write_csv(&out.rows).unwrap(), "family,n,dimension,builder,t,edges,graph_edges,bound_ratio,verify_ok,fitted_exponent,seed,runtime_ms,status\n");
    }

    #[test]
    fn ladder_must_increase() {
        assert!(run_bench(&Sweep::new(&["erdos"], &[BuilderId::Greedy], &[64, 64], &[0])).is_err());
        assert!(run_bench(&Sweep::new(&["nope"], &[BuilderId::Greedy], &[64], &[0])).is_err());
    }

    #[test]
    fn small_sweep_round_trips() {
        let mut s = Sweep::new(&["random_boxes", "projective_plane"], &[BuilderId::Greedy, BuilderId::Box3], &[64, 128, 300], &[0, 1]);
        s.workers = 3;
        let out = run_bench(&s).unwrap();
        assert!(out.failures.is_empty(), "{:?}", out.failures);
        // box3 needs geometry, so the projective plane rows are skipped.
        assert_eq!(out.rows.len(), 3 * 2 * 3);
        assert!(out.rows.iter().all(|r| r.status == "ok" && r.fitted_exponent.is_some()), "{}", write_csv(&out.rows).unwrap());
        let text = write_csv(&out.rows).unwrap();
        assert_eq!(read_csv(&text).unwrap(), out.rows);
        s.workers = 1;
        assert_eq!(write_csv(&run_bench(&s).unwrap().rows).unwrap(), text);
    }

    #[test]
    fn family_sizes() {
        let s = Sweep::new(&[], &[], &[], &[]);
        assert_eq!(family_spec("erdos", 192, 0, &s).k, Some(4));
        assert_eq!(family_spec("chazelle", 300, 0, &s).n, Some(256));
        assert_eq!(family_spec("projective_plane", 64, 0, &s).k, Some(5));
        assert_eq!(family_spec("projective_plane", 14, 0, &s).k, Some(2));
    }
}
