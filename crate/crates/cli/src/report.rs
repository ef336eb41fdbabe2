//! Summary of a bench CSV: one row per (family, builder, t, dimension).

use anyhow::Result;
use serde::Serialize;

use crate::bench::{fitted_exponents, series, BenchRow};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub family: String,
    pub builder: String,
    pub t: u32,
    pub dimension: usize,
    pub points: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub max_bound_ratio: Option<f64>,
    pub fitted_exponent: Option<f64>,
    pub timeouts: usize,
}

pub fn summarize(rows: &[BenchRow]) -> Vec<SummaryRow> {
    let fits = fitted_exponents(rows);
    series(rows)
        .into_iter()
        .map(|(key, s)| {
            let (family, builder, t, dimension) = key.clone();
            let same = |r: &&BenchRow| r.family == family && r.builder == builder && r.t == t && r.dimension == dimension;
            let max_ratio = rows.iter().filter(same).filter_map(|r| r.bound_ratio).fold(None, |m: Option<f64>, x| Some(m.map_or(x, |m| m.max(x))));
            SummaryRow {
                points: s.len(),
                n_min: s.first().map_or(0, |p| p.0 as usize),
                n_max: s.last().map_or(0, |p| p.0 as usize),
                max_bound_ratio: max_ratio,
                fitted_exponent: fits.get(&key).copied().flatten(),
                timeouts: rows.iter().filter(same).filter(|r| r.status == "timeout").count(),
                family,
                builder,
                t,
                dimension,
            }
        })
        .collect()
}

pub fn write_summary(rows: &[SummaryRow]) -> Result<String> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record(["family", "builder", "t", "dimension", "points", "n_min", "n_max", "max_bound_ratio", "fitted_exponent", "timeouts"])?;
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(n: usize, edges: usize, seed: u64) -> BenchRow {
        BenchRow {
            family: "f".into(),
            n,
            dimension: 2,
            builder: "greedy".into(),
            t: 3,
            edges: Some(edges),
            graph_edges: Some(edges),
            bound_ratio: Some(edges as f64 / n as f64),
            verify_ok: Some(true),
            fitted_exponent: None,
            seed,
            runtime_ms: None,
            status: "ok".into(),
        }
    }

    #[test]
    fn exponent_of_squares() {
        let rows: Vec<BenchRow> = [(4, 16), (8, 64), (16, 256)].iter().flat_map(|&(n, e)| [row(n, e, 0), row(n, e, 1)]).collect();
        let s = summarize(&rows);
        assert_eq!(s.len(), 1);
        assert!((s[0].fitted_exponent.unwrap() - 2.0).abs() < 1e-12);
        assert_eq!((s[0].points, s[0].n_min, s[0].n_max, s[0].max_bound_ratio), (3, 4, 16, Some(16.0)));
    }
}
