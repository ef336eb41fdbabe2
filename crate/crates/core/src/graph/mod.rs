//! Intersection graphs, hop queries, spanner verification and extremal checks.

mod build;
mod exponent;
pub mod hop;
mod k22;
mod spanner;
mod verify;

use thiserror::Error;

use crate::geometry::GeomError;
use crate::instance::Label;

pub use build::{build_graph, check_ground_truth, GraphMode, GroundTruthReport};
pub use exponent::estimate_exponent;
pub use hop::{hop_distance_leq, Adjacency, HopScratch};
pub use k22::{assert_lb_2hop, find_k22, Restrict};
pub use spanner::{Spanner, SpannerBuilder, SpannerStats};
pub use verify::{verify_edges, verify_spanner, VerifyReport};

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range")]
    InvalidVertex(u32),
    #[error("spanner edge ({0}, {1}) is not an edge of the graph")]
    NotSubgraph(u32, u32),
    #[error("ground truth mismatch: {missing} missing, {extra} extra (e.g. {example:?})")]
    GroundTruthMismatch { missing: usize, extra: usize, example: (u32, u32) },
    #[error("geometry: {0}")]
    Geom(#[from] GeomError),
    #[error("instance has no geometry and no ground-truth edges")]
    NoEdgeSource,
    #[error("cross edges contain a K22: {0:?}")]
    HasK22((u32, u32, u32, u32)),
    #[error("degenerate series: {0}")]
    Degenerate(String),
}

/// Compressed sparse rows with strictly sorted neighbour lists.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Csr {
    offsets: Vec<usize>,
    targets: Vec<u32>,
}

impl Csr {
    /// From undirected edges (any orientation; duplicates and loops dropped).
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut deg = vec![0usize; n + 1];
        for &(u, v) in edges {
            if u != v {
                deg[u as usize] += 1;
                deg[v as usize] += 1;
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + deg[i];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0u32; offsets[n]];
        for &(u, v) in edges {
            if u != v {
                targets[fill[u as usize]] = v;
                fill[u as usize] += 1;
                targets[fill[v as usize]] = u;
                fill[v as usize] += 1;
            }
        }
        let mut out_offsets = Vec::with_capacity(n + 1);
        out_offsets.push(0);
        let mut out = Vec::with_capacity(targets.len());
        for i in 0..n {
            let mut row = targets[offsets[i]..offsets[i + 1]].to_vec();
            row.sort_unstable();
            row.dedup();
            out.extend_from_slice(&row);
            out_offsets.push(out.len());
        }
        Csr { offsets: out_offsets, targets: out }
    }

    pub fn n(&self) -> usize {
        self.offsets.len().saturating_sub(1)
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let v = v as usize;
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.neighbors(v).len()
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.neighbors(a).binary_search(&b).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.n() as u32).flat_map(move |u| self.neighbors(u).iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }
}

/// Immutable intersection graph over object indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionGraph {
    csr: Csr,
    labels: Option<Vec<Label>>,
    bipartite_strict: bool,
    source: String,
}

impl IntersectionGraph {
    pub fn from_edges(n: usize, edges: &[(u32, u32)], labels: Option<Vec<Label>>) -> Self {
        let csr = Csr::from_edges(n, edges);
        let bipartite_strict = labels.as_ref().is_some_and(|l| csr.edges().all(|(u, v)| l[u as usize] != l[v as usize]));
        IntersectionGraph { csr, labels, bipartite_strict, source: String::new() }
    }

    pub fn with_source(mut self, source: &str) -> Self {
        self.source = source.to_string();
        self
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn csr(&self) -> &Csr {
        &self.csr
    }

    pub fn n(&self) -> usize {
        self.csr.n()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        self.csr.neighbors(v)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.csr.degree(v)
    }

    pub fn edge_count(&self) -> usize {
        self.csr.edge_count()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.csr.has_edge(u, v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.csr.edges()
    }

    pub fn labels(&self) -> Option<&[Label]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: u32) -> Option<Label> {
        self.labels.as_ref().map(|l| l[v as usize])
    }

    /// Every edge joins U to V.
    pub fn bipartite_strict(&self) -> bool {
        self.bipartite_strict
    }

    pub fn is_cross(&self, u: u32, v: u32) -> bool {
        match &self.labels {
            Some(l) => l[u as usize] != l[v as usize],
            None => false,
        }
    }

    /// The U x V edges.
    pub fn cross_edges(&self) -> Vec<(u32, u32)> {
        self.edges().filter(|&(u, v)| self.is_cross(u, v)).collect()
    }

    /// Subgraph keeping only U x V edges (labels kept).
    pub fn bipartite_part(&self) -> IntersectionGraph {
        let edges = self.cross_edges();
        IntersectionGraph::from_edges(self.n(), &edges, self.labels.clone()).with_source(&self.source)
    }

    pub fn vertices_with(&self, label: Label) -> Vec<u32> {
        match &self.labels {
            Some(l) => (0..self.n() as u32).filter(|&v| l[v as usize] == label).collect(),
            None => Vec::new(),
        }
    }
}

impl Adjacency for Csr {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn adj(&self, v: u32) -> &[u32] {
        self.neighbors(v)
    }
}

impl Adjacency for IntersectionGraph {
    fn vertex_count(&self) -> usize {
        self.n()
    }
    fn adj(&self, v: u32) -> &[u32] {
        self.neighbors(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_basics() {
        let c = Csr::from_edges(4, &[(2, 0), (0, 1), (1, 0), (3, 3), (1, 2)]);
        assert_eq!(c.neighbors(0), &[1, 2]);
        assert_eq!(c.edge_count(), 3);
        assert!(c.has_edge(2, 1));
        assert!(!c.has_edge(3, 0));
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn labels_and_cross_edges() {
        let l = vec![Label::U, Label::U, Label::V];
        let g = IntersectionGraph::from_edges(3, &[(0, 1), (0, 2)], Some(l.clone()));
        assert!(!g.bipartite_strict());
        assert_eq!(g.cross_edges(), vec![(0, 2)]);
        assert!(g.bipartite_part().bipartite_strict());
        assert_eq!(g.vertices_with(Label::U), vec![0, 1]);
    }
}
