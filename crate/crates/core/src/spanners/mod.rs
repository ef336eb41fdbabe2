//! Hop-spanner constructions behind a single registry.
//!
//! Every builder returns a subgraph of the intersection graph it was handed;
//! edges are never invented. Whenever a structural assumption of a
//! construction fails (an unaligned object, a point without a hitting witness,
//! a float-mode predicate disagreeing with the graph) the affected graph edges
//! are added directly and counted under a `fallback:*` tag.

mod biclique;
mod box3;
mod clique;
mod fat;
mod greedy;
mod lopsided;
mod net;
mod partition;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::GeomError;
use crate::graph::{build_graph, GraphError, GraphMode, HopScratch, IntersectionGraph, Spanner, SpannerBuilder, SpannerStats};
use crate::instance::{Instance, Label};

pub use biclique::{box_biclique_cover, Biclique};
pub use box3::{box_3hop, box_3hop_bipartite};
pub use clique::{clique_side_2hop, grouped_2hop};
pub use fat::{fat_2hop, fatbox_2hop};
pub use greedy::greedy_spanner;
pub use lopsided::{grouped_3hop, lopsided_3hop};
pub use net::{epsilon_net, net_shortcut_3hop, NetSample};
pub use partition::{partition, recursive_bipartite_3hop, Cell, PartitionResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuilderId {
    Greedy,
    Lopsided3,
    Grouped3,
    Grouped2,
    Recursive3,
    Netshortcut3,
    Fat2,
    Fatbox2,
    Box3,
}

impl BuilderId {
    pub const ALL: [BuilderId; 9] = [
        BuilderId::Greedy,
        BuilderId::Lopsided3,
        BuilderId::Grouped3,
        BuilderId::Grouped2,
        BuilderId::Recursive3,
        BuilderId::Netshortcut3,
        BuilderId::Fat2,
        BuilderId::Fatbox2,
        BuilderId::Box3,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BuilderId::Greedy => "greedy",
            BuilderId::Lopsided3 => "lopsided3",
            BuilderId::Grouped3 => "grouped3",
            BuilderId::Grouped2 => "grouped2",
            BuilderId::Recursive3 => "recursive3",
            BuilderId::Netshortcut3 => "netshortcut3",
            BuilderId::Fat2 => "fat2",
            BuilderId::Fatbox2 => "fatbox2",
            BuilderId::Box3 => "box3",
        }
    }

    /// Stretch the construction guarantees; `None` means "whatever `t` asks".
    pub fn stretch(self) -> Option<u32> {
        match self {
            BuilderId::Greedy => None,
            BuilderId::Grouped2 | BuilderId::Fat2 | BuilderId::Fatbox2 => Some(2),
            _ => Some(3),
        }
    }

    /// Which intersection graph the builder spans by default. The bipartite
    /// constructions only see U x V edges.
    pub fn graph_mode(self) -> GraphMode {
        match self {
            BuilderId::Lopsided3 | BuilderId::Recursive3 | BuilderId::Netshortcut3 => GraphMode::BipartiteOnly,
            _ => GraphMode::Full,
        }
    }
}

impl fmt::Display for BuilderId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BuilderId {
    type Err = BuildError;
    fn from_str(s: &str) -> Result<Self, BuildError> {
        BuilderId::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| BuildError::UnknownBuilder(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    Grid,
    Kd,
}

impl FromStr for Oracle {
    type Err = BuildError;
    fn from_str(s: &str) -> Result<Self, BuildError> {
        match s {
            "grid" => Ok(Oracle::Grid),
            "kd" => Ok(Oracle::Kd),
            _ => Err(BuildError::InvalidConfig(format!("unknown oracle {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fallback {
    /// Add the affected graph edges directly.
    DirectEdge,
    /// Report the violated assumption as an error.
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BuildConfig {
    pub t: u32,
    pub builder: BuilderId,
    /// Alignment constant; `None` picks `2(2d+1)`.
    pub c: Option<u32>,
    pub r: usize,
    pub t_net: usize,
    pub group_size: Option<usize>,
    pub max_depth: usize,
    pub seed: u64,
    pub oracle: Oracle,
    pub fallback: Fallback,
    /// Span only the U x V edges of a labelled instance, for any builder.
    pub bipartite_only: bool,
}

impl BuildConfig {
    pub fn new(builder: BuilderId) -> Self {
        BuildConfig {
            t: builder.stretch().unwrap_or(3),
            builder,
            c: None,
            r: 4,
            t_net: 10,
            group_size: None,
            max_depth: 64,
            seed: 0,
            oracle: Oracle::Kd,
            fallback: Fallback::DirectEdge,
            bipartite_only: false,
        }
    }

    pub fn with_t(mut self, t: u32) -> Self {
        self.t = t;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<(), BuildError> {
        if self.t == 0 {
            return Err(BuildError::InvalidConfig("t must be at least 1".into()));
        }
        if let Some(s) = self.builder.stretch() {
            if self.t < s {
                return Err(BuildError::InvalidConfig(format!("{} guarantees stretch {s}, asked for t={}", self.builder, self.t)));
            }
        }
        if self.r < 2 {
            return Err(BuildError::InvalidConfig("r must be at least 2".into()));
        }
        if self.t_net < 2 {
            return Err(BuildError::InvalidConfig("t_net must be at least 2".into()));
        }
        if self.group_size == Some(0) {
            return Err(BuildError::InvalidConfig("group size must be positive".into()));
        }
        if self.c == Some(0) {
            return Err(BuildError::InvalidConfig("alignment constant must be positive".into()));
        }
        Ok(())
    }

    /// Graph the builder spans on `inst`: incidence instances are always
    /// restricted to their U x V edges.
    pub fn graph_mode_for(&self, inst: &Instance) -> GraphMode {
        if inst.incidence_only() {
            GraphMode::BipartiteOnly
        } else {
            self.graph_mode()
        }
    }

    pub fn graph_mode(&self) -> GraphMode {
        if self.bipartite_only {
            GraphMode::BipartiteOnly
        } else {
            self.builder.graph_mode()
        }
    }
}

#[derive(Debug, Error)]
pub enum BuildError {
    #[error("unknown builder {0:?}")]
    UnknownBuilder(String),
    #[error("invalid config: {0}")]
    InvalidConfig(String),
    #[error("{builder} does not apply: {reason}")]
    NotApplicable { builder: BuilderId, reason: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("structural assumption failed and fallback is disabled: {0}")]
    FallbackRefused(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Builds the graph the configured builder spans, then the spanner.
pub fn build_spanner(inst: &Instance, cfg: &BuildConfig) -> Result<(IntersectionGraph, Spanner), BuildError> {
    cfg.validate()?;
    let g = build_graph(inst, cfg.graph_mode_for(inst))?;
    let h = build_with_graph(inst, &g, cfg)?;
    Ok((g, h))
}

/// Runs the configured builder on an already computed graph of `inst`.
pub fn build_with_graph(inst: &Instance, g: &IntersectionGraph, cfg: &BuildConfig) -> Result<Spanner, BuildError> {
    cfg.validate()?;
    let not_applicable = |reason: &str| BuildError::NotApplicable { builder: cfg.builder, reason: reason.to_string() };
    let sides = || -> Result<(Vec<u32>, Vec<u32>), BuildError> {
        if g.labels().is_none() {
            return Err(not_applicable("needs a U/V labelled instance"));
        }
        Ok((g.vertices_with(Label::U), g.vertices_with(Label::V)))
    };
    let mut h = match cfg.builder {
        BuilderId::Greedy => greedy_spanner(g, cfg.t),
        BuilderId::Grouped3 => grouped_3hop(g, cfg.group_size),
        BuilderId::Lopsided3 => {
            let (u, v) = sides()?;
            lopsided_3hop(g, &u, &v)?
        }
        BuilderId::Grouped2 => {
            let (u, v) = sides()?;
            grouped_2hop(g, &u, &v, cfg.group_size)?
        }
        BuilderId::Recursive3 => {
            let (u, v) = sides()?;
            recursive_bipartite_3hop(inst, g, &u, &v, cfg)?
        }
        BuilderId::Netshortcut3 => {
            let (u, v) = sides()?;
            net_shortcut_3hop(inst, g, &u, &v, cfg)?
        }
        BuilderId::Fat2 => fat_2hop(inst, g, cfg)?,
        BuilderId::Fatbox2 => fatbox_2hop(inst, g, cfg)?,
        BuilderId::Box3 => box_3hop(inst, g, cfg)?,
    };
    h.stats.builder = cfg.builder.to_string();
    h.stats.t = cfg.t;
    h.stats.graph_edges = g.edge_count();
    Ok(h)
}

/// Adds every edge of `g` that is not yet within `t` hops, tagged `tag`.
/// Returns how many edges were added.
pub(crate) fn repair(g: &IntersectionGraph, b: &mut SpannerBuilder, t: u32, tag: &'static str) -> usize {
    let n = g.n();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for &(u, v) in b.edges_so_far() {
        adj[u as usize].push(v);
        adj[v as usize].push(u);
    }
    for a in &mut adj {
        a.sort_unstable();
    }
    let h = AdjList(adj);
    let mut sc = HopScratch::new(n);
    let mut missing = Vec::new();
    for u in 0..n as u32 {
        sc.set_source(&h, u, t);
        for &v in g.neighbors(u) {
            if v > u && !sc.reaches(&h, u, v, t) {
                missing.push((u, v));
            }
        }
    }
    for &(u, v) in &missing {
        b.add(u, v, tag);
    }
    missing.len()
}

/// Applies the fallback policy after a construction. With `DirectEdge`, any
/// unspanned graph edge is added; with `Fail`, the first one is an error.
pub(crate) fn finish_with_repair(
    g: &IntersectionGraph,
    mut b: SpannerBuilder,
    t: u32,
    cfg: &BuildConfig,
) -> Result<Spanner, BuildError> {
    let added = repair(g, &mut b, t, "fallback:repair");
    if added > 0 {
        if cfg.fallback == Fallback::Fail {
            return Err(BuildError::FallbackRefused(format!("{added} edges not spanned at t={t}")));
        }
        b.bump("fallback_repair_edges", added as u64);
    }
    Ok(b.finish(SpannerStats::default()))
}

/// Adds `(u, v)` only if it is an edge of `g`; a rejected pair is counted so
/// the repair pass can make up for it.
pub(crate) fn add_checked(g: &IntersectionGraph, b: &mut SpannerBuilder, u: u32, v: u32, tag: &'static str) {
    if u == v {
        return;
    }
    if g.has_edge(u, v) {
        b.add(u, v, tag);
    } else {
        b.bump("rejected_non_edges", 1);
    }
}

/// Plain adjacency lists, sorted.
pub(crate) struct AdjList(pub Vec<Vec<u32>>);

impl crate::graph::Adjacency for AdjList {
    fn vertex_count(&self) -> usize {
        self.0.len()
    }
    fn adj(&self, v: u32) -> &[u32] {
        &self.0[v as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip() {
        for b in BuilderId::ALL {
            assert_eq!(b.as_str().parse::<BuilderId>().unwrap(), b);
        }
        assert!("nope".parse::<BuilderId>().is_err());
    }

    #[test]
    fn config_checks() {
        assert!(BuildConfig::new(BuilderId::Fat2).validate().is_ok());
        assert!(BuildConfig::new(BuilderId::Fat2).with_t(1).validate().is_err());
        assert!(BuildConfig::new(BuilderId::Greedy).with_t(1).validate().is_ok());
        let mut c = BuildConfig::new(BuilderId::Recursive3);
        c.r = 1;
        assert!(c.validate().is_err());
    }
}
