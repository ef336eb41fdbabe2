use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::Csr;

/// Size and provenance statistics emitted next to every spanner.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SpannerStats {
    pub builder: String,
    pub t: u32,
    pub n: usize,
    pub graph_edges: usize,
    pub edge_count: usize,
    pub recursion_depth: usize,
    /// Edges per provenance tag.
    pub provenance: BTreeMap<String, usize>,
    /// Builder-specific event counters (fallbacks, resamples, ...).
    pub counters: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub build_ms: Option<f64>,
}

/// A subgraph chosen by a builder, edges sorted with `u < v`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spanner {
    pub n: usize,
    pub edges: Vec<(u32, u32)>,
    /// Rule that first added each edge, parallel to `edges`.
    pub tags: Vec<&'static str>,
    pub stats: SpannerStats,
}

impl Spanner {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn csr(&self) -> Csr {
        Csr::from_edges(self.n, &self.edges)
    }

    /// Spanner with untagged edges (e.g. read back from an edge-list file).
    pub fn from_edges(n: usize, edges: Vec<(u32, u32)>) -> Spanner {
        let mut b = SpannerBuilder::new(n);
        for (u, v) in edges {
            b.add(u, v, "input");
        }
        b.finish(SpannerStats::default())
    }
}

/// Collects edges, keeping the first tag seen for each.
#[derive(Clone, Debug, Default)]
pub struct SpannerBuilder {
    n: usize,
    tag_of: HashMap<(u32, u32), &'static str>,
    order: Vec<(u32, u32)>,
    pub counters: BTreeMap<String, u64>,
    pub notes: Vec<String>,
    pub depth: usize,
}

impl SpannerBuilder {
    pub fn new(n: usize) -> Self {
        SpannerBuilder { n, ..Default::default() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Returns true if the edge is new.
    pub fn add(&mut self, u: u32, v: u32, tag: &'static str) -> bool {
        debug_assert!(u != v, "self-loop {u}");
        let e = if u < v { (u, v) } else { (v, u) };
        if self.tag_of.contains_key(&e) {
            return false;
        }
        self.tag_of.insert(e, tag);
        self.order.push(e);
        true
    }

    pub fn contains(&self, u: u32, v: u32) -> bool {
        self.tag_of.contains_key(&if u < v { (u, v) } else { (v, u) })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn bump(&mut self, counter: &str, by: u64) {
        *self.counters.entry(counter.to_string()).or_default() += by;
    }

    pub fn note_depth(&mut self, depth: usize) {
        self.depth = self.depth.max(depth);
    }

    pub fn edges_so_far(&self) -> &[(u32, u32)] {
        &self.order
    }

    pub fn finish(mut self, mut stats: SpannerStats) -> Spanner {
        self.order.sort_unstable();
        let tags: Vec<&'static str> = self.order.iter().map(|e| self.tag_of[e]).collect();
        let mut provenance = BTreeMap::new();
        for t in &tags {
            *provenance.entry(t.to_string()).or_default() += 1;
        }
        stats.n = self.n;
        stats.edge_count = self.order.len();
        stats.provenance = provenance;
        stats.recursion_depth = stats.recursion_depth.max(self.depth);
        for (k, v) in self.counters {
            *stats.counters.entry(k).or_default() += v;
        }
        stats.notes.extend(self.notes);
        Spanner { n: self.n, edges: self.order, tags, stats }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_tag_wins() {
        let mut b = SpannerBuilder::new(4);
        assert!(b.add(2, 1, "a"));
        assert!(!b.add(1, 2, "b"));
        b.add(0, 3, "b");
        let s = b.finish(SpannerStats::default());
        assert_eq!(s.edges, vec![(0, 3), (1, 2)]);
        assert_eq!(s.tags, vec!["b", "a"]);
        assert_eq!(s.stats.provenance.get("a"), Some(&1));
        assert_eq!(s.stats.edge_count, 2);
    }
}
