use super::AdjList;
use crate::graph::{HopScratch, IntersectionGraph, Spanner, SpannerBuilder, SpannerStats};

/// Scans edges lexicographically and keeps `uv` whenever the partial spanner
/// has no path of at most `t` hops between its endpoints.
pub fn greedy_spanner(g: &IntersectionGraph, t: u32) -> Spanner {
    let n = g.n();
    let mut h = AdjList(vec![Vec::new(); n]);
    let mut sc = HopScratch::new(n);
    let mut b = SpannerBuilder::new(n);
    for (u, v) in g.edges() {
        if sc.within(&h, u, v, t) {
            continue;
        }
        b.add(u, v, "greedy");
        for (x, y) in [(u, v), (v, u)] {
            let row = &mut h.0[x as usize];
            let at = row.partition_point(|&w| w < y);
            row.insert(at, y);
        }
    }
    b.finish(SpannerStats::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: u32) -> IntersectionGraph {
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        IntersectionGraph::from_edges(n as usize, &e, None)
    }

    #[test]
    fn empty_graph() {
        let g = IntersectionGraph::from_edges(5, &[], None);
        assert!(greedy_spanner(&g, 3).is_empty());
    }

    #[test]
    fn complete_graph_gives_star() {
        let h = greedy_spanner(&complete(7), 2);
        assert_eq!(h.edges, (1..7).map(|v| (0, v)).collect::<Vec<_>>());
    }

    #[test]
    fn stretch_one_keeps_everything() {
        assert_eq!(greedy_spanner(&complete(6), 1).len(), 15);
    }

    #[test]
    fn four_cycle_drops_one_edge_at_three() {
        let g = IntersectionGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], None);
        let h = greedy_spanner(&g, 3);
        assert_eq!(h.len(), 3);
        assert_eq!(greedy_spanner(&g, 2).len(), 4);
    }
}
