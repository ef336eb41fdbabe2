//! Edge-wise stretch verification. With unit weights, `d_H(u, v) <= t` for
//! every edge `uv` of `G` implies `d_H(x, y) <= t * d_G(x, y)` for all pairs.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hop::HopScratch;
use super::{Csr, GraphError, IntersectionGraph, Spanner};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub ok: bool,
    /// Lexicographically smallest edge of `G` without a short path in `H`.
    pub worst_edge: Option<(u32, u32)>,
    pub checked: usize,
}

pub fn verify_spanner(g: &IntersectionGraph, h: &Spanner, t: u32) -> Result<VerifyReport, GraphError> {
    verify_edges(g, &h.edges, t)
}

/// `h_edges` must be a subset of `G`'s edges.
pub fn verify_edges(g: &IntersectionGraph, h_edges: &[(u32, u32)], t: u32) -> Result<VerifyReport, GraphError> {
    let n = g.n();
    for &(u, v) in h_edges {
        if u as usize >= n || v as usize >= n {
            return Err(GraphError::InvalidVertex(u.max(v)));
        }
        if !g.has_edge(u, v) {
            return Err(GraphError::NotSubgraph(u, v));
        }
    }
    let h = Csr::from_edges(n, h_edges);
    let worst = (0..n as u32)
        .into_par_iter()
        .map_init(
            || HopScratch::new(n),
            |sc, u| {
                sc.set_source(&h, u, t);
                g.neighbors(u).iter().copied().filter(|&v| v > u).find(|&v| !sc.reaches(&h, u, v, t)).map(|v| (u, v))
            },
        )
        .find_first(Option::is_some)
        .flatten();
    Ok(VerifyReport { ok: worst.is_none(), worst_edge: worst, checked: g.edge_count() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_bridge() {
        let edges = vec![(0, 1), (1, 2), (2, 0), (2, 3)];
        let g = IntersectionGraph::from_edges(4, &edges, None);
        for t in 1..5 {
            assert!(verify_edges(&g, &edges, t).unwrap().ok);
        }
        let r = verify_edges(&g, &edges[..3], 7).unwrap();
        assert!(!r.ok);
        assert_eq!(r.worst_edge, Some((2, 3)));
        assert!(matches!(verify_edges(&g, &[(0, 3)], 2), Err(GraphError::NotSubgraph(0, 3))));
        // Dropping a triangle edge is fine at t = 2 but not at t = 1.
        assert!(verify_edges(&g, &edges[1..], 2).unwrap().ok);
        assert_eq!(verify_edges(&g, &edges[1..], 1).unwrap().worst_edge, Some((0, 1)));
    }
}
