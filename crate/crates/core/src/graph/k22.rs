use std::collections::HashMap;

use super::{GraphError, IntersectionGraph, Spanner};
use crate::instance::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Restrict {
    /// Only U x V edges.
    BipartiteEdges,
    All,
}

/// A `K_{2,2}` as `(u1, u2, v1, v2)` with `{u1, u2} x {v1, v2}` all edges.
///
/// Each vertex `x` on the scanned side reports its neighbour pairs; a pair seen
/// twice closes a 4-cycle. A C4-free graph has at most one owner per pair, so
/// the scan stops after at most `C(n, 2)` insertions.
pub fn find_k22(g: &IntersectionGraph, restrict: Restrict) -> Option<(u32, u32, u32, u32)> {
    let n = g.n() as u32;
    let (centres, keep): (Vec<u32>, Box<dyn Fn(u32, u32) -> bool>) = match (restrict, g.labels()) {
        (Restrict::BipartiteEdges, Some(labels)) => {
            let cost = |side: Label| -> u64 {
                (0..n)
                    .filter(|&v| labels[v as usize] == side)
                    .map(|v| {
                        let d = g.neighbors(v).iter().filter(|&&w| labels[w as usize] != side).count() as u64;
                        d * d
                    })
                    .sum()
            };
            let side = if cost(Label::U) <= cost(Label::V) { Label::U } else { Label::V };
            let labels = labels.to_vec();
            let centres = (0..n).filter(|&v| labels[v as usize] == side).collect();
            (centres, Box::new(move |a: u32, b: u32| labels[a as usize] != labels[b as usize]))
        }
        (Restrict::BipartiteEdges, None) => return None,
        (Restrict::All, _) => ((0..n).collect(), Box::new(|_, _| true)),
    };
    let mut owner: HashMap<(u32, u32), u32> = HashMap::new();
    let mut nb = Vec::new();
    for x in centres {
        nb.clear();
        nb.extend(g.neighbors(x).iter().copied().filter(|&w| keep(x, w)));
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                if let Some(&y) = owner.get(&(nb[i], nb[j])) {
                    return Some((y, x, nb[i], nb[j]));
                }
                owner.insert((nb[i], nb[j]), x);
            }
        }
    }
    None
}

/// Charging bound: a 2-hop spanner of a graph whose cross edges are
/// `K_{2,2}`-free keeps at least as many edges as there are cross edges.
pub fn assert_lb_2hop(g: &IntersectionGraph, h: &Spanner) -> Result<bool, GraphError> {
    if let Some(w) = find_k22(g, Restrict::BipartiteEdges) {
        return Err(GraphError::HasK22(w));
    }
    Ok(h.len() >= g.cross_edges().len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &IntersectionGraph) -> bool {
        let n = g.n() as u32;
        for a in 0..n {
            for b in a + 1..n {
                let common = (0..n).filter(|&c| g.has_edge(a, c) && g.has_edge(b, c)).count();
                if common >= 2 {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn c4_and_tree() {
        let c4 = IntersectionGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)], None);
        let (a, b, c, d) = find_k22(&c4, Restrict::All).unwrap();
        for (x, y) in [(a, c), (a, d), (b, c), (b, d)] {
            assert!(c4.has_edge(x, y));
        }
        let tree = IntersectionGraph::from_edges(5, &[(0, 1), (0, 2), (1, 3), (1, 4)], None);
        assert_eq!(find_k22(&tree, Restrict::All), None);
    }

    #[test]
    fn agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(4..30);
            let p = rng.gen_range(0.02..0.2);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = IntersectionGraph::from_edges(n, &edges, None);
            assert_eq!(find_k22(&g, Restrict::All).is_some(), brute(&g));
        }
    }

    #[test]
    fn bipartite_restriction_ignores_same_side() {
        use crate::instance::Label::*;
        // U = {0, 1} clique, V = {2, 3}; cross edges form a path, plus a same-side edge.
        let g = IntersectionGraph::from_edges(4, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)], Some(vec![U, U, V, V]));
        assert!(find_k22(&g, Restrict::All).is_some());
        assert_eq!(find_k22(&g, Restrict::BipartiteEdges), None);
    }
}
