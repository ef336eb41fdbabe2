use super::lopsided::grouping;
use super::{add_checked, BuildError};
use crate::graph::{IntersectionGraph, Spanner, SpannerBuilder, SpannerStats};

/// `e_v` to the lowest U-neighbour of each V vertex, plus the clique on `us`.
/// With no V neighbour at all the clique is unnecessary: `lone` asks for a
/// star in its place, otherwise the caller already spans `us`.
/// Clique pairs missing from `g` are skipped and counted.
pub(crate) fn clique_side_into(
    g: &IntersectionGraph,
    us: &[u32],
    in_v: &dyn Fn(u32) -> bool,
    seen: &mut [u32],
    stamp: u32,
    lone: bool,
    b: &mut SpannerBuilder,
) {
    let mut any_v = false;
    for &u in us {
        for &w in g.neighbors(u) {
            if in_v(w) && seen[w as usize] != stamp {
                seen[w as usize] = stamp;
                b.add(u, w, "clique:e_v");
                any_v = true;
            }
        }
    }
    if any_v {
        for (i, &u) in us.iter().enumerate() {
            for &u2 in &us[i + 1..] {
                add_checked(g, b, u, u2, "clique:clique");
            }
        }
    } else if lone && !us.is_empty() {
        for &u in &us[1..] {
            add_checked(g, b, us[0], u, "clique:star");
        }
    }
}

/// Grouping over U: a star spans the U clique, and each group of about
/// `sqrt n` U vertices gets its own clique plus one edge per V neighbour.
pub(crate) fn grouped2_into(
    g: &IntersectionGraph,
    us: &[u32],
    in_v: &dyn Fn(u32) -> bool,
    v_count: usize,
    group_size: Option<usize>,
    seen: &mut [u32],
    stamp: &mut u32,
    b: &mut SpannerBuilder,
) {
    if us.is_empty() {
        return;
    }
    let s = grouping(us.len() + v_count, group_size);
    if us.len() <= s {
        *stamp += 1;
        clique_side_into(g, us, in_v, seen, *stamp, true, b);
        return;
    }
    for &u in &us[1..] {
        add_checked(g, b, us[0], u, "grouped2:star");
    }
    for chunk in us.chunks(s) {
        *stamp += 1;
        clique_side_into(g, chunk, in_v, seen, *stamp, false, b);
    }
}

fn check_sides(g: &IntersectionGraph, us: &[u32], vs: &[u32]) -> Result<(Vec<u32>, Vec<bool>), BuildError> {
    let mut in_v = vec![false; g.n()];
    for &v in vs {
        in_v[v as usize] = true;
    }
    let mut us = us.to_vec();
    us.sort_unstable();
    for (i, &u) in us.iter().enumerate() {
        if in_v[u as usize] {
            return Err(BuildError::Precondition(format!("vertex {u} is on both sides")));
        }
        if let Some(&u2) = us[i + 1..].iter().find(|&&u2| !g.has_edge(u, u2)) {
            return Err(BuildError::Precondition(format!("clique edge {u}-{u2} missing")));
        }
    }
    for &v in vs {
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| in_v[w as usize]) {
            return Err(BuildError::Precondition(format!("V is not independent: edge {v}-{w}")));
        }
    }
    Ok((us, in_v))
}

/// 2-hop spanner of `G+ = G[U, V]` plus the clique on `U`.
pub fn clique_side_2hop(gplus: &IntersectionGraph, us: &[u32], vs: &[u32]) -> Result<Spanner, BuildError> {
    let (us, in_v) = check_sides(gplus, us, vs)?;
    let mut b = SpannerBuilder::new(gplus.n());
    let mut seen = vec![0; gplus.n()];
    clique_side_into(gplus, &us, &|v| in_v[v as usize], &mut seen, 1, true, &mut b);
    Ok(b.finish(SpannerStats::default()))
}

pub fn grouped_2hop(gplus: &IntersectionGraph, us: &[u32], vs: &[u32], group_size: Option<usize>) -> Result<Spanner, BuildError> {
    let (us, in_v) = check_sides(gplus, us, vs)?;
    let mut b = SpannerBuilder::new(gplus.n());
    let mut seen = vec![0; gplus.n()];
    let mut stamp = 0;
    grouped2_into(gplus, &us, &|v| in_v[v as usize], vs.len(), group_size, &mut seen, &mut stamp, &mut b);
    Ok(b.finish(SpannerStats::default()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_spanner;
    use rand::{Rng, SeedableRng};

    pub(crate) fn clique_plus_random(m: u32, n: u32, p: f64, seed: u64) -> IntersectionGraph {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut e = Vec::new();
        for u in 0..m {
            for u2 in u + 1..m {
                e.push((u, u2));
            }
            for v in m..m + n {
                if rng.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        IntersectionGraph::from_edges((m + n) as usize, &e, None)
    }

    #[test]
    fn single_centre_is_a_star() {
        let e: Vec<_> = (1..6).map(|v| (0, v)).collect();
        let g = IntersectionGraph::from_edges(6, &e, None);
        assert_eq!(clique_side_2hop(&g, &[0], &[1, 2, 3, 4, 5]).unwrap().edges, e);
    }

    #[test]
    fn small_random_bound() {
        for seed in 0..20 {
            let g = clique_plus_random(3, 5, 0.5, seed);
            let h = clique_side_2hop(&g, &[0, 1, 2], &[3, 4, 5, 6, 7]).unwrap();
            assert!(h.len() <= 5 + 3);
            assert!(verify_spanner(&g, &h, 2).unwrap().ok);
        }
    }

    #[test]
    fn missing_clique_edge_rejected() {
        let g = IntersectionGraph::from_edges(3, &[(0, 2), (1, 2)], None);
        assert!(clique_side_2hop(&g, &[0, 1], &[2]).is_err());
    }

    #[test]
    fn grouped_verifies() {
        for seed in 0..5 {
            let g = clique_plus_random(60, 200, 0.2, seed);
            let us: Vec<u32> = (0..60).collect();
            let vs: Vec<u32> = (60..260).collect();
            let h = grouped_2hop(&g, &us, &vs, None).unwrap();
            assert!(verify_spanner(&g, &h, 2).unwrap().ok);
            let n = 260.0f64;
            assert!((h.len() as f64) <= 4.0 * n.powf(1.5) + 8.0 * n);
        }
        let g = IntersectionGraph::from_edges(0, &[], None);
        assert!(grouped_2hop(&g, &[], &[], None).unwrap().is_empty());
    }
}
