use super::BuildError;
use crate::graph::{IntersectionGraph, Spanner, SpannerBuilder, SpannerStats};

const NONE: u32 = u32::MAX;

/// Scratch space reused across the many small lop-sided problems of the
/// grouped and recursive builders.
pub(crate) struct LopScratch {
    pos: Vec<u32>,
    ev: Vec<u32>,
    stamp: u32,
    buckets: Vec<Vec<u32>>,
    touched: Vec<u32>,
    pairs: Vec<bool>,
}

impl LopScratch {
    pub(crate) fn new(n: usize) -> Self {
        LopScratch { pos: vec![NONE; n], ev: vec![0; n], stamp: 0, buckets: vec![Vec::new(); n], touched: Vec::new(), pairs: Vec::new() }
    }
}

/// Three rules over the edges of `g` that touch `us` (sorted):
/// an edge `e_v` to the lowest U-neighbour of every V vertex, all of `G[U]`,
/// and a 2-hop path through the lowest common neighbour of every
/// non-adjacent U pair that has one. Any `uv` with `v` in V then has the path
/// `u ~ u' - v` where `e_v = u'v`.
pub(crate) fn lopsided_into(
    g: &IntersectionGraph,
    us: &[u32],
    in_v: &dyn Fn(u32) -> bool,
    b: &mut SpannerBuilder,
    sc: &mut LopScratch,
) {
    let m = us.len();
    if m == 0 {
        return;
    }
    debug_assert!(us.windows(2).all(|w| w[0] < w[1]));
    sc.stamp = sc.stamp.wrapping_add(1);
    if sc.stamp == 0 {
        sc.ev.iter_mut().for_each(|x| *x = 0);
        sc.stamp = 1;
    }
    for (i, &u) in us.iter().enumerate() {
        sc.pos[u as usize] = i as u32;
    }
    sc.pairs.clear();
    sc.pairs.resize(m * m, false);

    for &u in us {
        let iu = sc.pos[u as usize] as usize;
        for &w in g.neighbors(u) {
            let iw = sc.pos[w as usize];
            if iw != NONE {
                if w > u {
                    b.add(u, w, "lopsided:clique");
                }
                sc.pairs[iu * m + iw as usize] = true;
            } else if in_v(w) && sc.ev[w as usize] != sc.stamp {
                sc.ev[w as usize] = sc.stamp;
                b.add(u, w, "lopsided:e_v");
            }
            let bucket = &mut sc.buckets[w as usize];
            if bucket.is_empty() {
                sc.touched.push(w);
            }
            bucket.push(u);
        }
    }

    sc.touched.sort_unstable();
    for k in 0..sc.touched.len() {
        let w = sc.touched[k];
        let list = std::mem::take(&mut sc.buckets[w as usize]);
        for i in 0..list.len() {
            let a = sc.pos[list[i] as usize] as usize;
            for &y in &list[i + 1..] {
                let c = sc.pos[y as usize] as usize;
                if !sc.pairs[a * m + c] {
                    sc.pairs[a * m + c] = true;
                    sc.pairs[c * m + a] = true;
                    b.add(list[i], w, "lopsided:path");
                    b.add(w, y, "lopsided:path");
                }
            }
        }
        let mut list = list;
        list.clear();
        sc.buckets[w as usize] = list;
    }
    sc.touched.clear();
    for &u in us {
        sc.pos[u as usize] = NONE;
    }
}

/// 3-hop spanner of the edges touching `us`, for `vs` independent in `g`.
pub fn lopsided_3hop(g: &IntersectionGraph, us: &[u32], vs: &[u32]) -> Result<Spanner, BuildError> {
    let n = g.n();
    let mut in_v = vec![false; n];
    for &v in vs {
        in_v[v as usize] = true;
    }
    for &u in us {
        if in_v[u as usize] {
            return Err(BuildError::Precondition(format!("vertex {u} is on both sides")));
        }
    }
    for &v in vs {
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| in_v[w as usize]) {
            return Err(BuildError::Precondition(format!("V is not independent: edge {v}-{w}")));
        }
    }
    let mut us = us.to_vec();
    us.sort_unstable();
    let mut b = SpannerBuilder::new(n);
    lopsided_into(g, &us, &|v| in_v[v as usize], &mut b, &mut LopScratch::new(n));
    Ok(b.finish(SpannerStats::default()))
}

/// Number of groups and their size for `n` vertices.
pub(crate) fn grouping(n: usize, group_size: Option<usize>) -> usize {
    let k = (n as f64).sqrt().ceil().max(1.0) as usize;
    group_size.unwrap_or_else(|| n.div_ceil(k).max(1))
}

/// Splits the vertices into about `sqrt n` consecutive groups and runs the
/// lop-sided construction for each group against its complement.
pub fn grouped_3hop(g: &IntersectionGraph, group_size: Option<usize>) -> Spanner {
    let n = g.n();
    let s = grouping(n, group_size);
    let mut b = SpannerBuilder::new(n);
    let mut sc = LopScratch::new(n);
    let mut groups = 0;
    for start in (0..n).step_by(s) {
        let end = (start + s).min(n);
        let us: Vec<u32> = (start as u32..end as u32).collect();
        let (lo, hi) = (start as u32, end as u32);
        lopsided_into(g, &us, &|v| v < lo || v >= hi, &mut b, &mut sc);
        groups += 1;
    }
    b.bump("groups", groups);
    b.finish(SpannerStats::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::verify_spanner;
    use rand::{Rng, SeedableRng};

    fn random_lopsided(m: u32, n: u32, p: f64, q: f64, seed: u64) -> (IntersectionGraph, Vec<u32>, Vec<u32>) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut e = Vec::new();
        for u in 0..m {
            for u2 in u + 1..m {
                if rng.gen_bool(q) {
                    e.push((u, u2));
                }
            }
            for v in m..m + n {
                if rng.gen_bool(p) {
                    e.push((u, v));
                }
            }
        }
        let g = IntersectionGraph::from_edges((m + n) as usize, &e, None);
        (g, (0..m).collect(), (m..m + n).collect())
    }

    #[test]
    fn star_is_kept() {
        let e: Vec<_> = (1..9).map(|v| (0, v)).collect();
        let g = IntersectionGraph::from_edges(9, &e, None);
        let h = lopsided_3hop(&g, &[0], &(1..9).collect::<Vec<_>>()).unwrap();
        assert_eq!(h.edges, e);
    }

    #[test]
    fn clique_with_leaves() {
        // U = {0,1,2} a triangle, V = 3..8, each leaf joined to two U vertices.
        let mut e = vec![(0, 1), (0, 2), (1, 2)];
        for v in 3..8u32 {
            e.push((v % 3, v));
            e.push(((v + 1) % 3, v));
        }
        let g = IntersectionGraph::from_edges(8, &e, None);
        let h = lopsided_3hop(&g, &[0, 1, 2], &[3, 4, 5, 6, 7]).unwrap();
        assert!(h.len() <= 5 + 3 + 6);
        // All pairs adjacent, so no paths: the triangle plus one edge per leaf.
        assert_eq!(h.len(), 8);
        assert!(verify_spanner(&g, &h, 3).unwrap().ok);
    }

    #[test]
    fn dependent_v_rejected() {
        let g = IntersectionGraph::from_edges(3, &[(0, 1), (1, 2)], None);
        assert!(lopsided_3hop(&g, &[0], &[1, 2]).is_err());
    }

    #[test]
    fn random_lopsided_bound() {
        for seed in 0..10 {
            let (g, u, v) = random_lopsided(20, 400, 0.1, 0.3, seed);
            let h = lopsided_3hop(&g, &u, &v).unwrap();
            assert!(verify_spanner(&g, &h, 3).unwrap().ok);
            assert!(h.len() as f64 <= 400.0 + 1.5 * 400.0);
        }
    }

    #[test]
    fn grouped_on_complete_graph() {
        let n = 50u32;
        let e: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let g = IntersectionGraph::from_edges(n as usize, &e, None);
        let h = grouped_3hop(&g, None);
        assert!(verify_spanner(&g, &h, 3).unwrap().ok);
        assert!((h.len() as f64) <= 4.0 * (n as f64).powf(1.5));
        assert!(grouped_3hop(&IntersectionGraph::from_edges(0, &[], None), None).is_empty());
    }
}
