//! Slab recursion for 3-hop spanners of box intersection graphs.
//!
//! Coordinates are replaced by even ranks, so slab boundaries can sit on odd
//! values and a corner is never on a boundary. Inside a slab on the last
//! axis every box has a corner strictly inside; the slab is halved by corner
//! count, short/short pairs stay on this axis, and pairs involving a box that
//! spans a half-slab drop the axis. Two or fewer axes are finished with a
//! biclique cover and a pair of stars per biclique, in place of the
//! `O(n log n)` planar construction this recursion is usually paired with.

use super::biclique::{cover_ranks, Biclique, Ranks};
use super::{add_checked, finish_with_repair, BuildConfig, BuildError, BuilderId};
use crate::graph::{IntersectionGraph, Spanner, SpannerBuilder};
use crate::instance::{Instance, Label};

#[derive(Clone, Copy, Debug)]
struct Item {
    id: u32,
    /// Clipped extent on the current axis.
    lo: i64,
    hi: i64,
}

struct Slabs<'a> {
    g: &'a IntersectionGraph,
    rk: &'a Ranks,
    b: SpannerBuilder,
}

impl Slabs<'_> {
    fn stars(&mut self, bc: &Biclique) {
        let (u0, v0) = (bc.us[0], bc.vs[0]);
        for &v in &bc.vs {
            add_checked(self.g, &mut self.b, u0, v, "box3:star");
        }
        for &u in &bc.us {
            add_checked(self.g, &mut self.b, v0, u, "box3:star");
        }
    }

    /// All of `us x vs` on axes `0..axes`, unclipped.
    fn solve(&mut self, axes: usize, us: Vec<u32>, vs: Vec<u32>, depth: usize) {
        self.b.note_depth(depth);
        if us.is_empty() || vs.is_empty() {
            return;
        }
        if self.common_point(axes, &us, &vs) {
            self.b.bump("bicliques", 1);
            self.stars(&Biclique { us, vs });
            return;
        }
        if axes <= 2 {
            let mut cover = Vec::new();
            cover_ranks(self.rk, axes, us, vs, &mut cover);
            self.b.bump("bicliques", cover.len() as u64);
            for bc in &cover {
                self.stars(bc);
            }
            return;
        }
        let k = axes - 1;
        let item = |v: u32| Item { id: v, lo: self.rk.lo[v as usize][k], hi: self.rk.hi[v as usize][k] };
        let ui: Vec<Item> = us.iter().map(|&v| item(v)).collect();
        let vi: Vec<Item> = vs.iter().map(|&v| item(v)).collect();
        let top = ui.iter().chain(&vi).map(|x| x.hi).max().unwrap() + 1;
        self.slab(k, ui, vi, (-1, top), depth);
    }

    /// All of `us` and `vs` share a point on axes `0..axes`, so the pairs form one biclique.
    fn common_point(&self, axes: usize, us: &[u32], vs: &[u32]) -> bool {
        (0..axes).all(|k| {
            let lo = us.iter().chain(vs).map(|&v| self.rk.lo[v as usize][k]).max().unwrap();
            let hi = us.iter().chain(vs).map(|&v| self.rk.hi[v as usize][k]).min().unwrap();
            lo <= hi
        })
    }

    fn brute(&mut self, k: usize, us: &[Item], vs: &[Item]) {
        for a in us {
            for c in vs {
                if a.id != c.id && a.lo <= c.hi && c.lo <= a.hi && self.rk.meets(a.id, c.id, k) {
                    add_checked(self.g, &mut self.b, a.id, c.id, "box3:brute");
                }
            }
        }
    }

    /// Every box intersects the open slab `(s.0, s.1)` with a corner inside.
    fn slab(&mut self, k: usize, us: Vec<Item>, vs: Vec<Item>, s: (i64, i64), depth: usize) {
        self.b.note_depth(depth);
        if us.is_empty() || vs.is_empty() {
            return;
        }
        let inside = |x: i64| s.0 < x && x < s.1;
        let mut corners: Vec<i64> =
            us.iter().chain(&vs).flat_map(|x| [x.lo, x.hi]).filter(|&x| inside(x)).collect();
        if us.len() * vs.len() <= 4 || corners.len() <= 2 {
            self.brute(k, &us, &vs);
            return;
        }
        corners.sort_unstable();
        let mut split = corners[corners.len() / 2];
        if split == *corners.last().unwrap() {
            match corners.iter().rev().find(|&&x| x < split) {
                Some(&x) => split = x,
                None => {
                    // Every box touches the one corner value: all pairs meet on this axis.
                    self.b.bump("box3:flat_slab", 1);
                    let (a, c) = (us.iter().map(|x| x.id).collect(), vs.iter().map(|x| x.id).collect());
                    self.solve(k, a, c, depth + 1);
                    return;
                }
            }
        }
        let m = split + 1;
        for half in [(s.0, m), (m, s.1)] {
            let clip = |list: &[Item]| -> (Vec<Item>, Vec<u32>, Vec<Item>) {
                let (mut all, mut long, mut short) = (Vec::new(), Vec::new(), Vec::new());
                for x in list {
                    if x.hi < half.0 || x.lo > half.1 {
                        continue;
                    }
                    let c = Item { id: x.id, lo: x.lo.max(half.0), hi: x.hi.min(half.1) };
                    all.push(c);
                    if half.0 < x.lo && x.lo < half.1 || half.0 < x.hi && x.hi < half.1 {
                        short.push(c);
                    } else {
                        long.push(x.id);
                    }
                }
                (all, long, short)
            };
            let (ua, ul, us_) = clip(&us);
            let (va, vl, vs_) = clip(&vs);
            self.slab(k, us_, vs_, half, depth + 1);
            self.solve(k, ua.iter().map(|x| x.id).collect(), vl, depth + 1);
            self.solve(k, ul, va.iter().map(|x| x.id).collect(), depth + 1);
        }
    }
}

/// 3-hop spanner of the bipartite intersection graph between boxes `us` and
/// boxes `vs` (points count as degenerate boxes).
pub fn box_3hop_bipartite(inst: &Instance, g: &IntersectionGraph, us: &[u32], vs: &[u32], cfg: &BuildConfig) -> Result<Spanner, BuildError> {
    let mut ids: Vec<u32> = us.iter().chain(vs).copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let rk = Ranks::new(&inst.objects, &ids).ok_or_else(|| BuildError::NotApplicable {
        builder: BuilderId::Box3,
        reason: "needs axis-aligned boxes (or points) in one arithmetic mode".into(),
    })?;
    let mut s = Slabs { g, rk: &rk, b: SpannerBuilder::new(g.n()) };
    s.solve(rk.d, us.to_vec(), vs.to_vec(), 0);
    s.b.notes.push("planar base case: biclique cover with two stars per biclique".into());
    finish_with_repair(g, s.b, 3, cfg)
}

/// Box intersection graph: U x V when `g` holds only cross edges of a
/// labelled instance, otherwise all pairs with `U = V = everything`.
pub fn box_3hop(inst: &Instance, g: &IntersectionGraph, cfg: &BuildConfig) -> Result<Spanner, BuildError> {
    if inst.is_abstract() {
        return Err(BuildError::NotApplicable { builder: BuilderId::Box3, reason: "needs geometry".into() });
    }
    if g.labels().is_some() && g.bipartite_strict() {
        let (u, v) = (g.vertices_with(Label::U), g.vertices_with(Label::V));
        return box_3hop_bipartite(inst, g, &u, &v, cfg);
    }
    let all: Vec<u32> = (0..g.n() as u32).collect();
    box_3hop_bipartite(inst, g, &all, &all, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::GeomObject;
    use crate::graph::{build_graph, verify_spanner, GraphMode};
    use rand::{Rng, SeedableRng};

    fn boxes(n: usize, d: usize, side: i64, seed: u64) -> Instance {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let objs = (0..n)
            .map(|_| {
                let lo: Vec<i64> = (0..d).map(|_| rng.gen_range(0..200)).collect();
                let hi: Vec<i64> = lo.iter().map(|&l| l + rng.gen_range(0..side)).collect();
                GeomObject::axis_box(&lo, &hi)
            })
            .collect();
        Instance::geometric("b", d, objs)
    }

    fn check(inst: &Instance) -> Spanner {
        let g = build_graph(inst, GraphMode::Full).unwrap();
        let h = box_3hop(inst, &g, &BuildConfig::new(BuilderId::Box3)).unwrap();
        assert!(verify_spanner(&g, &h, 3).unwrap().ok);
        assert_eq!(h.stats.counters.get("fallback_repair_edges"), None, "{:?}", h.stats);
        h
    }

    #[test]
    fn random_boxes_all_dims() {
        for d in 1..=4 {
            for seed in 0..3 {
                check(&boxes(300, d, 40, seed));
            }
        }
    }

    #[test]
    fn disjoint_and_translates() {
        let objs = (0..10).map(|i| GeomObject::axis_box(&[10 * i, 0, 0], &[10 * i + 1, 1, 1])).collect();
        assert!(check(&Instance::geometric("d", 3, objs)).is_empty());
        let objs: Vec<_> = (0..40).map(|i| GeomObject::axis_box(&[i, i, i], &[i + 100, i + 100, i + 100])).collect();
        let h = check(&Instance::geometric("t", 3, objs));
        assert!(h.len() <= 4 * 40, "{}", h.len());
    }
}
