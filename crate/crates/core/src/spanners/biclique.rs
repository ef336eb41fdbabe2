//! Biclique covers of bipartite box intersection graphs.
//!
//! Two boxes meet iff on every axis `a.lo <= b.hi && b.lo <= a.hi`, i.e.
//! exactly one of `b.lo <= a.lo <= b.hi` or `a.lo < b.lo <= a.hi` holds. Each
//! case is a one-dimensional stabbing query, answered with canonical nodes of
//! a segment tree over the sorted keys; the pairs of a node are recursed on
//! the next axis. Every output biclique is complete, and every intersecting
//! pair lands in exactly one biclique.

use super::BuildError;
use crate::geometry::{Coord, GeomObject, Shape};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Biclique {
    pub us: Vec<u32>,
    pub vs: Vec<u32>,
}

impl Biclique {
    pub fn weight(&self) -> usize {
        self.us.len() + self.vs.len()
    }
}

/// Integer ranks of box endpoints, per axis. Equal coordinates share a rank and
/// ranks are even, so odd values separate corners.
#[derive(Clone, Debug)]
pub(crate) struct Ranks {
    pub d: usize,
    /// `lo[v][k]`, `hi[v][k]`, indexed by global vertex id.
    pub lo: Vec<Vec<i64>>,
    pub hi: Vec<Vec<i64>>,
}

impl Ranks {
    /// Ranks for the boxes (or points) among `objs`; `None` if some object in
    /// `ids` is neither, or modes are mixed.
    pub fn new(objs: &[GeomObject], ids: &[u32]) -> Option<Ranks> {
        let mut ex = Vec::new();
        let mut fl = Vec::new();
        for &v in ids {
            match &objs[v as usize] {
                GeomObject::Exact(s @ (Shape::AxisBox { .. } | Shape::Point(_))) => {
                    let (l, h) = s.bbox()?;
                    ex.push((v, l, h));
                }
                GeomObject::Float { shape: s @ (Shape::AxisBox { .. } | Shape::Point(_)), .. } => {
                    let (l, h) = s.bbox()?;
                    fl.push((v, l, h));
                }
                _ => return None,
            }
        }
        if !ex.is_empty() && !fl.is_empty() {
            return None;
        }
        let d = objs.first().map_or(0, GeomObject::dimension);
        let (lo, hi) = if fl.is_empty() { rank_boxes(&ex, objs.len(), d) } else { rank_boxes(&fl, objs.len(), d) };
        Some(Ranks { d, lo, hi })
    }

    pub fn meets(&self, a: u32, b: u32, axes: usize) -> bool {
        let (a, b) = (a as usize, b as usize);
        (0..axes).all(|k| self.lo[a][k] <= self.hi[b][k] && self.lo[b][k] <= self.hi[a][k])
    }
}

type RankTable = (Vec<Vec<i64>>, Vec<Vec<i64>>);

fn rank_boxes<T: Coord>(boxes: &[(u32, Vec<T>, Vec<T>)], n: usize, d: usize) -> RankTable {
    let mut lo = vec![Vec::new(); n];
    let mut hi = vec![Vec::new(); n];
    for (v, _, _) in boxes {
        lo[*v as usize] = vec![0; d];
        hi[*v as usize] = vec![0; d];
    }
    for k in 0..d {
        let mut ends: Vec<(&T, u32, bool)> = Vec::with_capacity(2 * boxes.len());
        for (v, l, h) in boxes {
            ends.push((&l[k], *v, false));
            ends.push((&h[k], *v, true));
        }
        ends.sort_by(|a, b| a.0.total_cmp(b.0));
        let mut rank = 0i64;
        for i in 0..ends.len() {
            if i > 0 && ends[i].0.total_cmp(ends[i - 1].0).is_ne() {
                rank += 2;
            }
            let (_, v, is_hi) = ends[i];
            if is_hi {
                hi[v as usize][k] = rank;
            } else {
                lo[v as usize][k] = rank;
            }
        }
    }
    (lo, hi)
}

/// Canonical nodes of `[0, keys)` covering each query index range; calls
/// `emit(l, r, queries)` once per node with a non-empty query list.
fn canonical(l: usize, r: usize, queries: Vec<(u32, usize, usize)>, emit: &mut dyn FnMut(usize, usize, Vec<u32>)) {
    if queries.is_empty() || l >= r {
        return;
    }
    let mut here = Vec::new();
    let mut down = Vec::new();
    for q in queries {
        if q.1 <= l && r <= q.2 {
            here.push(q.0);
        } else if q.1 < r && q.2 > l {
            down.push(q);
        }
    }
    if !here.is_empty() {
        emit(l, r, here);
    }
    if r - l > 1 && !down.is_empty() {
        let m = (l + r) / 2;
        let left: Vec<_> = down.iter().filter(|q| q.1 < m).copied().collect();
        let right: Vec<_> = down.iter().filter(|q| q.2 > m).copied().collect();
        canonical(l, m, left, emit);
        canonical(m, r, right, emit);
    }
}

/// Cover of the intersecting pairs of `us x vs` on axes `0..axes`.
pub(crate) fn cover_ranks(rk: &Ranks, axes: usize, us: Vec<u32>, vs: Vec<u32>, out: &mut Vec<Biclique>) {
    if us.is_empty() || vs.is_empty() {
        return;
    }
    if axes == 0 {
        out.push(Biclique { us, vs });
        return;
    }
    let k = axes - 1;
    let (lo, hi) = (&rk.lo, &rk.hi);
    // Case 1: b.lo <= a.lo <= b.hi, keys are the a.lo of U.
    let mut keyed = us.clone();
    keyed.sort_by_key(|&a| (lo[a as usize][k], a));
    let keys: Vec<i64> = keyed.iter().map(|&a| lo[a as usize][k]).collect();
    let queries: Vec<(u32, usize, usize)> = vs
        .iter()
        .map(|&b| {
            let (bl, bh) = (lo[b as usize][k], hi[b as usize][k]);
            (b, keys.partition_point(|&x| x < bl), keys.partition_point(|&x| x <= bh))
        })
        .filter(|q| q.1 < q.2)
        .collect();
    let mut nodes = Vec::new();
    canonical(0, keyed.len(), queries, &mut |l, r, qs| nodes.push((keyed[l..r].to_vec(), qs)));
    for (a, b) in nodes {
        cover_ranks(rk, k, a, b, out);
    }
    // Case 2: a.lo < b.lo <= a.hi, keys are the b.lo of V.
    let mut keyed = vs;
    keyed.sort_by_key(|&b| (lo[b as usize][k], b));
    let keys: Vec<i64> = keyed.iter().map(|&b| lo[b as usize][k]).collect();
    let queries: Vec<(u32, usize, usize)> = us
        .iter()
        .map(|&a| {
            let (al, ah) = (lo[a as usize][k], hi[a as usize][k]);
            (a, keys.partition_point(|&x| x <= al), keys.partition_point(|&x| x <= ah))
        })
        .filter(|q| q.1 < q.2)
        .collect();
    let mut nodes = Vec::new();
    canonical(0, keyed.len(), queries, &mut |l, r, qs| nodes.push((qs, keyed[l..r].to_vec())));
    for (a, b) in nodes {
        cover_ranks(rk, k, a, b, out);
    }
}

/// Bicliques `U_i x V_i` whose union is exactly the set of intersecting pairs
/// in `us x vs`. Objects must be axis-aligned boxes or points.
pub fn box_biclique_cover(objs: &[GeomObject], us: &[u32], vs: &[u32]) -> Result<Vec<Biclique>, BuildError> {
    let mut ids: Vec<u32> = us.iter().chain(vs).copied().collect();
    ids.sort_unstable();
    ids.dedup();
    let rk = Ranks::new(objs, &ids).ok_or_else(|| BuildError::Precondition("biclique cover needs boxes in one mode".into()))?;
    let mut out = Vec::new();
    cover_ranks(&rk, rk.d, us.to_vec(), vs.to_vec(), &mut out);
    for b in &mut out {
        b.us.sort_unstable();
        b.vs.sort_unstable();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::intersects;
    use rand::{Rng, SeedableRng};
    use std::collections::BTreeSet;

    fn random_boxes(n: usize, d: usize, seed: u64) -> Vec<GeomObject> {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| {
                let lo: Vec<i64> = (0..d).map(|_| rng.gen_range(0..100)).collect();
                let hi: Vec<i64> = lo.iter().map(|&l| l + rng.gen_range(0..25)).collect();
                GeomObject::axis_box(&lo, &hi)
            })
            .collect()
    }

    fn covered(cover: &[Biclique]) -> (BTreeSet<(u32, u32)>, usize) {
        let mut s = BTreeSet::new();
        let mut dup = 0;
        for b in cover {
            for &u in &b.us {
                for &v in &b.vs {
                    if !s.insert((u, v)) {
                        dup += 1;
                    }
                }
            }
        }
        (s, dup)
    }

    #[test]
    fn random_cover_is_exact() {
        for d in 1..=3 {
            let objs = random_boxes(500, d, d as u64);
            let us: Vec<u32> = (0..250).collect();
            let vs: Vec<u32> = (250..500).collect();
            let cover = box_biclique_cover(&objs, &us, &vs).unwrap();
            let (got, dup) = covered(&cover);
            let mut want = BTreeSet::new();
            for &u in &us {
                for &v in &vs {
                    if intersects(&objs[u as usize], &objs[v as usize]).unwrap() {
                        want.insert((u, v));
                    }
                }
            }
            assert_eq!(got, want, "d={d}");
            assert_eq!(dup, 0);
        }
    }

    #[test]
    fn trivial_covers() {
        let objs = vec![
            GeomObject::axis_box(&[0, 0], &[1, 1]),
            GeomObject::axis_box(&[5, 5], &[6, 6]),
            GeomObject::axis_box(&[0, 0], &[1, 1]),
        ];
        assert!(box_biclique_cover(&objs, &[0], &[1]).unwrap().is_empty());
        let same = vec![GeomObject::axis_box(&[0, 0], &[1, 1]); 6];
        let cover = box_biclique_cover(&same, &[0, 1, 2], &[3, 4, 5]).unwrap();
        assert_eq!(cover, vec![Biclique { us: vec![0, 1, 2], vs: vec![3, 4, 5] }]);
        assert_eq!(box_biclique_cover(&objs, &[0], &[2]).unwrap().len(), 1);
    }
}
