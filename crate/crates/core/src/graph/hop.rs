//! Depth-truncated hop queries.

use super::GraphError;

pub trait Adjacency {
    fn vertex_count(&self) -> usize;
    /// Strictly sorted neighbour list.
    fn adj(&self, v: u32) -> &[u32];
}

/// Reusable visitation stamps so repeated queries cost only what they touch.
#[derive(Clone, Debug, Default)]
pub struct HopScratch {
    mark_a: Vec<u32>,
    mark_b: Vec<u32>,
    dist_a: Vec<u8>,
    dist_b: Vec<u8>,
    stamp: u32,
    next: Vec<u32>,
}

impl HopScratch {
    pub fn new(n: usize) -> Self {
        HopScratch {
            mark_a: vec![0; n],
            mark_b: vec![0; n],
            dist_a: vec![0; n],
            dist_b: vec![0; n],
            ..Default::default()
        }
    }

    fn bump(&mut self, n: usize) {
        if self.mark_a.len() < n {
            *self = HopScratch::new(n);
        }
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.mark_a.iter_mut().for_each(|x| *x = 0);
            self.mark_b.iter_mut().for_each(|x| *x = 0);
            self.stamp = 1;
        }
    }

    /// Batched `within` for a fixed source: marks the ball of radius `t - 1`
    /// around `u` (for `t` in 2..=3) so that [`HopScratch::reaches`] costs one
    /// neighbour scan per target.
    pub fn set_source<G: Adjacency + ?Sized>(&mut self, g: &G, u: u32, t: u32) {
        if !(2..=3).contains(&t) {
            return;
        }
        self.bump(g.vertex_count());
        let s = self.stamp;
        self.mark_a[u as usize] = s;
        for &x in g.adj(u) {
            self.mark_a[x as usize] = s;
            if t == 3 {
                for &y in g.adj(x) {
                    self.mark_a[y as usize] = s;
                }
            }
        }
    }

    /// `d(u, v) <= t`, where `u` was passed to the last `set_source` with this `t`.
    pub fn reaches<G: Adjacency + ?Sized>(&mut self, g: &G, u: u32, v: u32, t: u32) -> bool {
        if !(2..=3).contains(&t) {
            return self.within(g, u, v, t);
        }
        let s = self.stamp;
        self.mark_a[v as usize] == s || g.adj(v).iter().any(|&y| self.mark_a[y as usize] == s)
    }

    /// Is there a path of at most `t` edges from `u` to `v`?
    pub fn within<G: Adjacency + ?Sized>(&mut self, g: &G, u: u32, v: u32, t: u32) -> bool {
        if u == v {
            return true;
        }
        if t == 0 {
            return false;
        }
        let (nu, nv) = (g.adj(u), g.adj(v));
        let direct = if nu.len() <= nv.len() { nu.binary_search(&v).is_ok() } else { nv.binary_search(&u).is_ok() };
        if direct || t == 1 {
            return direct;
        }
        if sorted_intersect(nu, nv) {
            return true;
        }
        if t == 2 {
            return false;
        }
        if t == 3 {
            return self.three_hops(g, nu, nv);
        }
        self.bidirectional(g, u, v, t)
    }

    fn three_hops<G: Adjacency + ?Sized>(&mut self, g: &G, nu: &[u32], nv: &[u32]) -> bool {
        let (small, large) = if nu.len() <= nv.len() { (nu, nv) } else { (nv, nu) };
        self.bump(g.vertex_count());
        let s = self.stamp;
        for &y in large {
            self.mark_a[y as usize] = s;
        }
        // Scan neighbourhoods of the smaller side for a marked vertex.
        small.iter().any(|&x| g.adj(x).iter().any(|&y| self.mark_a[y as usize] == s))
    }

    fn bidirectional<G: Adjacency + ?Sized>(&mut self, g: &G, u: u32, v: u32, t: u32) -> bool {
        self.bump(g.vertex_count());
        let s = self.stamp;
        self.mark_a[u as usize] = s;
        self.dist_a[u as usize] = 0;
        self.mark_b[v as usize] = s;
        self.dist_b[v as usize] = 0;
        let (mut da, mut db) = (0u32, 0u32);
        let mut fa = vec![u];
        let mut fb = vec![v];
        while da + db < t {
            // Expand the smaller frontier.
            let grow_a = fa.len() <= fb.len();
            let (front, mark, dist, other_mark, other_dist, depth) = if grow_a {
                (&mut fa, &mut self.mark_a, &mut self.dist_a, &self.mark_b, &self.dist_b, &mut da)
            } else {
                (&mut fb, &mut self.mark_b, &mut self.dist_b, &self.mark_a, &self.dist_a, &mut db)
            };
            if front.is_empty() {
                return false;
            }
            *depth += 1;
            self.next.clear();
            for &x in front.iter() {
                for &y in g.adj(x) {
                    if other_mark[y as usize] == s && *depth + u32::from(other_dist[y as usize]) <= t {
                        return true;
                    }
                    if mark[y as usize] != s {
                        mark[y as usize] = s;
                        dist[y as usize] = (*depth).min(255) as u8;
                        self.next.push(y);
                    }
                }
            }
            std::mem::swap(front, &mut self.next);
        }
        false
    }
}

fn sorted_intersect(a: &[u32], b: &[u32]) -> bool {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.len() * 16 < large.len() {
        return small.iter().any(|x| large.binary_search(x).is_ok());
    }
    let (mut i, mut j) = (0, 0);
    while i < small.len() && j < large.len() {
        match small[i].cmp(&large[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return true,
        }
    }
    false
}

/// `d_G(u, v) <= t`.
pub fn hop_distance_leq<G: Adjacency + ?Sized>(g: &G, u: u32, v: u32, t: u32) -> Result<bool, GraphError> {
    for x in [u, v] {
        if x as usize >= g.vertex_count() {
            return Err(GraphError::InvalidVertex(x));
        }
    }
    Ok(HopScratch::new(g.vertex_count()).within(g, u, v, t))
}
