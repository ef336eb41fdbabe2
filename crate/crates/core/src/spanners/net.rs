use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::partition::{cross_only, Rec};
use super::{finish_with_repair, BuildConfig, BuildError, BuilderId, Oracle};
use crate::geometry::{lift_ball_to_halfspace, GeomObject, Kind, Side};
use crate::graph::{IntersectionGraph, Spanner, SpannerBuilder};
use crate::instance::{Instance, Label};

const MAX_ROUNDS: u32 = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetSample {
    /// Sorted net points.
    pub net: Vec<u32>,
    /// Samples drawn, including the accepted one.
    pub rounds: u32,
    /// Deep ranges patched by hand after `MAX_ROUNDS` failed samples.
    pub patched: usize,
}

/// Sample size `ceil(4 t ln t)`.
pub fn net_size(t_net: usize) -> usize {
    let t = t_net as f64;
    (4.0 * t * t.ln()).ceil() as usize
}

/// Ranges of `ranges` holding at least `|points| / t_net` of `points`,
/// membership read off `g`.
fn deep_ranges(g: &IntersectionGraph, points_mask: &[bool], m: usize, ranges: &[u32], t_net: usize) -> Vec<u32> {
    ranges
        .iter()
        .copied()
        .filter(|&s| g.neighbors(s).iter().filter(|&&p| points_mask[p as usize]).count() * t_net >= m)
        .collect()
}

/// A `(1/t_net)`-net of `points` for `ranges`: every range containing at
/// least `|points| / t_net` points contains a net point. Random samples are
/// checked against the definition and redrawn on failure.
pub fn epsilon_net(g: &IntersectionGraph, points: &[u32], ranges: &[u32], t_net: usize, seed: u64) -> NetSample {
    let m = points.len();
    let k = net_size(t_net.max(2));
    let mut sorted = points.to_vec();
    sorted.sort_unstable();
    if k >= m {
        return NetSample { net: sorted, rounds: 1, patched: 0 };
    }
    let mut mask = vec![false; g.n()];
    for &p in points {
        mask[p as usize] = true;
    }
    let deep = deep_ranges(g, &mask, m, ranges, t_net);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut in_net = vec![false; g.n()];
    for round in 1..=MAX_ROUNDS {
        let mut net: Vec<u32> = sample(&mut rng, m, k).into_iter().map(|i| sorted[i]).collect();
        net.sort_unstable();
        for &p in &net {
            in_net[p as usize] = true;
        }
        let unhit: Vec<u32> = deep.iter().copied().filter(|&s| !g.neighbors(s).iter().any(|&p| in_net[p as usize])).collect();
        if unhit.is_empty() {
            return NetSample { net, rounds: round, patched: 0 };
        }
        if round == MAX_ROUNDS {
            for &s in &unhit {
                let p = *g.neighbors(s).iter().find(|&&p| mask[p as usize]).expect("deep range has points");
                net.push(p);
            }
            net.sort_unstable();
            net.dedup();
            return NetSample { net, rounds: round, patched: unhit.len() };
        }
        for &p in &net {
            in_net[p as usize] = false;
        }
    }
    unreachable!()
}

struct NetRec<'a> {
    rec: Rec<'a>,
    cfg: &'a BuildConfig,
    calls: u64,
    marks: Vec<u32>,
    stamp: u32,
}

impl NetRec<'_> {
    fn run(&mut self, ps: &[u32], ss: &[u32], depth: usize, b: &mut SpannerBuilder) {
        b.note_depth(depth);
        let (m, n) = (ps.len(), ss.len());
        if m == 0 || n == 0 {
            return;
        }
        if m <= 1 || n <= 1 {
            self.rec.all_edges(ps, ss, b);
            return;
        }
        if m * m <= n || depth >= self.cfg.max_depth {
            if depth >= self.cfg.max_depth {
                b.bump("fallback:depth", 1);
            }
            self.rec.lopsided(ps, ss, b);
            return;
        }
        let g = self.rec.g;
        self.calls += 1;
        let seed = self.cfg.seed ^ self.calls.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        let ns = epsilon_net(g, ps, ss, self.cfg.t_net, seed);
        b.bump("net_rounds", ns.rounds as u64);
        b.bump("net_patched", ns.patched as u64);

        let mut in_p = vec![false; g.n()];
        for &p in ps {
            in_p[p as usize] = true;
        }
        let mut in_net = vec![false; g.n()];
        for &p in &ns.net {
            in_net[p as usize] = true;
        }
        let mut shallow = Vec::new();
        for &s in ss {
            let inside: Vec<u32> = g.neighbors(s).iter().copied().filter(|&p| in_p[p as usize]).collect();
            if inside.len() * self.cfg.t_net >= m {
                // Deep: the net hits it, lowest net point first.
                if let Some(&p) = inside.iter().find(|&&p| in_net[p as usize]) {
                    b.add(p, s, "net:deep");
                }
            } else {
                shallow.push(s);
            }
        }
        // One 2-hop path from every point to every net point, via the lowest
        // common neighbour.
        for &q in &ns.net {
            self.stamp += 1;
            for &w in g.neighbors(q) {
                self.marks[w as usize] = self.stamp;
            }
            for &p in ps {
                if p == q {
                    continue;
                }
                if let Some(&w) = g.neighbors(p).iter().find(|&&w| self.marks[w as usize] == self.stamp) {
                    b.add(p, w, "net:path");
                    b.add(w, q, "net:path");
                }
            }
        }
        if shallow.is_empty() {
            return;
        }
        // Points above the (|S^|/r)-level go to a split of the shallow set;
        // the rest are handled by the partition recursion.
        let level = shallow.len() / self.cfg.r;
        let rec_stamp = self.rec.mark(&shallow);
        let (mut q, mut rest) = (Vec::new(), Vec::new());
        for &p in ps {
            let c = g.neighbors(p).iter().filter(|&&s| self.rec.mask[s as usize] == rec_stamp).count();
            if c > level {
                q.push(p);
            } else {
                rest.push(p);
            }
        }
        b.bump("net_level_points", q.len() as u64);
        self.rec.run(&rest, &shallow, depth + 1, b);
        if !q.is_empty() {
            let chunk = shallow.len().div_ceil(self.cfg.r).max(1);
            for piece in shallow.chunks(chunk) {
                self.run(&q, piece, depth + 1, b);
            }
        }
    }
}

/// Objects for the net recursion: points and halfspaces as given, rational
/// red/blue balls lifted to points and halfspaces.
fn lifted(inst: &Instance, us: &[u32], vs: &[u32]) -> Option<(Vec<GeomObject>, Vec<u32>, Vec<u32>)> {
    let kinds = |s: &[u32]| -> Option<Kind> {
        let k = inst.objects.get(*s.first()? as usize)?.kind();
        s.iter().all(|&i| inst.objects[i as usize].kind() == k).then_some(k)
    };
    if inst.is_abstract() {
        return None;
    }
    match (kinds(us), kinds(vs)) {
        (Some(Kind::Point), Some(Kind::Halfspace)) => Some((inst.objects.clone(), us.to_vec(), vs.to_vec())),
        (Some(Kind::Halfspace), Some(Kind::Point)) => Some((inst.objects.clone(), vs.to_vec(), us.to_vec())),
        (Some(Kind::Ball), Some(Kind::Ball)) => {
            let objs = inst
                .objects
                .iter()
                .enumerate()
                .map(|(i, o)| {
                    let side = if inst.label(i) == Some(Label::U) { Side::Red } else { Side::Blue };
                    lift_ball_to_halfspace(o, side).ok()
                })
                .collect::<Option<Vec<_>>>()?;
            Some((objs, us.to_vec(), vs.to_vec()))
        }
        _ => None,
    }
}

/// 3-hop spanner of a point/halfspace incidence graph (or red/blue rational
/// balls, lifted). `g` should hold only the U x V edges.
pub fn net_shortcut_3hop(
    inst: &Instance,
    g: &IntersectionGraph,
    us: &[u32],
    vs: &[u32],
    cfg: &BuildConfig,
) -> Result<Spanner, BuildError> {
    let Some((objs, mut ps, mut ss)) = lifted(inst, us, vs) else {
        return Err(BuildError::NotApplicable {
            builder: BuilderId::Netshortcut3,
            reason: "needs points vs halfspaces, or rational red/blue balls".into(),
        });
    };
    ps.sort_unstable();
    ss.sort_unstable();
    let mut kd = cfg.clone();
    kd.oracle = Oracle::Kd;
    let n = g.n();
    let mut b = SpannerBuilder::new(n);
    let mut nr = NetRec { rec: Rec::new(&objs, g, &kd), cfg, calls: 0, marks: vec![0; n], stamp: 0 };
    nr.run(&ps, &ss, 0, &mut b);
    b.notes.push(format!("t_net={} r={}", cfg.t_net, cfg.r));
    finish_with_repair(&cross_only(g), b, 3, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::intersects;
    use crate::graph::{build_graph, verify_spanner, GraphMode};
    use crate::Scalar;
    use rand::{Rng, SeedableRng};

    fn random_point_halfspace(n: usize, seed: u64) -> Instance {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut objs = Vec::new();
        for _ in 0..n {
            objs.push(GeomObject::point(&[rng.gen_range(-50..50), rng.gen_range(-50..50), rng.gen_range(-50..50)]));
        }
        for _ in 0..n {
            let nrm = [rng.gen_range(-5..=5), rng.gen_range(-5..=5), 1];
            objs.push(GeomObject::halfspace(&nrm, Scalar::int(rng.gen_range(-100..100))));
        }
        let labels = (0..2 * n).map(|i| if i < n { Label::U } else { Label::V }).collect();
        Instance::geometric("ph", 3, objs).with_labels(labels)
    }

    fn brute_net_ok(inst: &Instance, points: &[u32], ranges: &[u32], net: &[u32], t_net: usize) -> bool {
        ranges.iter().all(|&s| {
            let inside: Vec<u32> =
                points.iter().copied().filter(|&p| intersects(&inst.objects[p as usize], &inst.objects[s as usize]).unwrap()).collect();
            inside.len() * t_net < points.len() || inside.iter().any(|p| net.contains(p))
        })
    }

    #[test]
    fn net_is_valid_and_cheap() {
        let inst = random_point_halfspace(300, 1);
        let g = build_graph(&inst, GraphMode::BipartiteOnly).unwrap();
        let ps: Vec<u32> = (0..300).collect();
        let ss: Vec<u32> = (300..600).collect();
        let ns = epsilon_net(&g, &ps, &ss, 10, 7);
        assert_eq!(ns.net.len(), net_size(10));
        assert!(ns.rounds <= 3);
        assert!(brute_net_ok(&inst, &ps, &ss, &ns.net, 10));
    }

    #[test]
    fn coincident_points() {
        let mut objs = vec![GeomObject::point(&[1, 1]); 200];
        objs.push(GeomObject::halfspace(&[1, 0], Scalar::int(5)));
        let mut labels = vec![Label::U; 200];
        labels.push(Label::V);
        let inst = Instance::geometric("c", 2, objs).with_labels(labels);
        let g = build_graph(&inst, GraphMode::BipartiteOnly).unwrap();
        let ns = epsilon_net(&g, &(0..200).collect::<Vec<_>>(), &[200], 2, 1);
        assert_eq!(ns.rounds, 1);
        assert!(!ns.net.is_empty());
    }

    #[test]
    fn shortcut_verifies() {
        for seed in 0..3 {
            let inst = random_point_halfspace(400, seed);
            let g = build_graph(&inst, GraphMode::BipartiteOnly).unwrap();
            let cfg = BuildConfig::new(BuilderId::Netshortcut3);
            let ps: Vec<u32> = (0..400).collect();
            let ss: Vec<u32> = (400..800).collect();
            let h = net_shortcut_3hop(&inst, &g, &ps, &ss, &cfg).unwrap();
            assert!(verify_spanner(&g, &h, 3).unwrap().ok);
            assert_eq!(h.stats.counters.get("fallback_repair_edges"), None);
        }
    }

    #[test]
    fn all_deep_and_all_empty() {
        let n = 60;
        let mut objs: Vec<GeomObject> = (0..n).map(|i| GeomObject::point(&[i, 0])).collect();
        objs.extend((0..n).map(|_| GeomObject::halfspace(&[0, 1], Scalar::int(10))));
        let labels = (0..2 * n).map(|i| if i < n { Label::U } else { Label::V }).collect::<Vec<_>>();
        let inst = Instance::geometric("deep", 2, objs.clone()).with_labels(labels.clone());
        let g = build_graph(&inst, GraphMode::BipartiteOnly).unwrap();
        let ps: Vec<u32> = (0..n as u32).collect();
        let ss: Vec<u32> = (n as u32..2 * n as u32).collect();
        let cfg = BuildConfig::new(BuilderId::Netshortcut3);
        let h = net_shortcut_3hop(&inst, &g, &ps, &ss, &cfg).unwrap();
        assert!(verify_spanner(&g, &h, 3).unwrap().ok);
        assert!(h.stats.provenance.keys().all(|k| k.starts_with("net:")));

        for o in objs.iter_mut().skip(n as usize) {
            *o = GeomObject::halfspace(&[0, 1], Scalar::int(-10));
        }
        let inst = Instance::geometric("empty", 2, objs).with_labels(labels);
        let g = build_graph(&inst, GraphMode::BipartiteOnly).unwrap();
        assert!(net_shortcut_3hop(&inst, &g, &ps, &ss, &cfg).unwrap().is_empty());
    }
}
