use std::collections::VecDeque;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hopspan::geometry::lp::hulls_intersect;
use hopspan::geometry::{intersects, GeomObject, Shape};
use hopspan::graph::{build_graph, verify_edges, verify_spanner, GraphMode, IntersectionGraph};
use hopspan::instance::{Instance, Label};
use hopspan::io::{read_edge_list, write_edge_list};
use hopspan::spanners::{build_with_graph, greedy_spanner, BuildConfig, BuildError, BuilderId};
use hopspan::Scalar;

fn coords(rng: &mut ChaCha8Rng, d: usize, lo: i64, hi: i64) -> Vec<i64> {
    (0..d).map(|_| rng.gen_range(lo..=hi)).collect()
}

/// A random bounded object; `polytope` excludes balls.
fn random_object(rng: &mut ChaCha8Rng, d: usize, polytope: bool) -> GeomObject {
    let kinds = if polytope { 4 } else { 5 };
    match rng.gen_range(0..kinds) {
        0 => GeomObject::point(&coords(rng, d, -20, 20)),
        1 => GeomObject::segment(&coords(rng, d, -20, 20), &coords(rng, d, -20, 20)),
        2 => {
            let vs: Vec<Vec<i64>> = (0..=d).map(|_| coords(rng, d, -20, 20)).collect();
            GeomObject::simplex(&vs.iter().map(Vec::as_slice).collect::<Vec<_>>())
        }
        3 => {
            let lo = coords(rng, d, -20, 15);
            let hi: Vec<i64> = lo.iter().map(|&l| l + rng.gen_range(0..=8)).collect();
            GeomObject::axis_box(&lo, &hi)
        }
        _ => GeomObject::ball(&coords(rng, d, -20, 20), rng.gen_range(0..=10)),
    }
}

fn hull_vertices(o: &GeomObject) -> Vec<Vec<Scalar>> {
    match o.as_exact().unwrap() {
        Shape::Point(p) => vec![p.clone()],
        Shape::Segment { a, b } => vec![a.clone(), b.clone()],
        Shape::Simplex { vertices } => vertices.clone(),
        Shape::AxisBox { lo, hi } => (0..1usize << lo.len())
            .map(|mask| (0..lo.len()).map(|k| if mask >> k & 1 == 1 { hi[k].clone() } else { lo[k].clone() }).collect())
            .collect(),
        s => panic!("not a polytope: {s:?}"),
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> IntersectionGraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    IntersectionGraph::from_edges(n, &edges, None)
}

/// Hop distance from `s` to `t` in `edges` without the edge `(s, t)` itself.
fn distance_avoiding(n: usize, edges: &[(u32, u32)], s: u32, t: u32) -> Option<u32> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        if (u, v) != (s.min(t), s.max(t)) {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
    }
    let mut dist = vec![u32::MAX; n];
    dist[s as usize] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(u) = q.pop_front() {
        for &v in &adj[u as usize] {
            if dist[v as usize] == u32::MAX {
                dist[v as usize] = dist[u as usize] + 1;
                q.push_back(v);
            }
        }
    }
    (dist[t as usize] != u32::MAX).then_some(dist[t as usize])
}

fn scale(o: &GeomObject, c: i64) -> GeomObject {
    let c = Scalar::int(c);
    let sc = |v: &Vec<Scalar>| v.iter().map(|x| x * &c).collect::<Vec<_>>();
    let s = match o.as_exact().unwrap() {
        Shape::Point(p) => Shape::Point(sc(p)),
        Shape::Segment { a, b } => Shape::Segment { a: sc(a), b: sc(b) },
        Shape::Simplex { vertices } => Shape::Simplex { vertices: vertices.iter().map(sc).collect() },
        Shape::AxisBox { lo, hi } => Shape::AxisBox { lo: sc(lo), hi: sc(hi) },
        Shape::Ball { center, radius } => Shape::Ball { center: sc(center), radius: radius * &c },
        Shape::Halfspace { normal, offset } => Shape::Halfspace { normal: normal.clone(), offset: offset * &c },
    };
    GeomObject::exact(s).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn predicate_matches_hull_oracle(seed in any::<u64>(), d in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let a = random_object(&mut rng, d, true);
            let b = random_object(&mut rng, d, true);
            let got = intersects(&a, &b).unwrap();
            prop_assert_eq!(got, intersects(&b, &a).unwrap());
            prop_assert!(intersects(&a, &a).unwrap());
            prop_assert_eq!(got, hulls_intersect(&hull_vertices(&a), &hull_vertices(&b)), "{:?} {:?}", a, b);
        }
    }

    #[test]
    fn balls_match_distance_oracle(seed in any::<u64>(), d in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..20 {
            let (c1, c2) = (coords(&mut rng, d, -30, 30), coords(&mut rng, d, -30, 30));
            let (r1, r2) = (rng.gen_range(0..=20i64), rng.gen_range(0..=20i64));
            let dist: i64 = c1.iter().zip(&c2).map(|(a, b)| (a - b) * (a - b)).sum();
            let got = intersects(&GeomObject::ball(&c1, r1), &GeomObject::ball(&c2, r2)).unwrap();
            prop_assert_eq!(got, dist <= (r1 + r2) * (r1 + r2));
        }
    }

    #[test]
    fn scaling_preserves_graph(seed in any::<u64>(), c in 2i64..60) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=3);
        // Ball/simplex pairs have no predicate, so simplices sit this one out.
        let objs: Vec<GeomObject> = (0..25)
            .map(|_| loop {
                let o = random_object(&mut rng, d, false);
                if !matches!(o.as_exact(), Some(Shape::Simplex { .. })) {
                    break o;
                }
            })
            .collect();
        let scaled: Vec<GeomObject> = objs.iter().map(|o| scale(o, c)).collect();
        let g = build_graph(&Instance::geometric("a", d, objs), GraphMode::Full).unwrap();
        let h = build_graph(&Instance::geometric("b", d, scaled), GraphMode::Full).unwrap();
        prop_assert_eq!(g.edges().collect::<Vec<_>>(), h.edges().collect::<Vec<_>>());
    }

    #[test]
    fn graph_spans_itself_at_one(seed in any::<u64>(), n in 0usize..60, p in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        let all: Vec<(u32, u32)> = g.edges().collect();
        prop_assert!(verify_edges(&g, &all, 1).unwrap().ok);
    }

    #[test]
    fn greedy_has_no_short_cycles(seed in any::<u64>(), n in 2usize..=50, p in 0.05f64..0.7, t in 1u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, p);
        let h = greedy_spanner(&g, t);
        prop_assert!(verify_spanner(&g, &h, t).unwrap().ok);
        // A cycle of length <= t + 1 through uv means u, v are within t hops without uv.
        for &(u, v) in &h.edges {
            prop_assert!(distance_avoiding(n, &h.edges, u, v).is_none_or(|d| d > t), "edge {u}-{v}");
        }
    }

    #[test]
    fn edge_lists_round_trip(seed in any::<u64>(), n in 1usize..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_graph(&mut rng, n, 0.3);
        let edges: Vec<(u32, u32)> = g.edges().collect();
        prop_assert_eq!(read_edge_list(&write_edge_list(&edges)).unwrap(), edges);
    }

    #[test]
    fn instances_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = rng.gen_range(1..=4);
        let objs: Vec<GeomObject> = (0..rng.gen_range(0..30)).map(|_| random_object(&mut rng, d, false)).collect();
        let labels = (0..objs.len()).map(|_| if rng.gen_bool(0.5) { Label::U } else { Label::V }).collect();
        let inst = Instance::geometric("rt", d, objs).with_labels(labels);
        prop_assert_eq!(Instance::from_json(&inst.to_json().unwrap()).unwrap(), inst);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Every builder, on labelled random boxes: a subgraph of G, a spanner at
    /// its declared stretch, and the same edges when rerun.
    #[test]
    fn builders_are_verified_subgraphs(seed in any::<u64>(), d in 1usize..=3, side in 2i64..40) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = 80;
        let objs: Vec<GeomObject> = (0..n)
            .map(|_| {
                let lo = coords(&mut rng, d, 0, 100);
                let hi: Vec<i64> = lo.iter().map(|&l| l + rng.gen_range(1..=side)).collect();
                GeomObject::axis_box(&lo, &hi)
            })
            .collect();
        let labels = (0..n).map(|i| if i % 2 == 0 { Label::U } else { Label::V }).collect();
        let inst = Instance::geometric("boxes", d, objs).with_labels(labels);
        for b in BuilderId::ALL {
            let cfg = BuildConfig::new(b).with_seed(seed);
            let g = build_graph(&inst, cfg.graph_mode_for(&inst)).unwrap();
            let h = match build_with_graph(&inst, &g, &cfg) {
                Ok(h) => h,
                Err(BuildError::NotApplicable { .. } | BuildError::Precondition(_)) => continue,
                Err(e) => panic!("{b}: {e}"),
            };
            prop_assert!(h.edges.iter().all(|&(u, v)| g.has_edge(u, v)), "{} invented an edge", b);
            prop_assert!(verify_spanner(&g, &h, cfg.t).unwrap().ok, "{} fails at t={}", b, cfg.t);
            prop_assert_eq!(&build_with_graph(&inst, &g, &cfg).unwrap().edges, &h.edges);
        }
    }
}
