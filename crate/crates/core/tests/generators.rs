use hopspan::generators::{
    bipartite_boxes, chazelle_points_boxes, congruent_balls_r5, erdos_incidence, generate, halfspace_lift_r5, points_boxes,
    projective_plane, redblue_hypercubes, thin_tetrahedra, touching_tetrahedra,
};
use hopspan::graph::{build_graph, check_ground_truth, find_k22, GraphMode, IntersectionGraph, Restrict};
use hopspan::instance::{GenSpec, Instance, Label};

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

fn designated(inst: &Instance) -> IntersectionGraph {
    IntersectionGraph::from_edges(inst.n, inst.ground_truth_edges.as_ref().unwrap(), inst.labels.clone())
}

#[test]
fn graphs_match_ground_truth() {
    let mut cases: Vec<Instance> = Vec::new();
    for k in 1..=4 {
        cases.push(erdos_incidence(k).unwrap());
        cases.push(halfspace_lift_r5(k).unwrap());
    }
    for k in 1..=3 {
        cases.push(thin_tetrahedra(k).unwrap());
        cases.push(touching_tetrahedra(k, None).unwrap());
    }
    for k in 1..=2 {
        cases.push(congruent_balls_r5(k, None).unwrap());
    }
    for (n, d) in [(16, 2), (64, 2), (27, 3), (125, 3)] {
        cases.push(chazelle_points_boxes(n, d, None).unwrap());
        cases.push(bipartite_boxes(n, d.max(3), None).unwrap());
    }
    for (n, d) in [(16, 2), (16, 4), (32, 5)] {
        cases.push(redblue_hypercubes(n, d, None, None).unwrap());
    }
    for inst in &cases {
        let report = check_ground_truth(inst).unwrap();
        assert!(report.agrees(), "{}: missing {:?}, extra {:?}", inst.name, report.missing, report.extra);
    }
}

#[test]
fn designated_edges_have_no_k22_up_to_2000() {
    let mut cases: Vec<Instance> = Vec::new();
    for k in 1..=8 {
        cases.push(erdos_incidence(k).unwrap());
        cases.push(thin_tetrahedra(k).unwrap());
        cases.push(halfspace_lift_r5(k).unwrap());
        cases.push(touching_tetrahedra(k, None).unwrap());
        cases.push(congruent_balls_r5(k, None).unwrap());
    }
    for e in 1..=10 {
        cases.push(chazelle_points_boxes(1 << e, 2, None).unwrap());
        cases.push(bipartite_boxes(1 << e, 3, None).unwrap());
        cases.push(redblue_hypercubes(1 << e, 2, None, None).unwrap());
        cases.push(redblue_hypercubes(1 << e, 4, None, None).unwrap());
    }
    for q in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        cases.push(projective_plane(q).unwrap());
    }
    for inst in cases.iter().filter(|i| i.n <= 2000) {
        assert_eq!(find_k22(&designated(inst), Restrict::BipartiteEdges), None, "{}", inst.name);
    }
}

#[test]
fn same_side_pairs() {
    // Thin tetrahedra and the box lift are bipartite outright.
    for inst in [thin_tetrahedra(3).unwrap(), bipartite_boxes(64, 3, None).unwrap(), bipartite_boxes(81, 4, Some(3)).unwrap()] {
        let g = build_graph(&inst, GraphMode::Full).unwrap();
        assert!(g.bipartite_strict(), "{}", inst.name);
    }
    // Lifted points never meet each other; the halfspaces all overlap.
    let inst = halfspace_lift_r5(3).unwrap();
    let labels = inst.labels.as_ref().unwrap();
    let points: Vec<usize> = (0..inst.n).filter(|&v| labels[v] == Label::U).collect();
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i + 1..] {
            assert!(!hopspan::geometry::intersects(&inst.objects[a], &inst.objects[b]).unwrap());
        }
    }
}

#[test]
fn digit_net_incidence_growth() {
    // n = b^L points, each in C(L + d - 2, d - 1) boxes.
    for (n, d, b, levels) in [(4096, 2, 2, 12), (4096, 2, 8, 4), (4096, 3, 2, 12), (3125, 3, 5, 5), (2401, 4, 7, 4), (625, 5, 5, 4)] {
        let pb = points_boxes(n, d, Some(b)).unwrap();
        assert_eq!(pb.net.levels, levels);
        let per_point = binomial(levels as u64 + d as u64 - 2, d as u64 - 1);
        assert_eq!(pb.incidences.len() as u64, n * per_point, "n={n} d={d} b={b}");
    }
    // What the bench ladder measures, with the default base.
    let frozen: Vec<usize> = [64, 256, 1024, 4096].iter().map(|&n| chazelle_points_boxes(n, 2, None).unwrap().ground_truth_edges.unwrap().len()).collect();
    assert_eq!(frozen, FROZEN_CHAZELLE_2D);
}

// Bases 4, 4, 4, 8: n * L incidences.
const FROZEN_CHAZELLE_2D: [usize; 4] = [192, 1024, 5120, 16384];

#[test]
fn generation_is_deterministic() {
    for (family, k, n, d) in [("erdos", Some(3), None, None), ("touching_tetrahedra", Some(2), None, None), ("chazelle", None, Some(64), Some(3))]
    {
        let mut s = GenSpec::new(family);
        s.k = k;
        s.n = n;
        s.d = d;
        assert_eq!(generate(&s).unwrap().to_json().unwrap(), generate(&s).unwrap().to_json().unwrap());
    }
}
