use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use hopspan::graph::{build_graph, find_k22, verify_spanner, Restrict};
use hopspan::spanners::{build_with_graph, BuildConfig, BuilderId};
use hopspan_bench::{bipartite, boxes_2d, boxes_3d, erdos, Workload};

fn builders(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    let cases: Vec<(BuilderId, fn(u64, &BuildConfig) -> Workload)> = vec![
        (BuilderId::Greedy, boxes_2d),
        (BuilderId::Grouped3, bipartite),
        (BuilderId::Fat2, boxes_2d),
        (BuilderId::Fatbox2, boxes_2d),
        (BuilderId::Box3, boxes_3d),
    ];
    for (b, make) in cases {
        let cfg = BuildConfig::new(b);
        for n in [256u64, 1024] {
            let w = make(n, &cfg);
            group.bench_with_input(BenchmarkId::new(format!("{b}/{}", w.name), n), &w, |bench, w| {
                bench.iter(|| build_with_graph(&w.inst, &w.graph, &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn graphs(c: &mut Criterion) {
    let mut group = c.benchmark_group("graph");
    group.sample_size(10);
    let cfg = BuildConfig::new(BuilderId::Greedy);
    for n in [1024u64, 4096] {
        let w = boxes_3d(n, &cfg);
        group.bench_with_input(BenchmarkId::new("intersection/boxes-3d", n), &w, |bench, w| {
            bench.iter(|| build_graph(black_box(&w.inst), cfg.graph_mode_for(&w.inst)).unwrap())
        });
    }
    let w = erdos(8, &cfg);
    group.bench_function("find_k22/erdos-8", |bench| bench.iter(|| find_k22(black_box(&w.graph), Restrict::All)));
    let h = build_with_graph(&w.inst, &w.graph, &cfg).unwrap();
    group.bench_function("verify/erdos-8", |bench| bench.iter(|| verify_spanner(black_box(&w.graph), &h, 3).unwrap()));
    group.finish();
}

criterion_group!(benches, builders, graphs);
criterion_main!(benches);
