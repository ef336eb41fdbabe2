//! Fixed workloads shared by the benchmarks.

use hopspan::generators::{erdos_incidence, random_boxes, random_split_graph, USide};
use hopspan::graph::{build_graph, IntersectionGraph};
use hopspan::instance::Instance;
use hopspan::spanners::BuildConfig;

pub struct Workload {
    pub name: &'static str,
    pub inst: Instance,
    pub graph: IntersectionGraph,
}

fn workload(name: &'static str, inst: Instance, cfg: &BuildConfig) -> Workload {
    let graph = build_graph(&inst, cfg.graph_mode_for(&inst)).expect("graph builds");
    Workload { name, inst, graph }
}

pub fn boxes_2d(n: u64, cfg: &BuildConfig) -> Workload {
    workload("boxes-2d", random_boxes(n, 2, 1.0, 1.0, 0).unwrap(), cfg)
}

pub fn boxes_3d(n: u64, cfg: &BuildConfig) -> Workload {
    workload("boxes-3d", random_boxes(n, 3, 1.0, 2.0, 0).unwrap(), cfg)
}

pub fn bipartite(n: u64, cfg: &BuildConfig) -> Workload {
    workload("bipartite", random_split_graph(n, n / 2, 0.5, USide::Independent, 0).unwrap(), cfg)
}

pub fn erdos(k: u64, cfg: &BuildConfig) -> Workload {
    workload("erdos", erdos_incidence(k).unwrap(), cfg)
}
