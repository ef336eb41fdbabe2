//! Point/region divide and conquer with pluggable partition oracles.
//!
//! An oracle splits the point side into cells; every region is then
//! classified against the tight bounding box of each cell's points. Regions
//! containing the box are complete to the cell (a biclique, two stars),
//! disjoint regions are dropped, and crossing regions are chunked and recursed
//! on. Neither oracle carries the crossing-number guarantee of a true
//! polynomial partition; they only shape the recursion.

use super::lopsided::{lopsided_into, LopScratch};
use super::{add_checked, finish_with_repair, BuildConfig, BuildError, BuilderId, Oracle};
use crate::geometry::{contains_box, intersects, GeomObject, Kind, Shape};
use crate::graph::{IntersectionGraph, Spanner, SpannerBuilder};
use crate::instance::Instance;
use crate::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Crossing,
    Containing,
    Disjoint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub points: Vec<u32>,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub crossing: Vec<u32>,
    pub containing: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PartitionResult {
    pub cells: Vec<Cell>,
}

impl PartitionResult {
    /// Cells are non-empty and their point sets partition `points`.
    pub fn is_partition_of(&self, points: &[u32]) -> bool {
        let mut all: Vec<u32> = self.cells.iter().flat_map(|c| c.points.iter().copied()).collect();
        all.sort_unstable();
        let mut want = points.to_vec();
        want.sort_unstable();
        self.cells.iter().all(|c| !c.points.is_empty()) && all == want
    }
}

fn coords_f64(o: &GeomObject) -> Vec<f64> {
    o.bbox_f64().expect("point").0
}

/// Target number of cells for one oracle call.
fn cell_target(r: usize) -> usize {
    r * r
}

fn kd_split(objs: &[GeomObject], pts: &mut [u32], leaves: usize, out: &mut Vec<Vec<u32>>) {
    if leaves <= 1 || pts.len() <= 1 {
        out.push(pts.to_vec());
        return;
    }
    let cs: Vec<Vec<f64>> = pts.iter().map(|&p| coords_f64(&objs[p as usize])).collect();
    let d = cs[0].len();
    let spread = |k: usize| {
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        for c in &cs {
            lo = lo.min(c[k]);
            hi = hi.max(c[k]);
        }
        hi - lo
    };
    let axis = (0..d).max_by(|&a, &b| spread(a).total_cmp(&spread(b)).then(b.cmp(&a))).unwrap();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| cs[a][axis].total_cmp(&cs[b][axis]).then(pts[a].cmp(&pts[b])));
    let sorted: Vec<u32> = order.iter().map(|&i| pts[i]).collect();
    pts.copy_from_slice(&sorted);
    let mid = pts.len() / 2;
    let (a, b) = pts.split_at_mut(mid);
    kd_split(objs, a, leaves / 2, out);
    kd_split(objs, b, leaves - leaves / 2, out);
}

fn grid_split(objs: &[GeomObject], pts: &[u32], target: usize) -> Vec<Vec<u32>> {
    let cs: Vec<Vec<f64>> = pts.iter().map(|&p| coords_f64(&objs[p as usize])).collect();
    let d = cs[0].len();
    let per_axis = ((target as f64).powf(1.0 / d as f64).round() as usize).max(2);
    let lo: Vec<f64> = (0..d).map(|k| cs.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min)).collect();
    let hi: Vec<f64> = (0..d).map(|k| cs.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
    let mut buckets: std::collections::BTreeMap<Vec<usize>, Vec<u32>> = Default::default();
    for (i, c) in cs.iter().enumerate() {
        let key: Vec<usize> = (0..d)
            .map(|k| {
                let w = hi[k] - lo[k];
                if w <= 0.0 {
                    0
                } else {
                    (((c[k] - lo[k]) / w * per_axis as f64) as usize).min(per_axis - 1)
                }
            })
            .collect();
        buckets.entry(key).or_default().push(pts[i]);
    }
    buckets.into_values().collect()
}

/// Exact tight box of a set of points, as a box object in the points' mode.
fn tight_box(objs: &[GeomObject], pts: &[u32]) -> Option<GeomObject> {
    match &objs[pts[0] as usize] {
        GeomObject::Exact(_) => {
            let mut lo: Option<Vec<Scalar>> = None;
            let mut hi: Option<Vec<Scalar>> = None;
            for &p in pts {
                let Some(Shape::Point(c)) = objs[p as usize].as_exact() else { return None };
                lo = Some(match lo {
                    None => c.clone(),
                    Some(l) => l.into_iter().zip(c).map(|(a, b)| a.min(b.clone())).collect(),
                });
                hi = Some(match hi {
                    None => c.clone(),
                    Some(h) => h.into_iter().zip(c).map(|(a, b)| a.max(b.clone())).collect(),
                });
            }
            GeomObject::exact(Shape::AxisBox { lo: lo?, hi: hi? }).ok()
        }
        GeomObject::Float { eps, .. } => {
            let cs: Vec<Vec<f64>> = pts.iter().map(|&p| coords_f64(&objs[p as usize])).collect();
            let d = cs[0].len();
            let lo = (0..d).map(|k| cs.iter().map(|c| c[k]).fold(f64::INFINITY, f64::min)).collect();
            let hi = (0..d).map(|k| cs.iter().map(|c| c[k]).fold(f64::NEG_INFINITY, f64::max)).collect();
            GeomObject::float(Shape::AxisBox { lo, hi }, *eps).ok()
        }
    }
}

/// Crossing / containing / disjoint, conservatively defaulting to crossing.
pub(crate) fn classify_region(region: &GeomObject, cell: &GeomObject) -> Class {
    let contained = match (region, cell) {
        (GeomObject::Exact(r), GeomObject::Exact(Shape::AxisBox { lo, hi })) => contains_box(r, lo, hi, 0.0),
        (GeomObject::Float { shape, eps }, GeomObject::Float { shape: Shape::AxisBox { lo, hi }, .. }) => {
            contains_box(shape, lo, hi, *eps)
        }
        _ => false,
    };
    if contained {
        return Class::Containing;
    }
    match intersects(region, cell) {
        Ok(false) => Class::Disjoint,
        _ => Class::Crossing,
    }
}

/// One oracle call: cells over `points` and the classification of `regions`.
pub fn partition(objs: &[GeomObject], points: &[u32], regions: &[u32], oracle: Oracle, r: usize) -> PartitionResult {
    if points.is_empty() {
        return PartitionResult::default();
    }
    let groups = match oracle {
        Oracle::Kd => {
            let mut pts = points.to_vec();
            let mut out = Vec::new();
            kd_split(objs, &mut pts, cell_target(r), &mut out);
            out
        }
        Oracle::Grid => grid_split(objs, points, cell_target(r)),
    };
    let cells = groups
        .into_iter()
        .filter(|g| !g.is_empty())
        .map(|mut pts| {
            pts.sort_unstable();
            let bx = tight_box(objs, &pts);
            let (mut crossing, mut containing) = (Vec::new(), Vec::new());
            for &v in regions {
                match bx.as_ref().map_or(Class::Crossing, |b| classify_region(&objs[v as usize], b)) {
                    Class::Crossing => crossing.push(v),
                    Class::Containing => containing.push(v),
                    Class::Disjoint => {}
                }
            }
            let (lo, hi) = bx.and_then(|b| b.bbox_f64()).unwrap_or_default();
            Cell { points: pts, lo, hi, crossing, containing }
        })
        .collect();
    PartitionResult { cells }
}

pub(crate) struct Rec<'a> {
    objs: &'a [GeomObject],
    pub(crate) g: &'a IntersectionGraph,
    cfg: &'a BuildConfig,
    pub(crate) mask: Vec<u32>,
    stamp: u32,
    lop: LopScratch,
}

impl<'a> Rec<'a> {
    pub(crate) fn new(objs: &'a [GeomObject], g: &'a IntersectionGraph, cfg: &'a BuildConfig) -> Self {
        let n = g.n();
        Rec { objs, g, cfg, mask: vec![0; n], stamp: 0, lop: LopScratch::new(n) }
    }

    pub(crate) fn mark(&mut self, vs: &[u32]) -> u32 {
        self.stamp += 1;
        for &v in vs {
            self.mask[v as usize] = self.stamp;
        }
        self.stamp
    }

    pub(crate) fn all_edges(&mut self, us: &[u32], vs: &[u32], b: &mut SpannerBuilder) {
        let s = self.mark(vs);
        for &u in us {
            for &w in self.g.neighbors(u) {
                if self.mask[w as usize] == s {
                    b.add(u, w, "recursive:base");
                }
            }
        }
    }

    pub(crate) fn lopsided(&mut self, us: &[u32], vs: &[u32], b: &mut SpannerBuilder) {
        let s = self.mark(vs);
        let mask = &self.mask;
        lopsided_into(self.g, us, &|w| mask[w as usize] == s, b, &mut self.lop);
    }

    pub(crate) fn run(&mut self, us: &[u32], vs: &[u32], depth: usize, b: &mut SpannerBuilder) {
        b.note_depth(depth);
        let (m, n) = (us.len(), vs.len());
        if m == 0 || n == 0 {
            return;
        }
        if m <= 1 || n <= 1 {
            self.all_edges(us, vs, b);
            return;
        }
        if m * m <= n {
            b.bump("lopsided_leaves", 1);
            self.lopsided(us, vs, b);
            return;
        }
        if depth >= self.cfg.max_depth {
            b.bump("fallback:depth", 1);
            self.lopsided(us, vs, b);
            return;
        }
        let part = partition(self.objs, us, vs, self.cfg.oracle, self.cfg.r);
        if !part.is_partition_of(us) {
            b.bump("fallback:oracle", 1);
            self.lopsided(us, vs, b);
            return;
        }
        let chunk = n.div_ceil(self.cfg.r).max(1);
        for cell in &part.cells {
            if let (Some(&u0), Some(&v0)) = (cell.points.first(), cell.containing.first()) {
                b.bump("bicliques", 1);
                for &v in &cell.containing {
                    add_checked(self.g, b, u0, v, "recursive:star");
                }
                for &u in &cell.points {
                    add_checked(self.g, b, v0, u, "recursive:star");
                }
            }
            for piece in cell.crossing.chunks(chunk) {
                self.run(&cell.points, piece, depth + 1, b);
            }
        }
    }
}

/// Which side of a labelled instance holds points; `(points, regions)`.
pub(crate) fn point_side(inst: &Instance, us: &[u32], vs: &[u32]) -> Option<(Vec<u32>, Vec<u32>)> {
    let all_points = |s: &[u32]| s.iter().all(|&i| inst.objects[i as usize].kind() == Kind::Point);
    if inst.is_abstract() {
        None
    } else if all_points(us) {
        Some((us.to_vec(), vs.to_vec()))
    } else if all_points(vs) {
        Some((vs.to_vec(), us.to_vec()))
    } else {
        None
    }
}

/// 3-hop spanner of the point/region incidence graph `G[U, V]`. `g` should
/// hold only U x V edges; same-side edges are ignored.
pub fn recursive_bipartite_3hop(
    inst: &Instance,
    g: &IntersectionGraph,
    us: &[u32],
    vs: &[u32],
    cfg: &BuildConfig,
) -> Result<Spanner, BuildError> {
    let Some((mut points, mut regions)) = point_side(inst, us, vs) else {
        return Err(BuildError::NotApplicable { builder: BuilderId::Recursive3, reason: "needs a side made of points".into() });
    };
    points.sort_unstable();
    regions.sort_unstable();
    let mut b = SpannerBuilder::new(g.n());
    let mut rec = Rec::new(&inst.objects, g, cfg);
    rec.run(&points, &regions, 0, &mut b);
    b.notes.push(format!("oracle={:?} r={}", cfg.oracle, cfg.r).to_lowercase());
    finish_with_repair(&cross_only(g), b, 3, cfg)
}

/// `g` restricted to U x V edges if labelled, else `g` itself.
pub(crate) fn cross_only(g: &IntersectionGraph) -> IntersectionGraph {
    if g.labels().is_some() && !g.bipartite_strict() {
        g.bipartite_part()
    } else {
        g.clone()
    }
}
