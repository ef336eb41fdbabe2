//! 2-hop spanners of fat objects by shifted-quadtree divide and conquer.
//!
//! Under each shift only the aligned objects take part. A centroid cell splits
//! them into inside / outside (recursed on) and boundary objects, which are
//! hit by a few points; the objects through one point form a clique, so the
//! edges from them to the rest of the current set reduce to the one-sided
//! clique case. `fatbox2` spans that case with a biclique cover instead.

use super::biclique::{cover_ranks, Ranks};
use super::clique::grouped2_into;
use super::{add_checked, finish_with_repair, BuildConfig, BuildError, BuilderId, Fallback};
use crate::geometry::{
    boundary_hitting_points, centroid_cell_in, shape_cell_of, shape_contains_point, shift_vectors, Coord, GeomError,
    GeomObject, Kind, QuadtreeCell, Shape,
};
use crate::graph::{IntersectionGraph, Spanner, SpannerBuilder};
use crate::instance::Instance;
use crate::Scalar;

struct Fat<'a, T> {
    g: &'a IntersectionGraph,
    cfg: &'a BuildConfig,
    ranks: Option<&'a Ranks>,
    c: T,
    eps: f64,
    b: SpannerBuilder,
    fallback_edges: u64,
    xmark: Vec<u32>,
    xstamp: u32,
    umark: Vec<u32>,
    ustamp: u32,
    seen: Vec<u32>,
    stamp: u32,
}

/// One shift: translated shapes, their bounding boxes and aligned cells.
struct Frame<T> {
    shapes: Vec<Shape<T>>,
    bboxes: Vec<(Vec<T>, Vec<T>)>,
    cells: Vec<QuadtreeCell>,
}

impl<T: Coord> Fat<'_, T> {
    fn direct(&mut self, u: u32, v: u32, tag: &'static str) {
        if self.b.add(u, v, tag) {
            self.fallback_edges += 1;
        }
    }

    /// Every edge of `u` into the marked current set.
    fn direct_into_set(&mut self, u: u32, tag: &'static str) {
        let g = self.g;
        for &w in g.neighbors(u) {
            if self.xmark[w as usize] == self.xstamp {
                self.direct(u, w, tag);
            }
        }
    }

    fn mark_set(&mut self, xs: &[u32]) {
        self.xstamp += 1;
        for &x in xs {
            self.xmark[x as usize] = self.xstamp;
        }
    }

    fn recurse(&mut self, fr: &Frame<T>, items: Vec<usize>, depth: usize) -> Result<(), GeomError> {
        if items.len() <= 1 {
            return Ok(());
        }
        self.b.note_depth(depth);
        let xs: Vec<u32> = items.iter().map(|&i| i as u32).collect();
        if depth >= self.cfg.max_depth {
            self.mark_set(&xs);
            for &u in &xs {
                self.direct_into_set(u, "fallback:depth");
            }
            return Ok(());
        }
        let cc = centroid_cell_in(&items, &fr.shapes, &fr.cells, self.eps)?;
        if !cc.balanced {
            self.b.bump("fat:unbalanced", 1);
        }
        self.mark_set(&xs);
        if cc.inside.len() == items.len() || cc.outside.len() == items.len() {
            for &u in &xs {
                self.direct_into_set(u, "fallback:stall");
            }
            return Ok(());
        }

        let crossing: Vec<&Shape<T>> = cc.boundary.iter().map(|&i| &fr.shapes[i]).collect();
        let hs = boundary_hitting_points(&cc.cell, &crossing, &self.c, self.eps);
        self.b.bump("hitting_points", hs.points.len() as u64);
        let mut assigned: Vec<Vec<u32>> = vec![Vec::new(); hs.points.len()];
        for (k, &i) in cc.boundary.iter().enumerate() {
            match hs.hit[k] {
                Some(q) => assigned[q].push(i as u32),
                None => self.direct_into_set(i as u32, "fallback:unhit"),
            }
        }
        for (q, mut uq) in hs.points.iter().zip(assigned) {
            for &i in &items {
                let (lo, hi) = &fr.bboxes[i];
                let in_box = (0..q.len()).all(|k| lo[k].le(&q[k], self.eps) && q[k].le(&hi[k], self.eps));
                if in_box && shape_contains_point(&fr.shapes[i], q, self.eps) == Some(true) {
                    uq.push(i as u32);
                }
            }
            uq.sort_unstable();
            uq.dedup();
            self.one_sided(&uq, &xs);
        }

        self.recurse(fr, cc.inside, depth + 1)?;
        self.recurse(fr, cc.outside, depth + 1)
    }

    /// Spans every edge between the clique `uq` and the marked set `xs`.
    fn one_sided(&mut self, uq: &[u32], xs: &[u32]) {
        if uq.is_empty() {
            return;
        }
        let g = self.g;
        if let Some(rk) = self.ranks {
            for &u in &uq[1..] {
                add_checked(g, &mut self.b, uq[0], u, "fatbox2:clique_star");
            }
            let mut cover = Vec::new();
            cover_ranks(rk, rk.d, uq.to_vec(), xs.to_vec(), &mut cover);
            self.b.bump("bicliques", cover.len() as u64);
            for bc in &cover {
                let a0 = bc.us[0];
                for &w in bc.us[1..].iter().chain(&bc.vs) {
                    add_checked(g, &mut self.b, a0, w, "fatbox2:star");
                }
            }
            return;
        }
        self.ustamp += 1;
        for &u in uq {
            self.umark[u as usize] = self.ustamp;
        }
        let (xmark, xstamp, umark, ustamp) = (&self.xmark, self.xstamp, &self.umark, self.ustamp);
        let in_v = |v: u32| xmark[v as usize] == xstamp && umark[v as usize] != ustamp;
        let v_count = xs.len() - uq.len();
        grouped2_into(g, uq, &in_v, v_count, self.cfg.group_size, &mut self.seen, &mut self.stamp, &mut self.b);
    }
}

fn is_fat<T: Coord>(s: &Shape<T>) -> bool {
    matches!(s.kind(), Kind::Ball | Kind::AxisBox | Kind::Simplex) && s.diameter_sq().is_some_and(|d| !d.is_zero_eps(0.0))
}

fn run_mode<T: Coord>(
    g: &IntersectionGraph,
    cfg: &BuildConfig,
    shapes: Vec<Shape<T>>,
    eps: f64,
    ranks: Option<&Ranks>,
) -> Result<Spanner, BuildError> {
    let n = shapes.len();
    let d = shapes[0].dimension();
    let fat: Vec<bool> = shapes.iter().map(is_fat).collect();
    let mut diam = T::zero();
    for (s, _) in shapes.iter().zip(&fat).filter(|(_, &f)| f) {
        diam = diam.max_of(s.diameter_sq().expect("bounded").sqrt_upper());
    }
    let sc = shift_vectors(d, &diam);
    let c = cfg.c.map_or(sc.c.clone(), |c| T::from_i64(i64::from(c)));
    let mut fx = Fat {
        g,
        cfg,
        ranks,
        c: c.clone(),
        eps,
        b: SpannerBuilder::new(n),
        fallback_edges: 0,
        xmark: vec![0; n],
        xstamp: 0,
        umark: vec![0; n],
        ustamp: 0,
        seen: vec![0; n],
        stamp: 0,
    };
    fx.b.bump("shifts", sc.shifts.len() as u64);
    let mut aligned = vec![0u64; n];
    let dummy = QuadtreeCell { level: 0, index: vec![0; d] };
    for (j, tau) in sc.shifts.iter().enumerate() {
        let moved: Vec<Shape<T>> = shapes.iter().map(|s| s.translate(tau)).collect();
        let mut cells = Vec::with_capacity(n);
        let mut items = Vec::new();
        for (i, s) in moved.iter().enumerate() {
            let cell = if fat[i] { shape_cell_of(s, &c)? } else { None };
            match cell {
                Some(cell) => {
                    aligned[i] |= 1 << j;
                    items.push(i);
                    cells.push(cell);
                }
                None => cells.push(dummy.clone()),
            }
        }
        let bboxes = moved.iter().map(|s| s.bbox().unwrap_or_else(|| (vec![T::zero(); d], vec![T::zero(); d]))).collect();
        let fr = Frame { shapes: moved, bboxes, cells };
        fx.recurse(&fr, items, 0)?;
    }
    for u in 0..n as u32 {
        for &v in g.neighbors(u) {
            if u >= v {
                continue;
            }
            let (fu, fv) = (fat[u as usize], fat[v as usize]);
            if !fu || !fv {
                fx.direct(u, v, "fallback:nonfat");
            } else if aligned[u as usize] & aligned[v as usize] == 0 {
                fx.direct(u, v, "fallback:unaligned");
            }
        }
    }
    if fx.fallback_edges > 0 {
        if cfg.fallback == Fallback::Fail {
            return Err(BuildError::FallbackRefused(format!("{} edges added directly", fx.fallback_edges)));
        }
        fx.b.bump("fallback_direct_edges", fx.fallback_edges);
    }
    finish_with_repair(g, fx.b, 2, cfg)
}

fn run(inst: &Instance, g: &IntersectionGraph, cfg: &BuildConfig, id: BuilderId, ranks: Option<&Ranks>) -> Result<Spanner, BuildError> {
    if inst.is_abstract() {
        return Err(BuildError::NotApplicable { builder: id, reason: "needs geometry".into() });
    }
    if g.n() != inst.objects.len() {
        return Err(BuildError::Precondition("graph and instance sizes differ".into()));
    }
    match inst.objects.first() {
        None => Ok(SpannerBuilder::new(0).finish(Default::default())),
        Some(GeomObject::Exact(_)) => {
            let shapes: Vec<Shape<Scalar>> = inst
                .objects
                .iter()
                .map(|o| o.as_exact().cloned().ok_or(GeomError::MixedModes))
                .collect::<Result<_, _>>()?;
            run_mode(g, cfg, shapes, 0.0, ranks)
        }
        Some(GeomObject::Float { eps, .. }) => {
            let shapes: Vec<Shape<f64>> = inst
                .objects
                .iter()
                .map(|o| match o {
                    GeomObject::Float { shape, .. } => Ok(shape.clone()),
                    GeomObject::Exact(_) => Err(GeomError::MixedModes),
                })
                .collect::<Result<_, _>>()?;
            run_mode(g, cfg, shapes, *eps, ranks)
        }
    }
}

pub fn fat_2hop(inst: &Instance, g: &IntersectionGraph, cfg: &BuildConfig) -> Result<Spanner, BuildError> {
    run(inst, g, cfg, BuilderId::Fat2, None)
}

/// As [`fat_2hop`], with each one-sided clique subproblem spanned by a box
/// biclique cover and a star per biclique.
pub fn fatbox_2hop(inst: &Instance, g: &IntersectionGraph, cfg: &BuildConfig) -> Result<Spanner, BuildError> {
    let all: Vec<u32> = (0..inst.objects.len() as u32).collect();
    let rk = Ranks::new(&inst.objects, &all).ok_or_else(|| BuildError::NotApplicable {
        builder: BuilderId::Fatbox2,
        reason: "needs axis-aligned boxes in one arithmetic mode".into(),
    })?;
    run(inst, g, cfg, BuilderId::Fatbox2, Some(&rk))
}
