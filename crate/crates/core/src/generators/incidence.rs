//! Point-line incidence constructions and their lifts.
//!
//! The base configuration is the slab grid: points `[0, k) x [0, 2k^2)` and
//! lines `y = a x + b` with `a in [0, k)`, `b in [0, k^2)`. Every line meets
//! exactly `k` grid points, one per column, so there are `k^4` incidences.
//! Each lift keeps the incidence pattern as its U x V edge set: points become
//! U objects (listed first), lines become V objects.

use super::GenError;
use crate::geometry::{veronese_halfspace, veronese_point, GeomObject, Shape, FLOAT_EPS};
use crate::instance::{GenSpec, Instance, Label, INCIDENCE_NOTE};
use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlabGrid {
    pub k: i64,
    pub points: Vec<(i64, i64)>,
    /// `(a, b)` for `y = a x + b`.
    pub lines: Vec<(i64, i64)>,
    /// `(point index, line index)`.
    pub incidences: Vec<(u32, u32)>,
}

impl SlabGrid {
    pub fn new(k: u64) -> Result<SlabGrid, GenError> {
        if k == 0 {
            return Err(GenError::Param("k must be at least 1".into()));
        }
        if k > 200 {
            return Err(GenError::Param("k above 200 is too large".into()));
        }
        let k = k as i64;
        let rows = 2 * k * k;
        let points = (0..k).flat_map(|x| (0..rows).map(move |y| (x, y))).collect();
        let lines: Vec<(i64, i64)> = (0..k).flat_map(|a| (0..k * k).map(move |b| (a, b))).collect();
        let mut incidences = Vec::with_capacity((k * k * k * k) as usize);
        for (li, &(a, b)) in lines.iter().enumerate() {
            for x in 0..k {
                let y = a * x + b;
                incidences.push(((x * rows + y) as u32, li as u32));
            }
        }
        Ok(SlabGrid { k, points, lines, incidences })
    }

    fn labels(&self) -> Vec<Label> {
        let mut l = vec![Label::U; self.points.len()];
        l.resize(self.points.len() + self.lines.len(), Label::V);
        l
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        let off = self.points.len() as u32;
        self.incidences.iter().map(|&(p, l)| (p, off + l)).collect()
    }

    fn finish(&self, name: &str, d: usize, objects: Vec<GeomObject>, spec: GenSpec) -> Instance {
        let spec = spec.note("incidences", self.incidences.len() as u64);
        Instance::geometric(name, d, objects).with_labels(self.labels()).with_ground_truth(self.edges()).with_spec(spec)
    }
}

fn int(v: i64) -> Scalar {
    Scalar::int(v)
}

/// The lines are written as segments over `x in [-1, k]`, which holds every
/// grid point of the line.
pub fn erdos_incidence(k: u64) -> Result<Instance, GenError> {
    let sg = SlabGrid::new(k)?;
    let mut objs: Vec<GeomObject> = sg.points.iter().map(|&(x, y)| GeomObject::point(&[x, y])).collect();
    for &(a, b) in &sg.lines {
        objs.push(GeomObject::segment(&[-1, b - a], &[sg.k, a * sg.k + b]));
    }
    let mut spec = GenSpec::new("erdos");
    spec.k = Some(k);
    Ok(sg.finish(&format!("erdos-k{k}"), 2, objs, spec.note(INCIDENCE_NOTE, true)))
}

/// Vertical red segments over the points and blue copies of line `i` at
/// height `i`, as two-vertex simplices in `R^3`.
pub fn thin_tetrahedra(k: u64) -> Result<Instance, GenError> {
    let sg = SlabGrid::new(k)?;
    let z = sg.lines.len() as i64;
    let seg = |a: [i64; 3], b: [i64; 3]| {
        GeomObject::exact(Shape::Simplex { vertices: vec![a.map(int).to_vec(), b.map(int).to_vec()] }).expect("valid")
    };
    let mut objs: Vec<GeomObject> = sg.points.iter().map(|&(x, y)| seg([x, y, -z], [x, y, z])).collect();
    for (i, &(a, b)) in sg.lines.iter().enumerate() {
        let i = i as i64;
        objs.push(seg([-1, b - a, i], [sg.k, a * sg.k + b, i]));
    }
    let mut spec = GenSpec::new("thin_tetrahedra");
    spec.k = Some(k);
    Ok(sg.finish(&format!("thin-tetrahedra-k{k}"), 3, objs, spec.note("z_extent", z)))
}

/// Smallest side length for which a segment of that length on every line
/// still holds all `k` grid points of the line.
pub fn touching_length_bound(k: u64) -> f64 {
    let k = k as f64;
    (k - 1.0) * (1.0 + (k - 1.0) * (k - 1.0)).sqrt()
}

/// Regular tetrahedra of side `m`: red ones stand on their apex at each
/// point, blue ones hang below the plane from an edge lying on each line.
pub fn touching_tetrahedra(k: u64, m: Option<f64>) -> Result<Instance, GenError> {
    let sg = SlabGrid::new(k)?;
    let bound = touching_length_bound(k);
    let m = m.unwrap_or(bound + 2.0);
    if !(m.is_finite() && m > bound && m > 0.0) {
        return Err(GenError::Bound(format!("side length {m} must exceed {bound}")));
    }
    let h = m * (2.0f64 / 3.0).sqrt();
    let r = m / 3f64.sqrt();
    let tet = |v: Vec<Vec<f64>>| GeomObject::float(Shape::Simplex { vertices: v }, FLOAT_EPS).expect("valid");
    let mut objs = Vec::with_capacity(sg.points.len() + sg.lines.len());
    for &(x, y) in &sg.points {
        let (x, y) = (x as f64, y as f64);
        let mut v = vec![vec![x, y, 0.0]];
        for j in 0..3 {
            let th = std::f64::consts::TAU * j as f64 / 3.0;
            v.push(vec![x + r * th.cos(), y + r * th.sin(), h]);
        }
        objs.push(tet(v));
    }
    let mid_x = (sg.k - 1) as f64 / 2.0;
    for &(a, b) in &sg.lines {
        let (a, b) = (a as f64, b as f64);
        let norm = (1.0 + a * a).sqrt();
        let (dx, dy) = (1.0 / norm, a / norm);
        let (cx, cy) = (mid_x, a * mid_x + b);
        let half = m / 2.0;
        let depth = m / 2f64.sqrt();
        objs.push(tet(vec![
            vec![cx - half * dx, cy - half * dy, 0.0],
            vec![cx + half * dx, cy + half * dy, 0.0],
            vec![cx - half * dy, cy + half * dx, -depth],
            vec![cx + half * dy, cy - half * dx, -depth],
        ]));
    }
    let mut spec = GenSpec::new("touching_tetrahedra");
    spec.k = Some(k);
    spec.m = Some(m.to_string());
    Ok(sg.finish(&format!("touching-tetrahedra-k{k}"), 3, objs, spec.note("length_bound", bound)))
}

/// Points `(x^2, xy, y^2, x, y)` and halfspaces `(y - a x - b)^2 <= 1/2`:
/// integer points off a line miss it by at least 1 in `y`, so the slack
/// `1/2` separates incidence exactly.
pub fn halfspace_lift_r5(k: u64) -> Result<Instance, GenError> {
    let sg = SlabGrid::new(k)?;
    let mut objs: Vec<GeomObject> =
        sg.points.iter().map(|&(x, y)| GeomObject::Exact(Shape::Point(veronese_point(&int(x), &int(y))))).collect();
    objs.extend(sg.lines.iter().map(|&(a, b)| GeomObject::Exact(veronese_halfspace(&int(a), &int(b)))));
    let mut spec = GenSpec::new("halfspace_lift_r5");
    spec.k = Some(k);
    spec.delta = Some("1/2".into());
    Ok(sg.finish(&format!("halfspace-lift-k{k}"), 5, objs, spec.note(INCIDENCE_NOTE, true)))
}

fn lifted_f64(x: i64, y: i64) -> [f64; 5] {
    let (x, y) = (x as f64, y as f64);
    [x * x, x * y, y * y, x, y]
}

/// Halfspace `n . xi <= c` of the lifted line, in floats.
fn lifted_halfspace_f64(a: i64, b: i64) -> ([f64; 5], f64) {
    let (a, b) = (a as f64, b as f64);
    ([a * a, -2.0 * a, 1.0, 2.0 * a * b, -2.0 * b], 0.5 - b * b)
}

/// Each lifted halfspace becomes a ball of radius `m` inside it, tangent to
/// its boundary next to the lifted points; red and blue balls of radius
/// `m / 2` then meet iff the red centre is in that ball.
///
/// Lifted points sit at least `1/2 / |n|` from the boundary on the correct
/// side, so `m >= (R^2 + s^2) / (2 s)`, with `R` the spread of the points
/// around the tangency point and `s` that margin, keeps every inside point
/// inside; outside points are always outside.
pub fn congruent_balls_r5(k: u64, m: Option<f64>) -> Result<Instance, GenError> {
    let sg = SlabGrid::new(k)?;
    let pts: Vec<[f64; 5]> = sg.points.iter().map(|&(x, y)| lifted_f64(x, y)).collect();
    let mut centroid = [0.0; 5];
    for p in &pts {
        for i in 0..5 {
            centroid[i] += p[i] / pts.len() as f64;
        }
    }
    let dist = |p: &[f64; 5], q: &[f64; 5]| p.iter().zip(q).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
    // Tangency point of each halfspace: the centroid projected on its boundary.
    let mut tangents = Vec::with_capacity(sg.lines.len());
    let mut bound: f64 = 0.0;
    for &(a, b) in &sg.lines {
        let (n, c) = lifted_halfspace_f64(a, b);
        let nn = n.iter().map(|x| x * x).sum::<f64>().sqrt();
        let unit = n.map(|x| x / nn);
        let off = (n.iter().zip(&centroid).map(|(x, y)| x * y).sum::<f64>() - c) / nn;
        let x0: [f64; 5] = std::array::from_fn(|i| centroid[i] - off * unit[i]);
        let spread = pts.iter().map(|p| dist(p, &x0)).fold(0.0, f64::max);
        let s = 0.5 / nn;
        bound = bound.max((spread * spread + s * s) / (2.0 * s));
        tangents.push((x0, unit));
    }
    let m = m.unwrap_or((2.0 * bound).ceil());
    if !(m.is_finite() && m >= bound) {
        return Err(GenError::Bound(format!("radius {m} below the bound {bound}")));
    }
    let centres: Vec<[f64; 5]> =
        tangents.iter().map(|(x0, unit)| std::array::from_fn(|i| x0[i] - m * unit[i])).collect();
    // The approximation has to reproduce every incidence and non-incidence.
    let on = sg.incidences.iter().copied().collect::<std::collections::HashSet<_>>();
    for (pi, p) in pts.iter().enumerate() {
        for (li, q) in centres.iter().enumerate() {
            let inside = dist(p, q) <= m;
            if inside != on.contains(&(pi as u32, li as u32)) {
                return Err(GenError::Bound(format!("radius {m} misclassifies point {pi} against line {li}")));
            }
        }
    }
    let ball = |c: &[f64; 5]| GeomObject::float(Shape::Ball { center: c.to_vec(), radius: m / 2.0 }, FLOAT_EPS).expect("valid");
    let mut objs: Vec<GeomObject> = pts.iter().map(ball).collect();
    objs.extend(centres.iter().map(ball));
    let mut spec = GenSpec::new("congruent_balls_r5");
    spec.k = Some(k);
    spec.m = Some(m.to_string());
    Ok(sg.finish(&format!("congruent-balls-k{k}"), 5, objs, spec.note("radius_bound", bound)))
}
