use std::collections::HashMap;

use super::coord::{self, Coord};
use super::object::Shape;
use super::predicates::shape_contains_point;
use super::quadtree::QuadtreeCell;

#[derive(Clone, Debug, PartialEq)]
pub struct HittingSet<T> {
    pub points: Vec<Vec<T>>,
    /// For each input object, the index of a point it contains (`None` if no
    /// candidate could be certified; callers fall back to direct edges).
    pub hit: Vec<Option<usize>>,
}

const REUSE_PROBES: usize = 64;

/// Points hitting every object in `crossing`, snapped to a power-of-two grid of
/// spacing at most `side / (4 C d)` so that nearby objects share points.
///
/// Each object proposes a witness point deep inside itself and close to the
/// cell (a sub-ball or sub-box of radius `<= side / (4 d)`) unless an earlier point
/// already lies in it; the snapped
/// witness is used when it provably lies in the object, the raw witness otherwise.
pub fn boundary_hitting_points<T: Coord>(cell: &QuadtreeCell, crossing: &[&Shape<T>], c: &T, eps: f64) -> HittingSet<T> {
    let d = cell.index.len();
    let (clo, chi) = cell.bounds::<T>();
    let side: T = cell.side();
    let refine = (4.0 * c.to_f64() * d as f64).log2().ceil() as i32;
    let exp = -cell.level - refine;
    let h = T::pow2(exp);
    let cap = side / T::from_i64(4 * d as i64);

    let mut points: Vec<Vec<T>> = Vec::new();
    let mut snapped_at: HashMap<Vec<i64>, usize> = HashMap::new();
    let mut hit = Vec::with_capacity(crossing.len());
    for s in crossing {
        // Greedy piercing first: reuse an earlier point when it is certified inside.
        if let Some(i) = points.iter().take(REUSE_PROBES).position(|p| shape_contains_point(s, p, eps) == Some(true)) {
            hit.push(Some(i));
            continue;
        }
        let Some(w) = witness(s, &clo, &chi, &cap) else {
            hit.push(None);
            continue;
        };
        let half = h.clone() / T::from_i64(2);
        let key: Vec<i64> = w.iter().map(|x| (x.clone() + half.clone()).floor_div_pow2(exp)).collect();
        if let Some(&i) = snapped_at.get(&key) {
            if shape_contains_point(s, &points[i], eps) == Some(true) {
                hit.push(Some(i));
                continue;
            }
        } else {
            let q: Vec<T> = key.iter().map(|&k| T::from_i64(k) * h.clone()).collect();
            if shape_contains_point(s, &q, eps) == Some(true) {
                snapped_at.insert(key, points.len());
                hit.push(Some(points.len()));
                points.push(q);
                continue;
            }
        }
        let inside = match shape_contains_point(s, &w, eps) {
            Some(v) => v,
            // A vertex average lies in the hull; only exact arithmetic may rely on it.
            None => T::EXACT,
        };
        if inside {
            hit.push(Some(points.len()));
            points.push(w);
        } else {
            hit.push(None);
        }
    }
    HittingSet { points, hit }
}

fn clamp<T: Coord>(x: &T, lo: &T, hi: &T) -> T {
    x.clone().max_of(lo.clone()).min_of(hi.clone())
}

fn witness<T: Coord>(s: &Shape<T>, clo: &[T], chi: &[T], cap: &T) -> Option<Vec<T>> {
    match s {
        Shape::Ball { center, radius } => {
            let g: Vec<T> = (0..center.len()).map(|i| clamp(&center[i], &clo[i], &chi[i])).collect();
            let sub = radius.clone().min_of(cap.clone());
            let margin = radius.clone() - sub;
            let dist_sq = coord::dist_sq(center, &g);
            if dist_sq.total_cmp(&(margin.clone() * margin.clone())).is_le() {
                return Some(g);
            }
            let t = margin / dist_sq.sqrt_upper();
            Some(coord::add(center, &coord::scale(&coord::sub(&g, center), &t)))
        }
        Shape::AxisBox { lo, hi } => {
            let two = T::from_i64(2);
            let mut sub = cap.clone();
            for i in 0..lo.len() {
                sub = sub.min_of((hi[i].clone() - lo[i].clone()) / two.clone());
            }
            Some(
                (0..lo.len())
                    .map(|i| {
                        let centre = (lo[i].clone() + hi[i].clone()) / two.clone();
                        let g = clamp(&centre, &clo[i], &chi[i]);
                        clamp(&g, &(lo[i].clone() + sub.clone()), &(hi[i].clone() - sub.clone()))
                    })
                    .collect(),
            )
        }
        Shape::Halfspace { .. } => None,
        _ => {
            let verts = s.vertices()?;
            let k = T::from_i64(verts.len() as i64);
            let mut acc = vec![T::zero(); verts[0].len()];
            for v in &verts {
                acc = coord::add(&acc, v);
            }
            Some(acc.into_iter().map(|x| x / k.clone()).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn ball(c: &[i64], r: i64) -> Shape<Scalar> {
        Shape::Ball { center: c.iter().map(|&x| Scalar::int(x)).collect(), radius: Scalar::int(r) }
    }

    #[test]
    fn single_ball() {
        let cell = QuadtreeCell { level: 0, index: vec![0, 0] };
        let b = ball(&[2, 0], 2);
        let hs = boundary_hitting_points(&cell, &[&b], &Scalar::int(6), 0.0);
        assert_eq!(hs.points.len(), 1);
        assert_eq!(hs.hit, vec![Some(0)]);
    }

    #[test]
    fn balls_through_corner_share_points() {
        let cell = QuadtreeCell { level: 0, index: vec![0, 0] };
        let balls: Vec<Shape<Scalar>> = (0..20).map(|i| ball(&[1 + i % 3, 1 + i / 7], 3)).collect();
        let refs: Vec<&Shape<Scalar>> = balls.iter().collect();
        let hs = boundary_hitting_points(&cell, &refs, &Scalar::int(6), 0.0);
        for (b, h) in balls.iter().zip(&hs.hit) {
            let q = &hs.points[h.unwrap()];
            assert_eq!(shape_contains_point(b, q, 0.0), Some(true));
        }
        assert!(hs.points.len() <= 4, "{} points", hs.points.len());
    }

    #[test]
    fn huge_grazing_ball() {
        let cell = QuadtreeCell { level: 3, index: vec![1, 1] };
        // Radius 1000 ball just touching the cell's left side x = 1/8.
        let b = Shape::Ball { center: vec![Scalar::frac(1, 8) - Scalar::int(1000), Scalar::frac(3, 16)], radius: Scalar::int(1000) };
        let hs = boundary_hitting_points(&cell, &[&b], &Scalar::int(6), 0.0);
        let q = &hs.points[hs.hit[0].unwrap()];
        assert_eq!(shape_contains_point(&b, q, 0.0), Some(true));
    }
}
