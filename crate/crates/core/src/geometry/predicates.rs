use super::coord::{self, Coord};
use super::object::{GeomObject, Shape};
use super::polytope::{self, Polytope};
use super::{lp, GeomError};
use crate::scalar::Scalar;

/// Do the closed sets `a` and `b` meet? Tangency counts.
pub fn intersects(a: &GeomObject, b: &GeomObject) -> Result<bool, GeomError> {
    if a.dimension() != b.dimension() {
        return Err(GeomError::DimensionMismatch(a.dimension(), b.dimension()));
    }
    match (a, b) {
        (GeomObject::Exact(x), GeomObject::Exact(y)) => shape_intersects(x, y, 0.0, &exact_hull_test),
        (GeomObject::Float { shape: x, eps: ea }, GeomObject::Float { shape: y, eps: eb }) => {
            if ea != eb {
                return Err(GeomError::EpsMismatch(*ea, *eb));
            }
            shape_intersects(x, y, *ea, &|_, _| None)
        }
        _ => Err(GeomError::MixedModes),
    }
}

fn exact_hull_test(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Option<bool> {
    Some(lp::hulls_intersect(a, b))
}

type HullTest<'a, T> = &'a dyn Fn(&[Vec<T>], &[Vec<T>]) -> Option<bool>;

/// Shape-level predicate. `hull_test` decides polytope pairs in `d > 3`;
/// returning `None` reports the pair as unsupported.
pub fn shape_intersects<T: Coord>(a: &Shape<T>, b: &Shape<T>, eps: f64, hull_test: HullTest<T>) -> Result<bool, GeomError> {
    use Shape::*;
    let unsupported = || GeomError::Unsupported(a.kind(), b.kind());
    Ok(match (a, b) {
        (Point(p), other) | (other, Point(p)) => match shape_contains_point(other, p, eps) {
            Some(v) => v,
            None => hull_test(&[p.clone()], &other.vertices().ok_or_else(unsupported)?).ok_or_else(unsupported)?,
        },
        (Ball { center: c1, radius: r1 }, Ball { center: c2, radius: r2 }) => {
            let s = r1.clone() + r2.clone();
            coord::dist_sq(c1, c2).le(&(s.clone() * s), eps)
        }
        (Ball { center, radius }, AxisBox { lo, hi }) | (AxisBox { lo, hi }, Ball { center, radius }) => {
            let q = clamp(center, lo, hi);
            coord::dist_sq(center, &q).le(&(radius.clone() * radius.clone()), eps)
        }
        (Ball { center, radius }, Halfspace { normal, offset }) | (Halfspace { normal, offset }, Ball { center, radius }) => {
            ball_meets_halfspace(center, radius, normal, offset, eps)
        }
        (Ball { center, radius }, Segment { a: s, b: t }) | (Segment { a: s, b: t }, Ball { center, radius }) => {
            let q = closest_on_segment(center, s, t);
            coord::dist_sq(center, &q).le(&(radius.clone() * radius.clone()), eps)
        }
        (AxisBox { lo: l1, hi: h1 }, AxisBox { lo: l2, hi: h2 }) => (0..l1.len()).all(|i| l1[i].le(&h2[i], eps) && l2[i].le(&h1[i], eps)),
        (AxisBox { lo, hi }, Halfspace { normal, offset }) | (Halfspace { normal, offset }, AxisBox { lo, hi }) => {
            box_min_dot(normal, lo, hi).le(offset, eps)
        }
        (Halfspace { normal, offset }, other @ (Simplex { .. } | Segment { .. }))
        | (other @ (Simplex { .. } | Segment { .. }), Halfspace { normal, offset }) => {
            let verts = other.vertices().expect("polytope");
            verts.iter().any(|v| coord::dot(normal, v).le(offset, eps))
        }
        (x @ (Simplex { .. } | Segment { .. } | AxisBox { .. }), y @ (Simplex { .. } | Segment { .. } | AxisBox { .. })) => {
            let (va, vb) = (x.vertices().unwrap(), y.vertices().unwrap());
            if a.dimension() <= 3 {
                let (ea, eb) = (x.edge_directions().unwrap(), y.edge_directions().unwrap());
                polytope::intersect(&Polytope { vertices: &va, edges: &ea }, &Polytope { vertices: &vb, edges: &eb }, eps)
            } else {
                hull_test(&va, &vb).ok_or_else(unsupported)?
            }
        }
        (Ball { .. }, Simplex { .. }) | (Simplex { .. }, Ball { .. }) | (Halfspace { .. }, Halfspace { .. }) => {
            return Err(unsupported())
        }
    })
}

/// Membership of a point; `None` when the shape kind has no direct test
/// (simplices in `d > 3`).
pub fn shape_contains_point<T: Coord>(s: &Shape<T>, p: &[T], eps: f64) -> Option<bool> {
    Some(match s {
        Shape::Point(q) => (0..p.len()).all(|i| p[i].cmp_eps(&q[i], eps).is_eq()),
        Shape::Ball { center, radius } => coord::dist_sq(center, p).le(&(radius.clone() * radius.clone()), eps),
        Shape::AxisBox { lo, hi } => (0..p.len()).all(|i| lo[i].le(&p[i], eps) && p[i].le(&hi[i], eps)),
        Shape::Halfspace { normal, offset } => coord::dot(normal, p).le(offset, eps),
        Shape::Segment { a, b } => on_segment(p, a, b, eps),
        Shape::Simplex { vertices } => {
            if vertices.len() == 1 {
                return shape_contains_point(&Shape::Point(vertices[0].clone()), p, eps);
            }
            if vertices.len() == 2 {
                return Some(on_segment(p, &vertices[0], &vertices[1], eps));
            }
            if p.len() > 3 {
                return None;
            }
            let edges = s.edge_directions().unwrap();
            let pv = [p.to_vec()];
            polytope::intersect(&Polytope { vertices, edges: &edges }, &Polytope { vertices: &pv, edges: &[] }, eps)
        }
    })
}

fn on_segment<T: Coord>(p: &[T], a: &[T], b: &[T], eps: f64) -> bool {
    let u = coord::sub(b, a);
    let w = coord::sub(p, a);
    let d = p.len();
    for i in 0..d {
        for j in i + 1..d {
            let m = w[i].clone() * u[j].clone() - w[j].clone() * u[i].clone();
            if !m.is_zero_eps(eps) {
                return false;
            }
        }
    }
    let t = coord::dot(&w, &u);
    if coord::is_zero_vec(&u, eps) {
        return coord::is_zero_vec(&w, eps);
    }
    T::zero().le(&t, eps) && t.le(&coord::norm_sq(&u), eps)
}

fn clamp<T: Coord>(p: &[T], lo: &[T], hi: &[T]) -> Vec<T> {
    (0..p.len()).map(|i| p[i].clone().max_of(lo[i].clone()).min_of(hi[i].clone())).collect()
}

fn closest_on_segment<T: Coord>(p: &[T], a: &[T], b: &[T]) -> Vec<T> {
    let u = coord::sub(b, a);
    let uu = coord::norm_sq(&u);
    if uu.total_cmp(&T::zero()).is_eq() {
        return a.to_vec();
    }
    let t = coord::dot(&coord::sub(p, a), &u) / uu;
    let t = t.max_of(T::zero()).min_of(T::one());
    coord::add(a, &coord::scale(&u, &t))
}

fn ball_meets_halfspace<T: Coord>(c: &[T], r: &T, n: &[T], off: &T, eps: f64) -> bool {
    // dist(c, plane) <= r  or c inside; compared via squares to stay exact.
    let g = coord::dot(n, c) - off.clone();
    if g.le(&T::zero(), eps) {
        return true;
    }
    (g.clone() * g).le(&(r.clone() * r.clone() * coord::norm_sq(n)), eps)
}

fn box_min_dot<T: Coord>(n: &[T], lo: &[T], hi: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..n.len() {
        let a = n[i].clone() * lo[i].clone();
        let b = n[i].clone() * hi[i].clone();
        acc = acc + a.min_of(b);
    }
    acc
}

fn box_max_dot<T: Coord>(n: &[T], lo: &[T], hi: &[T]) -> T {
    let mut acc = T::zero();
    for i in 0..n.len() {
        let a = n[i].clone() * lo[i].clone();
        let b = n[i].clone() * hi[i].clone();
        acc = acc + a.max_of(b);
    }
    acc
}

/// Does `region` contain the whole closed box `[lo, hi]`? Conservative: `false`
/// when containment cannot be decided cheaply.
pub fn contains_box<T: Coord>(region: &Shape<T>, lo: &[T], hi: &[T], eps: f64) -> bool {
    if (0..lo.len()).all(|i| lo[i].total_cmp(&hi[i]).is_eq()) {
        return shape_contains_point(region, lo, eps).unwrap_or(false);
    }
    match region {
        Shape::Halfspace { normal, offset } => box_max_dot(normal, lo, hi).le(offset, eps),
        Shape::AxisBox { lo: rl, hi: rh } => (0..lo.len()).all(|i| rl[i].le(&lo[i], eps) && hi[i].le(&rh[i], eps)),
        Shape::Ball { center, radius } => {
            // Farthest corner from the centre.
            let far: Vec<T> = (0..lo.len())
                .map(|i| {
                    let dl = center[i].clone() - lo[i].clone();
                    let dh = hi[i].clone() - center[i].clone();
                    if dl.total_cmp(&dh).is_ge() { lo[i].clone() } else { hi[i].clone() }
                })
                .collect();
            coord::dist_sq(center, &far).le(&(radius.clone() * radius.clone()), eps)
        }
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        let b0 = GeomObject::ball(&[0, 0, 0], 1);
        assert!(!intersects(&b0, &GeomObject::ball(&[3, 0, 0], 1)).unwrap());
        assert!(intersects(&b0, &GeomObject::ball(&[2, 0, 0], 1)).unwrap());
        let s1 = GeomObject::axis_box(&[0, 0], &[1, 1]);
        let s2 = GeomObject::axis_box(&[1, 1], &[2, 2]);
        assert!(intersects(&s1, &s2).unwrap());
    }

    #[test]
    fn errors() {
        let a = GeomObject::ball(&[0, 0], 1);
        let b = GeomObject::ball(&[0, 0, 0], 1);
        assert_eq!(intersects(&a, &b), Err(GeomError::DimensionMismatch(2, 3)));
        let f = GeomObject::float(Shape::Ball { center: vec![0.0, 0.0], radius: 1.0 }, 1e-9).unwrap();
        assert_eq!(intersects(&a, &f), Err(GeomError::MixedModes));
        let h = GeomObject::halfspace(&[1, 0], Scalar::ZERO);
        assert!(matches!(intersects(&h, &h), Err(GeomError::Unsupported(..))));
    }

    #[test]
    fn segments_and_simplices() {
        let s1 = GeomObject::segment(&[0, 0], &[2, 2]);
        let s2 = GeomObject::segment(&[0, 2], &[2, 0]);
        let s3 = GeomObject::segment(&[3, 3], &[4, 4]);
        let s4 = GeomObject::segment(&[2, 2], &[4, 4]);
        assert!(intersects(&s1, &s2).unwrap());
        assert!(!intersects(&s1, &s3).unwrap());
        assert!(intersects(&s1, &s4).unwrap());
        let tri = GeomObject::simplex(&[&[0, 0, 0], &[4, 0, 0], &[0, 4, 0]]);
        let stick = GeomObject::segment(&[1, 1, -1], &[1, 1, 1]);
        let miss = GeomObject::segment(&[3, 3, -1], &[3, 3, 1]);
        assert!(intersects(&tri, &stick).unwrap());
        assert!(!intersects(&tri, &miss).unwrap());
        // Skew lines in 3D.
        let l1 = GeomObject::segment(&[0, 0, 0], &[2, 0, 0]);
        let l2 = GeomObject::segment(&[1, -1, 1], &[1, 1, 1]);
        let l3 = GeomObject::segment(&[1, -1, 0], &[1, 1, 0]);
        assert!(!intersects(&l1, &l2).unwrap());
        assert!(intersects(&l1, &l3).unwrap());
    }

    #[test]
    fn contains_box_cases() {
        let h = Shape::Halfspace { normal: vec![Scalar::int(1), Scalar::int(1)], offset: Scalar::int(4) };
        let i = |v: &[i64]| v.iter().map(|&x| Scalar::int(x)).collect::<Vec<_>>();
        assert!(contains_box(&h, &i(&[0, 0]), &i(&[2, 2]), 0.0));
        assert!(!contains_box(&h, &i(&[0, 0]), &i(&[2, 3]), 0.0));
        let b = Shape::Ball { center: i(&[0, 0]), radius: Scalar::int(5) };
        assert!(contains_box(&b, &i(&[-3, -4]), &i(&[3, 4]), 0.0));
        assert!(!contains_box(&b, &i(&[-3, -4]), &i(&[3, 5]), 0.0));
    }
}
