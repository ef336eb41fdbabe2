use std::fmt;

use serde::{Deserialize, Serialize};

use super::coord::{self, Coord};
use super::GeomError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Ball,
    AxisBox,
    Simplex,
    Halfspace,
    Point,
    Segment,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Ball => "ball",
            Kind::AxisBox => "axis_box",
            Kind::Simplex => "simplex",
            Kind::Halfspace => "halfspace",
            Kind::Point => "point",
            Kind::Segment => "segment",
        };
        f.write_str(s)
    }
}

/// A closed geometric set in `R^d` over coordinate field `T`.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    Ball { center: Vec<T>, radius: T },
    AxisBox { lo: Vec<T>, hi: Vec<T> },
    /// Convex hull of up to `d + 1` vertices; fewer gives a thin simplex.
    Simplex { vertices: Vec<Vec<T>> },
    /// `{x : normal . x <= offset}`.
    Halfspace { normal: Vec<T>, offset: T },
    Point(Vec<T>),
    Segment { a: Vec<T>, b: Vec<T> },
}

impl<T: Coord> Shape<T> {
    pub fn kind(&self) -> Kind {
        match self {
            Shape::Ball { .. } => Kind::Ball,
            Shape::AxisBox { .. } => Kind::AxisBox,
            Shape::Simplex { .. } => Kind::Simplex,
            Shape::Halfspace { .. } => Kind::Halfspace,
            Shape::Point(_) => Kind::Point,
            Shape::Segment { .. } => Kind::Segment,
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            Shape::Ball { center, .. } => center.len(),
            Shape::AxisBox { lo, .. } => lo.len(),
            Shape::Simplex { vertices } => vertices.first().map_or(0, Vec::len),
            Shape::Halfspace { normal, .. } => normal.len(),
            Shape::Point(p) => p.len(),
            Shape::Segment { a, .. } => a.len(),
        }
    }

    pub fn validate(&self) -> Result<(), GeomError> {
        let d = self.dimension();
        if d == 0 {
            return Err(GeomError::Invalid("zero-dimensional object".into()));
        }
        let same = |v: &Vec<T>| v.len() == d;
        let ok = match self {
            Shape::Ball { radius, .. } => {
                if radius.total_cmp(&T::zero()).is_lt() {
                    return Err(GeomError::Invalid("negative radius".into()));
                }
                true
            }
            Shape::AxisBox { lo, hi } => {
                if !same(hi) {
                    false
                } else if lo.iter().zip(hi).any(|(l, h)| l.total_cmp(h).is_gt()) {
                    return Err(GeomError::Invalid("box with lo > hi".into()));
                } else {
                    true
                }
            }
            Shape::Simplex { vertices } => {
                if vertices.is_empty() || vertices.len() > d + 1 {
                    return Err(GeomError::Invalid(format!("simplex with {} vertices in R^{d}", vertices.len())));
                }
                vertices.iter().all(same)
            }
            Shape::Halfspace { normal, .. } => {
                if normal.iter().all(|x| x.total_cmp(&T::zero()).is_eq()) {
                    return Err(GeomError::Invalid("halfspace with zero normal".into()));
                }
                true
            }
            Shape::Point(_) => true,
            Shape::Segment { b, .. } => same(b),
        };
        if ok {
            Ok(())
        } else {
            Err(GeomError::Invalid("coordinate vectors of unequal length".into()))
        }
    }

    /// Axis-aligned bounding box; `None` for unbounded halfspaces.
    pub fn bbox(&self) -> Option<(Vec<T>, Vec<T>)> {
        match self {
            Shape::Ball { center, radius } => Some((
                center.iter().map(|c| c.clone() - radius.clone()).collect(),
                center.iter().map(|c| c.clone() + radius.clone()).collect(),
            )),
            Shape::AxisBox { lo, hi } => Some((lo.clone(), hi.clone())),
            Shape::Halfspace { .. } => None,
            Shape::Point(p) => Some((p.clone(), p.clone())),
            Shape::Simplex { .. } | Shape::Segment { .. } => {
                let verts = self.vertices()?;
                let mut lo = verts[0].clone();
                let mut hi = verts[0].clone();
                for v in &verts[1..] {
                    for i in 0..lo.len() {
                        lo[i] = lo[i].clone().min_of(v[i].clone());
                        hi[i] = hi[i].clone().max_of(v[i].clone());
                    }
                }
                Some((lo, hi))
            }
        }
    }

    /// Squared Euclidean diameter; `None` for halfspaces.
    pub fn diameter_sq(&self) -> Option<T> {
        match self {
            Shape::Ball { radius, .. } => Some(T::from_i64(4) * radius.clone() * radius.clone()),
            Shape::AxisBox { lo, hi } => Some(coord::dist_sq(lo, hi)),
            Shape::Halfspace { .. } => None,
            Shape::Point(_) => Some(T::zero()),
            Shape::Segment { a, b } => Some(coord::dist_sq(a, b)),
            Shape::Simplex { vertices } => {
                let mut best = T::zero();
                for i in 0..vertices.len() {
                    for j in i + 1..vertices.len() {
                        best = best.max_of(coord::dist_sq(&vertices[i], &vertices[j]));
                    }
                }
                Some(best)
            }
        }
    }

    /// Vertex list for polytope-like shapes (points, segments, simplices, boxes).
    pub fn vertices(&self) -> Option<Vec<Vec<T>>> {
        match self {
            Shape::Point(p) => Some(vec![p.clone()]),
            Shape::Segment { a, b } => Some(vec![a.clone(), b.clone()]),
            Shape::Simplex { vertices } => Some(vertices.clone()),
            Shape::AxisBox { lo, hi } => {
                let d = lo.len();
                let mut out = Vec::with_capacity(1 << d);
                for mask in 0..(1usize << d) {
                    out.push((0..d).map(|i| if mask >> i & 1 == 1 { hi[i].clone() } else { lo[i].clone() }).collect());
                }
                Some(out)
            }
            Shape::Ball { .. } | Shape::Halfspace { .. } => None,
        }
    }

    /// Edge directions spanning the polytope's affine hull.
    pub fn edge_directions(&self) -> Option<Vec<Vec<T>>> {
        match self {
            Shape::AxisBox { lo, .. } => {
                let d = lo.len();
                Some((0..d).map(|i| (0..d).map(|j| if i == j { T::one() } else { T::zero() }).collect()).collect())
            }
            _ => {
                let v = self.vertices()?;
                let mut out = Vec::new();
                for i in 0..v.len() {
                    for j in i + 1..v.len() {
                        out.push(coord::sub(&v[j], &v[i]));
                    }
                }
                Some(out)
            }
        }
    }

    pub fn translate(&self, t: &[T]) -> Shape<T> {
        let mv = |v: &Vec<T>| coord::add(v, t);
        match self {
            Shape::Ball { center, radius } => Shape::Ball { center: mv(center), radius: radius.clone() },
            Shape::AxisBox { lo, hi } => Shape::AxisBox { lo: mv(lo), hi: mv(hi) },
            Shape::Simplex { vertices } => Shape::Simplex { vertices: vertices.iter().map(mv).collect() },
            Shape::Halfspace { normal, offset } => Shape::Halfspace {
                normal: normal.clone(),
                offset: offset.clone() + coord::dot(normal, t),
            },
            Shape::Point(p) => Shape::Point(mv(p)),
            Shape::Segment { a, b } => Shape::Segment { a: mv(a), b: mv(b) },
        }
    }

    /// Multiply every coordinate by `s > 0`.
    pub fn scaled(&self, s: &T) -> Shape<T> {
        let mv = |v: &Vec<T>| coord::scale(v, s);
        match self {
            Shape::Ball { center, radius } => Shape::Ball { center: mv(center), radius: radius.clone() * s.clone() },
            Shape::AxisBox { lo, hi } => Shape::AxisBox { lo: mv(lo), hi: mv(hi) },
            Shape::Simplex { vertices } => Shape::Simplex { vertices: vertices.iter().map(mv).collect() },
            Shape::Halfspace { normal, offset } => Shape::Halfspace {
                normal: normal.clone(),
                offset: offset.clone() * s.clone(),
            },
            Shape::Point(p) => Shape::Point(mv(p)),
            Shape::Segment { a, b } => Shape::Segment { a: mv(a), b: mv(b) },
        }
    }
}

/// Vertex payload of every intersection graph: a shape in one arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub enum GeomObject {
    Exact(Shape<Scalar>),
    Float { shape: Shape<f64>, eps: f64 },
}

/// Default tolerance for float-mode constructions.
pub const FLOAT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mode {
    Rational,
    Float { eps: f64 },
}

impl GeomObject {
    pub fn exact(shape: Shape<Scalar>) -> Result<Self, GeomError> {
        shape.validate()?;
        Ok(GeomObject::Exact(shape))
    }

    pub fn float(shape: Shape<f64>, eps: f64) -> Result<Self, GeomError> {
        shape.validate()?;
        if shape_has_nan(&shape) {
            return Err(GeomError::Invalid("non-finite coordinate".into()));
        }
        Ok(GeomObject::Float { shape, eps })
    }

    pub fn point(coords: &[i64]) -> Self {
        GeomObject::Exact(Shape::Point(coords.iter().map(|&c| Scalar::int(c)).collect()))
    }

    pub fn ball(center: &[i64], radius: i64) -> Self {
        GeomObject::exact(Shape::Ball { center: ints(center), radius: Scalar::int(radius) }).expect("valid ball")
    }

    pub fn axis_box(lo: &[i64], hi: &[i64]) -> Self {
        GeomObject::exact(Shape::AxisBox { lo: ints(lo), hi: ints(hi) }).expect("valid box")
    }

    pub fn segment(a: &[i64], b: &[i64]) -> Self {
        GeomObject::exact(Shape::Segment { a: ints(a), b: ints(b) }).expect("valid segment")
    }

    pub fn simplex(vertices: &[&[i64]]) -> Self {
        GeomObject::exact(Shape::Simplex { vertices: vertices.iter().map(|v| ints(v)).collect() }).expect("valid simplex")
    }

    pub fn halfspace(normal: &[i64], offset: Scalar) -> Self {
        GeomObject::exact(Shape::Halfspace { normal: ints(normal), offset }).expect("valid halfspace")
    }

    pub fn kind(&self) -> Kind {
        match self {
            GeomObject::Exact(s) => s.kind(),
            GeomObject::Float { shape, .. } => shape.kind(),
        }
    }

    pub fn dimension(&self) -> usize {
        match self {
            GeomObject::Exact(s) => s.dimension(),
            GeomObject::Float { shape, .. } => shape.dimension(),
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            GeomObject::Exact(_) => Mode::Rational,
            GeomObject::Float { eps, .. } => Mode::Float { eps: *eps },
        }
    }

    pub fn as_exact(&self) -> Option<&Shape<Scalar>> {
        match self {
            GeomObject::Exact(s) => Some(s),
            GeomObject::Float { .. } => None,
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.kind() != Kind::Halfspace
    }

    /// Bounding box converted to `f64` (used for pruning only).
    pub fn bbox_f64(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        match self {
            GeomObject::Exact(s) => s
                .bbox()
                .map(|(l, h)| (l.iter().map(Scalar::to_f64).collect(), h.iter().map(Scalar::to_f64).collect())),
            GeomObject::Float { shape, .. } => shape.bbox(),
        }
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&c| Scalar::int(c)).collect()
}

fn shape_has_nan(s: &Shape<f64>) -> bool {
    let bad = |v: &[f64]| v.iter().any(|x| !x.is_finite());
    match s {
        Shape::Ball { center, radius } => bad(center) || !radius.is_finite(),
        Shape::AxisBox { lo, hi } => bad(lo) || bad(hi),
        Shape::Simplex { vertices } => vertices.iter().any(|v| bad(v)),
        Shape::Halfspace { normal, offset } => bad(normal) || !offset.is_finite(),
        Shape::Point(p) => bad(p),
        Shape::Segment { a, b } => bad(a) || bad(b),
    }
}
