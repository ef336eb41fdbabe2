use super::coord;
use super::object::{GeomObject, Shape};
use super::GeomError;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Red,
    Blue,
}

/// Balls `B(x, y)` (red) and `B(a, r)` (blue) meet iff `|x - a|^2 <= (y + r)^2`,
/// which is linear in the lifted point `(x, y, |x|^2 - y^2)`.
pub fn lift_ball_to_halfspace_shape(center: &[Scalar], radius: &Scalar, side: Side) -> Shape<Scalar> {
    match side {
        Side::Red => {
            let mut p = center.to_vec();
            p.push(radius.clone());
            p.push(coord::norm_sq(center) - radius * radius);
            Shape::Point(p)
        }
        Side::Blue => {
            let two = Scalar::int(2);
            let mut normal: Vec<Scalar> = center.iter().map(|a| -(&two * a)).collect();
            normal.push(-(&two * radius));
            normal.push(Scalar::ONE);
            let offset = radius * radius - coord::norm_sq(center);
            Shape::Halfspace { normal, offset }
        }
    }
}

pub fn lift_ball_to_halfspace(b: &GeomObject, side: Side) -> Result<GeomObject, GeomError> {
    match b {
        GeomObject::Exact(Shape::Ball { center, radius }) => {
            Ok(GeomObject::Exact(lift_ball_to_halfspace_shape(center, radius, side)))
        }
        GeomObject::Exact(_) => Err(GeomError::WrongKind("ball")),
        GeomObject::Float { .. } => Err(GeomError::MixedModes),
    }
}

/// `(x^2, xy, y^2, x, y)`.
pub fn veronese_point(x: &Scalar, y: &Scalar) -> Vec<Scalar> {
    vec![x * x, x * y, y * y, x.clone(), y.clone()]
}

/// `(y - a x - b)^2 <= 1/2` written as a halfspace over the lifted coordinates.
pub fn veronese_halfspace(a: &Scalar, b: &Scalar) -> Shape<Scalar> {
    let two = Scalar::int(2);
    let normal = vec![a * a, -(&two * a), Scalar::ONE, &(&two * a) * b, -(&two * b)];
    let offset = Scalar::frac(1, 2) - b * b;
    Shape::Halfspace { normal, offset }
}

/// Lift a planar point and the line `y = a x + b` into `R^5`.
pub fn veronese_lift(p: &GeomObject, line: (&Scalar, &Scalar)) -> Result<(GeomObject, GeomObject), GeomError> {
    match p {
        GeomObject::Exact(Shape::Point(c)) if c.len() == 2 => Ok((
            GeomObject::Exact(Shape::Point(veronese_point(&c[0], &c[1]))),
            GeomObject::Exact(veronese_halfspace(line.0, line.1)),
        )),
        GeomObject::Exact(_) => Err(GeomError::WrongKind("point in R^2")),
        GeomObject::Float { .. } => Err(GeomError::MixedModes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::intersects;

    #[test]
    fn ball_lift_examples() {
        let red = GeomObject::ball(&[0], 1);
        let blue = GeomObject::ball(&[2], 1);
        let p = lift_ball_to_halfspace(&red, Side::Red).unwrap();
        assert_eq!(p, GeomObject::point(&[0, 1, -1]));
        let h = lift_ball_to_halfspace(&blue, Side::Blue).unwrap();
        assert_eq!(h, GeomObject::halfspace(&[-4, -2, 1], Scalar::int(-3)));
        assert!(intersects(&p, &h).unwrap());
        let Shape::Halfspace { normal, offset } = h.as_exact().unwrap() else { unreachable!() };
        let Shape::Point(q) = p.as_exact().unwrap() else { unreachable!() };
        assert_eq!(coord::dot(normal, q), *offset);
        assert!(lift_ball_to_halfspace(&GeomObject::point(&[0]), Side::Red).is_err());
    }

    #[test]
    fn veronese_examples() {
        let (a, b) = (Scalar::int(1), Scalar::int(1));
        let (p, h) = veronese_lift(&GeomObject::point(&[1, 2]), (&a, &b)).unwrap();
        assert!(intersects(&p, &h).unwrap());
        let (p, h) = veronese_lift(&GeomObject::point(&[0, 0]), (&a, &b)).unwrap();
        assert!(!intersects(&p, &h).unwrap());
        assert!(veronese_lift(&GeomObject::point(&[0, 0, 0]), (&a, &b)).is_err());
    }
}
