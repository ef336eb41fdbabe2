use std::cmp::Ordering;
use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Coordinate field shared by the exact and the tolerance-carrying float mode.
///
/// Every comparison goes through [`Coord::cmp_eps`]; exact types ignore `eps`.
pub trait Coord:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_frac(num: i64, den: i64) -> Self;
    fn pow2(exp: i32) -> Self;
    fn to_f64(&self) -> f64;

    fn cmp_eps(&self, other: &Self, eps: f64) -> Ordering;

    /// Tolerance-free total order, used for sorting and dedup.
    fn total_cmp(&self, other: &Self) -> Ordering;

    /// Some value `>= sqrt(self)` (within float precision for `f64`).
    fn sqrt_upper(&self) -> Self;

    /// `floor(self / 2^exp)`.
    fn floor_div_pow2(&self, exp: i32) -> i64;

    fn le(&self, other: &Self, eps: f64) -> bool {
        self.cmp_eps(other, eps) != Ordering::Greater
    }

    fn lt(&self, other: &Self, eps: f64) -> bool {
        self.cmp_eps(other, eps) == Ordering::Less
    }

    fn is_zero_eps(&self, eps: f64) -> bool {
        self.cmp_eps(&Self::zero(), eps) == Ordering::Equal
    }

    fn min_of(self, other: Self) -> Self {
        if other.total_cmp(&self) == Ordering::Less {
            other
        } else {
            self
        }
    }

    fn max_of(self, other: Self) -> Self {
        if other.total_cmp(&self) == Ordering::Greater {
            other
        } else {
            self
        }
    }
}

impl Coord for Scalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        Scalar::ZERO
    }
    fn one() -> Self {
        Scalar::ONE
    }
    fn from_i64(v: i64) -> Self {
        Scalar::int(v)
    }
    fn from_frac(num: i64, den: i64) -> Self {
        Scalar::frac(num, den)
    }
    fn pow2(exp: i32) -> Self {
        Scalar::pow2(exp)
    }
    fn to_f64(&self) -> f64 {
        Scalar::to_f64(self)
    }
    fn cmp_eps(&self, other: &Self, _eps: f64) -> Ordering {
        self.cmp(other)
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn sqrt_upper(&self) -> Self {
        Scalar::sqrt_upper(self)
    }
    fn floor_div_pow2(&self, exp: i32) -> i64 {
        (self / &Scalar::pow2(exp)).floor_i64().expect("coordinate out of i64 range")
    }
}

impl Coord for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_frac(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }
    fn pow2(exp: i32) -> Self {
        2f64.powi(exp)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    /// Relative tolerance: `|a - b| <= eps * max(1, |a|, |b|)` counts as equal.
    fn cmp_eps(&self, other: &Self, eps: f64) -> Ordering {
        let scale = 1f64.max(self.abs()).max(other.abs());
        if (self - other).abs() <= eps * scale {
            Ordering::Equal
        } else {
            self.partial_cmp(other).unwrap_or(Ordering::Equal)
        }
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        f64::total_cmp(self, other)
    }
    fn sqrt_upper(&self) -> Self {
        self.max(0.0).sqrt()
    }
    fn floor_div_pow2(&self, exp: i32) -> i64 {
        (self / 2f64.powi(exp)).floor() as i64
    }
}

pub fn dot<T: Coord>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        acc = acc + x.clone() * y.clone();
    }
    acc
}

pub fn sub<T: Coord>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn add<T: Coord>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn scale<T: Coord>(a: &[T], s: &T) -> Vec<T> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

pub fn norm_sq<T: Coord>(a: &[T]) -> T {
    dot(a, a)
}

pub fn dist_sq<T: Coord>(a: &[T], b: &[T]) -> T {
    let mut acc = T::zero();
    for (x, y) in a.iter().zip(b) {
        let d = x.clone() - y.clone();
        acc = acc + d.clone() * d;
    }
    acc
}

pub fn cross3<T: Coord>(a: &[T], b: &[T]) -> Vec<T> {
    vec![
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

pub fn is_zero_vec<T: Coord>(a: &[T], eps: f64) -> bool {
    a.iter().all(|x| x.is_zero_eps(eps))
}

/// Lexicographic total order on coordinate vectors.
pub fn cmp_vec<T: Coord>(a: &[T], b: &[T]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}
