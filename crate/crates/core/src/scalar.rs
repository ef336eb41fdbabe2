//! Exact rational scalars.
//!
//! Values that fit a reduced `i64/i64` fraction stay on a stack-only fast path
//! (arithmetic in `i128`, integers skip the gcd entirely); anything larger is
//! promoted to an arbitrary-precision [`BigRational`]. The representation is
//! canonical, so derived equality and hashing are structural.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Reduced fraction, `den > 0`.
    Small { num: i64, den: i64 },
    /// Never holds a value representable as `Small`.
    Big(BigRational),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseScalarError(pub String);

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small { num: 0, den: 1 });
    pub const ONE: Scalar = Scalar(Repr::Small { num: 1, den: 1 });

    pub const fn int(v: i64) -> Self {
        Scalar(Repr::Small { num: v, den: 1 })
    }

    /// `num / den`; panics on a zero denominator.
    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
        if den != 1 {
            let g = num.gcd(&den);
            if g > 1 {
                num /= g;
                den /= g;
            }
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Scalar(Repr::Small { num: n, den: d }),
            _ => Scalar(Repr::Big(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))),
        }
    }

    pub fn from_big(r: BigRational) -> Self {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            return Scalar(Repr::Small { num: n, den: d });
        }
        Scalar(Repr::Big(r))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Repr::Big(r) => r.clone(),
        }
    }

    /// Exact value of a finite `f64`.
    pub fn from_f64(v: f64) -> Option<Self> {
        BigRational::from_float(v).map(Self::from_big)
    }

    /// `2^exp`, exact for any exponent.
    pub fn pow2(exp: i32) -> Self {
        if (0..62).contains(&exp) {
            Scalar::int(1i64 << exp)
        } else if (-62..0).contains(&exp) {
            Scalar(Repr::Small { num: 1, den: 1i64 << (-exp) })
        } else {
            let p = BigInt::one() << exp.unsigned_abs();
            if exp >= 0 {
                Self::from_big(BigRational::from_integer(p))
            } else {
                Self::from_big(BigRational::new(BigInt::one(), p))
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        matches!(self.0, Repr::Small { den: 1, .. })
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small { num, .. } => num.signum() as i32,
            Repr::Big(r) => {
                if r.is_positive() {
                    1
                } else if r.is_negative() {
                    -1
                } else {
                    0
                }
            }
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn floor(&self) -> BigInt {
        match &self.0 {
            Repr::Small { num, den } => BigInt::from(num.div_floor(den)),
            Repr::Big(r) => r.floor().to_integer(),
        }
    }

    pub fn floor_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small { num, den } => Some(num.div_floor(den)),
            Repr::Big(r) => r.floor().to_integer().to_i64(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small { num, den } => *num as f64 / *den as f64,
            Repr::Big(r) => r.to_f64().unwrap_or(f64::NAN),
        }
    }

    /// A rational `s >= sqrt(self)` within a relative `1e-12` of the root.
    pub fn sqrt_upper(&self) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative value");
        if self.is_zero() {
            return Scalar::ZERO;
        }
        let mut guess = self.to_f64().sqrt() * (1.0 + 1e-12);
        loop {
            if let Some(s) = Self::from_f64(guess) {
                if &(&s * &s) >= self {
                    return s;
                }
            }
            guess *= 1.0 + 1e-9;
        }
    }

    /// A rational `0 <= s <= sqrt(self)` within a relative `1e-12` of the root.
    pub fn sqrt_lower(&self) -> Self {
        assert!(self.signum() >= 0, "sqrt of negative value");
        let mut guess = self.to_f64().sqrt() * (1.0 - 1e-12);
        loop {
            if let Some(s) = Self::from_f64(guess.max(0.0)) {
                if &(&s * &s) <= self {
                    return s;
                }
            }
            guess *= 1.0 - 1e-9;
        }
    }

    pub fn min(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    pub fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar::int(v as i64)
    }
}

fn big_result(r: BigRational) -> Scalar {
    Scalar::from_big(r)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => match a.checked_add(*b) {
                Some(s) => Scalar::int(s),
                None => Scalar::from_i128(*a as i128 + *b as i128, 1),
            },
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => Scalar::from_i128(
                *a as i128 * *db as i128 + *b as i128 * *da as i128,
                *da as i128 * *db as i128,
            ),
            _ => big_result(self.to_big() + rhs.to_big()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => match a.checked_sub(*b) {
                Some(s) => Scalar::int(s),
                None => Scalar::from_i128(*a as i128 - *b as i128, 1),
            },
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => Scalar::from_i128(
                *a as i128 * *db as i128 - *b as i128 * *da as i128,
                *da as i128 * *db as i128,
            ),
            _ => big_result(self.to_big() - rhs.to_big()),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: 1 }, Repr::Small { num: b, den: 1 }) => match a.checked_mul(*b) {
                Some(s) => Scalar::int(s),
                None => Scalar::from_i128(*a as i128 * *b as i128, 1),
            },
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                Scalar::from_i128(*a as i128 * *b as i128, *da as i128 * *db as i128)
            }
            _ => big_result(self.to_big() * rhs.to_big()),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "division by zero");
        match (&self.0, &rhs.0) {
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                Scalar::from_i128(*a as i128 * *db as i128, *da as i128 * *b as i128)
            }
            _ => big_result(self.to_big() / rhs.to_big()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self.0 {
            Repr::Small { num, den } if num != i64::MIN => Scalar(Repr::Small { num: -num, den }),
            _ => big_result(-self.to_big()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) => {
                (*a as i128 * *db as i128).cmp(&(*b as i128 * *da as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small { num, den: 1 } => write!(f, "{num}"),
            Repr::Small { num, den } => write!(f, "{num}/{den}"),
            Repr::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseScalarError(s.to_string());
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::from_big(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_arithmetic_is_reduced() {
        let a = Scalar::frac(1, 2);
        let b = Scalar::frac(1, 3);
        assert_eq!(&a + &b, Scalar::frac(5, 6));
        assert_eq!(&a - &a, Scalar::ZERO);
        assert_eq!(&a * &Scalar::int(4), Scalar::int(2));
        assert_eq!(&a / &b, Scalar::frac(3, 2));
        assert_eq!(Scalar::frac(2, -4), Scalar::frac(-1, 2));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Scalar::int(i64::MAX);
        let sq = &big * &big;
        assert!(sq > big);
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back.0, Repr::Small { .. }));
    }

    #[test]
    fn parse_and_display() {
        let s: Scalar = "-6/4".parse().unwrap();
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::int(7));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    #[test]
    fn pow2_and_floor() {
        assert_eq!(Scalar::pow2(-3), Scalar::frac(1, 8));
        assert_eq!(Scalar::pow2(70) / Scalar::pow2(68), Scalar::int(4));
        assert_eq!(Scalar::frac(-7, 2).floor_i64(), Some(-4));
    }

    #[test]
    fn sqrt_bounds() {
        for v in [2i64, 3, 10, 1 << 40] {
            let x = Scalar::int(v);
            let up = x.sqrt_upper();
            let lo = x.sqrt_lower();
            assert!(&up * &up >= x);
            assert!(&lo * &lo <= x);
        }
    }

    proptest! {
        #[test]
        fn ring_laws_match_bigrational(a in -1_000_000i64..1_000_000, b in 1i64..10_000,
                                       c in -1_000_000i64..1_000_000, d in 1i64..10_000) {
            let x = Scalar::frac(a, b);
            let y = Scalar::frac(c, d);
            let bx = BigRational::new(a.into(), b.into());
            let by = BigRational::new(c.into(), d.into());
            prop_assert_eq!((&x + &y).to_big(), &bx + &by);
            prop_assert_eq!((&x * &y).to_big(), &bx * &by);
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            let shown: Scalar = x.to_string().parse().unwrap();
            prop_assert_eq!(shown, x);
        }
    }
}
