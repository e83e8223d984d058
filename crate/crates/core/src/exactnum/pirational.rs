use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::ExactError;

/// An angle `(num/den)·π`, always stored in lowest terms with `den > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PiRational {
    num: i64,
    den: i64,
}

impl PiRational {
    pub const ZERO: PiRational = PiRational { num: 0, den: 1 };
    pub const PI: PiRational = PiRational { num: 1, den: 1 };
    pub const TWO_PI: PiRational = PiRational { num: 2, den: 1 };
    pub const HALF_PI: PiRational = PiRational { num: 1, den: 2 };

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "PiRational with zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / g, den / g);
        if den < 0 {
            num = -num;
            den = -den;
        }
        PiRational { num, den }
    }

    pub fn from_int(k: i64) -> Self {
        PiRational { num: k, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    pub fn is_positive(&self) -> bool {
        self.num > 0
    }

    pub fn is_negative(&self) -> bool {
        self.num < 0
    }

    pub fn abs(self) -> Self {
        PiRational { num: self.num.abs(), den: self.den }
    }

    pub fn scale(self, k: i64) -> Self {
        PiRational::new(self.num * k, self.den)
    }

    pub fn div_int(self, k: i64) -> Self {
        PiRational::new(self.num, self.den * k)
    }

    /// Representative in `[0, 2π)`.
    pub fn normalized(self) -> Self {
        let period = 2 * self.den;
        PiRational { num: self.num.rem_euclid(period), den: self.den }
    }

    /// Representative in `(-π, π]`.
    pub fn normalized_signed(self) -> Self {
        let n = self.normalized();
        if n > PiRational::PI {
            n - PiRational::TWO_PI
        } else {
            n
        }
    }

    /// `self / (π/k)` when that quotient is an integer.
    pub fn multiple_of(self, unit: PiRational) -> Option<i64> {
        // self / unit = (num * unit.den) / (den * unit.num)
        if unit.num == 0 {
            return None;
        }
        let n = self.num as i128 * unit.den as i128;
        let d = self.den as i128 * unit.num as i128;
        if n % d == 0 {
            Some((n / d) as i64)
        } else {
            None
        }
    }

    pub fn to_radians(self) -> f64 {
        std::f64::consts::PI * self.num as f64 / self.den as f64
    }
}

impl Ord for PiRational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for PiRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for PiRational {
    type Output = PiRational;
    fn add(self, rhs: Self) -> Self {
        let l = self.den.lcm(&rhs.den);
        PiRational::new(self.num * (l / self.den) + rhs.num * (l / rhs.den), l)
    }
}

impl AddAssign for PiRational {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Sub for PiRational {
    type Output = PiRational;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for PiRational {
    type Output = PiRational;
    fn neg(self) -> Self {
        PiRational { num: -self.num, den: self.den }
    }
}

impl Mul<i64> for PiRational {
    type Output = PiRational;
    fn mul(self, k: i64) -> Self {
        self.scale(k)
    }
}

impl std::iter::Sum for PiRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(PiRational::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} pi", self.num, self.den)
    }
}

impl fmt::Debug for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}π", self.num, self.den)
    }
}

impl FromStr for PiRational {
    type Err = ExactError;

    /// Accepts `"p/q pi"`, `"p pi"`, `"p/q"` and `"p"`; the value is always a multiple of π.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(format!("bad angle {s:?}"));
        let t = s.trim();
        let t = t
            .strip_suffix("pi")
            .or_else(|| t.strip_suffix('π'))
            .unwrap_or(t)
            .trim();
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: i64 = n.parse().map_err(|_| bad())?;
        let den: i64 = d.parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        Ok(PiRational::new(num, den))
    }
}

impl TryFrom<String> for PiRational {
    type Error = ExactError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<PiRational> for String {
    fn from(a: PiRational) -> String {
        a.to_string()
    }
}
