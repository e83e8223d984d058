//! Certified numeric enclosures of cyclotomic field elements.
//!
//! Every power-basis element `ζ_M^j = cos(2πj/M) + i·sin(2πj/M)` is enclosed by a
//! fixed-point interval computed with directed rounding (π by Machin's formula, cos/sin
//! by Taylor series with a Lagrange remainder term). An element is then enclosed by the
//! interval sum of its coefficients times those basis intervals.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `[lo, hi] · 2^-scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub scale: u32,
}

impl DyadicInterval {
    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Width as an exact dyadic: `(hi - lo) · 2^-scale`.
    pub fn width_ulps(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// True when `hi - lo <= 2^-bits`.
    pub fn width_at_most(&self, bits: u32) -> bool {
        if bits > self.scale {
            return self.lo == self.hi;
        }
        self.width_ulps() <= (BigInt::one() << (self.scale - bits))
    }

    /// Outward-rounded f64 enclosure.
    pub fn to_iv(&self) -> Iv {
        let s = 2f64.powi(-(self.scale as i32));
        let lo = big_to_f64(&self.lo) * s;
        let hi = big_to_f64(&self.hi) * s;
        if self.lo == self.hi && lo.is_finite() && big_is_exact_f64(&self.lo) {
            return Iv { lo, hi: lo };
        }
        Iv { lo: lo.next_down(), hi: hi.next_up() }
    }

    pub fn midpoint_f64(&self) -> f64 {
        let s = 2f64.powi(-(self.scale as i32) - 1);
        big_to_f64(&(&self.lo + &self.hi)) * s
    }
}

fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

fn big_is_exact_f64(x: &BigInt) -> bool {
    x.bits() <= 53
}

/// Closed interval of f64 values with outward rounding on every operation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Iv {
    pub lo: f64,
    pub hi: f64,
}

impl Iv {
    pub fn point(x: f64) -> Iv {
        Iv { lo: x, hi: x }
    }

    /// Certified sign if the interval excludes zero (or is exactly zero).
    pub fn sign(&self) -> Option<i8> {
        if self.lo > 0.0 {
            Some(1)
        } else if self.hi < 0.0 {
            Some(-1)
        } else if self.lo == 0.0 && self.hi == 0.0 {
            Some(0)
        } else {
            None
        }
    }

    pub fn hull(self, other: Iv) -> Iv {
        Iv { lo: self.lo.min(other.lo), hi: self.hi.max(other.hi) }
    }

    pub fn overlaps(&self, other: &Iv) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

impl Add for Iv {
    type Output = Iv;
    fn add(self, o: Iv) -> Iv {
        Iv { lo: (self.lo + o.lo).next_down(), hi: (self.hi + o.hi).next_up() }
    }
}

impl Sub for Iv {
    type Output = Iv;
    fn sub(self, o: Iv) -> Iv {
        Iv { lo: (self.lo - o.hi).next_down(), hi: (self.hi - o.lo).next_up() }
    }
}

impl Neg for Iv {
    type Output = Iv;
    fn neg(self) -> Iv {
        Iv { lo: -self.hi, hi: -self.lo }
    }
}

impl Mul for Iv {
    type Output = Iv;
    fn mul(self, o: Iv) -> Iv {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = p.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        Iv { lo: lo.next_down(), hi: hi.next_up() }
    }
}

/// Fixed-point interval `[lo, hi]·2^-prec` used while building basis enclosures.
#[derive(Clone, Debug)]
pub(crate) struct Fx {
    pub lo: BigInt,
    pub hi: BigInt,
}

fn div_floor(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn div_ceil(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

impl Fx {
    fn exact(v: BigInt) -> Fx {
        Fx { lo: v.clone(), hi: v }
    }

    fn add(&self, o: &Fx) -> Fx {
        Fx { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    fn sub(&self, o: &Fx) -> Fx {
        Fx { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    fn widen(&self, r: &BigInt) -> Fx {
        Fx { lo: &self.lo - r, hi: &self.hi + r }
    }

    /// Both operands nonnegative.
    fn mul_nonneg(&self, o: &Fx, prec: u32) -> Fx {
        let one = BigInt::one() << prec;
        Fx {
            lo: div_floor(&(&self.lo * &o.lo), &one),
            hi: div_ceil(&(&self.hi * &o.hi), &one),
        }
    }

    /// Multiply by the nonnegative rational `p/q`.
    fn mul_ratio(&self, p: &BigInt, q: &BigInt) -> Fx {
        Fx { lo: div_floor(&(&self.lo * p), q), hi: div_ceil(&(&self.hi * p), q) }
    }
}

/// `atan(1/x)` enclosure by the alternating Taylor series.
fn atan_inv(x: u64, prec: u32) -> Fx {
    let one = BigInt::one() << prec;
    let x2 = BigInt::from(x) * BigInt::from(x);
    let mut pow = BigInt::from(x);
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    let mut k: u64 = 0;
    loop {
        let denom = BigInt::from(2 * k + 1) * &pow;
        if denom > one {
            break;
        }
        let t_lo = div_floor(&one, &denom);
        let t_hi = div_ceil(&one, &denom);
        if k.is_multiple_of(2) {
            lo += t_lo;
            hi += t_hi;
        } else {
            lo -= t_hi;
            hi -= t_lo;
        }
        pow *= &x2;
        k += 1;
    }
    // alternating, decreasing: remainder below the first omitted term, itself < 1 ulp
    Fx { lo: lo - 1, hi: hi + 1 }
}

pub(crate) fn pi_enclosure(prec: u32) -> Fx {
    let a = atan_inv(5, prec);
    let b = atan_inv(239, prec);
    let sixteen = BigInt::from(16);
    let four = BigInt::from(4);
    Fx { lo: &a.lo * &sixteen - &b.hi * &four, hi: &a.hi * &sixteen - &b.lo * &four }
}

/// Enclosures of `(cos θ, sin θ)` for `θ` in the nonnegative interval `theta` (≤ π).
fn cos_sin(theta: &Fx, prec: u32) -> (Fx, Fx) {
    let one = BigInt::one() << prec;
    let mut term = Fx::exact(one.clone());
    let mut cos = Fx::exact(one.clone());
    let mut sin = Fx::exact(BigInt::zero());
    let mut m: u64 = 0;
    loop {
        m += 1;
        term = term.mul_nonneg(theta, prec);
        term = Fx { lo: div_floor(&term.lo, &BigInt::from(m)), hi: div_ceil(&term.hi, &BigInt::from(m)) };
        let target = if m.is_multiple_of(2) { &mut cos } else { &mut sin };
        let negative = (m / 2) % 2 == 1;
        *target = if negative { target.sub(&term) } else { target.add(&term) };
        if m >= 8 && term.hi < BigInt::from(2) {
            break;
        }
    }
    // Lagrange remainder: |R| <= θ^{m+1}/(m+1)! < θ^m/m! since θ < m+1
    let r = term.hi.clone().max(BigInt::one());
    (cos.widen(&r), sin.widen(&r))
}

/// Enclosures of `cos(2πj/M)`, `sin(2πj/M)` for `j = 0..count`.
pub(crate) fn basis(order: u32, count: usize, prec: u32) -> Arc<Vec<(Fx, Fx)>> {
    static CACHE: OnceLock<Mutex<HashMap<(u32, usize, u32), Arc<Vec<(Fx, Fx)>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(b) = cache.lock().unwrap().get(&(order, count, prec)) {
        return b.clone();
    }
    let work = prec + 16;
    let pi = pi_enclosure(work);
    let m = order as i64;
    let one = BigInt::one() << prec;
    let shift = BigInt::one() << 16u32;
    let mut out = Vec::with_capacity(count);
    for j in 0..count as i64 {
        let (c, s) = if (4 * j) % m == 0 {
            match (4 * j / m) % 4 {
                0 => (Fx::exact(one.clone()), Fx::exact(BigInt::zero())),
                1 => (Fx::exact(BigInt::zero()), Fx::exact(one.clone())),
                2 => (Fx::exact(-one.clone()), Fx::exact(BigInt::zero())),
                _ => (Fx::exact(BigInt::zero()), Fx::exact(-one.clone())),
            }
        } else {
            let (jj, flip) = if 2 * j > m { (m - j, true) } else { (j, false) };
            let theta = pi.mul_ratio(&BigInt::from(2 * jj), &BigInt::from(m));
            let (c, s) = cos_sin(&theta, work);
            let c = Fx { lo: div_floor(&c.lo, &shift), hi: div_ceil(&c.hi, &shift) };
            let s = Fx { lo: div_floor(&s.lo, &shift), hi: div_ceil(&s.hi, &shift) };
            let s = if flip { Fx { lo: -s.hi, hi: -s.lo } } else { s };
            (c, s)
        };
        out.push((c, s));
    }
    let arc = Arc::new(out);
    cache.lock().unwrap().insert((order, count, prec), arc.clone());
    arc
}

/// Interval dot product `Σ coeff_j · basis_j` at fixed precision, divided by `den > 0`.
pub(crate) fn enclose_sum<'a>(
    coeffs: &[BigInt],
    den: &BigInt,
    basis: impl Iterator<Item = &'a Fx>,
) -> (BigInt, BigInt) {
    let mut lo = BigInt::zero();
    let mut hi = BigInt::zero();
    for (c, b) in coeffs.iter().zip(basis) {
        if c.is_zero() {
            continue;
        }
        if c.is_positive() {
            lo += c * &b.lo;
            hi += c * &b.hi;
        } else {
            lo += c * &b.hi;
            hi += c * &b.lo;
        }
    }
    (div_floor(&lo, den), div_ceil(&hi, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(x: &BigInt, prec: u32) -> f64 {
        x.to_f64().unwrap() * 2f64.powi(-(prec as i32))
    }

    #[test]
    fn pi_is_enclosed() {
        let p = pi_enclosure(200);
        assert!(to_f64(&p.lo, 200) <= std::f64::consts::PI + 1e-15);
        assert!(to_f64(&p.hi, 200) >= std::f64::consts::PI - 1e-15);
        assert!(&p.hi - &p.lo < BigInt::from(1000));
    }

    #[test]
    fn basis_encloses_cos_sin() {
        let b = basis(32, 16, 96);
        for (j, (c, s)) in b.iter().enumerate() {
            let t = 2.0 * std::f64::consts::PI * j as f64 / 32.0;
            assert!((to_f64(&c.lo, 96) - t.cos()).abs() < 1e-14);
            assert!(c.lo <= c.hi && s.lo <= s.hi);
            assert!(&c.hi - &c.lo < BigInt::from(1u64 << 20));
            assert!((to_f64(&s.hi, 96) - t.sin()).abs() < 1e-14);
        }
        // quarter turn is exact
        assert_eq!(b[8].0.lo, BigInt::zero());
        assert_eq!(b[8].0.hi, BigInt::zero());
    }

    #[test]
    fn interval_arithmetic_is_outward() {
        let a = Iv::point(0.1);
        let b = Iv::point(0.2);
        let s = a + b;
        assert!(s.lo <= 0.30000000000000004 && s.hi >= 0.3);
        assert_eq!((a - a).sign(), None);
        assert_eq!(Iv { lo: 1.0, hi: 2.0 }.sign(), Some(1));
    }
}
