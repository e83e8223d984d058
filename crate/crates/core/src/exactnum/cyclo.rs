use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::approx::{basis, enclose_sum, DyadicInterval};
use super::field::{field, FieldCtx};
use super::{ExactError, PiRational};

/// An element of `Q(ζ_M)` in the power basis `1, ζ, …, ζ^{φ(M)-1}`, stored as integer
/// numerators over one positive common denominator, always fully reduced.
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<FieldCtx>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloNum {}

impl Hash for CycloNum {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl CycloNum {
    fn from_parts(ctx: Arc<FieldCtx>, num: Vec<BigInt>, den: BigInt) -> CycloNum {
        let mut x = CycloNum { ctx, num, den };
        x.normalize();
        x
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in &mut self.num {
                *c = -&*c;
            }
        }
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    pub fn zero(order: u32) -> CycloNum {
        let ctx = field(order);
        let phi = ctx.phi();
        CycloNum { ctx, num: vec![BigInt::zero(); phi], den: BigInt::one() }
    }

    pub fn from_int(order: u32, k: i64) -> CycloNum {
        let mut x = CycloNum::zero(order);
        x.num[0] = BigInt::from(k);
        x
    }

    pub fn one(order: u32) -> CycloNum {
        CycloNum::from_int(order, 1)
    }

    pub fn from_rational(order: u32, q: &BigRational) -> CycloNum {
        let mut x = CycloNum::zero(order);
        x.num[0] = q.numer().clone();
        x.den = q.denom().clone();
        x.normalize();
        x
    }

    /// Builds from power-basis rational coordinates (length must be φ(M)).
    pub fn from_coeffs(order: u32, coeffs: &[BigRational]) -> Result<CycloNum, ExactError> {
        let ctx = field(order);
        if coeffs.len() != ctx.phi() {
            return Err(ExactError::Parse(format!(
                "order {order} needs {} coefficients, got {}",
                ctx.phi(),
                coeffs.len()
            )));
        }
        let den = coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        Ok(CycloNum::from_parts(ctx, num, den))
    }

    /// `ζ_M^k`.
    pub fn zeta_pow(order: u32, k: i64) -> CycloNum {
        let ctx = field(order);
        let mut num = vec![BigInt::zero(); ctx.phi()];
        for &(i, c) in ctx.power(k) {
            num[i] = BigInt::from(c);
        }
        CycloNum { ctx, num, den: BigInt::one() }
    }

    /// `e^{i·a}` in `Q(ζ_M)`; requires `M` to be a multiple of `2·den(a)`.
    pub fn unit_from_angle(a: PiRational, order: u32) -> Result<CycloNum, ExactError> {
        let m = order as i64;
        if m % (2 * a.den()) != 0 {
            return Err(ExactError::IncompatibleOrder(order, (2 * a.den()) as u32));
        }
        Ok(CycloNum::zeta_pow(order, a.num() * (m / (2 * a.den()))))
    }

    /// Exact `cos a` (real element).
    pub fn cos_of(a: PiRational, order: u32) -> Result<CycloNum, ExactError> {
        let u = CycloNum::unit_from_angle(a, order)?;
        Ok((&u + &u.conj()).div_int(2))
    }

    /// Exact `sin a` (real element); needs `4 | M`.
    pub fn sin_of(a: PiRational, order: u32) -> Result<CycloNum, ExactError> {
        let u = CycloNum::unit_from_angle(a, order)?;
        Ok((&u - &u.conj()).div_int(2).mul_neg_i())
    }

    pub fn order(&self) -> u32 {
        self.ctx.order()
    }

    pub fn phi(&self) -> usize {
        self.ctx.phi()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.iter().skip(1).all(Zero::is_zero) {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    fn check_order(&self, other: &CycloNum) -> Result<(), ExactError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(ExactError::IncompatibleOrder(self.order(), other.order()))
        }
    }

    pub fn checked_add(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        self.check_order(other)?;
        Ok(self.add_sub(other, false))
    }

    pub fn checked_sub(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        self.check_order(other)?;
        Ok(self.add_sub(other, true))
    }

    pub fn checked_mul(&self, other: &CycloNum) -> Result<CycloNum, ExactError> {
        self.check_order(other)?;
        Ok(self.mul_same(other))
    }

    fn add_sub(&self, other: &CycloNum, subtract: bool) -> CycloNum {
        let num = if self.den == other.den {
            self.num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a - b } else { a + b })
                .collect()
        } else {
            let l = self.den.lcm(&other.den);
            let fa = &l / &self.den;
            let fb = &l / &other.den;
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if subtract { a * &fa - b * &fb } else { a * &fa + b * &fb })
                .collect();
            return CycloNum::from_parts(self.ctx.clone(), num, l);
        };
        CycloNum::from_parts(self.ctx.clone(), num, self.den.clone())
    }

    fn mul_same(&self, other: &CycloNum) -> CycloNum {
        let phi = self.phi();
        let mut raw = vec![BigInt::zero(); 2 * phi];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if !b.is_zero() {
                    raw[i + j] += a * b;
                }
            }
        }
        let mut num: Vec<BigInt> = raw.drain(..phi).collect();
        for (k, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in self.ctx.power((phi + k) as i64) {
                num[i] += &c * p;
            }
        }
        CycloNum::from_parts(self.ctx.clone(), num, &self.den * &other.den)
    }

    /// `self · ζ^k`, computed through the power table.
    pub fn mul_zeta(&self, k: i64) -> CycloNum {
        let mut num = vec![BigInt::zero(); self.phi()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in self.ctx.power(j as i64 + k) {
                num[i] += c * p;
            }
        }
        CycloNum { ctx: self.ctx.clone(), num, den: self.den.clone() }
    }

    /// `self · i`; needs `4 | M`.
    pub fn mul_i(&self) -> CycloNum {
        assert!(self.order().is_multiple_of(4), "i is not in Q(ζ_{})", self.order());
        self.mul_zeta(self.order() as i64 / 4)
    }

    pub fn mul_neg_i(&self) -> CycloNum {
        assert!(self.order().is_multiple_of(4), "i is not in Q(ζ_{})", self.order());
        self.mul_zeta(3 * self.order() as i64 / 4)
    }

    /// Rotation by an angle whose unit lies in this field.
    pub fn rotate(&self, a: PiRational) -> Result<CycloNum, ExactError> {
        let m = self.order() as i64;
        let n = a.num() as i128 * m as i128;
        let d = 2 * a.den() as i128;
        if n % d != 0 {
            return Err(ExactError::IncompatibleOrder(self.order(), (2 * a.den()) as u32));
        }
        Ok(self.mul_zeta((n / d) as i64))
    }

    pub fn scale_int(&self, k: i64) -> CycloNum {
        let k = BigInt::from(k);
        let num = self.num.iter().map(|c| c * &k).collect();
        CycloNum::from_parts(self.ctx.clone(), num, self.den.clone())
    }

    pub fn scale(&self, q: &BigRational) -> CycloNum {
        let num = self.num.iter().map(|c| c * q.numer()).collect();
        CycloNum::from_parts(self.ctx.clone(), num, &self.den * q.denom())
    }

    pub fn div_int(&self, k: i64) -> CycloNum {
        assert!(k != 0, "division by zero");
        CycloNum::from_parts(self.ctx.clone(), self.num.clone(), &self.den * BigInt::from(k))
    }

    /// Complex conjugate (the automorphism `ζ ↦ ζ^{-1}`).
    pub fn conj(&self) -> CycloNum {
        let m = self.order() as i64;
        let mut num = vec![BigInt::zero(); self.phi()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in self.ctx.power(m - j as i64) {
                num[i] += c * p;
            }
        }
        CycloNum { ctx: self.ctx.clone(), num, den: self.den.clone() }
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn re(&self) -> CycloNum {
        (self + &self.conj()).div_int(2)
    }

    /// Imaginary part as a real element; needs `4 | M`.
    pub fn im(&self) -> CycloNum {
        (self - &self.conj()).div_int(2).mul_neg_i()
    }

    /// `|self|²`.
    pub fn norm_sq(&self) -> CycloNum {
        self * &self.conj()
    }

    /// Re-expresses the element in `Q(ζ_{M'})` for a multiple `M'` of `M`.
    pub fn promote(&self, order: u32) -> Result<CycloNum, ExactError> {
        if order == self.order() {
            return Ok(self.clone());
        }
        if !order.is_multiple_of(self.order()) {
            return Err(ExactError::IncompatibleOrder(self.order(), order));
        }
        let step = (order / self.order()) as i64;
        let ctx = field(order);
        let mut num = vec![BigInt::zero(); ctx.phi()];
        for (j, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(i, p) in ctx.power(j as i64 * step) {
                num[i] += c * p;
            }
        }
        Ok(CycloNum::from_parts(ctx, num, self.den.clone()))
    }

    /// Multiplicative inverse by a fraction-free solve of the multiplication matrix.
    pub fn inverse(&self) -> Result<CycloNum, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(CycloNum::from_rational(self.order(), &q.recip()));
        }
        let phi = self.phi();
        // column j of the matrix is num·ζ^j; augmented with e_0
        let mut a = vec![vec![BigInt::zero(); phi + 1]; phi];
        for j in 0..phi {
            for (k, c) in self.num.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for &(i, p) in self.ctx.power((j + k) as i64) {
                    a[i][j] += c * p;
                }
            }
        }
        a[0][phi] = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..phi {
            let pivot = (k..phi).find(|&r| !a[r][k].is_zero()).ok_or(ExactError::DivisionByZero)?;
            a.swap(k, pivot);
            for i in k + 1..phi {
                for j in k + 1..=phi {
                    let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let mut y = vec![BigRational::zero(); phi];
        for i in (0..phi).rev() {
            let mut s = BigRational::from(a[i][phi].clone());
            for j in i + 1..phi {
                if !a[i][j].is_zero() {
                    s -= &y[j] * BigRational::from(a[i][j].clone());
                }
            }
            y[i] = s / BigRational::from(a[i][i].clone());
        }
        let inv = CycloNum::from_coeffs(self.order(), &y)?;
        Ok(inv.scale(&BigRational::from(self.den.clone())))
    }

    /// Enclosures of the real and imaginary parts at fixed precision `prec`.
    fn enclose(&self, prec: u32) -> (DyadicInterval, DyadicInterval) {
        let b = basis(self.order(), self.phi(), prec);
        let (rl, rh) = enclose_sum(&self.num, &self.den, b.iter().map(|p| &p.0));
        let (il, ih) = enclose_sum(&self.num, &self.den, b.iter().map(|p| &p.1));
        (
            DyadicInterval { lo: rl, hi: rh, scale: prec },
            DyadicInterval { lo: il, hi: ih, scale: prec },
        )
    }

    /// Intervals of width at most `2^-bits` containing the real and imaginary parts.
    pub fn approx(&self, bits: u32) -> (DyadicInterval, DyadicInterval) {
        let mut prec = (bits + 32).div_ceil(64) * 64;
        loop {
            let (re, im) = self.enclose(prec);
            if re.width_at_most(bits) && im.width_at_most(bits) {
                return (re, im);
            }
            prec += 64;
        }
    }

    /// Exact sign of a real element: symbolic zero test, then interval refinement.
    pub fn sign_real(&self) -> i8 {
        debug_assert!(self.is_real(), "sign_real on a non-real element");
        if self.is_zero() {
            return 0;
        }
        let mut prec = 64;
        loop {
            let (re, _) = self.enclose(prec);
            if re.is_positive() {
                return 1;
            }
            if re.is_negative() {
                return -1;
            }
            prec *= 2;
        }
    }

    /// Sign of `self - other` for real elements.
    pub fn cmp_real(&self, other: &CycloNum) -> std::cmp::Ordering {
        (self - other).sign_real().cmp(&0)
    }

    /// Reads a real number written as `p/q`, a decimal such as `1.25`, or the JSON form
    /// `{"order": M, "coeffs": [...]}`.
    pub fn parse_real(s: &str) -> Result<CycloNum, ExactError> {
        let t = s.trim();
        let bad = || ExactError::Parse(format!("bad real number {s:?}"));
        let x = if t.starts_with('{') {
            serde_json::from_str::<CycloNum>(t).map_err(|e| ExactError::Parse(e.to_string()))?
        } else if let Some((int, frac)) = t.split_once('.') {
            if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
            let q = BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()));
            CycloNum::from_rational(4, &q)
        } else {
            CycloNum::from_rational(4, &t.parse::<BigRational>().map_err(|_| bad())?)
        };
        if !x.is_real() {
            return Err(ExactError::Parse(format!("{s:?} is not real")));
        }
        Ok(x)
    }

    /// Midpoint approximations of the real and imaginary parts.
    pub fn to_f64(&self) -> (f64, f64) {
        let (re, im) = self.approx(60);
        (re.midpoint_f64(), im.midpoint_f64())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.to_f64();
        write!(f, "Cyclo[{}]({re:.6}{im:+.6}i)", self.order())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&CycloNum> for &CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                self.$checked(rhs).expect("mismatched field orders")
            }
        }
        impl $tr<CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: CycloNum) -> CycloNum {
                (&self).$checked(&rhs).expect("mismatched field orders")
            }
        }
        impl $tr<&CycloNum> for CycloNum {
            type Output = CycloNum;
            fn $method(self, rhs: &CycloNum) -> CycloNum {
                (&self).$checked(rhs).expect("mismatched field orders")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ctx: self.ctx.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct CycloRepr {
    order: u32,
    coeffs: Vec<String>,
}

impl Serialize for CycloNum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycloRepr {
            order: self.order(),
            coeffs: self.coeffs().iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycloNum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = CycloRepr::deserialize(d)?;
        if r.order == 0 {
            return Err(serde::de::Error::custom("field order must be positive"));
        }
        let coeffs = r
            .coeffs
            .iter()
            .map(|s| s.trim().parse::<BigRational>().map_err(|_| format!("bad rational {s:?}")))
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        CycloNum::from_coeffs(r.order, &coeffs).map_err(serde::de::Error::custom)
    }
}
