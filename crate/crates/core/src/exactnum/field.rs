//! Shared per-order data for the cyclotomic field `Q(ζ_M)`: the cyclotomic
//! polynomial and the reduced power-basis form of every power `ζ^e`, `0 <= e < M`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Debug)]
pub struct FieldCtx {
    order: u32,
    phi: usize,
    /// Coefficients of Φ_M, lowest degree first (monic, length φ+1).
    cyclotomic: Vec<i64>,
    /// `powers[e]` is `ζ^e` reduced modulo Φ_M, as sparse (basis index, coefficient) pairs.
    powers: Vec<Vec<(usize, i64)>>,
}

impl FieldCtx {
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic_poly(&self) -> &[i64] {
        &self.cyclotomic
    }

    /// Reduced form of `ζ^e` (the exponent is taken mod M).
    pub fn power(&self, e: i64) -> &[(usize, i64)] {
        let m = self.order as i64;
        &self.powers[e.rem_euclid(m) as usize]
    }

    fn build(order: u32) -> FieldCtx {
        assert!(order >= 1, "field order must be positive");
        let cyclotomic = cyclotomic_polynomial(order as u64);
        let phi = cyclotomic.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; phi];
        if phi > 0 {
            cur[0] = 1;
        }
        for _ in 0..order {
            powers.push(
                cur.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
            // multiply by x and fold x^phi back using the monic relation
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for (i, c) in cur.iter_mut().enumerate() {
                    *c = c
                        .checked_sub(top.checked_mul(cyclotomic[i]).expect("overflow"))
                        .expect("overflow reducing power of ζ");
                }
            }
        }
        FieldCtx { order, phi, cyclotomic, powers }
    }
}

/// Shared context for order `M` (built once per process).
pub fn field(order: u32) -> Arc<FieldCtx> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FieldCtx>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap();
    guard
        .entry(order)
        .or_insert_with(|| Arc::new(FieldCtx::build(order)))
        .clone()
}

fn mobius(mut n: u64) -> i32 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Φ_n via Φ_n(x) = Π_{d | n} (x^d - 1)^{μ(n/d)}.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut poly = vec![1i64];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            // multiply by x^d - 1
            let mut out = vec![0i64; poly.len() + d as usize];
            for (i, &c) in poly.iter().enumerate() {
                out[i + d as usize] += c;
                out[i] -= c;
            }
            poly = out;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            // exact division by x^d - 1: q[i] = q[i-d] - p[i] running from the bottom
            let d = d as usize;
            let qlen = poly.len() - d;
            let mut q = vec![0i64; qlen];
            for i in 0..qlen {
                let prev = if i >= d { q[i - d] } else { 0 };
                q[i] = prev - poly[i];
            }
            poly = q;
        }
    }
    poly
}

pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}
