//! Clean angles, angle inventories and exact angle-sum case analyses.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use serde::Serialize;

use super::{PrototileError, TurtlePolygon};
use crate::exactnum::PiRational;

pub fn epsilon() -> PiRational {
    PiRational::new(1, 16)
}

/// `α = π/2 - 2ε`.
pub fn alpha() -> PiRational {
    PiRational::HALF_PI - epsilon().scale(2)
}

/// `β = π/2 - ε`.
pub fn beta() -> PiRational {
    PiRational::HALF_PI - epsilon()
}

/// Interior angle of a wheel corner, `π(1 - 1/(2n))`.
pub fn corner_angle(n: i64) -> PiRational {
    PiRational::new(2 * n - 1, 2 * n)
}

/// Defect of a shuriken anticorner; equal to the corner angle.
pub fn anticorner_defect(n: i64) -> PiRational {
    corner_angle(n)
}

/// Interior angle of a shuriken tip, `π/n`.
pub fn tip_angle(n: i64) -> PiRational {
    PiRational::new(1, n)
}

/// Whether `a` is an integer multiple of `π/(2n)`.
pub fn is_clean(a: PiRational, n: i64) -> bool {
    a.multiple_of(PiRational::new(1, 2 * n)).is_some()
}

/// The intervals bounding sums of one, two and three terms from `{α, β}`, as
/// `(lo, hi)` pairs in that order.
pub fn sum_intervals() -> [(PiRational, PiRational); 3] {
    [
        (PiRational::new(3, 8), PiRational::new(7, 16)),
        (PiRational::new(3, 4), PiRational::new(7, 8)),
        (PiRational::new(9, 8), PiRational::new(21, 16)),
    ]
}

/// Convex interior angles and reflex defects, each with multiplicity.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AngleInventory {
    pub convex: BTreeMap<PiRational, usize>,
    pub reflex: BTreeMap<PiRational, usize>,
}

impl AngleInventory {
    pub fn convex_classes(&self) -> BTreeSet<PiRational> {
        self.convex.keys().copied().collect()
    }

    pub fn defect_classes(&self) -> BTreeSet<PiRational> {
        self.reflex.keys().copied().collect()
    }

    /// All distinct interior angles (reflex ones as `2π - defect`).
    pub fn interior_classes(&self) -> BTreeSet<PiRational> {
        self.convex
            .keys()
            .copied()
            .chain(self.reflex.keys().map(|d| PiRational::TWO_PI - *d))
            .collect()
    }
}

pub fn angle_inventory(p: &TurtlePolygon) -> Result<AngleInventory, PrototileError> {
    let mut inv = AngleInventory::default();
    for (i, a) in p.interior_angles().into_iter().enumerate() {
        if a == PiRational::PI {
            return Err(PrototileError::FlatVertex(i));
        }
        if a < PiRational::PI {
            *inv.convex.entry(a).or_default() += 1;
        } else {
            *inv.reflex.entry(PiRational::TWO_PI - a).or_default() += 1;
        }
    }
    Ok(inv)
}

/// A labeled multiset: label to multiplicity.
pub type FillOption = BTreeMap<String, usize>;

pub const FLAT_LABEL: &str = "flat";

/// Every multiset over the labeled inventory (plus the straight angle `π` when
/// `allow_flat`) whose exact sum is `target`. Multiplicities are unbounded; the result
/// is finite because all angles are positive. Options are returned in sorted order.
pub fn fill_options(target: PiRational, inventory: &[(String, PiRational)], allow_flat: bool) -> Vec<FillOption> {
    let mut items: Vec<(String, PiRational)> = inventory.to_vec();
    if allow_flat {
        items.push((FLAT_LABEL.to_string(), PiRational::PI));
    }
    if !target.is_positive() || items.iter().any(|(_, a)| !a.is_positive()) {
        return Vec::new();
    }
    let den = items.iter().fold(target.den(), |acc, (_, a)| acc.lcm(&a.den()));
    let weight = |a: PiRational| a.num() * (den / a.den());
    let weights: Vec<i64> = items.iter().map(|(_, a)| weight(*a)).collect();
    let mut out = Vec::new();
    let mut counts = vec![0usize; items.len()];
    enumerate(0, weight(target), &weights, &mut counts, &mut |counts| {
        let opt: FillOption = counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(BTreeMap::new(), |mut m, (i, &c)| {
                *m.entry(items[i].0.clone()).or_default() += c;
                m
            });
        out.push(opt);
    });
    out.sort();
    out.dedup();
    out
}

fn enumerate(i: usize, remaining: i64, weights: &[i64], counts: &mut [usize], emit: &mut dyn FnMut(&[usize])) {
    if remaining == 0 {
        emit(counts);
        return;
    }
    if i == weights.len() {
        return;
    }
    let w = weights[i];
    let mut c = 0;
    while c as i64 * w <= remaining {
        counts[i] = c;
        enumerate(i + 1, remaining - c as i64 * w, weights, counts, emit);
        c += 1;
    }
    counts[i] = 0;
}

/// Which multiples of `π/den` up to `2π` are sums of angles from a fixed inventory.
#[derive(Debug, Clone)]
pub struct AngleSums {
    den: i64,
    reachable: Vec<bool>,
}

impl AngleSums {
    pub fn new(angles: &[PiRational], allow_flat: bool) -> AngleSums {
        let mut angles: Vec<PiRational> = angles.iter().copied().filter(|a| a.is_positive()).collect();
        if allow_flat {
            angles.push(PiRational::PI);
        }
        let den = angles.iter().fold(1i64, |acc, a| acc.lcm(&a.den()));
        let top = (2 * den) as usize;
        let weights: Vec<usize> = angles.iter().map(|a| (a.num() * (den / a.den())) as usize).collect();
        let mut reachable = vec![false; top + 1];
        reachable[0] = true;
        for s in 1..=top {
            reachable[s] = weights.iter().any(|&w| w <= s && reachable[s - w]);
        }
        AngleSums { den, reachable }
    }

    /// Whether `a` (in `[0, 2π]`) is a sum of inventory angles; zero counts as reachable.
    pub fn contains(&self, a: PiRational) -> bool {
        if a.is_negative() || a > PiRational::TWO_PI {
            return false;
        }
        if self.den % a.den() != 0 {
            return false;
        }
        self.reachable[(a.num() * (self.den / a.den())) as usize]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pi(n: i64, d: i64) -> PiRational {
        PiRational::new(n, d)
    }

    fn lab(items: &[(&str, PiRational)]) -> Vec<(String, PiRational)> {
        items.iter().map(|(l, a)| (l.to_string(), *a)).collect()
    }

    #[test]
    fn named_angles() {
        assert_eq!(alpha(), pi(3, 8));
        assert_eq!(beta(), pi(7, 16));
        assert_eq!(corner_angle(5), pi(9, 10));
        assert_eq!(tip_angle(5), pi(1, 5));
    }

    #[test]
    fn clean_examples() {
        assert!(!is_clean(alpha(), 5));
        assert!(is_clean(corner_angle(7), 7));
        assert!(!is_clean(alpha() + beta(), 7));
        assert!(is_clean(tip_angle(9), 9));
    }

    #[test]
    fn fill_small_cases() {
        let inv = lab(&[("a", pi(1, 2)), ("b", pi(1, 4))]);
        let opts = fill_options(PiRational::PI, &inv, false);
        assert_eq!(opts.len(), 3);
        let with_flat = fill_options(PiRational::PI, &inv, true);
        assert_eq!(with_flat.len(), 4);
        assert!(with_flat.contains(&BTreeMap::from([(FLAT_LABEL.to_string(), 1)])));
    }

    #[test]
    fn staple_cannot_fill_its_defect() {
        let inv = lab(&[("β", beta()), ("staple reflex", PiRational::TWO_PI - alpha().scale(2))]);
        assert!(fill_options(alpha().scale(2), &inv, false).is_empty());
    }

    #[test]
    fn sums_table() {
        let sums = AngleSums::new(&[pi(1, 2)], false);
        assert!(sums.contains(PiRational::ZERO));
        assert!(sums.contains(pi(3, 2)));
        assert!(!sums.contains(pi(1, 4)));
        assert!(!sums.contains(pi(1, 3)));
        let with_flat = AngleSums::new(&[pi(3, 8)], true);
        assert!(with_flat.contains(pi(11, 8)));
    }
}
