use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;

use tritile::exactnum::PiRational;
use tritile::prototiles::{
    alpha, angle_inventory, beta, build_prototiles, corner_angle, is_clean, sum_intervals, tip_angle,
    PrototileError, PrototileSet, SideParams,
};
use tritile::wang::{make_signed_free, words_match, Glue, SetKind, Sign, WangTile, WangTileSet};

fn pi(num: i64, den: i64) -> PiRational {
    PiRational::new(num, den)
}

fn set(tiles: &[[u32; 4]]) -> WangTileSet {
    let u = WangTileSet::new(SetKind::Unsigned, tiles.iter().map(|t| WangTile::unsigned(t[0], t[1], t[2], t[3])).collect())
        .unwrap();
    make_signed_free(&u).unwrap()
}

/// `b = 1` from two glues, `b = 4` from twelve.
fn built(b: u32) -> PrototileSet {
    let tiles: &[[u32; 4]] = match b {
        1 => &[[0, 0, 0, 0]],
        4 => &[[0, 0, 1, 1], [2, 2, 3, 3], [4, 4, 5, 5]],
        _ => unreachable!(),
    };
    let p = build_prototiles(&set(tiles), SideParams::default()).unwrap();
    assert_eq!((p.meta.n, p.meta.b), (5, b));
    p
}

fn classes(xs: &[PiRational]) -> BTreeSet<PiRational> {
    xs.iter().copied().collect()
}

/// Integer multiple of `π/(2n)`, checked by cross-multiplication.
fn clean_oracle(a: PiRational, n: i64) -> bool {
    (a.num() * 2 * n) % a.den() == 0
}

#[test]
fn polygons_close_and_are_simple() {
    for b in [1, 4] {
        let p = built(b);
        for poly in [&p.wheel, &p.shuriken, &p.staple] {
            assert_eq!(poly.turn_sum(), PiRational::TWO_PI, "{} b={b}", poly.name);
            assert!(poly.is_simple(), "{} b={b}", poly.name);
            let interior: PiRational = poly.interior_angles().into_iter().sum();
            assert_eq!(interior, PiRational::from_int(poly.len() as i64 - 2), "{} b={b}", poly.name);
        }
        let n = p.meta.n;
        assert_eq!(p.wheel.len(), 4 * n * (1 + 6 * (b as usize + 4)));
        assert_eq!(p.staple.len(), 5);
    }
}

#[test]
fn angle_inventories_match_the_table() {
    // α = 3π/8, β = 7π/16
    let (a, b_) = (pi(3, 8), pi(7, 16));
    assert_eq!((alpha(), beta()), (a, b_));
    let n = 5;
    let corner = pi(2 * n - 1, 2 * n);
    let tip = pi(1, n);
    for b in [1, 4] {
        let p = built(b);
        let staple = angle_inventory(&p.staple).unwrap();
        assert_eq!(staple.convex_classes(), classes(&[b_]));
        assert_eq!(staple.defect_classes(), classes(&[a.scale(2)]));

        let shuriken = angle_inventory(&p.shuriken).unwrap();
        assert_eq!(shuriken.convex_classes(), classes(&[a, tip]), "b={b}");
        assert_eq!(shuriken.defect_classes(), classes(&[b_, b_.scale(2), corner]), "b={b}");
        assert_eq!(shuriken.convex[&tip], 4);
        assert_eq!(shuriken.reflex[&corner], 4 * (n as usize - 1) - 4);

        let wheel = angle_inventory(&p.wheel).unwrap();
        assert_eq!(wheel.convex_classes(), classes(&[a, b_, corner]), "b={b}");
        assert_eq!(wheel.defect_classes(), classes(&[a, b_]), "b={b}");
        assert_eq!(wheel.convex[&corner], 4 * n as usize);
    }
}

#[test]
fn clean_classes_per_polygon() {
    let p = built(1);
    for (poly, expected) in [(&p.staple, 0), (&p.shuriken, 2), (&p.wheel, 1)] {
        let inv = angle_inventory(poly).unwrap();
        let clean = inv.convex_classes().into_iter().chain(inv.defect_classes()).filter(|a| is_clean(*a, 5)).count();
        assert_eq!(clean, expected, "{}", poly.name);
    }
}

#[test]
fn negative_margin_is_refused_or_not_simple() {
    let s = set(&[[0, 0, 0, 0]]);
    match build_prototiles(&s, SideParams { margin: -1, gap: 4 }) {
        Err(PrototileError::LayoutOverflow(_)) => {}
        Ok(p) => assert!(!p.wheel.is_simple() || !p.shuriken.is_simple()),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn alpha_beta_sums_are_never_clean_for_odd_n() {
    let (a, b) = (alpha(), beta());
    for n in (5..=15).step_by(2) {
        for k in 1..=2 {
            for terms in [a, b].into_iter().combinations_with_replacement(k) {
                let s: PiRational = terms.into_iter().sum();
                assert!(!clean_oracle(s, n), "n={n} {s}");
                assert!(!is_clean(s, n), "n={n} {s}");
            }
        }
        assert!(is_clean(corner_angle(n), n) && is_clean(tip_angle(n), n));
        assert!(is_clean(PiRational::PI, n));
    }
}

#[test]
fn sums_of_up_to_three_fall_in_disjoint_intervals() {
    let iv = sum_intervals();
    assert_eq!(iv, [(pi(3, 8), pi(7, 16)), (pi(3, 4), pi(7, 8)), (pi(9, 8), pi(21, 16))]);
    for k in 1..=3 {
        let (lo, hi) = iv[k - 1];
        for terms in [alpha(), beta()].into_iter().combinations_with_replacement(k) {
            let s: PiRational = terms.into_iter().sum();
            assert!(lo <= s && s <= hi, "{k} terms: {s}");
        }
    }
    assert!(iv[1].1 < PiRational::PI && iv[2].0 > PiRational::PI);
    assert!(iv.windows(2).all(|w| w[0].1 < w[1].0));
}

/// Independent match rule: equal values, opposite signs.
fn glue_fit(a: &Glue, b: &Glue) -> bool {
    a.value == b.value
        && matches!((a.sign, b.sign), (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive))
}

#[test]
fn side_words_fit_exactly_when_glues_do() {
    for b in [1, 4] {
        let p = built(b);
        let m = &p.meta;
        assert_eq!(m.side_words.len(), 4 * m.n);
        for (i, j) in (0..4 * m.n).cartesian_product(0..4 * m.n) {
            let fit = words_match(&m.side_words[i], &m.side_words[j]).unwrap();
            assert_eq!(fit, glue_fit(&m.side_glues[i], &m.side_glues[j]), "b={b} sides {i} {j}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clean_predicate_agrees_with_oracle(num in -200i64..200, den in 1i64..200, half_n in 2i64..8) {
        let n = 2 * half_n + 1;
        let a = PiRational::new(num, den);
        prop_assert_eq!(is_clean(a, n), clean_oracle(a, n));
    }
}
