//! Acceptance suite: one line per criterion with its measured time and limit.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use tritile::assembler::{assemble, wheel_orientation, WangBlock};
use tritile::carpet::{gluing_from_edge_pairs, layout_anchored, validate, validate_detailed, CarpetGluing, InvalidReason, TileRef};
use tritile::exactnum::{CycloNum, PiRational, Point};
use tritile::prototiles::{
    alpha, angle_inventory, beta, build_prototiles, build_shuriken, build_staple, fill_options, is_clean, sum_intervals,
    FillOption, SideParams, TurtlePolygon, FLAT_LABEL,
};
use tritile::search::{grow_neat_carpets, SearchOutcome};
use tritile::wang::{
    decode_glue, encode_glue, make_signed_free, solve_torus, words_match, Glue, SetKind, Sign, TorusOutcome, WangTile,
    WangTileSet,
};

fn pi(num: i64, den: i64) -> PiRational {
    PiRational::new(num, den)
}

fn odd_ns() -> impl Iterator<Item = i64> {
    (5..=15).step_by(2)
}

fn classes(xs: &[PiRational]) -> BTreeSet<PiRational> {
    xs.iter().copied().collect()
}

fn ac1() {
    // α = 3π/8, β = 7π/16, corner π(1 - 1/10), tip π/5
    let (a, b_) = (pi(3, 8), pi(7, 16));
    let (corner, tip) = (pi(9, 10), pi(1, 5));
    let sets: [&[[u32; 4]]; 2] = [&[[0, 0, 0, 0]], &[[0, 0, 1, 1], [2, 2, 3, 3], [4, 4, 5, 5]]];
    for (tiles, b) in sets.into_iter().zip([1, 4]) {
        let u = WangTileSet::new(SetKind::Unsigned, tiles.iter().map(|t| WangTile::unsigned(t[0], t[1], t[2], t[3])).collect())
            .unwrap();
        let p = build_prototiles(&make_signed_free(&u).unwrap(), SideParams::default()).unwrap();
        assert_eq!((p.meta.n, p.meta.b), (5, b));
        for poly in [&p.wheel, &p.shuriken, &p.staple] {
            assert_eq!(poly.turn_sum(), PiRational::TWO_PI, "{}", poly.name);
            let mut end = poly.start().z().clone();
            for i in 0..poly.len() {
                end = &end + &poly.edge_len(i).rotate(poly.heading(i)).unwrap();
            }
            assert_eq!(&end, poly.start().z(), "{} does not return to its start", poly.name);
            assert!(poly.is_simple(), "{}", poly.name);
        }
        let inv = |poly: &TurtlePolygon| {
            let i = angle_inventory(poly).unwrap();
            (i.convex_classes(), i.defect_classes())
        };
        assert_eq!(inv(&p.staple), (classes(&[b_]), classes(&[a.scale(2)])));
        assert_eq!(inv(&p.shuriken), (classes(&[a, tip]), classes(&[b_, b_.scale(2), corner])));
        assert_eq!(inv(&p.wheel), (classes(&[a, b_, corner]), classes(&[a, b_])));
    }
}

fn ac2() {
    let (a, b) = (alpha(), beta());
    let small = [a, b, a.scale(2), b.scale(2), a + b];
    for n in odd_ns() {
        for s in small {
            // i·π/(2n) for no integer i
            assert!((s.num() * 2 * n) % s.den() != 0, "n={n} {s}");
            assert!(!is_clean(s, n), "n={n} {s}");
        }
    }
    let iv = sum_intervals();
    for k in 1..=3 {
        let (lo, hi) = iv[k - 1];
        for terms in [a, b].into_iter().combinations_with_replacement(k) {
            let s: PiRational = terms.into_iter().sum();
            assert!(lo <= s && s <= hi, "{k} terms: {s}");
        }
    }
    assert!(iv[0].1 < iv[1].0 && iv[1].1 < PiRational::PI && PiRational::PI < iv[2].0);
}

fn labeled(items: &[(&str, PiRational)]) -> Vec<(String, PiRational)> {
    items.iter().map(|(l, a)| (l.to_string(), *a)).collect()
}

fn option(items: &[(&str, usize)]) -> FillOption {
    items.iter().map(|(l, k)| (l.to_string(), *k)).collect()
}

fn ac3() {
    let staple = angle_inventory(&build_staple()).unwrap();
    let staple_angles: Vec<(String, PiRational)> =
        staple.convex.keys().enumerate().map(|(i, a)| (format!("staple{i}"), *a)).collect();
    assert!(fill_options(alpha().scale(2), &staple_angles, false).is_empty());

    for n in odd_ns() {
        let corner = pi(2 * n - 1, 2 * n);
        let tip = pi(1, n);
        let convex = labeled(&[("alpha", alpha()), ("beta", beta()), ("tip", tip)]);
        assert!(fill_options(corner, &convex, false).is_empty(), "n={n}");

        let two = PiRational::TWO_PI;
        let everything = labeled(&[
            ("alpha", alpha()),
            ("beta", beta()),
            ("tip", tip),
            ("corner", corner),
            ("reflex-alpha", two - alpha()),
            ("reflex-beta", two - beta()),
            ("reflex-2alpha", two - alpha().scale(2)),
            ("reflex-2beta", two - beta().scale(2)),
            ("anticorner", two - corner),
        ]);
        let got: BTreeSet<FillOption> = fill_options(pi(2 * n + 1, 2 * n), &everything, true).into_iter().collect();
        let want = BTreeSet::from([option(&[("anticorner", 1)]), option(&[("corner", 1), ("tip", 1)])]);
        assert_eq!(got, want, "n={n}");
        assert!(got.iter().all(|o| !o.contains_key(FLAT_LABEL)));
    }
}

/// Equal values and opposite signs.
fn signed_fit(a: &Glue, b: &Glue) -> bool {
    a.value == b.value && matches!((a.sign, b.sign), (Sign::Positive, Sign::Negative) | (Sign::Negative, Sign::Positive))
}

fn ac4() {
    for b in 1..=8u32 {
        let words: Vec<(Glue, _)> = (0..1u32 << b)
            .cartesian_product([Sign::Positive, Sign::Negative])
            .map(|(v, s)| (Glue { sign: s, value: v }, encode_glue(v, s, b).unwrap()))
            .collect();
        for (g, w) in &words {
            assert_eq!(decode_glue(w), Some((g.value, g.sign)));
            if g.sign == Sign::Positive {
                assert_eq!(&w.reflected().bits()[..2], &[false, true]);
            }
        }
        for ((g1, w1), (g2, w2)) in words.iter().cartesian_product(&words) {
            assert_eq!(words_match(w1, w2).unwrap(), signed_fit(g1, g2), "b={b} {g1} {g2}");
            assert!(!words_match(&w1.reflected(), w2).unwrap(), "b={b} {g1} {g2}");
        }
    }
}

/// Wrapped adjacency check written independently of the library.
fn torus_ok(tiles: &[WangTile], grid: &[Vec<usize>]) -> bool {
    let fit = |a: &Glue, b: &Glue| match (a.sign, b.sign) {
        (Sign::Unsigned, Sign::Unsigned) => a.value == b.value,
        _ => signed_fit(a, b),
    };
    let (k2, k1) = (grid.len(), grid[0].len());
    (0..k2).cartesian_product(0..k1).all(|(r, c)| {
        let t = &tiles[grid[r][c]];
        fit(&t.e, &tiles[grid[r][(c + 1) % k1]].w) && fit(&t.s, &tiles[grid[(r + 1) % k2][c]].n)
    })
}

fn torus_exists(tiles: &[WangTile], k1: usize, k2: usize) -> bool {
    (0..k1 * k2).map(|_| 0..tiles.len()).multi_cartesian_product().any(|cells| {
        let grid: Vec<Vec<usize>> = cells.chunks(k1).map(<[usize]>::to_vec).collect();
        torus_ok(tiles, &grid)
    })
}

fn ac5() {
    let unsigned =
        WangTileSet::new(SetKind::Unsigned, vec![WangTile::unsigned(0, 0, 0, 1), WangTile::unsigned(0, 1, 0, 0)]).unwrap();
    let signed = make_signed_free(&unsigned).unwrap();
    let witness = match solve_torus(&signed, 2, 2, 1_000_000).unwrap() {
        TorusOutcome::Solved(t) => t,
        TorusOutcome::Unsatisfiable => panic!("no 2x2 torus tiling"),
    };
    assert!(torus_exists(&signed.tiles, 2, 2) && torus_ok(&signed.tiles, &witness.grid));
    assert!(torus_exists(&unsigned.tiles, 2, 2));

    let p = build_prototiles(&signed, SideParams::default()).unwrap();
    assert_eq!(p.meta.n, 5);
    assert_eq!(p.meta.b, tritile::wang::bits_for(signed.glue_count()));
    let block = WangBlock::new(&p.tiles, witness.grid.clone()).unwrap();
    let g = assemble(&block, &p).unwrap();
    assert!(validate(&g).is_valid());
    let (topo, layout) = validate_detailed(&g).unwrap();
    let interior = (0..topo.class_count()).filter(|&c| topo.interior[c]).collect_vec();
    assert!(!interior.is_empty());
    assert!(interior.iter().all(|&c| topo.angle_sums[c] == PiRational::TWO_PI));
    let w = p.meta.width.promote(layout.order).unwrap();
    let base = &layout.placements[0].translation;
    for (r, c) in (0..2usize).cartesian_product(0..2usize) {
        let pl = &layout.placements[2 * r + c];
        let offset = &w.scale_int(c as i64) - &w.scale_int(r as i64).mul_i();
        assert_eq!(&(&pl.translation - base), &offset, "wheel ({r}, {c})");
        assert_eq!(pl.rotation, wheel_orientation(block.grid[r][c], p.meta.n));
    }
}

/// Isosceles triangle with unit legs and the given apex angle at vertex 0.
fn triangle(apex: PiRational, order: u32) -> TurtlePolygon {
    let half = apex.div_int(2);
    let base = CycloNum::sin_of(half, order).unwrap().scale_int(2);
    let edges = vec![
        (CycloNum::one(order), PiRational::ZERO),
        (base, PiRational::HALF_PI + half),
        (CycloNum::one(order), (PiRational::PI + apex).normalized()),
    ];
    TurtlePolygon::from_edges("triangle", Point::origin(order), edges).unwrap()
}

fn fan(apex: PiRational, order: u32) -> CarpetGluing {
    let pairs = [((0, 2), (1, 0)), ((1, 2), (2, 0)), ((2, 2), (0, 0))];
    let tiles = vec![TileRef { prototile: 0, reflected: false }; 3];
    gluing_from_edge_pairs(&[triangle(apex, order)], &tiles, &pairs, 0).unwrap()
}

fn ac6() {
    assert!(validate(&fan(pi(2, 3), 12)).is_valid());
    match validate(&fan(pi(119, 300), 1200)).reason {
        Some(InvalidReason::VertexSum { sum, .. }) => assert_eq!(sum, pi(357, 300)),
        other => panic!("expected a vertex-sum diagnostic, got {other:?}"),
    }
}

fn rational_above(x: f64) -> CycloNum {
    let k = (x * 1000.0).floor() as i64 + 1;
    CycloNum::from_rational(4, &BigRational::new(BigInt::from(k), BigInt::from(1000)))
}

fn dist(a: &Point, b: &Point) -> f64 {
    let ((ax, ay), (bx, by)) = (a.z().to_f64(), b.z().to_f64());
    (ax - bx).hypot(ay - by)
}

fn ac7() {
    let staple = build_staple();
    let v = staple.vertices();
    let diameter = v.iter().cartesian_product(v).map(|(a, b)| dist(a, b)).fold(0.0, f64::max);
    let report = grow_neat_carpets(std::slice::from_ref(&staple), 6, &rational_above(diameter), 100_000);
    assert_eq!(report.outcome, SearchOutcome::NoneWithin(6));

    let shuriken = build_shuriken(5, 1, SideParams::default()).unwrap();
    let anticorner = PiRational::TWO_PI - pi(9, 10);
    let centroid = Point::new(shuriken.centroid().unwrap());
    let nearest = (0..shuriken.len())
        .filter(|&i| shuriken.interior_angle(i) == anticorner)
        .map(|i| dist(shuriken.vertex(i), &centroid))
        .fold(f64::INFINITY, f64::min);
    let report = grow_neat_carpets(&[staple, shuriken], 4, &rational_above(nearest), 10_000);
    assert_eq!(report.outcome, SearchOutcome::NoneWithin(4));

    let one = CycloNum::one(4);
    let square =
        TurtlePolygon::from_edges("square", Point::origin(4), (0..4).map(|k| (one.clone(), pi(k, 2))).collect()).unwrap();
    let r = CycloNum::from_rational(4, &BigRational::new(BigInt::from(6), BigInt::from(5)));
    let report = grow_neat_carpets(&[square], 9, &r, 100_000);
    let g = report.witness().expect("unit square witness");
    assert!(validate(g).is_valid());
    assert!(tritile::carpet::is_neat_within(g, &layout_anchored(g).unwrap(), &r));
}

fn ac8() {
    let tiles: Vec<WangTile> =
        (0..4).map(|_| 0..2u32).multi_cartesian_product().map(|g| WangTile::unsigned(g[0], g[1], g[2], g[3])).collect();
    let sets = tiles
        .iter()
        .map(|t| vec![*t])
        .chain(tiles.iter().combinations_with_replacement(2).map(|p| vec![*p[0], *p[1]]))
        .map(|ts| WangTileSet::new(SetKind::Unsigned, ts).unwrap());
    let mut checked = 0;
    for set in sets {
        let signed = make_signed_free(&set).unwrap();
        for s in [&set, &signed] {
            for (k1, k2) in (1..=2).cartesian_product(1..=2) {
                let expected = torus_exists(&s.tiles, k1, k2);
                match solve_torus(s, k1, k2, 1_000_000).unwrap() {
                    TorusOutcome::Solved(t) => assert!(expected && torus_ok(&s.tiles, &t.grid), "{s:?} {k1}x{k2}"),
                    TorusOutcome::Unsatisfiable => assert!(!expected, "{s:?} {k1}x{k2}"),
                }
                checked += 1;
            }
        }
    }
    assert_eq!(checked, (16 + 136) * 2 * 4);
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn(), u64); 8] = [
        ("AC1", "prototile closure, simplicity and angle table", ac1, 60),
        ("AC2", "clean angles and sum intervals for odd n", ac2, 1),
        ("AC3", "angle filling case analyses", ac3, 5),
        ("AC4", "glue word codec", ac4, 10),
        ("AC5", "2x2 block end to end", ac5, 300),
        ("AC6", "triangle fan vertex sums", ac6, 1),
        ("AC7", "search controls", ac7, 600),
        ("AC8", "torus solver against enumeration", ac8, 120),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    panic::set_hook(Box::new(|info| eprintln!("    {info}")));
    let mut failed = 0;
    for (id, what, run, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| id.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run));
        let took = start.elapsed();
        let slow = took > Duration::from_secs(limit);
        let verdict = match (&outcome, slow) {
            (Ok(()), false) => "PASS",
            _ => "FAIL",
        };
        let note = if outcome.is_ok() && slow { " (over time limit)" } else { "" };
        println!("{id} {verdict} {what}: {:.2}s, limit {limit}s{note}", took.as_secs_f64());
        if verdict == "FAIL" {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
