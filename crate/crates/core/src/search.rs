//! Bounded enumeration of seamless carpets, looking for one that is neat within a radius
//! of the anchor's centroid.

use std::collections::HashSet;
use std::f64::consts::PI;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::carpet::{
    check_patch_nonoverlap, gluing_from_placements, place_polygon, polygons_overlap, is_neat_within, validate_detailed, CarpetGluing, Layout,
    Overlap, Placement, Shapes, TileRef, Topology,
};
use crate::exactnum::{CycloNum, Iv, PiRational, Point};
use crate::prototiles::{AngleSums, TurtlePolygon};

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found(CarpetGluing),
    NoneWithin(usize),
    BudgetExceeded,
}

/// Run report. `nodes_explored` counts every candidate carpet that was built and checked.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub nodes_explored: u64,
    pub max_tiles: usize,
    /// Area bound on the number of tiles meeting the disk, rounded up.
    pub tile_bound: u64,
}

impl SearchReport {
    pub fn is_found(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Found(_))
    }

    pub fn witness(&self) -> Option<&CarpetGluing> {
        match &self.outcome {
            SearchOutcome::Found(g) => Some(g),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self.outcome {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NoneWithin(_) => "none-within",
            SearchOutcome::BudgetExceeded => "budget-exceeded",
        }
    }
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct ReportJson<'a> {
    status: &'static str,
    nodes_explored: u64,
    max_tiles: usize,
    tile_bound: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<&'a CarpetGluing>,
}

impl Serialize for SearchReport {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ReportJson {
            status: self.status(),
            nodes_explored: self.nodes_explored,
            max_tiles: self.max_tiles,
            tile_bound: self.tile_bound,
            witness: self.witness(),
        }
        .serialize(s)
    }
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    pub max_tiles: usize,
    pub radius: CycloNum,
    /// Node budget for each anchor prototile.
    pub budget: u64,
    /// Also try mirror images of the prototiles for the attached tiles.
    pub reflections: bool,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl SearchOptions {
    pub fn new(max_tiles: usize, radius: CycloNum, budget: u64) -> SearchOptions {
        SearchOptions { max_tiles, radius, budget, reflections: true, threads: None }
    }
}

pub fn grow_neat_carpets(prototiles: &[TurtlePolygon], max_tiles: usize, r: &CycloNum, budget: u64) -> SearchReport {
    grow_neat_carpets_with(prototiles, &SearchOptions::new(max_tiles, r.clone(), budget))
}

/// Depth-first growth from each prototile as anchor in turn. Branches are independent
/// and merged by anchor index, so the result does not depend on the thread count.
pub fn grow_neat_carpets_with(prototiles: &[TurtlePolygon], opts: &SearchOptions) -> SearchReport {
    let tile_bound = tile_bound(prototiles, &opts.radius);
    let run = || -> Vec<Branch> { (0..prototiles.len()).into_par_iter().map(|a| search_anchor(prototiles, a, opts)).collect() };
    let branches = match opts.threads.and_then(|k| rayon::ThreadPoolBuilder::new().num_threads(k).build().ok()) {
        Some(pool) => pool.install(run),
        None => run(),
    };
    let mut nodes = 0;
    let mut exceeded = false;
    for b in branches {
        nodes += b.nodes;
        match b.result {
            BranchResult::Found(g) => {
                return SearchReport { outcome: SearchOutcome::Found(g), nodes_explored: nodes, max_tiles: opts.max_tiles, tile_bound }
            }
            BranchResult::Budget => exceeded = true,
            BranchResult::Exhausted => {}
        }
    }
    let outcome = if exceeded { SearchOutcome::BudgetExceeded } else { SearchOutcome::NoneWithin(opts.max_tiles) };
    SearchReport { outcome, nodes_explored: nodes, max_tiles: opts.max_tiles, tile_bound }
}

/// `π(r + 2ρ)² / A_min`, with `ρ` the largest centroid-to-vertex distance.
pub fn tile_bound(prototiles: &[TurtlePolygon], r: &CycloNum) -> u64 {
    let mut rho: f64 = 0.0;
    let mut area = f64::INFINITY;
    for p in prototiles {
        let Ok(c) = p.centroid() else { continue };
        let c = c.to_f64();
        for v in p.vertices() {
            let (x, y) = v.z().to_f64();
            rho = rho.max((x - c.0).hypot(y - c.1));
        }
        area = area.min(p.double_area().to_f64().0 / 2.0);
    }
    if !(area > 0.0) {
        return 0;
    }
    let r = r.to_f64().0.abs();
    let n = PI * (r + 2.0 * rho).powi(2) / area;
    if n >= u64::MAX as f64 {
        u64::MAX
    } else {
        n.ceil() as u64
    }
}

enum BranchResult {
    Found(CarpetGluing),
    Exhausted,
    Budget,
}

struct Branch {
    result: BranchResult,
    nodes: u64,
}

struct Budget;

type TileKey = (usize, Vec<(Vec<BigInt>, BigInt)>);

struct Ctx<'a> {
    prototiles: &'a [TurtlePolygon],
    shapes: Shapes,
    sums: AngleSums,
    opts: &'a SearchOptions,
    nodes: u64,
    seen: HashSet<Vec<TileKey>>,
}

/// A placed tile with its canonical key.
type Entry = (TileRef, Placement, TileKey);

fn tile_key(prototile: usize, placed: &[Point]) -> TileKey {
    let mut pts: Vec<(Vec<BigInt>, BigInt)> =
        placed.iter().map(|p| (p.z().numerators().to_vec(), p.z().denominator().clone())).collect();
    pts.sort();
    (prototile, pts)
}

fn search_anchor(prototiles: &[TurtlePolygon], anchor: usize, opts: &SearchOptions) -> Branch {
    let all: Vec<usize> = (0..prototiles.len()).collect();
    let reflected = if opts.reflections { all.clone() } else { Vec::new() };
    let Ok(shapes) = Shapes::new(prototiles, reflected) else {
        return Branch { result: BranchResult::Exhausted, nodes: 0 };
    };
    let angles: Vec<PiRational> = prototiles.iter().flat_map(TurtlePolygon::interior_angles).collect();
    let mut ctx = Ctx { prototiles, shapes, sums: AngleSums::new(&angles, true), opts, nodes: 0, seen: HashSet::new() };
    let Ok(centroid) = ctx.shapes.get(anchor, false).centroid() else {
        return Branch { result: BranchResult::Exhausted, nodes: 0 };
    };
    let placement = Placement { rotation: PiRational::ZERO, translation: -&centroid, reflected: false };
    let Ok(placed) = place_polygon(ctx.shapes.get(anchor, false), &placement) else {
        return Branch { result: BranchResult::Exhausted, nodes: 0 };
    };
    let start = vec![(TileRef { prototile: anchor, reflected: false }, placement, tile_key(anchor, &placed))];
    let result = match ctx.visit(start) {
        Ok(Some(g)) => BranchResult::Found(g),
        Ok(None) => BranchResult::Exhausted,
        Err(Budget) => BranchResult::Budget,
    };
    Branch { result, nodes: ctx.nodes }
}

/// Where a new tile can go: a boundary edge at the chosen vertex, leaving it or arriving.
struct Site {
    point: CycloNum,
    heading: PiRational,
    leaving: bool,
}

impl Ctx<'_> {
    fn visit(&mut self, state: Vec<Entry>) -> Result<Option<CarpetGluing>, Budget> {
        if self.nodes >= self.opts.budget {
            return Err(Budget);
        }
        self.nodes += 1;
        let tiles: Vec<TileRef> = state.iter().map(|e| e.0).collect();
        let placements: Vec<Placement> = state.iter().map(|e| e.1.clone()).collect();
        let Ok(g) = gluing_from_placements(self.prototiles, &tiles, &placements, 0) else { return Ok(None) };
        let Ok((topo, layout)) = validate_detailed(&g) else { return Ok(None) };
        if !check_patch_nonoverlap(&g, &layout) {
            return Ok(None);
        }
        if is_neat_within(&g, &layout, &self.opts.radius) {
            return Ok(Some(g));
        }
        if state.len() >= self.opts.max_tiles {
            return Ok(None);
        }
        let Some(class) = self.pick_class(&topo, &layout) else { return Ok(None) };
        let room = PiRational::TWO_PI - topo.angle_sums[class];
        let mut candidates = Vec::new();
        for site in sites(&g, &self.shapes, &topo, &layout, class) {
            for prototile in 0..self.prototiles.len() {
                for reflected in [false, true] {
                    if reflected && !self.opts.reflections {
                        continue;
                    }
                    let shape = self.shapes.get(prototile, reflected);
                    candidates.extend(
                        (0..shape.len())
                            .filter(|&v| shape.interior_angle(v) <= room)
                            .filter_map(|v| attach(shape, reflected, v, &site))
                            .map(|p| (TileRef { prototile, reflected }, p)),
                    );
                }
            }
        }
        for (tile, placement) in candidates {
            let shape = self.shapes.get(tile.prototile, tile.reflected);
            let Ok(placed) = place_polygon(shape, &placement) else { continue };
            let mut next = state.clone();
            next.push((tile, placement, tile_key(tile.prototile, &placed)));
            let mut key: Vec<TileKey> = next.iter().map(|e| e.2.clone()).collect();
            key.sort();
            if !self.seen.insert(key) {
                continue;
            }
            if layout.tile_points.iter().any(|pts| polygons_overlap(pts, &placed)) {
                continue;
            }
            if let Some(g) = self.visit(next)? {
                return Ok(Some(g));
            }
        }
        Ok(None)
    }

    /// First non-neat class within the radius, or `None` if some class there can never
    /// become neat.
    fn pick_class(&self, topo: &Topology, layout: &Layout) -> Option<usize> {
        let r = &self.opts.radius;
        let r2 = (r * r).promote(layout.order).ok()?;
        let r_hi = r.to_f64().0.abs() * (1.0 + 1e-9) + 1e-9;
        let mut first = None;
        for (c, p) in layout.class_points.iter().enumerate() {
            if !may_be_within(p, r_hi) || (&r2 - &p.z().norm_sq()).sign_real() <= 0 {
                continue;
            }
            let sum = topo.angle_sums[c];
            if topo.interior[c] {
                if sum != PiRational::TWO_PI {
                    return None;
                }
                continue;
            }
            if sum == PiRational::PI {
                continue;
            }
            let to_full = PiRational::TWO_PI - sum;
            let to_flat = PiRational::PI - sum;
            if !self.sums.contains(to_full) && !(to_flat.is_positive() && self.sums.contains(to_flat)) {
                return None;
            }
            first.get_or_insert(c);
        }
        first
    }

}

fn may_be_within(p: &Point, r_hi: f64) -> bool {
    let dist_lo = |i: Iv| if i.lo <= 0.0 && i.hi >= 0.0 { 0.0 } else { i.lo.abs().min(i.hi.abs()) };
    let (x, y) = p.enclosure();
    dist_lo(x) <= r_hi && dist_lo(y) <= r_hi
}

/// Boundary edges starting or ending at `class`, at corners and at junctions.
fn sites(g: &CarpetGluing, shapes: &Shapes, topo: &Topology, layout: &Layout, class: usize) -> Vec<Site> {
    let point = layout.class_points[class].z().clone();
    let mut out = Vec::new();
    for (t, row) in g.edge_overlaps.iter().enumerate() {
        let shape = shapes.get(g.tiles[t].prototile, g.tiles[t].reflected);
        let k = shape.len();
        for (e, seq) in row.iter().enumerate() {
            let js = &topo.junctions[t][e];
            // positions along the edge: start, junctions, end
            let at = |i: usize| match i {
                0 => topo.class_of[t][e],
                i if i <= js.len() => js[i - 1],
                _ => topo.class_of[t][(e + 1) % k],
            };
            let heading = (layout.placements[t].rotation + shape.heading(e)).normalized();
            for (i, piece) in seq.iter().enumerate() {
                if *piece != Overlap::Boundary {
                    continue;
                }
                if at(i) == class {
                    out.push(Site { point: point.clone(), heading, leaving: true });
                }
                if at(i + 1) == class {
                    out.push(Site { point: point.clone(), heading, leaving: false });
                }
            }
        }
    }
    out
}

/// Places vertex `v` of `shape` at the site with one of its edges running back along the
/// site's boundary edge.
fn attach(shape: &TurtlePolygon, shape_reflected: bool, v: usize, site: &Site) -> Option<Placement> {
    let k = shape.len();
    let own = if site.leaving { shape.heading((v + k - 1) % k) } else { shape.heading(v) };
    let rotation = (site.heading + PiRational::PI - own).normalized();
    let corner = shape.vertex(v).z().rotate(rotation).ok()?;
    Some(Placement { rotation, translation: &site.point - &corner, reflected: shape_reflected })
}
