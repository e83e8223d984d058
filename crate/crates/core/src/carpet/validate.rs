use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use super::layout::{layout_anchored, Layout, LayoutError};
use super::topology::{analyze_topology, is_seamless, Topology, TopologyDefect};
use super::CarpetGluing;
use crate::exactnum::{dot_sign, on_segment, orient, point_in_polygon, segments_cross_properly, CycloNum, Iv, PiRational, Point};

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "code", rename_all = "kebab-case")]
pub enum InvalidReason {
    #[error("malformed gluing: {message}")]
    Malformed { message: String },
    #[error("not a topological disk: {defect}")]
    NotDisk { defect: TopologyDefect },
    #[error("carpet has a seam")]
    NotSeamless,
    #[error("interior vertex class {class} has angle sum {sum}")]
    VertexSum { class: usize, sum: PiRational },
    #[error("layout failed: {error}")]
    Layout { error: LayoutError },
    #[error("junction {junction} of tile {tile} edge {edge} is off the edge or out of order")]
    EdgePath { tile: usize, edge: usize, junction: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Valid,
    Invalid,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<InvalidReason>,
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        self.status == Status::Valid
    }
}

/// Runs the full check sequence, returning the analysis and layout of a valid carpet.
/// Checks run in this order: structure, disk topology, seams, interior angle sums,
/// layout, straightness of edges through junctions.
pub fn validate_detailed(g: &CarpetGluing) -> Result<(Topology, Layout), InvalidReason> {
    let topo = analyze_topology(g).map_err(|defect| match defect {
        TopologyDefect::Structure { message } => InvalidReason::Malformed { message },
        defect => InvalidReason::NotDisk { defect },
    })?;
    if let Some(defect) = topo.disk_defect() {
        return Err(InvalidReason::NotDisk { defect });
    }
    if !is_seamless(g) {
        return Err(InvalidReason::NotSeamless);
    }
    for c in 0..topo.class_count() {
        if topo.interior[c] && topo.angle_sums[c] != PiRational::TWO_PI {
            return Err(InvalidReason::VertexSum { class: c, sum: topo.angle_sums[c] });
        }
    }
    let layout = layout_anchored(g).map_err(|error| InvalidReason::Layout { error })?;
    check_edge_paths(&topo, &layout)?;
    Ok((topo, layout))
}

pub fn validate(g: &CarpetGluing) -> Verdict {
    match validate_detailed(g) {
        Ok(_) => Verdict { status: Status::Valid, reason: None },
        Err(r) => Verdict { status: Status::Invalid, reason: Some(r) },
    }
}

/// Junctions along every edge must lie strictly inside it, in order. Endpoint agreement
/// of glued pieces already follows from the class bookkeeping.
fn check_edge_paths(topo: &Topology, layout: &Layout) -> Result<(), InvalidReason> {
    for (t, row) in topo.junctions.iter().enumerate() {
        let pts = &layout.tile_points[t];
        let k = pts.len();
        for (e, js) in row.iter().enumerate() {
            if js.is_empty() {
                continue;
            }
            let a = &pts[e];
            let b = &pts[(e + 1) % k];
            let mut prev = a;
            for (j, &c) in js.iter().chain(std::iter::once(&usize::MAX)).enumerate() {
                let p = if c == usize::MAX { b } else { &layout.class_points[c] };
                if orient(a, b, p) != 0 || dot_sign(prev, p, a, b) <= 0 {
                    return Err(InvalidReason::EdgePath { tile: t, edge: e, junction: j.min(js.len() - 1) });
                }
                prev = p;
            }
        }
    }
    Ok(())
}

/// Whether every vertex class strictly closer than `r` to the origin is neat.
pub fn is_neat_within(g: &CarpetGluing, layout: &Layout, r: &CycloNum) -> bool {
    let Ok(topo) = analyze_topology(g) else { return false };
    let order = layout.order.lcm(&r.order());
    let Ok(r2) = (r * r).promote(order) else { return false };
    let r_hi = r.to_f64().0.abs() * (1.0 + 1e-9) + 1e-9;
    let dist_lo = |i: Iv| if i.lo <= 0.0 && i.hi >= 0.0 { 0.0 } else { i.lo.abs().min(i.hi.abs()) };
    for (c, p) in layout.class_points.iter().enumerate() {
        let (x, y) = p.enclosure();
        if dist_lo(x) > r_hi || dist_lo(y) > r_hi {
            continue;
        }
        let Ok(d) = p.z().norm_sq().promote(order) else { return false };
        if (&r2 - &d).sign_real() <= 0 {
            continue;
        }
        let sum = topo.angle_sums[c];
        let neat = if topo.interior[c] {
            sum == PiRational::TWO_PI
        } else {
            !topo.pinches.contains(&c) && sum == PiRational::PI
        };
        if !neat {
            return false;
        }
    }
    true
}

fn bbox(pts: &[Point]) -> (Iv, Iv) {
    pts.iter().map(Point::enclosure).reduce(|(ax, ay), (bx, by)| (ax.hull(bx), ay.hull(by))).unwrap_or((Iv::point(0.0), Iv::point(0.0)))
}

fn in_box(p: &Point, b: &(Iv, Iv)) -> bool {
    let (x, y) = p.enclosure();
    x.overlaps(&b.0) && y.overlaps(&b.1)
}

/// Exact pairwise disjointness of tile interiors.
pub fn check_patch_nonoverlap(_g: &CarpetGluing, layout: &Layout) -> bool {
    let polys = &layout.tile_points;
    let boxes: Vec<(Iv, Iv)> = polys.iter().map(|p| bbox(p)).collect();
    for a in 0..polys.len() {
        for b in a + 1..polys.len() {
            if !(boxes[a].0.overlaps(&boxes[b].0) && boxes[a].1.overlaps(&boxes[b].1)) {
                continue;
            }
            if interiors_meet(&polys[a], &boxes[a], &polys[b], &boxes[b]) {
                return false;
            }
        }
    }
    true
}

/// Whether the interiors of two placed polygons intersect.
pub(crate) fn polygons_overlap(pa: &[Point], pb: &[Point]) -> bool {
    let (ba, bb) = (bbox(pa), bbox(pb));
    ba.0.overlaps(&bb.0) && ba.1.overlaps(&bb.1) && interiors_meet(pa, &ba, pb, &bb)
}

fn interiors_meet(pa: &[Point], ba: &(Iv, Iv), pb: &[Point], bb: &(Iv, Iv)) -> bool {
    let ea: Vec<(&Point, &Point)> = (0..pa.len()).map(|i| (&pa[i], &pa[(i + 1) % pa.len()])).collect();
    let eb: Vec<(&Point, &Point)> = (0..pb.len()).map(|i| (&pb[i], &pb[(i + 1) % pb.len()])).collect();
    let ea: Vec<_> = ea.into_iter().filter(|(u, v)| segment_in_box(u, v, bb)).collect();
    let eb: Vec<_> = eb.into_iter().filter(|(u, v)| segment_in_box(u, v, ba)).collect();
    for &(a0, a1) in &ea {
        for &(b0, b1) in &eb {
            if segments_cross_properly(a0, a1, b0, b1) {
                return true;
            }
            if same_direction_overlap(a0, a1, b0, b1) {
                return true;
            }
        }
    }
    if pa.iter().any(|p| in_box(p, bb) && point_in_polygon(p, pb) == 1)
        || pb.iter().any(|p| in_box(p, ba) && point_in_polygon(p, pa) == 1)
    {
        return true;
    }
    split_midpoints_inside(&ea, pb, bb) || split_midpoints_inside(&eb, pa, ba)
}

fn segment_in_box(u: &Point, v: &Point, b: &(Iv, Iv)) -> bool {
    let (ux, uy) = u.enclosure();
    let (vx, vy) = v.enclosure();
    ux.hull(vx).overlaps(&b.0) && uy.hull(vy).overlaps(&b.1)
}

fn same_direction_overlap(a0: &Point, a1: &Point, b0: &Point, b1: &Point) -> bool {
    orient(a0, a1, b0) == 0
        && orient(a0, a1, b1) == 0
        && dot_sign(a0, a1, b0, b1) > 0
        && dot_sign(b0, a1, a0, a1) > 0
        && dot_sign(a0, b1, a0, a1) > 0
}

/// Cuts each edge at the other polygon's vertices lying on it and tests whether any
/// piece runs through the other polygon's interior.
fn split_midpoints_inside(edges: &[(&Point, &Point)], poly: &[Point], pbox: &(Iv, Iv)) -> bool {
    for &(u, v) in edges {
        let ebox = (u.enclosure().0.hull(v.enclosure().0), u.enclosure().1.hull(v.enclosure().1));
        let mut cuts: Vec<&Point> = poly
            .iter()
            .filter(|p| *p != u && *p != v && in_box(p, &ebox) && on_segment(p, u, v))
            .collect();
        cuts.sort_by(|p, q| dot_sign(p, q, u, v).cmp(&0).reverse());
        cuts.dedup();
        let mut prev = u;
        for p in cuts.into_iter().chain(std::iter::once(v)) {
            let mid = Point::new((prev.z() + p.z()).div_int(2));
            if in_box(&mid, pbox) && point_in_polygon(&mid, poly) == 1 {
                return true;
            }
            prev = p;
        }
    }
    false
}
