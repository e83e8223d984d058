use serde::Serialize;
use thiserror::Error;

use super::shapes::Shapes;
use super::topology::check_structure;
use super::{CarpetGluing, Overlap};
use crate::exactnum::{CycloNum, PiRational, Point};

/// Rigid motion of one tile: reflect (if the tile is reflected), rotate about the
/// origin, then translate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Placement {
    pub rotation: PiRational,
    pub translation: CycloNum,
    pub reflected: bool,
}

#[derive(Debug, Clone)]
pub struct Layout {
    pub order: u32,
    pub placements: Vec<Placement>,
    /// Position of every vertex class.
    pub class_points: Vec<Point>,
    /// Placed vertices of every tile.
    pub tile_points: Vec<Vec<Point>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum LayoutError {
    #[error("tile {tile} vertex {vertex} disagrees with vertex class {class}")]
    Inconsistent { class: usize, tile: usize, vertex: usize },
    #[error("placement of tile {tile} is not determined")]
    Underdetermined { tile: usize },
    #[error("rotation of tile {tile} is not in the field")]
    Unrepresentable { tile: usize },
    #[error("malformed gluing: {message}")]
    Malformed { message: String },
}

/// Places the anchor with its centroid at the origin and rotation 0, then propagates
/// through shared vertices and glued edges.
pub fn layout_anchored(g: &CarpetGluing) -> Result<Layout, LayoutError> {
    let order: Vec<usize> = (0..g.tiles.len()).collect();
    layout_anchored_in_order(g, &order)
}

/// As [`layout_anchored`], visiting candidate tiles in the given priority order. The
/// result does not depend on the order for a consistent gluing.
pub fn layout_anchored_in_order(g: &CarpetGluing, priority: &[usize]) -> Result<Layout, LayoutError> {
    let malformed = |e: &dyn std::fmt::Display| LayoutError::Malformed { message: e.to_string() };
    let class_of = check_structure(g).map_err(|e| malformed(&e))?;
    let shapes = Shapes::for_gluing(g).map_err(|e| malformed(&e))?;
    let m = shapes.order();
    let nt = g.tiles.len();
    let shape = |t: usize| shapes.get(g.tiles[t].prototile, g.tiles[t].reflected);

    let mut placements: Vec<Option<Placement>> = vec![None; nt];
    let mut class_points: Vec<Option<Point>> = vec![None; g.vertex_classes.len()];
    let mut tile_points: Vec<Vec<Point>> = vec![Vec::new(); nt];

    let mut place = |t: usize,
                     rotation: PiRational,
                     translation: CycloNum,
                     placements: &mut Vec<Option<Placement>>,
                     class_points: &mut Vec<Option<Point>>|
     -> Result<(), LayoutError> {
        let s = shape(t);
        let mut pts = Vec::with_capacity(s.len());
        for (v, q) in s.vertices().iter().enumerate() {
            let p = Point::new(
                &q.z().rotate(rotation).map_err(|_| LayoutError::Unrepresentable { tile: t })? + &translation,
            );
            let c = class_of[t][v];
            match &class_points[c] {
                Some(known) if *known != p => return Err(LayoutError::Inconsistent { class: c, tile: t, vertex: v }),
                Some(_) => {}
                None => class_points[c] = Some(p.clone()),
            }
            pts.push(p);
        }
        tile_points[t] = pts;
        placements[t] = Some(Placement { rotation, translation, reflected: g.tiles[t].reflected });
        Ok(())
    };

    let a = g.anchor;
    let centroid = shape(a).centroid().map_err(|e| malformed(&e))?;
    place(a, PiRational::ZERO, -centroid, &mut placements, &mut class_points)?;

    loop {
        let mut progress = false;
        for &t in priority {
            if t >= nt || placements[t].is_some() {
                continue;
            }
            let s = shape(t);
            let known: Vec<usize> = (0..s.len()).filter(|&v| class_points[class_of[t][v]].is_some()).collect();
            let Some(&v0) = known.first() else { continue };
            let glued = (0..s.len()).find_map(|e| {
                g.edge_overlaps[t][e].iter().find_map(|o| match *o {
                    Overlap::Edge { tile: t2, edge: f } => placements[t2].as_ref().map(|p2| {
                        (p2.rotation + shape(t2).heading(f) + PiRational::PI - s.heading(e)).normalized()
                    }),
                    Overlap::Boundary => None,
                })
            });
            let rotation = match glued {
                Some(r) => r,
                None => match rotation_from_points(s.vertices(), &known, &class_of[t], &class_points, m) {
                    Some(r) => r,
                    None => continue,
                },
            };
            let x = class_points[class_of[t][v0]].as_ref().map(|p| p.z().clone()).unwrap_or_else(|| CycloNum::zero(m));
            let q = s.vertex(v0).z().rotate(rotation).map_err(|_| LayoutError::Unrepresentable { tile: t })?;
            place(t, rotation, &x - &q, &mut placements, &mut class_points)?;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    if let Some(t) = placements.iter().position(Option::is_none) {
        return Err(LayoutError::Underdetermined { tile: t });
    }
    Ok(Layout {
        order: m,
        placements: placements.into_iter().flatten().collect(),
        class_points: class_points.into_iter().map(|p| p.unwrap_or_else(|| Point::origin(m))).collect(),
        tile_points,
    })
}

/// Rotation taking two distinct known vertices of the shape onto their class points.
fn rotation_from_points(
    verts: &[Point],
    known: &[usize],
    class_of: &[usize],
    class_points: &[Option<Point>],
    m: u32,
) -> Option<PiRational> {
    let target = |v: usize| class_points[class_of[v]].as_ref().map(|p| p.z().clone());
    let v0 = known[0];
    let v1 = *known[1..].iter().find(|&&v| target(v) != target(v0))?;
    let dq = verts[v1].z() - verts[v0].z();
    let dx = target(v1)? - target(v0)?;
    let (qx, qy) = dq.to_f64();
    let (xx, xy) = dx.to_f64();
    let tol = 1e-6 * (1.0 + xx.hypot(xy));
    (0..m as i64).find_map(|k| {
        let (s, c) = (std::f64::consts::TAU * k as f64 / m as f64).sin_cos();
        let (rx, ry) = (qx * c - qy * s, qx * s + qy * c);
        if (rx - xx).abs() > tol || (ry - xy).abs() > tol {
            return None;
        }
        (dq.mul_zeta(k) == dx).then(|| PiRational::new(2 * k, m as i64))
    })
}
