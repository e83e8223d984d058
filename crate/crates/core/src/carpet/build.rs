use std::collections::HashMap;

use super::layout::Placement;
use super::shapes::Shapes;
use super::topology::Dsu;
use super::{CarpetError, CarpetGluing, Overlap, TileRef};
use crate::exactnum::{dot_sign, orient, CycloNum, Iv, Point};
use crate::prototiles::{PrototileError, TurtlePolygon};

/// Vertices of `shape` under `placement` (the shape is already mirrored if needed).
pub fn place_polygon(shape: &TurtlePolygon, placement: &Placement) -> Result<Vec<Point>, PrototileError> {
    let t = placement.translation.promote(shape.order())?;
    shape
        .vertices()
        .iter()
        .map(|q| Ok(Point::new(&q.z().rotate(placement.rotation)? + &t)))
        .collect()
}

/// Reads the combinatorial gluing off explicit placements: vertices that coincide share
/// a class, and antiparallel edges overlapping with positive length are glued.
pub fn gluing_from_placements(
    prototiles: &[TurtlePolygon],
    tiles: &[TileRef],
    placements: &[Placement],
    anchor: usize,
) -> Result<CarpetGluing, CarpetError> {
    if tiles.len() != placements.len() {
        return Err(CarpetError::LengthMismatch { tiles: tiles.len(), placements: placements.len() });
    }
    if let Some((tile, r)) = tiles.iter().enumerate().find(|(_, r)| r.prototile >= prototiles.len()) {
        return Err(CarpetError::UnknownPrototile { tile, prototile: r.prototile });
    }
    let shapes = Shapes::new(prototiles, tiles.iter().filter(|r| r.reflected).map(|r| r.prototile))?;
    let pts: Vec<Vec<Point>> = tiles
        .iter()
        .zip(placements)
        .map(|(r, p)| place_polygon(shapes.get(r.prototile, r.reflected), p))
        .collect::<Result<_, _>>()?;

    let mut class_index: HashMap<&CycloNum, usize> = HashMap::new();
    let mut vertex_classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for (t, row) in pts.iter().enumerate() {
        for (v, p) in row.iter().enumerate() {
            let c = *class_index.entry(p.z()).or_insert_with(|| {
                vertex_classes.push(Vec::new());
                vertex_classes.len() - 1
            });
            vertex_classes[c].push((t, v));
        }
    }

    let ends = |t: usize, e: usize| (&pts[t][e], &pts[t][(e + 1) % pts[t].len()]);
    let mut by_ends: HashMap<(&CycloNum, &CycloNum), (usize, usize)> = HashMap::new();
    for t in 0..pts.len() {
        for e in 0..pts[t].len() {
            let (a, b) = ends(t, e);
            by_ends.insert((a.z(), b.z()), (t, e));
        }
    }
    let boxes: Vec<Vec<(Iv, Iv)>> = (0..pts.len())
        .map(|t| {
            (0..pts[t].len())
                .map(|e| {
                    let (a, b) = ends(t, e);
                    let ((ax, ay), (bx, by)) = (a.enclosure(), b.enclosure());
                    (ax.hull(bx), ay.hull(by))
                })
                .collect()
        })
        .collect();

    let mut edge_overlaps = Vec::with_capacity(pts.len());
    for t in 0..pts.len() {
        let mut row = Vec::with_capacity(pts[t].len());
        for e in 0..pts[t].len() {
            let (a, b) = ends(t, e);
            if let Some(&(t2, f)) = by_ends.get(&(b.z(), a.z())).filter(|(t2, _)| *t2 != t) {
                row.push(vec![Overlap::Edge { tile: t2, edge: f }]);
                continue;
            }
            let mut pieces: Vec<(&Point, &Point, Overlap)> = Vec::new();
            for t2 in (0..pts.len()).filter(|&t2| t2 != t) {
                for f in 0..pts[t2].len() {
                    let bx = &boxes[t2][f];
                    if !(bx.0.overlaps(&boxes[t][e].0) && bx.1.overlaps(&boxes[t][e].1)) {
                        continue;
                    }
                    let (f0, f1) = ends(t2, f);
                    if orient(a, b, f0) != 0 || orient(a, b, f1) != 0 || dot_sign(a, b, f0, f1) >= 0 {
                        continue;
                    }
                    if dot_sign(f1, b, a, b) <= 0 || dot_sign(a, f0, a, b) <= 0 {
                        continue;
                    }
                    let lo = if dot_sign(a, f1, a, b) > 0 { f1 } else { a };
                    let hi = if dot_sign(f0, b, a, b) > 0 { f0 } else { b };
                    pieces.push((lo, hi, Overlap::Edge { tile: t2, edge: f }));
                }
            }
            pieces.sort_by(|p, q| dot_sign(p.0, q.0, a, b).cmp(&0).reverse());
            let mut seq = Vec::new();
            let mut cursor = a;
            for (lo, hi, o) in pieces {
                match dot_sign(cursor, lo, a, b) {
                    s if s > 0 => seq.push(Overlap::Boundary),
                    0 => {}
                    _ => return Err(CarpetError::DoubleCover { tile: t, edge: e }),
                }
                seq.push(o);
                cursor = hi;
            }
            if cursor != b {
                seq.push(Overlap::Boundary);
            }
            row.push(seq);
        }
        edge_overlaps.push(row);
    }

    Ok(CarpetGluing {
        prototiles: prototiles.to_vec(),
        tiles: tiles.to_vec(),
        vertex_classes,
        edge_overlaps,
        anchor,
    })
}

/// Gluing in which the listed edge pairs are glued end to end and nothing else is
/// identified. Vertex classes are generated by the glued endpoints.
pub fn gluing_from_edge_pairs(
    prototiles: &[TurtlePolygon],
    tiles: &[TileRef],
    pairs: &[((usize, usize), (usize, usize))],
    anchor: usize,
) -> Result<CarpetGluing, CarpetError> {
    let sizes: Vec<usize> = tiles
        .iter()
        .enumerate()
        .map(|(tile, r)| {
            prototiles
                .get(r.prototile)
                .map(TurtlePolygon::len)
                .ok_or(CarpetError::UnknownPrototile { tile, prototile: r.prototile })
        })
        .collect::<Result<_, _>>()?;
    let base: Vec<usize> = sizes.iter().scan(0, |acc, &k| Some(std::mem::replace(acc, *acc + k))).collect();
    let total: usize = sizes.iter().sum();
    let mut dsu = Dsu::new(total);
    let mut edge_overlaps: Vec<Vec<Vec<Overlap>>> = sizes.iter().map(|&k| vec![vec![Overlap::Boundary]; k]).collect();
    for &((t, e), (t2, f)) in pairs {
        if t >= tiles.len() || t2 >= tiles.len() || e >= sizes[t] || f >= sizes[t2] {
            return Err(CarpetError::NoSuchEdge { tile: t, edge: e });
        }
        if edge_overlaps[t][e][0] != Overlap::Boundary || edge_overlaps[t2][f][0] != Overlap::Boundary {
            return Err(CarpetError::DoubleCover { tile: t, edge: e });
        }
        edge_overlaps[t][e] = vec![Overlap::Edge { tile: t2, edge: f }];
        edge_overlaps[t2][f] = vec![Overlap::Edge { tile: t, edge: e }];
        dsu.union(base[t] + e, base[t2] + (f + 1) % sizes[t2]);
        dsu.union(base[t] + (e + 1) % sizes[t], base[t2] + f);
    }
    let mut class_of_root: HashMap<usize, usize> = HashMap::new();
    let mut vertex_classes: Vec<Vec<(usize, usize)>> = Vec::new();
    for t in 0..tiles.len() {
        for v in 0..sizes[t] {
            let root = dsu.find(base[t] + v);
            let c = *class_of_root.entry(root).or_insert_with(|| {
                vertex_classes.push(Vec::new());
                vertex_classes.len() - 1
            });
            vertex_classes[c].push((t, v));
        }
    }
    Ok(CarpetGluing { prototiles: prototiles.to_vec(), tiles: tiles.to_vec(), vertex_classes, edge_overlaps, anchor })
}
