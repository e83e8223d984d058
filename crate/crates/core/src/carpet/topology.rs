//! Combinatorial analysis of a gluing: the fan of tile corners and edge junctions around
//! each vertex class, boundary cycles, and the Euler characteristic.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use super::{CarpetGluing, Overlap};
use crate::exactnum::PiRational;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TopologyDefect {
    #[error("malformed gluing: {message}")]
    Structure { message: String },
    #[error("glued corners belong to different vertex classes {a} and {b}")]
    ClassMismatch { a: usize, b: usize },
    #[error("junction on tile {tile} edge {edge} is not at any tile vertex")]
    FloatingJunction { tile: usize, edge: usize },
    #[error("vertex class {class} is a pinch point")]
    Pinch { class: usize },
    #[error("carpet is disconnected")]
    Disconnected,
    #[error("carpet has {count} boundary cycles")]
    BoundaryCycles { count: usize },
    #[error("Euler characteristic is {chi}")]
    EulerCharacteristic { chi: i64 },
}

fn structure(message: impl Into<String>) -> TopologyDefect {
    TopologyDefect::Structure { message: message.into() }
}

pub(crate) struct Dsu(Vec<usize>);

impl Dsu {
    pub(crate) fn new(n: usize) -> Dsu {
        Dsu((0..n).collect())
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }

    pub(crate) fn components(&mut self) -> usize {
        (0..self.0.len()).filter(|&x| self.find(x) == x).count()
    }
}

/// Result of the combinatorial analysis.
#[derive(Debug, Clone)]
pub struct Topology {
    /// Vertex class of every tile corner.
    pub class_of: Vec<Vec<usize>>,
    /// For every tile edge, the classes of the junctions strictly inside it, in order.
    pub junctions: Vec<Vec<Vec<usize>>>,
    /// Whether each class is surrounded by tiles.
    pub interior: Vec<bool>,
    /// Tile angles at each class; each junction contributes `π`.
    pub angle_sums: Vec<PiRational>,
    /// Number of junctions in each class.
    pub flats: Vec<usize>,
    pub pinches: Vec<usize>,
    pub connected: bool,
    pub boundary_cycles: usize,
    pub euler: i64,
}

impl Topology {
    pub fn class_count(&self) -> usize {
        self.interior.len()
    }

    pub fn disk_defect(&self) -> Option<TopologyDefect> {
        if let Some(&class) = self.pinches.first() {
            return Some(TopologyDefect::Pinch { class });
        }
        if !self.connected {
            return Some(TopologyDefect::Disconnected);
        }
        if self.boundary_cycles != 1 {
            return Some(TopologyDefect::BoundaryCycles { count: self.boundary_cycles });
        }
        if self.euler != 1 {
            return Some(TopologyDefect::EulerCharacteristic { chi: self.euler });
        }
        None
    }

    pub fn is_disk(&self) -> bool {
        self.disk_defect().is_none()
    }
}

pub(crate) fn check_structure(g: &CarpetGluing) -> Result<Vec<Vec<usize>>, TopologyDefect> {
    let nt = g.tiles.len();
    if nt == 0 {
        return Err(structure("no tiles"));
    }
    if g.anchor >= nt {
        return Err(structure(format!("anchor {} out of range", g.anchor)));
    }
    let mut sizes = Vec::with_capacity(nt);
    for (t, tile) in g.tiles.iter().enumerate() {
        let p = g
            .prototiles
            .get(tile.prototile)
            .ok_or_else(|| structure(format!("tile {t} uses unknown prototile {}", tile.prototile)))?;
        sizes.push(p.len());
    }
    let table = g.class_table();
    let mut seen: Vec<Vec<bool>> = sizes.iter().map(|&k| vec![false; k]).collect();
    for (c, class) in g.vertex_classes.iter().enumerate() {
        if class.is_empty() {
            return Err(structure(format!("vertex class {c} is empty")));
        }
        for &(t, v) in class {
            let slot = seen
                .get_mut(t)
                .and_then(|row| row.get_mut(v))
                .ok_or_else(|| structure(format!("vertex class {c} names missing vertex ({t}, {v})")))?;
            if *slot {
                return Err(structure(format!("vertex ({t}, {v}) is in more than one class")));
            }
            *slot = true;
        }
    }
    if let Some((t, v)) = seen
        .iter()
        .enumerate()
        .find_map(|(t, row)| row.iter().position(|s| !s).map(|v| (t, v)))
    {
        return Err(structure(format!("vertex ({t}, {v}) is in no class")));
    }
    if g.edge_overlaps.len() != nt {
        return Err(structure("edge overlap table does not match the tile count"));
    }
    for t in 0..nt {
        if g.edge_overlaps[t].len() != sizes[t] {
            return Err(structure(format!("tile {t} has {} edges but {} overlap lists", sizes[t], g.edge_overlaps[t].len())));
        }
        for (e, seq) in g.edge_overlaps[t].iter().enumerate() {
            if seq.is_empty() {
                return Err(structure(format!("tile {t} edge {e} has an empty overlap list")));
            }
            let mut partners = BTreeSet::new();
            for (i, o) in seq.iter().enumerate() {
                match *o {
                    Overlap::Boundary => {
                        if i > 0 && seq[i - 1] == Overlap::Boundary {
                            return Err(structure(format!("tile {t} edge {e} repeats a boundary piece")));
                        }
                    }
                    Overlap::Edge { tile: t2, edge: f } => {
                        if t2 == t {
                            return Err(structure(format!("tile {t} is glued to itself")));
                        }
                        let back = g
                            .edge_overlaps
                            .get(t2)
                            .and_then(|row| row.get(f))
                            .ok_or_else(|| structure(format!("tile {t} edge {e} names missing edge ({t2}, {f})")))?;
                        if !partners.insert((t2, f)) {
                            return Err(structure(format!("tile {t} edge {e} lists ({t2}, {f}) twice")));
                        }
                        if !back.contains(&Overlap::Edge { tile: t, edge: e }) {
                            return Err(structure(format!("edge ({t}, {e}) lists ({t2}, {f}) but not conversely")));
                        }
                    }
                }
            }
        }
    }
    Ok(table.into_iter().map(|row| row.into_iter().map(|c| c.unwrap_or(0)).collect()).collect())
}

/// Full combinatorial analysis; `Err` only for gluings that do not describe a surface.
pub fn analyze_topology(g: &CarpetGluing) -> Result<Topology, TopologyDefect> {
    let class_of = check_structure(g)?;
    let nt = g.tiles.len();
    let nc = g.vertex_classes.len();
    let sizes: Vec<usize> = class_of.iter().map(Vec::len).collect();

    let mut corner_base = Vec::with_capacity(nt);
    let mut next = 0;
    for &k in &sizes {
        corner_base.push(next);
        next += k;
    }
    let corners = next;
    let mut flat_base: Vec<Vec<usize>> = Vec::with_capacity(nt);
    let mut flat_owner = Vec::new();
    for t in 0..nt {
        let mut row = Vec::with_capacity(sizes[t]);
        for (e, seq) in g.edge_overlaps[t].iter().enumerate() {
            row.push(next);
            next += seq.len() - 1;
            flat_owner.extend(std::iter::repeat_n((t, e), seq.len() - 1));
        }
        flat_base.push(row);
    }
    let wedges = next;
    let tile_of_wedge = |w: usize| -> usize {
        if w < corners {
            corner_base.partition_point(|&b| b <= w) - 1
        } else {
            flat_owner[w - corners].0
        }
    };

    // side 0 sits at the end of the piece before the wedge, side 1 at the start of the piece after.
    let start_w = |t: usize, e: usize, i: usize| if i == 0 { corner_base[t] + e } else { flat_base[t][e] + i - 1 };
    let end_w = |t: usize, e: usize, i: usize| {
        if i + 1 == g.edge_overlaps[t][e].len() {
            corner_base[t] + (e + 1) % sizes[t]
        } else {
            flat_base[t][e] + i
        }
    };

    let mut link: Vec<[Option<usize>; 2]> = vec![[None, None]; wedges];
    let mut connect = |a: usize, sa: usize, b: usize, sb: usize| -> Result<(), TopologyDefect> {
        if link[a][sa].is_some() || link[b][sb].is_some() {
            return Err(structure("a wedge side is glued twice"));
        }
        link[a][sa] = Some(b);
        link[b][sb] = Some(a);
        Ok(())
    };
    let mut glued_pieces = 0usize;
    let mut boundary_pieces = Vec::new();
    for t in 0..nt {
        for e in 0..sizes[t] {
            for (i, o) in g.edge_overlaps[t][e].iter().enumerate() {
                match *o {
                    Overlap::Boundary => boundary_pieces.push((t, e, i)),
                    Overlap::Edge { tile: t2, edge: f } => {
                        glued_pieces += 1;
                        if (t, e) < (t2, f) {
                            let j = g.edge_overlaps[t2][f]
                                .iter()
                                .position(|x| *x == Overlap::Edge { tile: t, edge: e })
                                .unwrap_or(0);
                            connect(start_w(t, e, i), 1, end_w(t2, f, j), 0)?;
                            connect(end_w(t, e, i), 0, start_w(t2, f, j), 1)?;
                        }
                    }
                }
            }
        }
    }

    let mut dsu = Dsu::new(wedges);
    for (w, sides) in link.iter().enumerate() {
        for other in sides.iter().flatten() {
            dsu.union(w, *other);
        }
    }
    let mut comp_class: Vec<Option<usize>> = vec![None; wedges];
    for t in 0..nt {
        for v in 0..sizes[t] {
            let w = corner_base[t] + v;
            let c = class_of[t][v];
            let r = dsu.find(w);
            match comp_class[r] {
                Some(c0) if c0 != c => return Err(TopologyDefect::ClassMismatch { a: c0.min(c), b: c0.max(c) }),
                _ => comp_class[r] = Some(c),
            }
        }
    }
    let mut junctions: Vec<Vec<Vec<usize>>> = sizes.iter().map(|&k| vec![Vec::new(); k]).collect();
    let mut flats = vec![0usize; nc];
    for w in corners..wedges {
        let (t, e) = flat_owner[w - corners];
        let r = dsu.find(w);
        let c = comp_class[r].ok_or(TopologyDefect::FloatingJunction { tile: t, edge: e })?;
        junctions[t][e].push(c);
        flats[c] += 1;
    }

    let mut roots_of_class: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); nc];
    let mut open_sides = vec![0usize; wedges];
    for w in 0..wedges {
        let r = dsu.find(w);
        if let Some(c) = comp_class[r] {
            roots_of_class[c].insert(r);
        }
        open_sides[r] += link[w].iter().filter(|s| s.is_none()).count();
    }
    let pinches: Vec<usize> = (0..nc).filter(|&c| roots_of_class[c].len() > 1).collect();
    let interior: Vec<bool> = roots_of_class
        .iter()
        .map(|roots| roots.len() == 1 && roots.iter().all(|&r| open_sides[r] == 0))
        .collect();

    let mut angle_sums: Vec<PiRational> = flats.iter().map(|&k| PiRational::PI * k as i64).collect();
    for (t, tile) in g.tiles.iter().enumerate() {
        let p = &g.prototiles[tile.prototile];
        let k = sizes[t];
        for v in 0..k {
            let src = if tile.reflected { (k - v) % k } else { v };
            angle_sums[class_of[t][v]] += p.interior_angle(src);
        }
    }

    // Each boundary piece continues with the boundary piece leaving the far end of the fan
    // it runs into.
    let vertex_count = dsu.components();
    let mut starting_at = vec![usize::MAX; wedges];
    for (idx, &(t, e, i)) in boundary_pieces.iter().enumerate() {
        starting_at[start_w(t, e, i)] = idx;
    }
    let mut cycles = Dsu::new(boundary_pieces.len());
    for (idx, &(t, e, i)) in boundary_pieces.iter().enumerate() {
        let mut w = end_w(t, e, i);
        let mut steps = 0;
        while let Some(n) = link[w][1] {
            w = n;
            steps += 1;
            if steps > wedges {
                return Err(structure("wedge fan does not terminate"));
            }
        }
        let succ = starting_at[w];
        if succ == usize::MAX {
            return Err(structure("boundary fan ends without a boundary piece"));
        }
        cycles.union(idx, succ);
    }
    let boundary_cycles = cycles.components();

    let mut tiles = Dsu::new(nt);
    for w in 0..wedges {
        let r = dsu.find(w);
        tiles.union(tile_of_wedge(w), tile_of_wedge(r));
    }
    let connected = tiles.components() == 1;

    let edges = boundary_pieces.len() + glued_pieces / 2;
    let euler = vertex_count as i64 - edges as i64 + nt as i64;

    Ok(Topology { class_of, junctions, interior, angle_sums, flats, pinches, connected, boundary_cycles, euler })
}

/// Whether the glued tiles form a topological closed disk.
pub fn check_disk_topology(g: &CarpetGluing) -> bool {
    analyze_topology(g).is_ok_and(|t| t.is_disk())
}

/// Whether the graph on tiles, adjacent when they share a vertex class, is connected.
/// Junctions on edge interiors do not count.
pub fn is_seamless(g: &CarpetGluing) -> bool {
    if check_structure(g).is_err() {
        return false;
    }
    let mut tiles = Dsu::new(g.tiles.len());
    for class in &g.vertex_classes {
        for &(t, _) in class.iter().skip(1) {
            tiles.union(class[0].0, t);
        }
    }
    tiles.components() == 1
}
