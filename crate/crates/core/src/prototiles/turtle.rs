use serde::{Deserialize, Serialize};

use super::PrototileError;
use crate::exactnum::{on_segment, segments_intersect, CycloNum, Point, PiRational};

/// One turtle step: walk `len` along the current heading, then turn left by `turn`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instruction {
    pub len: CycloNum,
    pub turn: PiRational,
}

/// A simple polygon given as a closed turtle program, traversed counterclockwise.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "TurtleJson", into = "TurtleJson")]
pub struct TurtlePolygon {
    pub name: String,
    order: u32,
    start: Point,
    start_heading: PiRational,
    instructions: Vec<Instruction>,
    vertices: Vec<Point>,
    headings: Vec<PiRational>,
    pub meta: Option<serde_json::Value>,
}

/// Persisted form: the program only; vertices are recomputed on load.
#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct TurtleJson {
    name: String,
    order: u32,
    start: CycloNum,
    start_heading: PiRational,
    instructions: Vec<Instruction>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    meta: Option<serde_json::Value>,
}

impl From<TurtlePolygon> for TurtleJson {
    fn from(p: TurtlePolygon) -> Self {
        TurtleJson {
            name: p.name,
            order: p.order,
            start: p.start.into_z(),
            start_heading: p.start_heading,
            instructions: p.instructions,
            meta: p.meta,
        }
    }
}

impl TryFrom<TurtleJson> for TurtlePolygon {
    type Error = PrototileError;

    fn try_from(j: TurtleJson) -> Result<Self, Self::Error> {
        let start = j.start.promote(j.order)?;
        if start.order() % 4 != 0 {
            return Err(PrototileError::Degenerate(format!("field order {} is not a multiple of 4", j.order)));
        }
        let instructions = j
            .instructions
            .into_iter()
            .map(|i| Ok(Instruction { len: i.len.promote(j.order)?, turn: i.turn }))
            .collect::<Result<Vec<_>, PrototileError>>()?;
        let p = TurtlePolygon::new(j.name, Point::new(start), j.start_heading, instructions)?;
        Ok(match j.meta {
            Some(m) => p.with_meta(m),
            None => p,
        })
    }
}

impl PartialEq for TurtlePolygon {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
            && self.start == other.start
            && self.start_heading == other.start_heading
            && self.instructions == other.instructions
    }
}

impl TurtlePolygon {
    /// Runs the program and checks exact closure (turn sum `2π`, endpoint = start).
    pub fn new(
        name: impl Into<String>,
        start: Point,
        start_heading: PiRational,
        instructions: Vec<Instruction>,
    ) -> Result<TurtlePolygon, PrototileError> {
        let order = start.order();
        if instructions.len() < 3 {
            return Err(PrototileError::Degenerate("fewer than three edges".into()));
        }
        let mut vertices = Vec::with_capacity(instructions.len());
        let mut headings = Vec::with_capacity(instructions.len());
        let mut pos = start.z().clone();
        let mut heading = start_heading.normalized();
        let mut total = PiRational::ZERO;
        for (i, ins) in instructions.iter().enumerate() {
            if ins.len.order() != order {
                return Err(PrototileError::Degenerate(format!(
                    "edge {i} length lives in order {} but the polygon in order {order}",
                    ins.len.order()
                )));
            }
            if !ins.len.is_real() || ins.len.sign_real() <= 0 {
                return Err(PrototileError::Degenerate(format!("edge {i} has a non-positive length")));
            }
            if ins.turn.abs() >= PiRational::PI {
                return Err(PrototileError::Degenerate(format!("turn {i} is not in (-π, π)")));
            }
            vertices.push(Point::new(pos.clone()));
            headings.push(heading);
            pos = &pos + &ins.len.rotate(heading)?;
            heading = (heading + ins.turn).normalized();
            total += ins.turn;
        }
        if total != PiRational::TWO_PI {
            return Err(PrototileError::NotClosed(format!("turns sum to {total}")));
        }
        if pos != *start.z() {
            return Err(PrototileError::NotClosed("endpoint differs from start".into()));
        }
        Ok(TurtlePolygon {
            name: name.into(),
            order,
            start,
            start_heading: start_heading.normalized(),
            instructions,
            vertices,
            headings,
            meta: None,
        })
    }

    /// Builds the program from edge lengths and absolute headings.
    pub fn from_edges(
        name: impl Into<String>,
        start: Point,
        edges: Vec<(CycloNum, PiRational)>,
    ) -> Result<TurtlePolygon, PrototileError> {
        let k = edges.len();
        if k == 0 {
            return Err(PrototileError::Degenerate("no edges".into()));
        }
        let start_heading = edges[0].1;
        let instructions = (0..k)
            .map(|i| Instruction {
                len: edges[i].0.clone(),
                turn: (edges[(i + 1) % k].1 - edges[i].1).normalized_signed(),
            })
            .collect();
        TurtlePolygon::new(name, start, start_heading, instructions)
    }

    pub fn with_meta(mut self, meta: serde_json::Value) -> Self {
        self.meta = Some(meta);
        self
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn start(&self) -> &Point {
        &self.start
    }

    pub fn start_heading(&self) -> PiRational {
        self.start_heading
    }

    pub fn instructions(&self) -> &[Instruction] {
        &self.instructions
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Point {
        &self.vertices[i % self.vertices.len()]
    }

    /// Heading of edge `i` (from vertex `i` to vertex `i+1`), normalized to `[0, 2π)`.
    pub fn heading(&self, i: usize) -> PiRational {
        self.headings[i % self.headings.len()]
    }

    pub fn edge_len(&self, i: usize) -> &CycloNum {
        &self.instructions[i % self.instructions.len()].len
    }

    /// Interior angle at vertex `i` (where edge `i` starts).
    pub fn interior_angle(&self, i: usize) -> PiRational {
        let k = self.instructions.len();
        PiRational::PI - self.instructions[(i + k - 1) % k].turn
    }

    pub fn interior_angles(&self) -> Vec<PiRational> {
        (0..self.len()).map(|i| self.interior_angle(i)).collect()
    }

    pub fn turn_sum(&self) -> PiRational {
        self.instructions.iter().map(|i| i.turn).sum()
    }

    /// Same shape in the larger field `Q(ζ_order)`.
    pub fn promote(&self, order: u32) -> Result<TurtlePolygon, PrototileError> {
        if order == self.order {
            return Ok(self.clone());
        }
        let instructions = self
            .instructions
            .iter()
            .map(|i| Ok(Instruction { len: i.len.promote(order)?, turn: i.turn }))
            .collect::<Result<Vec<_>, PrototileError>>()?;
        let mut p = TurtlePolygon::new(self.name.clone(), self.start.promote(order)?, self.start_heading, instructions)?;
        p.meta = self.meta.clone();
        Ok(p)
    }

    /// The same polygon with every vertex translated by `v`.
    pub fn translated(&self, v: &CycloNum) -> TurtlePolygon {
        let mut p = self.clone();
        p.start = self.start.translate(v);
        p.vertices = self.vertices.iter().map(|q| q.translate(v)).collect();
        p
    }

    /// Mirror image across the real axis, re-indexed so vertex `i` is the image of
    /// vertex `-i` and the traversal stays counterclockwise.
    pub fn reflected(&self) -> Result<TurtlePolygon, PrototileError> {
        let k = self.len();
        let edges = (0..k)
            .map(|i| {
                let j = k - 1 - i;
                (self.edge_len(j).clone(), (PiRational::PI - self.heading(j)).normalized())
            })
            .collect();
        let mut p = TurtlePolygon::from_edges(format!("{} (reflected)", self.name), self.start.conj(), edges)?;
        p.meta = self.meta.clone();
        Ok(p)
    }

    /// Twice the signed area (the shoelace sum), exact.
    pub fn double_area(&self) -> CycloNum {
        let k = self.len();
        let mut acc = CycloNum::zero(self.order);
        for i in 0..k {
            let a = self.vertices[i].z();
            let b = self.vertices[(i + 1) % k].z();
            acc = acc + (a.conj() * b).im();
        }
        acc
    }

    /// Center of gravity of the enclosed region, exact.
    pub fn centroid(&self) -> Result<CycloNum, PrototileError> {
        let k = self.len();
        if k == 3 {
            let s = self.vertices.iter().fold(CycloNum::zero(self.order), |acc, p| acc + p.z());
            return Ok(s.div_int(3));
        }
        // Σ (p_i + p_{i+1}) · cross(p_i, p_{i+1}) / (3 · 2A)
        let mut acc = CycloNum::zero(self.order);
        for i in 0..k {
            let a = self.vertices[i].z();
            let b = self.vertices[(i + 1) % k].z();
            let cross = (a.conj() * b).im();
            acc = acc + (a + b) * cross;
        }
        let inv = self.double_area().scale_int(3).inverse()?;
        Ok(acc * inv)
    }

    /// Exact simplicity test: non-adjacent edges are disjoint, adjacent edges meet only at
    /// their shared vertex.
    pub fn is_simple(&self) -> bool {
        is_simple_ring(&self.vertices)
    }
}

/// Simplicity of a closed vertex ring; edges are swept by their x-extent.
pub fn is_simple_ring(v: &[Point]) -> bool {
    let k = v.len();
    if k < 3 {
        return false;
    }
    for i in 0..k {
        let a = &v[i];
        let b = &v[(i + 1) % k];
        let c = &v[(i + 2) % k];
        if a == b {
            return false;
        }
        // folding back along the previous edge
        if on_segment(c, a, b) || on_segment(a, b, c) {
            return false;
        }
    }
    let mut order: Vec<(f64, f64, usize)> = (0..k)
        .map(|i| {
            let (x0, _) = v[i].enclosure();
            let (x1, _) = v[(i + 1) % k].enclosure();
            let h = x0.hull(x1);
            (h.lo, h.hi, i)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut active: Vec<(f64, usize)> = Vec::new();
    for &(lo, hi, i) in &order {
        active.retain(|&(end, _)| end >= lo);
        for &(_, j) in &active {
            let adjacent = (i + 1) % k == j || (j + 1) % k == i;
            if adjacent {
                continue;
            }
            if segments_intersect(&v[i], &v[(i + 1) % k], &v[j], &v[(j + 1) % k]) {
                return false;
            }
        }
        active.push((hi, i));
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_square(order: u32) -> TurtlePolygon {
        let ins = (0..4)
            .map(|_| Instruction { len: CycloNum::one(order), turn: PiRational::HALF_PI })
            .collect();
        TurtlePolygon::new("square", Point::origin(order), PiRational::ZERO, ins).unwrap()
    }

    #[test]
    fn square_closes() {
        let sq = unit_square(4);
        assert_eq!(sq.len(), 4);
        assert_eq!(sq.turn_sum(), PiRational::TWO_PI);
        assert!(sq.is_simple());
        assert!(sq.interior_angles().iter().all(|a| *a == PiRational::HALF_PI));
        assert_eq!(sq.double_area(), CycloNum::from_int(4, 2));
        let c = sq.centroid().unwrap();
        assert_eq!(c, Point::from_xy(&CycloNum::from_int(4, 1), &CycloNum::from_int(4, 1)).z().div_int(2));
    }

    #[test]
    fn open_program_is_rejected() {
        let ins = (0..3)
            .map(|_| Instruction { len: CycloNum::one(4), turn: PiRational::HALF_PI })
            .collect();
        assert!(matches!(
            TurtlePolygon::new("open", Point::origin(4), PiRational::ZERO, ins),
            Err(PrototileError::NotClosed(_))
        ));
    }

    #[test]
    fn bowtie_is_not_simple() {
        let p = |x: i64, y: i64| Point::from_xy(&CycloNum::from_int(4, x), &CycloNum::from_int(4, y));
        assert!(!is_simple_ring(&[p(0, 0), p(2, 2), p(2, 0), p(0, 2)]));
        assert!(is_simple_ring(&[p(0, 0), p(2, 0), p(2, 2), p(0, 2)]));
    }

    #[test]
    fn reflection_reindexes_vertices() {
        let ins = vec![
            Instruction { len: CycloNum::from_int(4, 2), turn: PiRational::HALF_PI },
            Instruction { len: CycloNum::one(4), turn: PiRational::HALF_PI },
            Instruction { len: CycloNum::from_int(4, 2), turn: PiRational::HALF_PI },
            Instruction { len: CycloNum::one(4), turn: PiRational::HALF_PI },
        ];
        let r = TurtlePolygon::new("rect", Point::origin(4), PiRational::new(1, 2), ins).unwrap();
        let m = r.reflected().unwrap();
        for i in 0..4 {
            assert_eq!(*m.vertex(i), r.vertex((4 - i) % 4).conj());
        }
        assert_eq!(m.turn_sum(), PiRational::TWO_PI);
    }
}
