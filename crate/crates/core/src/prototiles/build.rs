//! Builders for the three prototiles.

use serde::{Deserialize, Serialize};

use super::gadgets::{mid_len, notch_path, tweedle_path, GADGET_ORDER};
use super::{Instruction, PrototileError, TurtlePolygon};
use crate::exactnum::{CycloNum, PiRational, Point};
use crate::wang::{encode_glue, Glue, GlueWord, SetKind, WangTileSet};

/// Spacing along a side: `margin` before the first and after the last gadget, `gap`
/// between consecutive gadgets (in units of the short gadget edge).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideParams {
    pub margin: i64,
    pub gap: i64,
}

impl Default for SideParams {
    fn default() -> Self {
        SideParams { margin: 5, gap: 4 }
    }
}

/// `2m + 4(b+4) + g(b+3)`.
pub fn side_length(b: u32, params: SideParams) -> i64 {
    let slots = b as i64 + 4;
    2 * params.margin + 4 * slots + params.gap * (slots - 1)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WheelMeta {
    pub n: usize,
    pub b: u32,
    pub order: u32,
    pub margin: i64,
    pub gap: i64,
    pub side_length: i64,
    /// Glue carried by side `k` (sides numbered clockwise from the top).
    pub side_glues: Vec<Glue>,
    /// Word of side `k`, in counterclockwise boundary order.
    pub side_words: Vec<GlueWord>,
    /// Distance of each gadget's start from the start of its side.
    pub gadget_offsets: Vec<i64>,
    /// Distance between opposite sides of the base polygon.
    pub width: CycloNum,
}

/// Side `k` shows glue `[n, e, s, w][k / n]` of tile `k % n`.
pub fn side_glue(set: &WangTileSet, k: usize) -> Glue {
    let n = set.len();
    set.tiles[k % n].glues()[k / n]
}

/// Repeats the last tile until the count is odd and at least 5.
pub fn pad_tileset(set: &WangTileSet) -> WangTileSet {
    let mut tiles = set.tiles.clone();
    let last = *tiles.last().expect("nonempty tile set");
    while tiles.len() < 5 || tiles.len().is_multiple_of(2) {
        tiles.push(last);
    }
    WangTileSet { kind: set.kind, tiles }
}

/// Collects edges, merging consecutive collinear pieces.
struct PathBuilder {
    order: u32,
    edges: Vec<(CycloNum, PiRational)>,
}

impl PathBuilder {
    fn new(order: u32) -> Self {
        PathBuilder { order, edges: Vec::new() }
    }

    fn push(&mut self, len: CycloNum, heading: PiRational) {
        let heading = heading.normalized();
        if let Some(last) = self.edges.last_mut() {
            if last.1 == heading {
                last.0 = &last.0 + &len;
                return;
            }
        }
        self.edges.push((len, heading));
    }

    fn straight(&mut self, len: i64, heading: PiRational) {
        if len != 0 {
            self.push(CycloNum::from_int(self.order, len), heading);
        }
    }

    fn gadget(&mut self, path: &[Instruction], heading: PiRational) -> Result<(), PrototileError> {
        let mut h = heading;
        for ins in path {
            self.push(ins.len.promote(self.order)?, h);
            h += ins.turn;
        }
        Ok(())
    }

    fn side(
        &mut self,
        heading: PiRational,
        slots: usize,
        params: SideParams,
        mut gadget: impl FnMut(usize) -> Vec<Instruction>,
    ) -> Result<(), PrototileError> {
        self.straight(params.margin, heading);
        for j in 0..slots {
            self.gadget(&gadget(j), heading)?;
            if j + 1 < slots {
                self.straight(params.gap, heading);
            }
        }
        self.straight(params.margin, heading);
        Ok(())
    }

    fn finish(self, name: &str, start: CycloNum, check_simple: bool) -> Result<TurtlePolygon, PrototileError> {
        if let Some((i, _)) = self.edges.iter().enumerate().find(|(_, (l, _))| l.sign_real() <= 0) {
            return Err(PrototileError::LayoutOverflow(format!("{name}: edge {i} has non-positive length")));
        }
        let p = TurtlePolygon::from_edges(name, Point::new(start), self.edges)?;
        if check_simple && !p.is_simple() {
            return Err(PrototileError::LayoutOverflow(format!("{name}: gadgets collide")));
        }
        Ok(p)
    }
}

fn check_n(n: usize) -> Result<(), PrototileError> {
    if n < 5 || n.is_multiple_of(2) {
        return Err(PrototileError::BadTileSet(format!("tile count {n} must be odd and at least 5")));
    }
    Ok(())
}

/// Field order used for a construction with `n` tiles.
pub fn construction_order(n: usize) -> u32 {
    GADGET_ORDER * n as u32
}

/// Exact mean of the corners of a regular polygon traced from the origin.
fn corner_center(order: u32, side: i64, headings: &[PiRational]) -> Result<CycloNum, PrototileError> {
    let step = CycloNum::from_int(order, side);
    let mut pos = CycloNum::zero(order);
    let mut sum = CycloNum::zero(order);
    for h in headings {
        sum = &sum + &pos;
        pos = &pos + &step.rotate(*h)?;
    }
    Ok(sum.div_int(headings.len() as i64))
}

/// The adorned regular `4n`-gon, centered on its base polygon, with side 0 on top.
pub fn build_wheel(set: &WangTileSet, params: SideParams) -> Result<(TurtlePolygon, WheelMeta), PrototileError> {
    wheel_with_check(set, params, true)
}

/// Like `build_wheel` but without the simplicity gate.
pub fn wheel_outline(set: &WangTileSet, params: SideParams) -> Result<TurtlePolygon, PrototileError> {
    wheel_with_check(set, params, false).map(|(p, _)| p)
}

fn wheel_with_check(
    set: &WangTileSet,
    params: SideParams,
    check_simple: bool,
) -> Result<(TurtlePolygon, WheelMeta), PrototileError> {
    if set.kind != SetKind::SignedFree {
        return Err(PrototileError::BadTileSet("the wheel needs a signed tile set".into()));
    }
    let n = set.len();
    check_n(n)?;
    let b = set.payload_bits();
    let order = construction_order(n);
    let sides = 4 * n;
    let unit = PiRational::new(1, 2 * n as i64);
    let slots = b as usize + 4;
    let side_len = side_length(b, params);

    let side_glues: Vec<Glue> = (0..sides).map(|k| side_glue(set, k)).collect();
    let side_words = side_glues
        .iter()
        .map(|g| encode_glue(g.value, g.sign, b))
        .collect::<Result<Vec<_>, _>>()?;

    // counterclockwise traversal step s walks side (4n - s) mod 4n, starting at the
    // right end of the top side
    let headings: Vec<PiRational> = (0..sides).map(|s| PiRational::PI + unit.scale(s as i64)).collect();
    let mut path = PathBuilder::new(order);
    for (s, h) in headings.iter().enumerate() {
        let word = &side_words[(sides - s) % sides];
        path.side(*h, slots, params, |j| tweedle_path(word.bits()[j]))?;
    }
    let start = -corner_center(order, side_len, &headings)?;
    let width = Point::new(start.clone()).y().scale_int(2);
    let wheel = path.finish("wheel", start, check_simple)?;
    let meta = WheelMeta {
        n,
        b,
        order,
        margin: params.margin,
        gap: params.gap,
        side_length: side_len,
        side_glues,
        side_words,
        gadget_offsets: (0..slots as i64).map(|j| params.margin + j * (4 + params.gap)).collect(),
        width,
    };
    let value = serde_json::to_value(&meta).expect("meta serializes");
    Ok((wheel.with_meta(value), meta))
}

/// Four concave chains of `n - 1` notched sides joined at tips, centered on the mean
/// of its tips, with a tip pointing up.
pub fn build_shuriken(n: usize, b: u32, params: SideParams) -> Result<TurtlePolygon, PrototileError> {
    check_n(n)?;
    let order = construction_order(n);
    let unit = PiRational::new(1, 2 * n as i64);
    let slots = b as usize + 4;
    let side_len = side_length(b, params);
    let mut headings = Vec::new();
    let mut h = -PiRational::HALF_PI - unit;
    for _ in 0..4 {
        for q in 0..n - 1 {
            headings.push(h);
            if q + 2 < n {
                h = h - unit;
            }
        }
        h = h + PiRational::PI - unit.scale(2);
    }
    let mut path = PathBuilder::new(order);
    for h in &headings {
        path.side(*h, slots, params, |_| notch_path())?;
    }
    // tips are where each chain starts
    let step = CycloNum::from_int(order, side_len);
    let mut pos = CycloNum::zero(order);
    let mut tips = CycloNum::zero(order);
    for (i, h) in headings.iter().enumerate() {
        if i % (n - 1) == 0 {
            tips = &tips + &pos;
        }
        pos = &pos + &step.rotate(*h)?;
    }
    let start = -tips.div_int(4);
    path.finish("shuriken", start, true)
}

/// The five-vertex staple with its first vertex at the origin; the reflex vertex is
/// vertex 2.
pub fn build_staple() -> TurtlePolygon {
    let one = CycloNum::one(GADGET_ORDER);
    let wide = PiRational::new(9, 16);
    let ins = vec![
        Instruction { len: one.clone(), turn: wide },
        Instruction { len: one.clone(), turn: PiRational::new(-1, 4) },
        Instruction { len: one.clone(), turn: wide },
        Instruction { len: one, turn: wide },
        Instruction { len: mid_len(), turn: wide },
    ];
    TurtlePolygon::new("staple", Point::origin(GADGET_ORDER), PiRational::new(1, 16), ins)
        .expect("staple program closes")
}

/// Everything produced from one signed tile set.
#[derive(Debug, Clone)]
pub struct PrototileSet {
    pub tiles: WangTileSet,
    pub wheel: TurtlePolygon,
    pub shuriken: TurtlePolygon,
    pub staple: TurtlePolygon,
    pub meta: WheelMeta,
}

/// Pads the set, then builds the wheel, shuriken and staple.
pub fn build_prototiles(set: &WangTileSet, params: SideParams) -> Result<PrototileSet, PrototileError> {
    let padded = pad_tileset(set);
    let (wheel, meta) = build_wheel(&padded, params)?;
    let shuriken = build_shuriken(meta.n, meta.b, params)?;
    Ok(PrototileSet { tiles: padded, wheel, shuriken, staple: build_staple(), meta })
}
