//! The intended carpet for a rectangular block of a Wang tiling: wheels on a square
//! lattice, shurikens in the square gaps, staples between tweedles and notches.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::carpet::{gluing_from_placements, CarpetError, CarpetGluing, Placement, TileRef};
use crate::exactnum::{CycloNum, PiRational};
use crate::prototiles::{cos_two_eps, sin_eps, PrototileSet};
use crate::wang::{WangError, WangTileSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AssembleError {
    #[error("block glues disagree at row {row}, column {col} ({side})")]
    MismatchedBlock { row: usize, col: usize, side: &'static str },
    #[error("block is empty or ragged")]
    BadShape,
    #[error("block uses tile {0}, which is not in the set")]
    UnknownTile(usize),
    #[error(transparent)]
    Wang(#[from] WangError),
    #[error(transparent)]
    Carpet(#[from] CarpetError),
}

/// Rows of tile indices; row 0 is the top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WangBlock {
    pub grid: Vec<Vec<usize>>,
}

impl WangBlock {
    /// Checks the shape and every internal adjacency against `set`.
    pub fn new(set: &WangTileSet, grid: Vec<Vec<usize>>) -> Result<WangBlock, AssembleError> {
        let block = WangBlock { grid };
        block.check(set)?;
        Ok(block)
    }

    pub fn rows(&self) -> usize {
        self.grid.len()
    }

    pub fn cols(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    pub fn check(&self, set: &WangTileSet) -> Result<(), AssembleError> {
        self.check_shape(set)?;
        let tile = |r: usize, c: usize| &set.tiles[self.grid[r][c]];
        for r in 0..self.rows() {
            for c in 0..self.cols() {
                if c + 1 < self.cols() && !tile(r, c).e.matches(&tile(r, c + 1).w) {
                    return Err(AssembleError::MismatchedBlock { row: r, col: c, side: "east" });
                }
                if r + 1 < self.rows() && !tile(r, c).s.matches(&tile(r + 1, c).n) {
                    return Err(AssembleError::MismatchedBlock { row: r, col: c, side: "south" });
                }
            }
        }
        Ok(())
    }

    fn check_shape(&self, set: &WangTileSet) -> Result<(), AssembleError> {
        let cols = self.cols();
        if cols == 0 || self.grid.iter().any(|row| row.len() != cols) {
            return Err(AssembleError::BadShape);
        }
        if let Some(&t) = self.grid.iter().flatten().find(|&&t| t >= set.len()) {
            return Err(AssembleError::UnknownTile(t));
        }
        Ok(())
    }
}

/// Rotation bringing wheel side `i` to the top.
pub fn wheel_orientation(i: usize, n: usize) -> PiRational {
    PiRational::new(i as i64, 2 * n as i64)
}

/// Indices of the three prototiles in an assembled carpet.
pub const WHEEL: usize = 0;
pub const SHURIKEN: usize = 1;
pub const STAPLE: usize = 2;

/// Counts of wheels, shurikens and staples for an `m1 × m2` block.
pub fn tile_counts(m1: usize, m2: usize, n: usize, b: u32) -> (usize, usize, usize) {
    let shurikens = m1.saturating_sub(1) * m2.saturating_sub(1);
    (m1 * m2, shurikens, shurikens * 4 * (n - 1) * (b as usize + 4))
}

/// Builds the carpet after checking the block.
pub fn assemble(block: &WangBlock, protos: &PrototileSet) -> Result<CarpetGluing, AssembleError> {
    block.check(&protos.tiles)?;
    assemble_unchecked(block, protos)
}

/// Builds the carpet without checking glue matches; mismatched sides produce whatever
/// gluing the overlapping geometry yields.
pub fn assemble_unchecked(block: &WangBlock, protos: &PrototileSet) -> Result<CarpetGluing, AssembleError> {
    block.check_shape(&protos.tiles)?;
    let (tiles, placements) = intended_placements(block, protos)?;
    let prototiles = [protos.wheel.clone(), protos.shuriken.clone(), protos.staple.clone()];
    Ok(gluing_from_placements(&prototiles, &tiles, &placements, 0)?)
}

/// Tile list and placements: wheels row by row, then shurikens, then staples ordered by
/// wheel, side and gadget slot.
pub fn intended_placements(
    block: &WangBlock,
    protos: &PrototileSet,
) -> Result<(Vec<TileRef>, Vec<Placement>), AssembleError> {
    let meta = &protos.meta;
    let (n, m) = (meta.n, meta.order);
    let sides = 4 * n;
    let (m1, m2) = (block.rows(), block.cols());
    let w = meta.width.promote(m).map_err(carpet_err)?;
    let lattice = |x2: i64, y2: i64| (&w.scale_int(x2) - &w.scale_int(y2).mul_i()).div_int(2);

    let mut tiles = Vec::new();
    let mut placements = Vec::new();
    let mut push = |prototile: usize, rotation: PiRational, translation: CycloNum| {
        tiles.push(TileRef { prototile, reflected: false });
        placements.push(Placement { rotation: rotation.normalized(), translation, reflected: false });
    };
    for r in 0..m1 {
        for c in 0..m2 {
            push(WHEEL, wheel_orientation(block.grid[r][c], n), lattice(2 * c as i64, 2 * r as i64));
        }
    }
    let has_shuriken = |r: i64, c: i64| r >= 0 && c >= 0 && r + 1 < m1 as i64 && c + 1 < m2 as i64;
    for r in 0..m1.saturating_sub(1) {
        for c in 0..m2.saturating_sub(1) {
            push(SHURIKEN, PiRational::ZERO, lattice(2 * c as i64 + 1, 2 * r as i64 + 1));
        }
    }

    // corners of the base polygon, walked counterclockwise from the right end of side 0
    let unit = PiRational::new(1, 2 * n as i64);
    let heading = |s: usize| (PiRational::PI + unit.scale(s as i64)).normalized();
    let side_step = CycloNum::from_int(m, meta.side_length);
    let mut corners = Vec::with_capacity(sides);
    let mut pos = protos.wheel.start().z().clone();
    for s in 0..sides {
        corners.push(pos.clone());
        pos = &pos + &side_step.rotate(heading(s)).map_err(carpet_err)?;
    }
    let lift = (&cos_two_eps() + &sin_eps()).promote(m).map_err(carpet_err)?.mul_i();
    let two = CycloNum::from_int(m, 2);

    for r in 0..m1 {
        for c in 0..m2 {
            let t = block.grid[r][c];
            let center = lattice(2 * c as i64, 2 * r as i64);
            let (ri, ci) = (r as i64, c as i64);
            // world sides 1..n-1 face north-east, then south-east, south-west, north-west
            let quadrants = [(ri - 1, ci), (ri, ci), (ri, ci - 1), (ri - 1, ci - 1)];
            for (q, &(sr, sc)) in quadrants.iter().enumerate() {
                if !has_shuriken(sr, sc) {
                    continue;
                }
                for side in q * n + 1..(q + 1) * n {
                    let s = (sides - side) % sides;
                    let h = heading(s);
                    let word = &meta.side_words[(side + t) % sides];
                    for (j, &off) in meta.gadget_offsets.iter().enumerate() {
                        let dir = CycloNum::one(m).rotate(h).map_err(carpet_err)?;
                        let origin = &(&center + &corners[s]) + &dir.scale_int(off);
                        let (rot, local) = if word.bits()[j] {
                            (h + PiRational::PI, &two + &lift)
                        } else {
                            (h, &two - &lift)
                        };
                        push(STAPLE, rot, &origin + &(&dir * &local));
                    }
                }
            }
        }
    }
    Ok((tiles, placements))
}

fn carpet_err(e: crate::exactnum::ExactError) -> AssembleError {
    AssembleError::Carpet(CarpetError::Prototile(e.into()))
}
