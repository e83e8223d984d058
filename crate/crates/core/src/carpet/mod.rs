//! Finite tilings ("carpets"): the combinatorial gluing, its exact anchored layout, and
//! the local validity checks.

mod build;
mod layout;
mod shapes;
mod topology;
mod validate;

pub use build::{gluing_from_edge_pairs, gluing_from_placements, place_polygon};
pub use layout::{layout_anchored, layout_anchored_in_order, Layout, LayoutError, Placement};
pub use shapes::Shapes;
pub use topology::{analyze_topology, check_disk_topology, is_seamless, Topology, TopologyDefect};
pub(crate) use validate::polygons_overlap;
pub use validate::{check_patch_nonoverlap, is_neat_within, validate, validate_detailed, InvalidReason, Status, Verdict};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::prototiles::{PrototileError, TurtlePolygon};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CarpetError {
    #[error("{tiles} tiles but {placements} placements")]
    LengthMismatch { tiles: usize, placements: usize },
    #[error("tile {tile} uses unknown prototile {prototile}")]
    UnknownPrototile { tile: usize, prototile: usize },
    #[error("no edge ({tile}, {edge})")]
    NoSuchEdge { tile: usize, edge: usize },
    #[error("tile {tile} edge {edge} is covered twice on the same side")]
    DoubleCover { tile: usize, edge: usize },
    #[error(transparent)]
    Prototile(#[from] PrototileError),
}

/// What lies across one piece of a tile edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Overlap {
    /// Glued to edge `edge` of tile `tile`.
    Edge { tile: usize, edge: usize },
    /// Nothing: this piece is on the carpet boundary.
    Boundary,
}

impl Serialize for Overlap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Overlap::Edge { tile, edge } => [*tile, *edge].serialize(s),
            Overlap::Boundary => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Overlap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<[usize; 2]>::deserialize(d)? {
            Some([tile, edge]) => Overlap::Edge { tile, edge },
            None => Overlap::Boundary,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TileRef {
    pub prototile: usize,
    #[serde(default)]
    pub reflected: bool,
}

/// Tiles, the partition of their vertices into coincident points, and for every tile
/// edge the ordered list of what lies across it from start to end.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CarpetGluing {
    pub prototiles: Vec<TurtlePolygon>,
    pub tiles: Vec<TileRef>,
    pub vertex_classes: Vec<Vec<(usize, usize)>>,
    pub edge_overlaps: Vec<Vec<Vec<Overlap>>>,
    pub anchor: usize,
}

impl CarpetGluing {
    pub fn tile_count(&self) -> usize {
        self.tiles.len()
    }

    /// Class index of every tile vertex; `None` if the classes do not cover it.
    pub fn class_table(&self) -> Vec<Vec<Option<usize>>> {
        let mut table: Vec<Vec<Option<usize>>> = self
            .tiles
            .iter()
            .map(|t| vec![None; self.prototiles.get(t.prototile).map_or(0, |p| p.len())])
            .collect();
        for (c, class) in self.vertex_classes.iter().enumerate() {
            for &(t, v) in class {
                if let Some(slot) = table.get_mut(t).and_then(|row| row.get_mut(v)) {
                    *slot = Some(c);
                }
            }
        }
        table
    }
}
