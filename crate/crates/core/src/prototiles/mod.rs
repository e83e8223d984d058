//! The wheel, shuriken and staple as exact turtle polygons, plus the angle algebra
//! used to reason about how their corners can meet.

mod angles;
mod build;
mod gadgets;
mod turtle;

pub use angles::{
    alpha, angle_inventory, anticorner_defect, beta, corner_angle, epsilon, fill_options, is_clean,
    sum_intervals, tip_angle, AngleInventory, AngleSums, FillOption, FLAT_LABEL,
};
pub use build::{
    build_prototiles, build_shuriken, build_staple, build_wheel, construction_order, pad_tileset,
    side_glue, side_length, wheel_outline,
    PrototileSet, SideParams, WheelMeta,
};
pub use gadgets::{
    cos_eps, cos_two_eps, flank_len, mid_len, notch_path, sin_eps, sin_two_eps, trace, tweedle_path,
    GADGET_ORDER,
};
pub use turtle::{is_simple_ring, Instruction, TurtlePolygon};

use thiserror::Error;

use crate::exactnum::ExactError;
use crate::wang::WangError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrototileError {
    #[error("polygon does not close: {0}")]
    NotClosed(String),
    #[error("degenerate polygon: {0}")]
    Degenerate(String),
    #[error("side layout does not fit: {0}")]
    LayoutOverflow(String),
    #[error("vertex {0} has a straight angle")]
    FlatVertex(usize),
    #[error("bad tile set: {0}")]
    BadTileSet(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Wang(#[from] WangError),
}
