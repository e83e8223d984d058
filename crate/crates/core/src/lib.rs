//! Exact construction and verification of three-polygon tilings that simulate Wang tiles.

pub mod assembler;
pub mod carpet;
pub mod exactnum;
pub mod prototiles;
pub mod render;
pub mod search;
pub mod wang;
