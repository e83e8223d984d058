//! Deterministic SVG output for prototiles and laid-out carpets.

use std::fmt::Write;

use thiserror::Error;

use crate::carpet::{CarpetGluing, Layout};
use crate::exactnum::Point;
use crate::prototiles::TurtlePolygon;

/// Fill colors for wheels, shurikens and staples, by prototile index.
pub const PALETTE: [&str; 3] = ["#4f7cac", "#e0a458", "#c0504d"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("layout has {layout} tiles but the gluing has {gluing}")]
    TileCount { layout: usize, gluing: usize },
    #[error("tile {tile} has {got} vertices in the layout, expected {expected}")]
    VertexCount { tile: usize, got: usize, expected: usize },
}

/// Default coordinate precision in bits.
pub const DEFAULT_BITS: u32 = 24;

pub fn svg_polygon(p: &TurtlePolygon, bits: u32) -> String {
    let color = match p.name.as_str() {
        "wheel" => PALETTE[0],
        "shuriken" => PALETTE[1],
        "staple" => PALETTE[2],
        _ => "#9a9a9a",
    };
    document(&[(coords(p.vertices(), bits), color)], bits)
}

/// One path per tile, colored by prototile.
pub fn svg_carpet(g: &CarpetGluing, layout: &Layout, bits: u32) -> Result<String, RenderError> {
    if layout.tile_points.len() != g.tiles.len() {
        return Err(RenderError::TileCount { layout: layout.tile_points.len(), gluing: g.tiles.len() });
    }
    let mut paths = Vec::with_capacity(g.tiles.len());
    for (t, (tile, pts)) in g.tiles.iter().zip(&layout.tile_points).enumerate() {
        let expected = g.prototiles.get(tile.prototile).map_or(0, TurtlePolygon::len);
        if pts.len() != expected {
            return Err(RenderError::VertexCount { tile: t, got: pts.len(), expected });
        }
        paths.push((coords(pts, bits), PALETTE[tile.prototile % PALETTE.len()]));
    }
    Ok(document(&paths, bits))
}

fn coords(pts: &[Point], bits: u32) -> Vec<(f64, f64)> {
    pts.iter()
        .map(|p| {
            let (x, y) = p.z().approx(bits);
            (x.midpoint_f64(), -y.midpoint_f64())
        })
        .collect()
}

fn decimals(bits: u32) -> usize {
    ((bits as f64 * std::f64::consts::LOG10_2).ceil() as usize).clamp(1, 15)
}

fn num(v: f64, d: usize) -> String {
    let s = format!("{v:.d$}");
    if s.starts_with('-') && s[1..].chars().all(|c| c == '0' || c == '.') {
        s[1..].to_string()
    } else {
        s
    }
}

fn document(paths: &[(Vec<(f64, f64)>, &str)], bits: u32) -> String {
    let d = decimals(bits);
    let all = paths.iter().flat_map(|(c, _)| c.iter());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for &(x, y) in all {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    if !x0.is_finite() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let size = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let margin = 0.05 * size;
    let stroke = 0.002 * size;
    let (w, h) = (x1 - x0 + 2.0 * margin, y1 - y0 + 2.0 * margin);

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"{} {} {} {}\">",
        num(x0 - margin, d),
        num(y0 - margin, d),
        num(w, d),
        num(h, d)
    );
    let _ = writeln!(
        out,
        "<g stroke=\"#202020\" stroke-width=\"{}\" stroke-linejoin=\"round\">",
        num(stroke, d)
    );
    for (c, color) in paths {
        out.push_str("<path fill=\"");
        out.push_str(color);
        out.push_str("\" d=\"");
        for (i, &(x, y)) in c.iter().enumerate() {
            let _ = write!(out, "{}{} {} ", if i == 0 { 'M' } else { 'L' }, num(x, d), num(y, d));
        }
        out.push_str("Z\"/>\n");
    }
    out.push_str("</g>\n</svg>\n");
    out
}
