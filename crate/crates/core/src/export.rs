//! Figure-style SVG drawing of a unit-distance graph.
//!
//! Vertices are drawn at their float-projected coordinates, edges as straight
//! segments. With per-vertex weights the fill shade scales with the weight,
//! so heavy orbits stand out the way they do in the published figures.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use crate::field::Rational;
use crate::graph::{Adjacency, UDGraph};

const PX_PER_UNIT: f64 = 80.0;
const MARGIN: f64 = 20.0;
const RADIUS: f64 = 4.0;

/// Renders `g` as a standalone SVG document.
///
/// `weights`, when given, must hold one weight per vertex.
pub fn to_svg(g: &UDGraph, weights: Option<&[Rational]>) -> String {
    let pts: Vec<(f64, f64)> = g.vertices().iter().map(|p| p.to_f64()).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    if let Some(&(x, y)) = pts.first() {
        (x0, y0, x1, y1) = (x, y, x, y);
    }
    for &(x, y) in &pts {
        x0 = x0.min(x);
        x1 = x1.max(x);
        y0 = y0.min(y);
        y1 = y1.max(y);
    }
    let w = (x1 - x0) * PX_PER_UNIT + 2.0 * MARGIN;
    let h = (y1 - y0) * PX_PER_UNIT + 2.0 * MARGIN;
    // SVG's y axis points down.
    let proj = |(x, y): (f64, f64)| {
        (
            (x - x0) * PX_PER_UNIT + MARGIN,
            (y1 - y) * PX_PER_UNIT + MARGIN,
        )
    };

    let max_w = weights
        .and_then(|ws| ws.iter().max().cloned())
        .filter(|m| !m.is_zero());

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.1}" height="{h:.1}" viewBox="0 0 {w:.1} {h:.1}">"#
    );
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="0.6">"#);
    for (i, j) in g.edges() {
        let (ax, ay) = proj(pts[i]);
        let (bx, by) = proj(pts[j]);
        let _ = writeln!(
            s,
            r#"<line x1="{ax:.2}" y1="{ay:.2}" x2="{bx:.2}" y2="{by:.2}"/>"#
        );
    }
    let _ = writeln!(s, "</g>");
    let _ = writeln!(s, r#"<g stroke="black" stroke-width="0.6">"#);
    for (v, &p) in pts.iter().enumerate() {
        let (cx, cy) = proj(p);
        let fill = match (weights, &max_w) {
            (Some(ws), Some(m)) => shade(&ws[v], m),
            _ => "white".to_string(),
        };
        let _ = writeln!(
            s,
            r#"<circle cx="{cx:.2}" cy="{cy:.2}" r="{RADIUS}" fill="{fill}"/>"#
        );
    }
    let _ = writeln!(s, "</g>");
    s.push_str("</svg>\n");
    s
}

// White at zero weight, deep red at the maximum.
fn shade(w: &Rational, max: &Rational) -> String {
    let t = (w / max).to_f64().unwrap_or(0.0).clamp(0.0, 1.0);
    let g = (255.0 * (1.0 - t)).round() as u8;
    format!("#ff{g:02x}{g:02x}")
}
