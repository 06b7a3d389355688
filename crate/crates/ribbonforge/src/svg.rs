//! Schematic SVG rendering of a folded ribbon.
//!
//! Fixed styling: core `#1f2937` solid, first boundary component `#2563eb`
//! dashed, second `#dc2626` dashed, fold lines `#059669` dotted, fold-sign
//! labels `#7c3aed`. The view box is the bounding box of everything drawn,
//! scaled by 1.5 about its center.

use std::fmt::Write as _;

use crate::diagram_core::{FoldingInfo, KnotDiagram};
use crate::geom::Point2;
use crate::linking::{fold_classifications, LinkingError};
use crate::ribbon_geometry::{boundary_components, fold_lines};

pub const CORE_COLOR: &str = "#1f2937";
pub const BOUNDARY_COLORS: [&str; 2] = ["#2563eb", "#dc2626"];
pub const FOLD_LINE_COLOR: &str = "#059669";
pub const LABEL_COLOR: &str = "#7c3aed";

fn path_data(points: &[Point2], close: bool) -> String {
    let mut s = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(s, "{}{:.6} {:.6} ", if i == 0 { "M" } else { "L" }, p.x, -p.y);
    }
    if close {
        s.push('Z');
    }
    s.trim_end().to_string()
}

/// Render the diagram, its ribbon boundary at width `w`, one dotted line
/// per fold, and a `+`/`-` label at each signed fold.
pub fn render(d: &KnotDiagram, f: &FoldingInfo, w: f64, eps: f64) -> Result<String, LinkingError> {
    let lines = fold_lines(d, w)?;
    let boundary = boundary_components(d, w)?;
    let signs = fold_classifications(d, f, eps)?;

    let mut pts: Vec<Point2> = d.vertices().to_vec();
    for comp in &boundary {
        for s in comp {
            pts.push(s.start);
            pts.push(s.end);
        }
    }
    for l in &lines {
        pts.push(l.endpoints.0);
        pts.push(l.endpoints.1);
    }
    let (mut x0, mut x1, mut y0, mut y1) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for p in &pts {
        x0 = x0.min(p.x);
        x1 = x1.max(p.x);
        y0 = y0.min(-p.y);
        y1 = y1.max(-p.y);
    }
    let (cx, cy) = ((x0 + x1) / 2.0, (y0 + y1) / 2.0);
    let span = (x1 - x0).max(y1 - y0).max(w).max(1e-12);
    let (bw, bh) = (1.5 * (x1 - x0).max(span * 0.1), 1.5 * (y1 - y0).max(span * 0.1));
    let stroke = span / 250.0;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{:.6} {:.6} {:.6} {:.6}">"#,
        cx - bw / 2.0,
        cy - bh / 2.0,
        bw,
        bh
    );
    for (k, comp) in boundary.iter().enumerate() {
        let mut poly: Vec<Point2> = comp.iter().map(|s| s.start).collect();
        if let Some(last) = comp.last() {
            poly.push(last.end);
        }
        let _ = writeln!(
            out,
            r#"  <path class="boundary" d="{}" fill="none" stroke="{}" stroke-width="{:.6}" stroke-dasharray="{:.6} {:.6}"/>"#,
            path_data(&poly, true),
            BOUNDARY_COLORS[k % 2],
            stroke,
            4.0 * stroke,
            2.0 * stroke
        );
    }
    for l in &lines {
        let (a, b) = l.endpoints;
        let _ = writeln!(
            out,
            r#"  <line class="fold-line" x1="{:.6}" y1="{:.6}" x2="{:.6}" y2="{:.6}" stroke="{}" stroke-width="{:.6}" stroke-dasharray="{:.6} {:.6}"/>"#,
            a.x, -a.y, b.x, -b.y, FOLD_LINE_COLOR, stroke, stroke, stroke
        );
    }
    let _ = writeln!(
        out,
        r#"  <path class="core" d="{}" fill="none" stroke="{}" stroke-width="{:.6}"/>"#,
        path_data(d.vertices(), true),
        CORE_COLOR,
        1.5 * stroke
    );
    for c in &signs {
        let p = d.vertex(c.vertex);
        let _ = writeln!(
            out,
            r#"  <text class="fold-sign" x="{:.6}" y="{:.6}" font-size="{:.6}" fill="{}">{}</text>"#,
            p.x,
            -p.y,
            8.0 * stroke,
            LABEL_COLOR,
            if c.sign > 0 { "+" } else { "-" }
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
