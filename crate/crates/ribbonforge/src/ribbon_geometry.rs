//! The folded ribbon of width `w` around a diagram.
//!
//! At a vertex with fold angle `a`, the fold line passes through the vertex
//! perpendicular to the angle bisector. It meets the edge directions at
//! angle `pi/2 - |a|/2`, so crossing a strip of width `w` takes a segment of
//! half-length `(w/2) / cos(|a|/2)`. For `a = pi/2`, `w = 1` this is the
//! `sqrt(2)/2` leg of the right isosceles fold triangle; for `a = 0` it is
//! `w/2`, perpendicular to the edge. Along each edge the fold line's
//! endpoints sit `(w/2) tan(|a|/2)` from the vertex, which gives the
//! exterior gap formula.
//!
//! A fold is a mirror: the boundary running on one side of edge `i - 1`
//! continues on the other side of edge `i`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::diagram_core::{
    fold_angle, fold_angles, interior_angles, total_length, vertex_kinds, DiagramError, FoldingInfo, KnotDiagram,
    Layer, TopologicalType, VertexKind,
};
use crate::geom::{point_segment_distance, segment_meet, Point2, SegmentMeet};
use crate::tolerances::EPS_GEOM;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("angle {0} is outside the open interval (0, pi)")]
    AngleOutOfRange(f64),
    #[error("width must be positive, got {0}")]
    NonPositiveWidth(f64),
    #[error("width {width} is infeasible: {reason}")]
    InfeasibleWidth { width: f64, reason: String },
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn check_open_angle(theta: f64) -> Result<(), GeometryError> {
    if theta > 0.0 && theta < PI {
        Ok(())
    } else {
        Err(GeometryError::AngleOutOfRange(theta))
    }
}

fn check_width(w: f64) -> Result<(), GeometryError> {
    if w > 0.0 && w.is_finite() {
        Ok(())
    } else {
        Err(GeometryError::NonPositiveWidth(w))
    }
}

/// Ribbonlength of a single fold with fold angle `theta`: `1/sin(theta)`.
pub fn fold_ribbonlength(theta: f64) -> Result<f64, GeometryError> {
    check_open_angle(theta)?;
    Ok(1.0 / theta.sin())
}

/// Ribbonlength of an extended fold: `cot(theta/2)` when acute,
/// `cot(pi/2 - theta/2)` when obtuse.
pub fn extended_fold_ribbonlength(theta: f64) -> Result<f64, GeometryError> {
    check_open_angle(theta)?;
    let half = if theta <= PI / 2.0 { theta / 2.0 } else { PI / 2.0 - theta / 2.0 };
    Ok(1.0 / half.tan())
}

/// `Len(d) / w`.
pub fn ribbonlength(d: &KnotDiagram, w: f64) -> Result<f64, GeometryError> {
    check_width(w)?;
    Ok(total_length(d) / w)
}

/// Per-edge exterior gaps `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapVector {
    pub gaps: Vec<f64>,
}

impl GapVector {
    pub fn min(&self) -> f64 {
        self.gaps.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// `x_i = |v_i v_{i+1}| - (w/2)(tan(a_i/2) + tan(a_{i+1}/2))` for a convex
/// diagram. Negative entries mean `w` is too wide.
pub fn exterior_gaps(d: &KnotDiagram, w: f64) -> Result<GapVector, GeometryError> {
    check_width(w)?;
    let alphas = interior_angles(d)?;
    let n = d.len();
    let gaps = (0..n)
        .map(|i| {
            let t = (alphas[i] / 2.0).tan() + (alphas[(i + 1) % n] / 2.0).tan();
            d.edge_length(i) - w / 2.0 * t
        })
        .collect();
    Ok(GapVector { gaps })
}

/// A width bound; `heuristic` marks angles outside the regime where the
/// fold-line criterion is known to be the binding one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthBound {
    pub width: f64,
    pub heuristic: bool,
}

/// Largest `w` with every exterior gap nonnegative, for a convex diagram:
/// `min_i 2|v_i v_{i+1}| / (tan(a_i/2) + tan(a_{i+1}/2))`.
pub fn max_width(d: &KnotDiagram) -> Result<WidthBound, GeometryError> {
    let alphas = interior_angles(d)?;
    let n = d.len();
    let width = (0..n)
        .map(|i| {
            let t = (alphas[i] / 2.0).tan() + (alphas[(i + 1) % n] / 2.0).tan();
            2.0 * d.edge_length(i) / t
        })
        .fold(f64::INFINITY, f64::min);
    let obtuse = alphas.iter().all(|&a| a >= PI / 2.0 - EPS_GEOM);
    Ok(WidthBound { width, heuristic: !(n == 3 || obtuse) })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FoldLine {
    pub vertex: usize,
    pub endpoints: (Point2, Point2),
    pub half_length: f64,
}

/// Stacking at one fold: edge `upper` lies on `lower` near vertex `vertex`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayerRelation {
    pub vertex: usize,
    pub upper: usize,
    pub lower: usize,
}

/// One piece of a boundary component: the offset of edge `edge` on `side`
/// (`+1` left, `-1` right) between consecutive fold lines.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySegment {
    pub edge: usize,
    pub side: i8,
    pub start: Point2,
    pub end: Point2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RibbonGeometry {
    pub width: f64,
    pub fold_lines: Vec<FoldLine>,
    /// One closed polyline for a Mobius band, two for an annulus. The
    /// first annulus component starts on the left of edge 0.
    pub boundary: Vec<Vec<BoundarySegment>>,
    pub layer_order: Vec<LayerRelation>,
    pub ttype: TopologicalType,
}

impl RibbonGeometry {
    /// Boundary components as closed point lists.
    pub fn boundary_polylines(&self) -> Vec<Vec<Point2>> {
        self.boundary.iter().map(|c| c.iter().map(|s| s.start).collect()).collect()
    }
}

/// Unit direction of the fold line at a folding vertex.
fn fold_direction(din: Point2, dout: Point2) -> Point2 {
    let a = din.normalized();
    let b = dout.normalized();
    let bis = b - a;
    if bis.norm() < 1e-12 {
        // straight: the "fold line" is the normal
        return a.perp();
    }
    bis.normalized().perp()
}

/// Fold line at vertex `i` for width `w`, or `None` at straight vertices.
pub fn fold_line(d: &KnotDiagram, i: usize, w: f64) -> Result<Option<FoldLine>, GeometryError> {
    check_width(w)?;
    let a = fold_angle(d, i)?;
    if VertexKind::classify(a, EPS_GEOM) == VertexKind::Straight {
        return Ok(None);
    }
    let n = d.len();
    let f = fold_direction(d.edge_vector((i + n - 1) % n), d.edge_vector(i));
    let half = (w / 2.0) / (a.abs() / 2.0).cos();
    let v = d.vertex(i);
    Ok(Some(FoldLine { vertex: i, endpoints: (v - f * half, v + f * half), half_length: half }))
}

pub fn fold_lines(d: &KnotDiagram, w: f64) -> Result<Vec<FoldLine>, GeometryError> {
    let mut out = Vec::new();
    for i in 0..d.len() {
        if let Some(fl) = fold_line(d, i, w)? {
            out.push(fl);
        }
    }
    Ok(out)
}

/// Point where the fold line at vertex `v` meets the `side` offset of
/// `edge`.
fn offset_corner(d: &KnotDiagram, v: usize, edge: usize, side: i8, w: f64, kinds: &[VertexKind]) -> Point2 {
    let n = d.len();
    let nrm = d.edge_vector(edge).normalized().perp();
    let off = nrm * (side as f64 * w / 2.0);
    let p = d.vertex(v);
    if kinds[v] == VertexKind::Straight {
        return p + off;
    }
    let f = fold_direction(d.edge_vector((v + n - 1) % n), d.edge_vector(v));
    // p + t f with (t f) . nrm = side w/2
    let t = side as f64 * (w / 2.0) / f.dot(nrm);
    p + f * t
}

/// Boundary components without any feasibility check.
pub fn boundary_components(d: &KnotDiagram, w: f64) -> Result<Vec<Vec<BoundarySegment>>, GeometryError> {
    check_width(w)?;
    let n = d.len();
    let kinds = vertex_kinds(d, EPS_GEOM)?;
    let folds = kinds.iter().filter(|k| k.is_fold()).count();
    let trace = |start_side: i8, laps: usize| {
        let mut side = start_side;
        let mut segs = Vec::with_capacity(n * laps);
        for step in 0..n * laps {
            let e = step % n;
            let s = offset_corner(d, e, e, side, w, &kinds);
            let next = (e + 1) % n;
            let t = offset_corner(d, next, e, side, w, &kinds);
            segs.push(BoundarySegment { edge: e, side, start: s, end: t });
            if kinds[next].is_fold() {
                side = -side;
            }
        }
        segs
    };
    Ok(if folds % 2 == 0 { vec![trace(1, 1), trace(-1, 1)] } else { vec![trace(1, 2)] })
}

pub(crate) fn layer_relations(d: &KnotDiagram, f: &FoldingInfo, kinds: &[VertexKind]) -> Vec<LayerRelation> {
    let n = d.len();
    (0..n)
        .filter(|&i| kinds[i].is_fold())
        .map(|i| {
            let inc = (i + n - 1) % n;
            match f.get(i) {
                Layer::Under => LayerRelation { vertex: i, upper: inc, lower: i },
                Layer::Over => LayerRelation { vertex: i, upper: i, lower: inc },
            }
        })
        .collect()
}

/// Pairs of fold lines whose interiors cross. Collinear overlaps and
/// touching endpoints are allowed.
pub fn crossing_fold_lines(lines: &[FoldLine], eps: f64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for a in 0..lines.len() {
        for b in (a + 1)..lines.len() {
            let (a0, a1) = lines[a].endpoints;
            let (b0, b1) = lines[b].endpoints;
            if let SegmentMeet::Proper { .. } = segment_meet(a0, a1, b0, b1, eps) {
                out.push((lines[a].vertex, lines[b].vertex));
            }
        }
    }
    out
}

/// True when no two fold lines cross at width `w`.
pub fn fold_lines_clear(d: &KnotDiagram, w: f64) -> Result<bool, GeometryError> {
    let lines = fold_lines(d, w)?;
    let scale = lines.iter().map(|l| l.half_length).fold(1.0, f64::max);
    Ok(crossing_fold_lines(&lines, EPS_GEOM * scale).is_empty())
}

/// Build the ribbon, rejecting widths where fold lines cross (for convex
/// diagrams: where some exterior gap is negative).
pub fn build_ribbon(d: &KnotDiagram, f: &FoldingInfo, w: f64) -> Result<RibbonGeometry, GeometryError> {
    check_width(w)?;
    f.check_len(d)?;
    let kinds = vertex_kinds(d, EPS_GEOM)?;
    if d.crossings().is_empty() && crate::diagram_core::is_convex(d)? {
        let g = exterior_gaps(d, w)?;
        let scale = total_length(d).max(1.0);
        if g.min() < -EPS_GEOM * scale {
            return Err(GeometryError::InfeasibleWidth {
                width: w,
                reason: format!("negative exterior gap {:.3e}", g.min()),
            });
        }
    }
    let fold_lines = fold_lines(d, w)?;
    let scale = fold_lines.iter().map(|l| l.half_length).fold(1.0, f64::max);
    if let Some(&(a, b)) = crossing_fold_lines(&fold_lines, EPS_GEOM * scale).first() {
        return Err(GeometryError::InfeasibleWidth {
            width: w,
            reason: format!("fold lines at vertices {a} and {b} cross"),
        });
    }
    let boundary = boundary_components(d, w)?;
    let ttype = if boundary.len() == 2 { TopologicalType::Annulus } else { TopologicalType::MobiusBand };
    Ok(RibbonGeometry { width: w, fold_lines, boundary, layer_order: layer_relations(d, f, &kinds), ttype })
}

/// Largest width with no crossing fold lines, found by bisection between a
/// clear width and a blocked one. Returns `None` if fold lines never meet
/// up to `w_hi`.
pub fn fold_line_width_bound(d: &KnotDiagram, w_hi: f64) -> Result<Option<f64>, GeometryError> {
    check_width(w_hi)?;
    if fold_lines_clear(d, w_hi)? {
        return Ok(None);
    }
    let mut hi = w_hi;
    // shrink until clear
    let mut probe = w_hi;
    while !fold_lines_clear(d, probe)? {
        hi = probe;
        probe /= 2.0;
        if probe < 1e-300 {
            return Ok(Some(0.0));
        }
    }
    let mut lo = probe;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if fold_lines_clear(d, mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(Some(lo))
}

/// The fold layer relations of a convex diagram form a directed cycle
/// through all edges exactly when every fold has the same type. In that
/// case a point covered by every strip would need a cyclic stacking, so
/// the width is limited by where all strips first overlap: twice the
/// smallest radius `r` such that some point lies within `r` of every edge.
///
/// The minimax point is located numerically by nested golden-section
/// search over the convex function `max_i dist(p, e_i)`.
pub fn self_intersection_width_bound(d: &KnotDiagram, f: &FoldingInfo) -> Result<Option<f64>, GeometryError> {
    f.check_len(d)?;
    if !d.crossings().is_empty() || !crate::diagram_core::is_convex(d)? {
        return Ok(None);
    }
    let first = f.get(0);
    if f.folds().iter().any(|&l| l != first) {
        return Ok(None);
    }
    let n = d.len();
    let far = |p: Point2| {
        (0..n)
            .map(|i| {
                let (a, b) = d.edge(i);
                point_segment_distance(p, a, b)
            })
            .fold(0.0, f64::max)
    };
    let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for v in d.vertices() {
        xmin = xmin.min(v.x);
        xmax = xmax.max(v.x);
        ymin = ymin.min(v.y);
        ymax = ymax.max(v.y);
    }
    let inner = |x: f64| golden_min(|y| far(Point2::new(x, y)), ymin, ymax).1;
    let (x, _) = golden_min(inner, xmin, xmax);
    let (_, r) = golden_min(|y| far(Point2::new(x, y)), ymin, ymax);
    Ok(Some(2.0 * r))
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
fn golden_min<F: Fn(f64) -> f64>(g: F, mut a: f64, mut b: f64) -> (f64, f64) {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - phi * (b - a);
    let mut e = a + phi * (b - a);
    let mut gc = g(c);
    let mut ge = g(e);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs() + b.abs()) {
            break;
        }
        if gc <= ge {
            b = e;
            e = c;
            ge = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = e;
            gc = ge;
            e = a + phi * (b - a);
            ge = g(e);
        }
    }
    if gc <= ge {
        (c, gc)
    } else {
        (e, ge)
    }
}

/// Both width limits for a diagram with folding, and the smaller one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibleWidth {
    /// Fold lines stop crossing below this width (gap formula for convex
    /// diagrams, bisection otherwise).
    pub fold_line: f64,
    /// Cyclic-stacking limit, when it applies.
    pub self_intersection: Option<f64>,
    pub width: f64,
    pub heuristic: bool,
}

/// Largest usable width for `d` with folding `f`.
pub fn max_feasible_width(d: &KnotDiagram, f: &FoldingInfo) -> Result<FeasibleWidth, GeometryError> {
    f.check_len(d)?;
    let convex = d.crossings().is_empty() && crate::diagram_core::is_convex(d)?;
    let (fold_line, heuristic) = if convex {
        let b = max_width(d)?;
        (b.width, b.heuristic)
    } else {
        let hi = 4.0 * total_length(d);
        let w = fold_line_width_bound(d, hi)?.unwrap_or(f64::INFINITY);
        (w, true)
    };
    let self_intersection = self_intersection_width_bound(d, f)?;
    let width = self_intersection.map_or(fold_line, |s| s.min(fold_line));
    Ok(FeasibleWidth { fold_line, self_intersection, width, heuristic })
}

/// Fold angles classified at the default tolerance, for callers that only
/// need to know which vertices fold.
pub fn folding_vertices(d: &KnotDiagram) -> Result<Vec<usize>, GeometryError> {
    Ok(fold_angles(d)?
        .into_iter()
        .enumerate()
        .filter(|&(_, a)| VertexKind::classify(a, EPS_GEOM).is_fold())
        .map(|(i, _)| i)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::regular_polygon;
    use approx::assert_abs_diff_eq;

    fn unit_square() -> KnotDiagram {
        KnotDiagram::from_xy(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    }

    #[test]
    fn fold_lengths() {
        assert_abs_diff_eq!(fold_ribbonlength(PI / 2.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(fold_ribbonlength(PI / 3.0).unwrap(), 2.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(fold_ribbonlength(PI / 6.0).unwrap(), 2.0, epsilon = 1e-14);
        assert!(fold_ribbonlength(0.0).is_err());
        assert!(fold_ribbonlength(PI).is_err());
    }

    #[test]
    fn extended_fold_lengths() {
        assert_abs_diff_eq!(extended_fold_ribbonlength(PI / 2.0).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(extended_fold_ribbonlength(PI / 3.0).unwrap(), 3f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(extended_fold_ribbonlength(2.0 * PI / 3.0).unwrap(), 3f64.sqrt(), epsilon = 1e-14);
        assert!(extended_fold_ribbonlength(-0.1).is_err());
    }

    #[test]
    fn ribbonlength_values() {
        let tri = regular_polygon(3, 1.0);
        assert_abs_diff_eq!(ribbonlength(&tri, 1.0 / 3f64.sqrt()).unwrap(), 3f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(ribbonlength(&tri, 1.0).unwrap(), 1.0, epsilon = 1e-15);
        assert!(ribbonlength(&tri, 0.0).is_err());
    }

    #[test]
    fn square_gaps() {
        let sq = unit_square();
        for g in exterior_gaps(&sq, 1.0).unwrap().gaps {
            assert_abs_diff_eq!(g, 0.0, epsilon = 1e-15);
        }
        for g in exterior_gaps(&sq, 0.5).unwrap().gaps {
            assert_abs_diff_eq!(g, 0.5, epsilon = 1e-15);
        }
    }

    #[test]
    fn triangle_gaps_vanish_at_max_width() {
        let tri = regular_polygon(3, 1.0);
        for g in exterior_gaps(&tri, 1.0 / 3f64.sqrt()).unwrap().gaps {
            assert_abs_diff_eq!(g, 0.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn max_width_closed_forms() {
        assert_abs_diff_eq!(max_width(&regular_polygon(3, 1.0)).unwrap().width, 1.0 / 3f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(max_width(&regular_polygon(4, 1.0)).unwrap().width, 0.25, epsilon = 1e-15);
        // independent: side s, w = s tan(pi/n)
        let pent = max_width(&regular_polygon(5, 1.0)).unwrap().width;
        assert_abs_diff_eq!(pent, 0.2 * (PI / 5.0).tan(), epsilon = 1e-15);
        assert_abs_diff_eq!(pent, 0.1453085, epsilon = 1e-7);
    }

    #[test]
    fn square_ribbon() {
        let sq = unit_square();
        let r = build_ribbon(&sq, &FoldingInfo::uniform(4, Layer::Under), 0.5).unwrap();
        assert_eq!(r.fold_lines.len(), 4);
        for fl in &r.fold_lines {
            assert_abs_diff_eq!(fl.half_length, 2f64.sqrt() / 4.0, epsilon = 1e-15);
        }
        assert_eq!(r.boundary.len(), 2);
        // outer and inner squares
        let polys = r.boundary_polylines();
        let mut xs: Vec<f64> = polys.iter().flatten().map(|p| p.x).collect();
        xs.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(xs[0], -0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(xs[xs.len() - 1], 1.25, epsilon = 1e-15);
    }

    #[test]
    fn two_stick_ribbon() {
        let d = KnotDiagram::from_xy(&[(0.0, 0.0), (1.0, 0.0)]);
        let r = build_ribbon(&d, &FoldingInfo::parse("uo").unwrap(), 0.3).unwrap();
        assert_eq!(r.fold_lines.len(), 2);
        for fl in &r.fold_lines {
            let (a, b) = fl.endpoints;
            assert_abs_diff_eq!(a.x, b.x, epsilon = 1e-15);
            assert_abs_diff_eq!(fl.half_length, 0.15, epsilon = 1e-15);
        }
        assert_eq!(r.ttype, TopologicalType::Annulus);
        assert_eq!(r.boundary.len(), 2);
    }

    #[test]
    fn triangle_fold_lines_meet_at_max_width() {
        let tri = regular_polygon(3, 1.0);
        let w = 1.0 / 3f64.sqrt();
        let r = build_ribbon(&tri, &FoldingInfo::parse("uuo").unwrap(), w).unwrap();
        let ends: Vec<Point2> = r.fold_lines.iter().flat_map(|l| [l.endpoints.0, l.endpoints.1]).collect();
        for (i, a) in ends.iter().enumerate() {
            let nearest = ends
                .iter()
                .enumerate()
                .filter(|&(j, _)| j / 2 != i / 2)
                .map(|(_, b)| a.dist(*b))
                .fold(f64::INFINITY, f64::min);
            // every fold line endpoint touches another fold line's endpoint
            // or lies far inside; at least the outer ones coincide
            assert!(!(1e-12..=0.1).contains(&nearest));
        }
        assert!(build_ribbon(&tri, &FoldingInfo::parse("uuo").unwrap(), w * 1.01).is_err());
    }

    #[test]
    fn triangle_self_intersection_bound() {
        let tri = regular_polygon(3, 1.0);
        let s = self_intersection_width_bound(&tri, &FoldingInfo::parse("uuu").unwrap()).unwrap().unwrap();
        // independent: 2 * inradius = 2 * area / semiperimeter
        let side = 1.0 / 3.0;
        let area = 3f64.sqrt() / 4.0 * side * side;
        assert_abs_diff_eq!(s, 2.0 * area / 0.5, epsilon = 1e-12);
        assert!(self_intersection_width_bound(&tri, &FoldingInfo::parse("uuo").unwrap()).unwrap().is_none());
    }

    #[test]
    fn bisection_matches_gap_formula_on_convex() {
        let pent = regular_polygon(5, 1.0);
        let closed = max_width(&pent).unwrap().width;
        let bis = fold_line_width_bound(&pent, 4.0).unwrap().unwrap();
        assert_abs_diff_eq!(bis, closed, epsilon = 1e-8);
    }
}
