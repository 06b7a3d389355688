//! Fold signs, crossing signs, twist, writhe and ribbon linking number.
//!
//! Sign conventions: a crossing is `+1` when the over strand heading `+x`
//! is crossed by an under strand heading `+y`. A fold is `+1` for a left
//! underfold or a right overfold and `-1` for a left overfold or a right
//! underfold. Straight vertices and zero-angle folds carry no sign.
//!
//! For an annulus each fold contributes `±1/2` and each crossing `±1`; for
//! a Mobius band folds contribute `±1` and crossings `±2`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;
use thiserror::Error;

use crate::diagram_core::{
    fold_angle, topological_type_with, vertex_kinds, Crossing, DiagramError, FoldingInfo, HeightAssignment,
    KnotDiagram, Layer, TopologicalType, VertexKind,
};
use crate::exec::Execution;
use crate::geom::{segment_meet, Point2, SegmentMeet};
use crate::ribbon_geometry::{boundary_components, build_ribbon, ribbonlength, GeometryError};
use crate::tolerances::EPS_GEOM;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinkingError {
    #[error("crossing between edges {over} and {under} is tangential")]
    Tangential { over: usize, under: usize },
    #[error("fold and crossing data give half-integer linking number {twice}/2")]
    NonInteger { twice: i64 },
    #[error("linking number {k} is not achievable on a convex {n}-gon")]
    Unachievable { n: usize, k: i64 },
    #[error("convex linking sets need n >= 3, got {0}")]
    TooFewSides(usize),
    #[error("polyline intersects itself between segments {0} and {1}")]
    SelfIntersecting(usize, usize),
    #[error("boundary component {0} does not exist")]
    NoSuchComponent(usize),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Turn {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FoldClassification {
    pub vertex: usize,
    pub turn: Turn,
    pub layer: Layer,
    pub sign: i32,
}

impl FoldClassification {
    pub fn new(vertex: usize, turn: Turn, layer: Layer) -> Self {
        let sign = match (turn, layer) {
            (Turn::Left, Layer::Under) | (Turn::Right, Layer::Over) => 1,
            _ => -1,
        };
        FoldClassification { vertex, turn, layer, sign }
    }
}

/// Sign of a crossing from the directions of its strands.
pub fn crossing_sign(c: &Crossing, d: &KnotDiagram) -> Result<i32, LinkingError> {
    let o = d.edge_vector(c.edge_over);
    let u = d.edge_vector(c.edge_under);
    let s = o.cross(u);
    if s.abs() <= EPS_GEOM * o.norm() * u.norm() {
        return Err(LinkingError::Tangential { over: c.edge_over, under: c.edge_under });
    }
    Ok(if s > 0.0 { 1 } else { -1 })
}

/// Sum of crossing signs.
pub fn writhe(d: &KnotDiagram) -> Result<i64, LinkingError> {
    d.crossings().iter().map(|c| crossing_sign(c, d).map(i64::from)).sum()
}

/// Sign of the fold at vertex `i`, `None` at straight or zero-angle vertices.
pub fn fold_sign(d: &KnotDiagram, f: &FoldingInfo, i: usize) -> Result<Option<i32>, LinkingError> {
    fold_sign_with(d, f, i, EPS_GEOM)
}

pub fn fold_sign_with(d: &KnotDiagram, f: &FoldingInfo, i: usize, eps: f64) -> Result<Option<i32>, LinkingError> {
    f.check_len(d)?;
    let a = fold_angle(d, i)?;
    Ok(classify(i, VertexKind::classify(a, eps), f.get(i)).map(|c| c.sign))
}

fn classify(i: usize, kind: VertexKind, layer: Layer) -> Option<FoldClassification> {
    match kind {
        VertexKind::Left => Some(FoldClassification::new(i, Turn::Left, layer)),
        VertexKind::Right => Some(FoldClassification::new(i, Turn::Right, layer)),
        _ => None,
    }
}

/// Classification of every fold that carries a sign.
pub fn fold_classifications(
    d: &KnotDiagram,
    f: &FoldingInfo,
    eps: f64,
) -> Result<Vec<FoldClassification>, LinkingError> {
    f.check_len(d)?;
    Ok(vertex_kinds(d, eps)?.into_iter().enumerate().filter_map(|(i, k)| classify(i, k, f.get(i))).collect())
}

/// `(1/2) sum of fold signs` for an annulus, `sum of fold signs` for a
/// Mobius band.
pub fn twist(d: &KnotDiagram, f: &FoldingInfo) -> Result<f64, LinkingError> {
    twist_with(d, f, EPS_GEOM)
}

pub fn twist_with(d: &KnotDiagram, f: &FoldingInfo, eps: f64) -> Result<f64, LinkingError> {
    let s: i64 = fold_classifications(d, f, eps)?.iter().map(|c| c.sign as i64).sum();
    Ok(match topological_type_with(d, eps)? {
        TopologicalType::Annulus => s as f64 / 2.0,
        TopologicalType::MobiusBand => s as f64,
    })
}

/// `Tw + Wr` for an annulus, `Tw + 2 Wr` for a Mobius band.
pub fn ribbon_linking_number(d: &KnotDiagram, f: &FoldingInfo) -> Result<i64, LinkingError> {
    ribbon_linking_number_with(d, f, EPS_GEOM)
}

pub fn ribbon_linking_number_with(d: &KnotDiagram, f: &FoldingInfo, eps: f64) -> Result<i64, LinkingError> {
    let s: i64 = fold_classifications(d, f, eps)?.iter().map(|c| c.sign as i64).sum();
    let wr = writhe(d)?;
    match topological_type_with(d, eps)? {
        TopologicalType::Annulus => {
            let twice = s + 2 * wr;
            if twice % 2 != 0 {
                return Err(LinkingError::NonInteger { twice });
            }
            Ok(twice / 2)
        }
        TopologicalType::MobiusBand => Ok(s + 2 * wr),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RibbonReport {
    pub rib: f64,
    pub lk: i64,
    pub tw: f64,
    pub wr: i64,
    pub ttype: TopologicalType,
    pub fold_signs: Vec<FoldClassification>,
}

impl RibbonReport {
    /// `Lk = Tw + Wr` (annulus) or `Lk = Tw + 2 Wr` (Mobius band).
    pub fn identity_holds(&self) -> bool {
        let rhs = match self.ttype {
            TopologicalType::Annulus => self.tw + self.wr as f64,
            TopologicalType::MobiusBand => self.tw + 2.0 * self.wr as f64,
        };
        rhs == self.lk as f64
    }
}

/// Everything at once, with `Rib` taken at width `w`.
pub fn ribbon_report(d: &KnotDiagram, f: &FoldingInfo, w: f64) -> Result<RibbonReport, LinkingError> {
    ribbon_report_with(d, f, w, EPS_GEOM)
}

pub fn ribbon_report_with(d: &KnotDiagram, f: &FoldingInfo, w: f64, eps: f64) -> Result<RibbonReport, LinkingError> {
    Ok(RibbonReport {
        rib: ribbonlength(d, w)?,
        lk: ribbon_linking_number_with(d, f, eps)?,
        tw: twist_with(d, f, eps)?,
        wr: writhe(d)?,
        ttype: topological_type_with(d, eps)?,
        fold_signs: fold_classifications(d, f, eps)?,
    })
}

/// Lower bound on ribbonlength in the writhe-zero regime: `2|lk|` for an
/// annulus, `|lk|` for a Mobius band.
pub fn rib_lower_bound(lk: i64, ttype: TopologicalType) -> f64 {
    match ttype {
        TopologicalType::Annulus => 2.0 * lk.unsigned_abs() as f64,
        TopologicalType::MobiusBand => lk.unsigned_abs() as f64,
    }
}

// Tilt of the projection used when heights are given, relative to the width.
const TILT: f64 = 1e-4;
const TILT_ANGLE: f64 = 0.3;

/// Result of counting boundary/diagram crossings directly.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarLinking {
    pub lk: i64,
    pub signed_sum: i64,
    pub counted: usize,
    /// Crossings with no layer information (no fold, crossing or height
    /// relates the two strands); left out of the sum.
    pub excluded: usize,
}

/// Linking number of the diagram with the first boundary component,
/// counted geometrically from the ribbon at width `w`.
pub fn linking_oracle_planar(d: &KnotDiagram, f: &FoldingInfo, w: f64) -> Result<i64, LinkingError> {
    Ok(linking_oracle_planar_with(d, f, w, 0, None)?.lk)
}

/// Geometric linking count against boundary component `component`.
///
/// Each transversal intersection of the boundary with a diagram edge gets
/// its over/under from, in order: the fold shared by the two edges, an
/// explicit diagram crossing between them, or the height lift. The result
/// is half the signed count.
///
/// With heights, crossings are counted in a slightly tilted projection of
/// the lifted ribbon, so strands stacked exactly on top of each other in
/// the plane come apart. Linking numbers do not depend on the projection
/// direction. Stacked constructions should be checked at a width below
/// their nominal one: at the nominal width their boundaries run exactly
/// through other strands' fold lines.
pub fn linking_oracle_planar_with(
    d: &KnotDiagram,
    f: &FoldingInfo,
    w: f64,
    component: usize,
    heights: Option<&HeightAssignment>,
) -> Result<PlanarLinking, LinkingError> {
    let rib = build_ribbon(d, f, w)?;
    let (d, boundary, layer_order) = match heights {
        None => (d.clone(), rib.boundary, rib.layer_order),
        Some(h) => {
            let t = Point2::new(TILT_ANGLE.cos(), TILT_ANGLE.sin()) * (TILT * w);
            let vertices = d.vertices().iter().zip(&h.heights).map(|(&p, &z)| p + t * z).collect();
            let crossings = d
                .crossings()
                .iter()
                .map(|c| {
                    let z = 0.5 * (h.heights[c.edge_over] + h.heights[c.edge_under]);
                    Crossing { point: c.point + t * z, ..*c }
                })
                .collect();
            let dt = KnotDiagram::with_crossings(vertices, crossings);
            let kinds = vertex_kinds(&dt, EPS_GEOM)?;
            let layers = crate::ribbon_geometry::layer_relations(&dt, f, &kinds);
            (dt.clone(), boundary_components(&dt, w)?, layers)
        }
    };
    let comp = boundary.get(component).ok_or(LinkingError::NoSuchComponent(component))?;
    let d = &d;
    let n = d.len();
    let eps = EPS_GEOM * w.min(1.0);
    let mut crossing_over: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for c in d.crossings() {
        let k = (c.edge_over.min(c.edge_under), c.edge_over.max(c.edge_under));
        crossing_over.insert(k, c.edge_over);
    }
    let upper_at: BTreeMap<usize, usize> = layer_order.iter().map(|r| (r.vertex, r.upper)).collect();
    let (mut sum, mut counted, mut excluded) = (0i64, 0usize, 0usize);
    for seg in comp {
        let i = seg.edge;
        let bdir = seg.end - seg.start;
        if bdir.norm() <= eps {
            continue;
        }
        for j in 0..n {
            if j == i {
                continue;
            }
            let (a, b) = d.edge(j);
            let (u, point) = match segment_meet(seg.start, seg.end, a, b, eps) {
                SegmentMeet::Proper { u, point, .. } => (u, point),
                _ => continue,
            };
            let strip_over = match strip_over_edge(d, i, j, point, u, &upper_at, &crossing_over, heights) {
                Some(o) => o,
                None => {
                    excluded += 1;
                    continue;
                }
            };
            let kdir = b - a;
            let s = if strip_over { bdir.cross(kdir) } else { kdir.cross(bdir) };
            sum += if s > 0.0 { 1 } else { -1 };
            counted += 1;
        }
    }
    if sum % 2 != 0 {
        return Err(LinkingError::NonInteger { twice: sum });
    }
    Ok(PlanarLinking { lk: sum / 2, signed_sum: sum, counted, excluded })
}

#[allow(clippy::too_many_arguments)]
fn strip_over_edge(
    d: &KnotDiagram,
    i: usize,
    j: usize,
    point: Point2,
    u: f64,
    upper_at: &BTreeMap<usize, usize>,
    crossing_over: &BTreeMap<(usize, usize), usize>,
    heights: Option<&HeightAssignment>,
) -> Option<bool> {
    let n = d.len();
    if d.edges_adjacent(i, j) {
        // shared vertices: (i+1 if j == i+1), (i if j == i-1); both when n == 2
        let mut shared = Vec::with_capacity(2);
        if (i + 1) % n == j {
            shared.push((i + 1) % n);
        }
        if (j + 1) % n == i {
            shared.push(i);
        }
        let v = *shared.iter().min_by(|&&x, &&y| d.vertex(x).dist(point).total_cmp(&d.vertex(y).dist(point)))?;
        if let Some(&upper) = upper_at.get(&v) {
            return Some(upper == i);
        }
    }
    if let Some(&o) = crossing_over.get(&(i.min(j), i.max(j))) {
        return Some(o == i);
    }
    let h = heights?;
    let (a, b) = d.edge(i);
    let ab = b - a;
    let t = ((point - a).dot(ab) / ab.dot(ab)).clamp(0.0, 1.0);
    let hi = h.on_edge(i, t);
    let hj = h.on_edge(j, u);
    if (hi - hj).abs() <= EPS_GEOM {
        None
    } else {
        Some(hi > hj)
    }
}

type P3 = [f64; 3];

fn sub3(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross3(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot3(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3(a: P3) -> f64 {
    dot3(a, a).sqrt()
}

/// Signed solid angle (over `4 pi`) subtended by two segments: their
/// Gauss double-integral contribution in closed form.
fn pair_writhe(p1: P3, p2: P3, p3: P3, p4: P3) -> f64 {
    let r13 = sub3(p3, p1);
    let r14 = sub3(p4, p1);
    let r23 = sub3(p3, p2);
    let r24 = sub3(p4, p2);
    let faces = [cross3(r13, r14), cross3(r14, r24), cross3(r24, r23), cross3(r23, r13)];
    let mut ns = [[0.0; 3]; 4];
    for (k, c) in faces.iter().enumerate() {
        let l = norm3(*c);
        if l < 1e-300 {
            return 0.0;
        }
        ns[k] = [c[0] / l, c[1] / l, c[2] / l];
    }
    let mut omega = 0.0;
    for k in 0..4 {
        omega += dot3(ns[k], ns[(k + 1) % 4]).clamp(-1.0, 1.0).asin();
    }
    let orient = dot3(cross3(sub3(p4, p3), sub3(p2, p1)), r13);
    if orient == 0.0 {
        return 0.0;
    }
    omega.abs() * orient.signum() / (4.0 * PI)
}

fn segment_distance3(p1: P3, p2: P3, p3: P3, p4: P3) -> f64 {
    // closest points on two segments, clamped
    let d1 = sub3(p2, p1);
    let d2 = sub3(p4, p3);
    let r = sub3(p1, p3);
    let a = dot3(d1, d1);
    let e = dot3(d2, d2);
    let f = dot3(d2, r);
    let c = dot3(d1, r);
    let b = dot3(d1, d2);
    let denom = a * e - b * b;
    let mut s = if denom > 1e-300 { ((b * f - c * e) / denom).clamp(0.0, 1.0) } else { 0.0 };
    let mut t = (b * s + f) / e;
    if t < 0.0 {
        t = 0.0;
        s = (-c / a).clamp(0.0, 1.0);
    } else if t > 1.0 {
        t = 1.0;
        s = ((b - c) / a).clamp(0.0, 1.0);
    }
    let q1 = [p1[0] + d1[0] * s, p1[1] + d1[1] * s, p1[2] + d1[2] * s];
    let q2 = [p3[0] + d2[0] * t, p3[1] + d2[1] * t, p3[2] + d2[2] * t];
    norm3(sub3(q1, q2))
}

/// Writhe of a closed 3D polyline as the Banchoff / Gauss sum of pairwise
/// signed solid angles.
pub fn space_writhe(poly: &[P3]) -> Result<f64, LinkingError> {
    let n = poly.len();
    let seg = |i: usize| (poly[i], poly[(i + 1) % n]);
    let scale = poly.iter().map(|p| norm3(*p)).fold(1.0, f64::max);
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a, b) = seg(i);
            let (c, e) = seg(j);
            if segment_distance3(a, b, c, e) <= EPS_GEOM * scale {
                return Err(LinkingError::SelfIntersecting(i, j));
            }
            total += pair_writhe(a, b, c, e);
        }
    }
    Ok(2.0 * total)
}

/// Lift each vertex to `scale * height`.
pub fn lift(d: &KnotDiagram, h: &HeightAssignment, scale: f64) -> Vec<P3> {
    d.vertices().iter().zip(&h.heights).map(|(p, &z)| [p.x, p.y, z * scale]).collect()
}

/// Lift that realizes the diagram's crossings: each crossing point is
/// inserted as a vertex at height `+h` on the over strand and `-h` on the
/// under strand; original vertices stay at height 0.
pub fn lift_respecting_crossings(d: &KnotDiagram, h: f64) -> Vec<P3> {
    let n = d.len();
    let mut out = Vec::new();
    for i in 0..n {
        let (a, b) = d.edge(i);
        out.push([a.x, a.y, 0.0]);
        let ab = b - a;
        let mut on_edge: Vec<(f64, f64)> = d
            .crossings()
            .iter()
            .filter_map(|c| {
                let z = if c.edge_over == i {
                    h
                } else if c.edge_under == i {
                    -h
                } else {
                    return None;
                };
                Some(((c.point - a).dot(ab) / ab.dot(ab), z))
            })
            .collect();
        on_edge.sort_by(|x, y| x.0.total_cmp(&y.0));
        for (t, z) in on_edge {
            let p = a + ab * t;
            out.push([p.x, p.y, z]);
        }
    }
    out
}

/// Achievable ribbon linking numbers of a convex `n`-gon, ascending.
pub fn enumerate_convex_linking(n: usize) -> Result<Vec<i64>, LinkingError> {
    if n < 3 {
        return Err(LinkingError::TooFewSides(n));
    }
    let n = n as i64;
    Ok(if n % 2 == 1 { (-n..=n).filter(|k| k % 2 != 0).collect() } else { (-n / 2..=n / 2).collect() })
}

/// `(underfolds, overfolds)` giving linking number `k` on a
/// counterclockwise convex `n`-gon.
pub fn folding_for_linking(n: usize, k: i64) -> Result<(usize, usize), LinkingError> {
    if !enumerate_convex_linking(n)?.contains(&k) {
        return Err(LinkingError::Unachievable { n, k });
    }
    let ni = n as i64;
    // odd: Lk = u - o; even: Lk = (u - o) / 2
    let u = if ni % 2 == 1 { (ni + k) / 2 } else { ni / 2 + k };
    Ok((u as usize, n - u as usize))
}

/// Ribbon linking number for every folding of `d`, indexed by the bitmask
/// of [`FoldingInfo::from_mask`].
pub fn enumerate_foldings(d: &KnotDiagram, eps: f64, exec: Execution) -> Result<Vec<i64>, LinkingError> {
    let n = d.len();
    assert!(n < 32, "brute force is limited to fewer than 32 vertices");
    let results =
        exec.map_range(1usize << n, |mask| ribbon_linking_number_with(d, &FoldingInfo::from_mask(n, mask as u64), eps));
    results.into_iter().collect()
}

/// `lk -> (number of underfolds -> number of foldings)`.
pub fn linking_census(n: usize, lks: &[i64]) -> BTreeMap<i64, BTreeMap<usize, usize>> {
    let mut out: BTreeMap<i64, BTreeMap<usize, usize>> = BTreeMap::new();
    for (mask, &lk) in lks.iter().enumerate() {
        let u = (mask as u64 & ((1u64 << n) - 1)).count_ones() as usize;
        *out.entry(lk).or_default().entry(u).or_default() += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram_core::regular_polygon;

    fn d_from(pts: &[(f64, f64)], crossings: Vec<Crossing>) -> KnotDiagram {
        KnotDiagram::with_crossings(pts.iter().map(|&(x, y)| Point2::new(x, y)).collect(), crossings)
    }

    #[test]
    fn crossing_sign_convention() {
        // edge 0 heads +x, edge 2 heads +y, crossing at (1, 0)
        let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, -1.0), (1.0, 1.0), (5.0, 5.0)];
        let d = d_from(&pts, vec![]);
        let c = Crossing { edge_over: 0, edge_under: 2, point: Point2::new(1.0, 0.0) };
        assert_eq!(crossing_sign(&c, &d).unwrap(), 1);
        let pts = [(0.0, 0.0), (2.0, 0.0), (1.0, 1.0), (1.0, -1.0), (5.0, 5.0)];
        let d = d_from(&pts, vec![]);
        assert_eq!(crossing_sign(&c, &d).unwrap(), -1);
    }

    #[test]
    fn triangle_folds_and_linking() {
        let tri = regular_polygon(3, 1.0);
        let uuu = FoldingInfo::parse("uuu").unwrap();
        for i in 0..3 {
            assert_eq!(fold_sign(&tri, &uuu, i).unwrap(), Some(1));
        }
        let uuo = FoldingInfo::parse("uuo").unwrap();
        assert_eq!(fold_sign(&tri, &uuo, 2).unwrap(), Some(-1));
        assert_eq!(ribbon_linking_number(&tri, &uuu).unwrap(), 3);
        assert_eq!(ribbon_linking_number(&tri, &uuo).unwrap(), 1);
        assert_eq!(twist(&tri, &uuo).unwrap(), 1.0);
    }

    #[test]
    fn square_and_hexagon() {
        let sq = regular_polygon(4, 4.0);
        let all_u = FoldingInfo::uniform(4, Layer::Under);
        assert_eq!(twist(&sq, &all_u).unwrap(), 2.0);
        assert_eq!(ribbon_linking_number(&sq, &all_u).unwrap(), 2);
        let hex = regular_polygon(6, 1.0);
        assert_eq!(ribbon_linking_number(&hex, &FoldingInfo::uniform(6, Layer::Under)).unwrap(), 3);
    }

    #[test]
    fn two_stick_has_no_signs() {
        let d = d_from(&[(0.0, 0.0), (1.0, 0.0)], vec![]);
        let f = FoldingInfo::parse("uo").unwrap();
        assert_eq!(fold_sign(&d, &f, 0).unwrap(), None);
        assert_eq!(fold_sign(&d, &f, 1).unwrap(), None);
        assert_eq!(ribbon_linking_number(&d, &f).unwrap(), 0);
    }

    #[test]
    fn convex_sets() {
        assert_eq!(enumerate_convex_linking(3).unwrap(), vec![-3, -1, 1, 3]);
        assert_eq!(enumerate_convex_linking(4).unwrap(), vec![-2, -1, 0, 1, 2]);
        assert_eq!(folding_for_linking(3, 1).unwrap(), (2, 1));
        assert_eq!(folding_for_linking(4, 0).unwrap(), (2, 2));
        assert_eq!(folding_for_linking(5, 5).unwrap(), (5, 0));
        assert!(matches!(folding_for_linking(5, 2), Err(LinkingError::Unachievable { .. })));
        assert!(enumerate_convex_linking(2).is_err());
    }

    #[test]
    fn lower_bounds() {
        assert_eq!(rib_lower_bound(3, TopologicalType::Annulus), 6.0);
        assert_eq!(rib_lower_bound(3, TopologicalType::MobiusBand), 3.0);
        assert_eq!(rib_lower_bound(0, TopologicalType::Annulus), 0.0);
        assert_eq!(rib_lower_bound(-2, TopologicalType::Annulus), 4.0);
    }

    #[test]
    fn oracle_on_square_and_triangle() {
        let sq = regular_polygon(4, 4.0);
        let f = FoldingInfo::uniform(4, Layer::Under);
        assert_eq!(linking_oracle_planar(&sq, &f, 0.125).unwrap(), 2);
        let tri = regular_polygon(3, 1.0);
        let f = FoldingInfo::parse("uuo").unwrap();
        assert_eq!(linking_oracle_planar(&tri, &f, 0.01).unwrap(), 1);
    }

    #[test]
    fn planar_curve_has_zero_space_writhe() {
        let hex = regular_polygon(6, 1.0);
        let poly = lift(&hex, &HeightAssignment::zeros(6), 1.0);
        assert!(space_writhe(&poly).unwrap().abs() < 1e-12);
    }

    #[test]
    fn self_intersection_is_rejected() {
        // figure-eight shaped planar quad: edges 0 and 2 cross
        let poly = vec![[0.0, 0.0, 0.0], [1.0, 1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]];
        assert!(matches!(space_writhe(&poly), Err(LinkingError::SelfIntersecting(..))));
    }
}
