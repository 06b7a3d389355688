//! Diagrams with folding information that realize prescribed linking
//! numbers and ribbonlengths.
//!
//! Stacked constructions are emitted in their exact, degenerate form:
//! folded strands lie on top of each other and zero-angle folds are true
//! reversals. Their vertical order is carried by a [`HeightAssignment`].
//! [`ConstructionResult::opened`] gives a separated copy for drawing.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram_core::{
    fold_angle, total_length, vertex_kinds, Crossing, DiagramError, FoldingInfo, HeightAssignment, KnotDiagram, Layer,
    TopologicalType, VertexKind,
};
use crate::geom::Point2;
use crate::linking::{ribbon_report, LinkingError, RibbonReport};
use crate::ribbon_geometry::{max_feasible_width, GeometryError};
use crate::tolerances::EPS_GEOM;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructionError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {0} is not on the convex hull of the diagram")]
    NotOnHull(usize),
    #[error("fold angle {angle} at vertex {vertex} must lie strictly between 0 and pi")]
    DegenerateAngle { vertex: usize, angle: f64 },
    #[error("a {ttype} base cannot absorb linking number {n} at a single fold: fold signs have the wrong parity")]
    ParityObstruction { ttype: TopologicalType, n: i64 },
    #[error("no fold choice at the splice gives linking number {target}")]
    NoSplice { target: i64 },
    #[error("recomputed {field} = {computed} but {claimed} was claimed")]
    Mismatch { field: &'static str, claimed: String, computed: String },
    #[error(transparent)]
    Linking(#[from] LinkingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn of(k: i64) -> Sign {
        if k < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if *self == Sign::Plus { "+" } else { "-" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConstructionKind {
    TwoStick,
    RegularNGon,
    FourStickLk1,
    AnnulusLkN,
    PentagramTrefoil,
    ConnectedSum,
}

/// Parameters selecting a construction. `scale` is the edge length for
/// [`two_stick`], the perimeter for [`regular_ngon`] and the circumradius
/// for [`pentagram_trefoil`]; `width` is the ribbon width where the
/// construction takes one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionSpec {
    pub kind: ConstructionKind,
    pub n: Option<i64>,
    pub sign: Sign,
    pub width: f64,
    pub scale: f64,
    pub lk_target: Option<i64>,
    pub vertex: Option<usize>,
}

impl ConstructionSpec {
    pub fn new(kind: ConstructionKind) -> Self {
        ConstructionSpec { kind, n: None, sign: Sign::Plus, width: 1.0, scale: 1.0, lk_target: None, vertex: None }
    }
}

/// Values a construction is known to have, stated independently of the
/// fold and crossing bookkeeping.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Claimed {
    pub rib: f64,
    pub lk: i64,
    pub tw: f64,
    pub wr: i64,
    pub ttype: TopologicalType,
    pub sticks: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstructionResult {
    pub kind: ConstructionKind,
    pub diagram: KnotDiagram,
    pub folding: FoldingInfo,
    pub heights: Option<HeightAssignment>,
    pub width: f64,
    pub claimed: Claimed,
}

impl ConstructionResult {
    pub fn report(&self) -> Result<RibbonReport, LinkingError> {
        ribbon_report(&self.diagram, &self.folding, self.width)
    }

    /// Recompute everything and compare with the claimed values; `Rib`
    /// within `rib_tol`, the rest exactly.
    pub fn verify(&self, rib_tol: f64) -> Result<RibbonReport, ConstructionError> {
        let r = self.report()?;
        let c = &self.claimed;
        let mismatch =
            |field, claimed: String, computed: String| Err(ConstructionError::Mismatch { field, claimed, computed });
        if (r.rib - c.rib).abs() > rib_tol {
            return mismatch("rib", c.rib.to_string(), r.rib.to_string());
        }
        if r.lk != c.lk {
            return mismatch("lk", c.lk.to_string(), r.lk.to_string());
        }
        if r.wr != c.wr {
            return mismatch("wr", c.wr.to_string(), r.wr.to_string());
        }
        if r.tw != c.tw {
            return mismatch("tw", c.tw.to_string(), r.tw.to_string());
        }
        if r.ttype != c.ttype {
            return mismatch("ttype", c.ttype.to_string(), r.ttype.to_string());
        }
        if self.diagram.len() != c.sticks {
            return mismatch("sticks", c.sticks.to_string(), self.diagram.len().to_string());
        }
        Ok(r)
    }

    /// Copy for drawing: each vertex is pushed diagonally by `delta` times
    /// its height, so stacked strands separate. Without heights the diagram
    /// is returned unchanged.
    pub fn opened(&self, delta: f64) -> KnotDiagram {
        let Some(h) = &self.heights else {
            return self.diagram.clone();
        };
        let dir = Point2::new(1.0, 1.0).normalized();
        let vertices = self.diagram.vertices().iter().zip(&h.heights).map(|(&p, &z)| p + dir * (delta * z)).collect();
        KnotDiagram::new(vertices)
    }
}

fn claimed_for(d: &KnotDiagram, rib: f64, lk: i64, wr: i64, ttype: TopologicalType) -> Claimed {
    let tw = match ttype {
        TopologicalType::Annulus => (lk - wr) as f64,
        TopologicalType::MobiusBand => (lk - 2 * wr) as f64,
    };
    Claimed { rib, lk, tw, wr, ttype, sticks: d.len() }
}

fn positive(name: &str, x: f64) -> Result<(), ConstructionError> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(ConstructionError::InvalidParameter(format!("{name} must be positive, got {x}")))
    }
}

/// Two vertices `eps` apart. Its ribbon is two stacked rectangles joined by
/// zero-angle folds.
pub fn two_stick(eps: f64, w: f64) -> Result<ConstructionResult, ConstructionError> {
    positive("eps", eps)?;
    positive("w", w)?;
    let diagram = KnotDiagram::from_xy(&[(0.0, 0.0), (eps, 0.0)]);
    let claimed = claimed_for(&diagram, 2.0 * eps / w, 0, 0, TopologicalType::Annulus);
    Ok(ConstructionResult {
        kind: ConstructionKind::TwoStick,
        folding: FoldingInfo::parse("uo")?,
        heights: Some(HeightAssignment::new(vec![0.0, 0.0])),
        diagram,
        width: w,
        claimed,
    })
}

/// Regular `n`-gon folded to linking number `k`, at its largest feasible
/// width. The first `u` vertices are underfolds.
pub fn regular_ngon(n: usize, k: i64, perimeter: f64) -> Result<ConstructionResult, ConstructionError> {
    positive("perimeter", perimeter)?;
    let (u, _) = crate::linking::folding_for_linking(n, k)?;
    let diagram = crate::diagram_core::regular_polygon(n, perimeter);
    let folding = FoldingInfo::new((0..n).map(|i| if i < u { Layer::Under } else { Layer::Over }).collect());
    let width = max_feasible_width(&diagram, &folding)?.width;
    let nf = n as f64;
    // all folds alike on a triangle: the strips cover the incenter, w = 2 r_in
    let rib = if n == 3 && (u == 0 || u == n) { 3.0 * 3f64.sqrt() } else { nf / (PI / nf).tan() };
    let ttype = if n.is_multiple_of(2) { TopologicalType::Annulus } else { TopologicalType::MobiusBand };
    let claimed = claimed_for(&diagram, rib, k, 0, ttype);
    Ok(ConstructionResult { kind: ConstructionKind::RegularNGon, diagram, folding, heights: None, width, claimed })
}

/// Layers for stacked constructions: right turns over, left turns under,
/// and reversals by which neighbour is higher.
fn layers_from_heights(d: &KnotDiagram, h: &HeightAssignment) -> Result<FoldingInfo, ConstructionError> {
    let n = d.len();
    let kinds = vertex_kinds(d, EPS_GEOM)?;
    let folds = kinds
        .iter()
        .enumerate()
        .map(|(i, k)| match k {
            VertexKind::Right => Layer::Over,
            VertexKind::Left => Layer::Under,
            _ => {
                if h.heights[(i + 1) % n] > h.heights[(i + n - 1) % n] {
                    Layer::Over
                } else {
                    Layer::Under
                }
            }
        })
        .collect();
    Ok(FoldingInfo::new(folds))
}

fn with_sign(
    kind: ConstructionKind,
    diagram: KnotDiagram,
    heights: Vec<f64>,
    sign: Sign,
    w: f64,
    n: i64,
) -> Result<ConstructionResult, ConstructionError> {
    let h = HeightAssignment::new(heights);
    let mut folding = layers_from_heights(&diagram, &h)?;
    let mut h = h;
    if sign == Sign::Minus {
        folding = folding.flipped();
        h.heights.iter_mut().for_each(|z| *z = -*z);
    }
    let rib = total_length(&diagram) / w;
    let claimed = claimed_for(&diagram, 2.0 * n as f64, sign.value() * n, 0, TopologicalType::Annulus);
    debug_assert!((rib - claimed.rib).abs() < 1e-9);
    Ok(ConstructionResult { kind, diagram, folding, heights: Some(h), width: w, claimed })
}

/// Four sticks of length `w/2`: `A, v1, C, v2` with `v1` and `v2` stacked,
/// right-angle folds at `v1`, `v2` and reversals at `A`, `C`.
pub fn four_stick_lk1(sign: Sign, w: f64) -> Result<ConstructionResult, ConstructionError> {
    positive("w", w)?;
    let h = w / 2.0;
    let diagram = KnotDiagram::from_xy(&[(0.0, 0.0), (h, 0.0), (h, -h), (h, 0.0)]);
    with_sign(ConstructionKind::FourStickLk1, diagram, vec![0.0, -1.0, 0.0, 1.0], sign, w, 1)
}

/// `2n + 2` sticks with all nonzero folds at right angles and linking
/// number `sign * n`, built by folding a square wave of width `w` back on
/// itself.
///
/// Odd `n`: vertices `A, v1..vn, C, v(n+1)..v(2n)`, folded back at `C`.
/// Even `n`: vertices `v1, C, v2..v(n+1), D, v(n+2)..v(2n)`, folded back at
/// `C` and again at `D`.
pub fn annulus_lk_n(n: usize, sign: Sign, w: f64) -> Result<ConstructionResult, ConstructionError> {
    positive("w", w)?;
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("n must be at least 1".into()));
    }
    let h = w / 2.0;
    // unfolded square wave A, v1..v2n, B with labels: 0 = A, j = v_j, 2n+1 = B
    let mut pts: Vec<(char, usize, Point2)> = vec![('A', 0, Point2::new(0.0, 0.0))];
    for k in 1..=n {
        let y = if k % 2 == 1 { h } else { -h };
        pts.push(('v', 2 * k - 1, Point2::new((k - 1) as f64 * w, y)));
        pts.push(('v', 2 * k, Point2::new(k as f64 * w, y)));
    }
    pts.push(('B', 0, Point2::new(n as f64 * w, 0.0)));
    let pos_of = |pts: &[(char, usize, Point2)], j: usize| pts.iter().position(|p| p.0 == 'v' && p.1 == j).unwrap();
    let insert_mid = |pts: &mut Vec<(char, usize, Point2)>, label: char, j: usize| {
        let at = pos_of(pts, j);
        let m = pts[at].2.lerp(pts[at + 1].2, 0.5);
        pts.insert(at + 1, (label, 0, m));
        at + 1
    };
    let reflect_after = |pts: &mut Vec<(char, usize, Point2)>, at: usize| {
        let x0 = pts[at].2.x;
        for p in pts.iter_mut().skip(at + 1) {
            p.2.x = 2.0 * x0 - p.2.x;
        }
    };
    if n % 2 == 1 {
        let c = insert_mid(&mut pts, 'C', n);
        reflect_after(&mut pts, c);
    } else {
        let c = insert_mid(&mut pts, 'C', 1);
        reflect_after(&mut pts, c);
        let dd = insert_mid(&mut pts, 'D', n + 1);
        reflect_after(&mut pts, dd);
        pts.remove(0);
    }
    let b = pts.pop().unwrap();
    debug_assert!(b.2.norm() <= 1e-9 * w * n as f64);
    let heights = pts
        .iter()
        .map(|&(label, j, _)| match label {
            'v' if (!n.is_multiple_of(2) && j <= n) || (n.is_multiple_of(2) && (2..=n + 1).contains(&j)) => -1.0,
            'v' => 1.0,
            _ => 0.0,
        })
        .collect();
    let diagram = KnotDiagram::new(pts.into_iter().map(|p| p.2).collect());
    with_sign(ConstructionKind::AnnulusLkN, diagram, heights, sign, w, n as i64)
}

/// Star polygon `{5/2}` of circumradius `scale`, counterclockwise, with
/// four negative crossings and one positive, folded `u o o o u`, at the
/// largest width where its fold lines stay apart.
pub fn pentagram_trefoil(scale: f64) -> Result<ConstructionResult, ConstructionError> {
    positive("scale", scale)?;
    let vertices: Vec<Point2> = (0..5)
        .map(|k| {
            let t = PI / 2.0 + k as f64 * 4.0 * PI / 5.0;
            Point2::new(scale * t.cos(), scale * t.sin())
        })
        .collect();
    let probe = KnotDiagram::new(vertices.clone());
    let dirs: Vec<Point2> = (0..5).map(|i| probe.edge_vector(i)).collect();
    let diagram = KnotDiagram::with_crossings_by(vertices, |a, b| {
        let want = if (a, b) == (0, 2) { 1.0 } else { -1.0 };
        if dirs[a].cross(dirs[b]) * want > 0.0 {
            a
        } else {
            b
        }
    });
    let folding = FoldingInfo::parse("uooou")?;
    let width = max_feasible_width(&diagram, &folding)?.width;
    let claimed = claimed_for(&diagram, 5.0 / (PI / 5.0).tan(), -7, -3, TopologicalType::MobiusBand);
    Ok(ConstructionResult { kind: ConstructionKind::PentagramTrefoil, diagram, folding, heights: None, width, claimed })
}

/// Extra ribbonlength allowance for a splice at a fold of angle `alpha`.
pub fn delta_l(alpha: f64) -> Result<f64, ConstructionError> {
    if !(alpha > 0.0 && alpha < PI) {
        return Err(GeometryError::AngleOutOfRange(alpha).into());
    }
    let cot = |x: f64| 1.0 / x.tan();
    Ok(if alpha <= PI / 2.0 {
        2.0 * cot(alpha / 4.0) - cot(alpha / 2.0)
    } else {
        2.0 * cot(alpha / 4.0) - cot(PI / 2.0 - alpha / 2.0)
    })
}

/// True if every other vertex lies in an open half-plane seen from `v`.
fn on_hull(d: &KnotDiagram, k: usize) -> bool {
    let v = d.vertex(k);
    let mut angles: Vec<f64> =
        d.vertices().iter().filter(|p| p.dist(v) > EPS_GEOM).map(|p| (p.y - v.y).atan2(p.x - v.x)).collect();
    if angles.is_empty() {
        return true;
    }
    angles.sort_by(f64::total_cmp);
    let mut gap = angles[0] + 2.0 * PI - angles[angles.len() - 1];
    for w in angles.windows(2) {
        gap = gap.max(w[1] - w[0]);
    }
    gap > PI + EPS_GEOM
}

const SPLICE_LIFT: f64 = 0.5;

/// Ribbonlength of a [`connected_sum`] result in closed form:
/// `M + 2|n| + cot(alpha/4)` where `M` is the base ribbonlength.
pub fn connected_sum_rib(base_rib: f64, n: i64, alpha: f64) -> f64 {
    base_rib + 2.0 * n.unsigned_abs() as f64 + 1.0 / (alpha / 4.0).tan()
}

/// Splice [`annulus_lk_n`]`(|n|)` into `base` at vertex `k`.
///
/// The fold at `k` is replaced by two stacked folds `k'`, `k''` whose legs
/// run out along the exterior angle bisector to the cut unknot. The legs
/// are long enough that the new folds clear the unknot's ribbon. The
/// unknot is placed on whichever side of the legs, and the new folds get
/// whichever layers, make the total linking number `m + n`.
///
/// With exact stacked geometry, a single fold replaced by two folds shifts
/// the fold-sign sum by an even amount, and the unknot adds `2n` on a
/// Mobius band or `n` on an annulus. So only a Mobius base with odd `n`
/// reaches `m + n`; other cases return [`ConstructionError::ParityObstruction`].
pub fn connected_sum(base: &ConstructionResult, k: usize, n: i64) -> Result<ConstructionResult, ConstructionError> {
    let d = &base.diagram;
    let p = d.len();
    if k >= p {
        return Err(DiagramError::InvalidIndex { index: k, n: p }.into());
    }
    if n == 0 {
        return Err(ConstructionError::InvalidParameter("n must be nonzero".into()));
    }
    let a = fold_angle(d, k)?;
    let alpha = a.abs();
    if !(alpha > EPS_GEOM && alpha < PI - EPS_GEOM) {
        return Err(ConstructionError::DegenerateAngle { vertex: k, angle: a });
    }
    if !on_hull(d, k) {
        return Err(ConstructionError::NotOnHull(k));
    }
    let base_report = base.report()?;
    if base_report.ttype != TopologicalType::MobiusBand || n % 2 == 0 {
        return Err(ConstructionError::ParityObstruction { ttype: base_report.ttype, n });
    }
    let w = base.width;
    let u = annulus_lk_n(n.unsigned_abs() as usize, Sign::of(n), w)?;
    let uh = u.heights.as_ref().expect("annulus construction has heights");
    let m = u.diagram.len(); // 2|n| + 2, starting at the cut vertex A
    let wk = d.vertex(k);
    let d_in = d.edge_vector((k + p - 1) % p).normalized();
    let d_out = d.edge_vector(k).normalized();
    let b_out = (d_in - d_out).normalized();
    let side = Point2::new(b_out.y, -b_out.x);
    let reach = (w / 2.0) / (alpha / 4.0).tan();
    let origin = wk + b_out * reach;
    let target = base_report.lk + n;
    let base_h = base.heights.clone().unwrap_or_else(|| HeightAssignment::zeros(p));
    let remap = |e: usize| if e < k { e } else { e + m };

    let s_k = base_report.fold_signs.iter().find(|c| c.vertex == k).map_or(1, |c| c.sign);
    let pref = if s_k > 0 { Layer::Over } else { Layer::Under };
    let combos = [(pref, pref), (pref, pref.flipped()), (pref.flipped(), pref), (pref.flipped(), pref.flipped())];

    for mirror in [false, true] {
        let lateral = if mirror { -side } else { side };
        let place = |q: Point2| origin + lateral * q.x + b_out * q.y;
        let mut vertices: Vec<Point2> = Vec::with_capacity(p + m);
        let mut heights = Vec::with_capacity(p + m);
        let mut inner_layers = Vec::with_capacity(m - 1);
        for i in 0..p {
            if i != k {
                vertices.push(d.vertex(i));
                heights.push(base_h.heights[i]);
                continue;
            }
            vertices.push(wk);
            heights.push(base_h.heights[k] + SPLICE_LIFT);
            for j in 1..m {
                vertices.push(place(u.diagram.vertex(j)));
                let z = uh.heights[j];
                heights.push(if mirror { -z } else { z });
                let l = u.folding.get(j);
                inner_layers.push(if mirror { l.flipped() } else { l });
            }
            vertices.push(wk);
            heights.push(base_h.heights[k] - SPLICE_LIFT);
        }
        let crossings: Vec<Crossing> = d
            .crossings()
            .iter()
            .map(|c| Crossing { edge_over: remap(c.edge_over), edge_under: remap(c.edge_under), point: c.point })
            .collect();
        let diagram = KnotDiagram::with_crossings(vertices, crossings);
        if diagram.transversal_intersections(EPS_GEOM).len() != d.crossings().len() {
            continue;
        }
        for &(l1, l2) in &combos {
            let mut folds = Vec::with_capacity(p + m);
            for i in 0..p {
                if i != k {
                    folds.push(base.folding.get(i));
                } else {
                    folds.push(l1);
                    folds.extend(inner_layers.iter().copied());
                    folds.push(l2);
                }
            }
            let folding = FoldingInfo::new(folds);
            if crate::linking::ribbon_linking_number(&diagram, &folding)? != target {
                continue;
            }
            let rib = connected_sum_rib(total_length(d) / w, n, alpha);
            let claimed = claimed_for(&diagram, rib, target, base_report.wr, base_report.ttype);
            return Ok(ConstructionResult {
                kind: ConstructionKind::ConnectedSum,
                diagram,
                folding,
                heights: Some(HeightAssignment::new(heights)),
                width: w,
                claimed,
            });
        }
    }
    Err(ConstructionError::NoSplice { target })
}

/// Dispatch on [`ConstructionSpec::kind`]. A connected sum is taken with
/// the pentagram trefoil as base; `lk_target` or `n` fixes the shift.
pub fn build(spec: &ConstructionSpec) -> Result<ConstructionResult, ConstructionError> {
    let need_n = || spec.n.ok_or_else(|| ConstructionError::InvalidParameter("n is required".into()));
    let need_usize = |x: i64| {
        usize::try_from(x).map_err(|_| ConstructionError::InvalidParameter(format!("n must be nonnegative, got {x}")))
    };
    match spec.kind {
        ConstructionKind::TwoStick => two_stick(spec.scale, spec.width),
        ConstructionKind::RegularNGon => {
            let n = need_usize(need_n()?)?;
            let k = spec.lk_target.unwrap_or_else(|| {
                let top = *crate::linking::enumerate_convex_linking(n.max(3)).unwrap().last().unwrap();
                spec.sign.value() * top
            });
            regular_ngon(n, k, spec.scale)
        }
        ConstructionKind::FourStickLk1 => four_stick_lk1(spec.sign, spec.width),
        ConstructionKind::AnnulusLkN => annulus_lk_n(need_usize(need_n()?)?, spec.sign, spec.width),
        ConstructionKind::PentagramTrefoil => pentagram_trefoil(spec.scale),
        ConstructionKind::ConnectedSum => {
            let base = pentagram_trefoil(spec.scale)?;
            let shift = match (spec.lk_target, spec.n) {
                (Some(t), _) => t - base.claimed.lk,
                (None, Some(n)) => spec.sign.value() * n.abs(),
                (None, None) => spec.sign.value(),
            };
            connected_sum(&base, spec.vertex.unwrap_or(0), shift)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_stick_values() {
        let r = two_stick(1.0, 1.0).unwrap();
        assert_eq!(r.verify(1e-12).unwrap().lk, 0);
        assert!((r.claimed.rib - 2.0).abs() < 1e-15);
        let r = two_stick(0.01, 1.0).unwrap();
        assert!((r.report().unwrap().rib - 0.02).abs() < 1e-15);
    }

    #[test]
    fn four_stick_both_signs() {
        for (s, lk) in [(Sign::Plus, 1), (Sign::Minus, -1)] {
            let r = four_stick_lk1(s, 1.0).unwrap();
            let rep = r.verify(1e-12).unwrap();
            assert_eq!(rep.lk, lk);
            assert_eq!(rep.ttype, TopologicalType::Annulus);
            assert_eq!(rep.rib, 2.0);
        }
    }

    #[test]
    fn annulus_small_cases() {
        let r = annulus_lk_n(2, Sign::Plus, 1.0).unwrap();
        let expect = [(0.0, 0.5), (0.5, 0.5), (0.0, 0.5), (0.0, -0.5), (-0.5, -0.5), (0.0, -0.5)];
        for (p, e) in r.diagram.vertices().iter().zip(expect) {
            assert!(p.dist(Point2::new(e.0, e.1)) < 1e-15, "{p:?} vs {e:?}");
        }
        for n in 1..=6 {
            for s in [Sign::Plus, Sign::Minus] {
                let r = annulus_lk_n(n, s, 0.5).unwrap();
                let rep = r.verify(1e-12).unwrap();
                assert_eq!(rep.lk, s.value() * n as i64, "n = {n}");
                assert_eq!(r.diagram.len(), 2 * n + 2);
            }
        }
    }

    #[test]
    fn delta_l_branches_agree_at_right_angle() {
        let c = |x: f64| 1.0 / x.tan();
        let a = PI / 2.0;
        let acute = 2.0 * c(a / 4.0) - c(a / 2.0);
        let obtuse = 2.0 * c(a / 4.0) - c(PI / 2.0 - a / 2.0);
        assert!((acute - obtuse).abs() < 1e-12);
        assert!((delta_l(a).unwrap() - acute).abs() < 1e-15);
        assert!(delta_l(0.0).is_err());
        assert!(delta_l(PI).is_err());
    }

    #[test]
    fn hull_test() {
        let d = KnotDiagram::from_xy(&[(0.0, 0.0), (2.0, 0.0), (1.0, 0.5), (1.0, 2.0)]);
        assert!(on_hull(&d, 0));
        assert!(!on_hull(&d, 2));
    }
}
