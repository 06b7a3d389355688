//! Oriented polygonal knot diagrams with crossing and folding data.
//!
//! Edge `i` joins vertex `i` to vertex `i + 1 (mod n)`. Orientation is the
//! listing order. Diagrams that are not regular in the knot-theory sense
//! (stacked vertices, overlapping collinear edges) are allowed; only
//! transversal edge intersections are crossings.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{segment_meet, Point2, SegmentMeet};
use crate::tolerances::EPS_GEOM;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiagramError {
    #[error("vertex index {index} out of range for {n} vertices")]
    InvalidIndex { index: usize, n: usize },
    #[error("edge {edge} has zero length")]
    DegenerateEdge { edge: usize },
    #[error("diagram has {0} vertices, at least 2 are required")]
    TooFewVertices(usize),
    #[error("operation requires a crossing-free diagram, found {0} crossings")]
    HasCrossings(usize),
    #[error("diagram is not convex")]
    NotConvex,
    #[error("folding has {got} entries for {n} vertices")]
    FoldingLength { got: usize, n: usize },
    #[error("invalid fold symbol {0:?} (expected 'u' or 'o')")]
    FoldSymbol(char),
}

/// Which ribbon layer lies on top at a fold, or which strand lies on top at
/// a crossing.
///
/// At a fold at vertex `i`, `Under` means the outgoing strip (edge `i`)
/// lies under the incoming strip (edge `i - 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Layer {
    Over,
    Under,
}

impl Layer {
    pub fn flipped(self) -> Layer {
        match self {
            Layer::Over => Layer::Under,
            Layer::Under => Layer::Over,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Layer::Over => 'o',
            Layer::Under => 'u',
        }
    }

    pub fn from_symbol(c: char) -> Result<Layer, DiagramError> {
        match c {
            'o' | 'O' => Ok(Layer::Over),
            'u' | 'U' => Ok(Layer::Under),
            other => Err(DiagramError::FoldSymbol(other)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TopologicalType {
    Annulus,
    MobiusBand,
}

impl fmt::Display for TopologicalType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopologicalType::Annulus => write!(f, "annulus"),
            TopologicalType::MobiusBand => write!(f, "mobius"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Crossing {
    pub edge_over: usize,
    pub edge_under: usize,
    pub point: Point2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnotDiagram {
    vertices: Vec<Point2>,
    crossings: Vec<Crossing>,
}

impl KnotDiagram {
    /// Crossing-free diagram. No validation is done here; see [`validate`].
    pub fn new(vertices: Vec<Point2>) -> Self {
        KnotDiagram { vertices, crossings: Vec::new() }
    }

    pub fn with_crossings(vertices: Vec<Point2>, crossings: Vec<Crossing>) -> Self {
        KnotDiagram { vertices, crossings }
    }

    /// Diagram whose crossings are all transversal edge intersections, with
    /// the over strand chosen by `over(a, b)` returning the over edge.
    pub fn with_crossings_by<F>(vertices: Vec<Point2>, mut over: F) -> Self
    where
        F: FnMut(usize, usize) -> usize,
    {
        let d = KnotDiagram::new(vertices);
        let crossings = d
            .transversal_intersections(EPS_GEOM)
            .into_iter()
            .map(|(a, b, point)| {
                let o = over(a, b);
                let u = if o == a { b } else { a };
                Crossing { edge_over: o, edge_under: u, point }
            })
            .collect();
        KnotDiagram { crossings, ..d }
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Self {
        KnotDiagram::new(coords.iter().map(|&(x, y)| Point2::new(x, y)).collect())
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> Point2 {
        self.vertices[i % self.vertices.len()]
    }

    /// Endpoints of edge `i`.
    pub fn edge(&self, i: usize) -> (Point2, Point2) {
        let n = self.vertices.len();
        (self.vertices[i % n], self.vertices[(i + 1) % n])
    }

    pub fn edge_vector(&self, i: usize) -> Point2 {
        let (a, b) = self.edge(i);
        b - a
    }

    pub fn edge_length(&self, i: usize) -> f64 {
        self.edge_vector(i).norm()
    }

    /// Edges `a` and `b` share a vertex.
    pub fn edges_adjacent(&self, a: usize, b: usize) -> bool {
        let n = self.vertices.len();
        a != b && ((a + 1) % n == b || (b + 1) % n == a)
    }

    /// Every pair of non-adjacent edges whose interiors cross transversally.
    pub fn transversal_intersections(&self, eps: f64) -> Vec<(usize, usize, Point2)> {
        let n = self.vertices.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if self.edges_adjacent(a, b) {
                    continue;
                }
                let (a0, a1) = self.edge(a);
                let (b0, b1) = self.edge(b);
                if let SegmentMeet::Proper { point, .. } = segment_meet(a0, a1, b0, b1, eps) {
                    out.push((a, b, point));
                }
            }
        }
        out
    }

    /// Same diagram traversed backwards. Vertex `i` maps to `n - 1 - i`;
    /// crossings keep their over/under strands.
    pub fn reversed(&self) -> KnotDiagram {
        let n = self.vertices.len();
        let vertices: Vec<Point2> = self.vertices.iter().rev().copied().collect();
        // old edge i (v_i -> v_{i+1}) becomes new edge n - 2 - i (mod n)
        let map = |e: usize| (2 * n - 2 - e) % n;
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { edge_over: map(c.edge_over), edge_under: map(c.edge_under), point: c.point })
            .collect();
        KnotDiagram { vertices, crossings }
    }

    /// Cyclic relabeling so that old vertex `k` becomes vertex 0.
    pub fn rotated(&self, k: usize) -> KnotDiagram {
        let n = self.vertices.len();
        let k = k % n;
        let vertices = (0..n).map(|i| self.vertices[(i + k) % n]).collect();
        let map = |e: usize| (e + n - k) % n;
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { edge_over: map(c.edge_over), edge_under: map(c.edge_under), point: c.point })
            .collect();
        KnotDiagram { vertices, crossings }
    }

    /// Apply a map to every vertex and cached crossing point.
    pub fn mapped<F: Fn(Point2) -> Point2>(&self, f: F) -> KnotDiagram {
        KnotDiagram {
            vertices: self.vertices.iter().map(|&p| f(p)).collect(),
            crossings: self.crossings.iter().map(|c| Crossing { point: f(c.point), ..*c }).collect(),
        }
    }
}

/// Per-vertex fold layer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FoldingInfo {
    folds: Vec<Layer>,
}

impl FoldingInfo {
    pub fn new(folds: Vec<Layer>) -> Self {
        FoldingInfo { folds }
    }

    pub fn uniform(n: usize, layer: Layer) -> Self {
        FoldingInfo { folds: vec![layer; n] }
    }

    /// Parse a string of `u`/`o` symbols.
    pub fn parse(s: &str) -> Result<Self, DiagramError> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(Layer::from_symbol)
            .collect::<Result<Vec<_>, _>>()
            .map(FoldingInfo::new)
    }

    /// The folding whose bit `i` of `mask` selects `Under` at vertex `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        FoldingInfo { folds: (0..n).map(|i| if mask >> i & 1 == 1 { Layer::Under } else { Layer::Over }).collect() }
    }

    pub fn folds(&self) -> &[Layer] {
        &self.folds
    }

    pub fn get(&self, i: usize) -> Layer {
        self.folds[i]
    }

    pub fn len(&self) -> usize {
        self.folds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.folds.is_empty()
    }

    pub fn count(&self, layer: Layer) -> usize {
        self.folds.iter().filter(|&&l| l == layer).count()
    }

    pub fn flipped(&self) -> FoldingInfo {
        FoldingInfo { folds: self.folds.iter().map(|l| l.flipped()).collect() }
    }

    /// Folding for [`KnotDiagram::reversed`]: vertex `i` maps to `n - 1 - i`
    /// and each fold changes type, since reversing swaps which strip is
    /// incoming.
    pub fn reversed(&self) -> FoldingInfo {
        FoldingInfo { folds: self.folds.iter().rev().map(|l| l.flipped()).collect() }
    }

    pub fn rotated(&self, k: usize) -> FoldingInfo {
        let n = self.folds.len();
        FoldingInfo { folds: (0..n).map(|i| self.folds[(i + k) % n]).collect() }
    }

    pub fn check_len(&self, d: &KnotDiagram) -> Result<(), DiagramError> {
        if self.folds.len() == d.len() {
            Ok(())
        } else {
            Err(DiagramError::FoldingLength { got: self.folds.len(), n: d.len() })
        }
    }
}

impl fmt::Display for FoldingInfo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.folds {
            write!(f, "{}", l.symbol())?;
        }
        Ok(())
    }
}

/// Out-of-plane lift per vertex, used only for space writhe and for
/// ordering stacked strands.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightAssignment {
    pub heights: Vec<f64>,
}

impl HeightAssignment {
    pub fn new(heights: Vec<f64>) -> Self {
        HeightAssignment { heights }
    }

    pub fn zeros(n: usize) -> Self {
        HeightAssignment { heights: vec![0.0; n] }
    }

    /// Height of the point at parameter `t` along edge `i`.
    pub fn on_edge(&self, i: usize, t: f64) -> f64 {
        let n = self.heights.len();
        let a = self.heights[i % n];
        let b = self.heights[(i + 1) % n];
        a + (b - a) * t
    }
}

/// Regular `n`-gon, counterclockwise, with the given perimeter.
pub fn regular_polygon(n: usize, perimeter: f64) -> KnotDiagram {
    let side = perimeter / n as f64;
    let r = side / (2.0 * (PI / n as f64).sin());
    KnotDiagram::new(
        (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64 - PI / 2.0;
                Point2::new(r * t.cos(), r * t.sin())
            })
            .collect(),
    )
}

fn check_index(d: &KnotDiagram, i: usize) -> Result<(), DiagramError> {
    if d.len() < 2 {
        return Err(DiagramError::TooFewVertices(d.len()));
    }
    if i >= d.len() {
        return Err(DiagramError::InvalidIndex { index: i, n: d.len() });
    }
    Ok(())
}

/// Signed fold angle at vertex `i`: the angle between edges `i - 1` and
/// `i`, magnitude in `[0, pi]`, positive for a left turn. `pi` means the
/// diagram runs straight through; `0` means it doubles back.
pub fn fold_angle(d: &KnotDiagram, i: usize) -> Result<f64, DiagramError> {
    check_index(d, i)?;
    let n = d.len();
    let prev = (i + n - 1) % n;
    let din = d.edge_vector(prev);
    let dout = d.edge_vector(i);
    if din.norm() == 0.0 {
        return Err(DiagramError::DegenerateEdge { edge: prev });
    }
    if dout.norm() == 0.0 {
        return Err(DiagramError::DegenerateEdge { edge: i });
    }
    let turn = din.cross(dout).atan2(din.dot(dout));
    if turn == 0.0 {
        return Ok(PI);
    }
    Ok(turn.signum() * (PI - turn.abs()))
}

/// All fold angles.
pub fn fold_angles(d: &KnotDiagram) -> Result<Vec<f64>, DiagramError> {
    (0..d.len()).map(|i| fold_angle(d, i)).collect()
}

/// How a vertex behaves, after tolerance classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexKind {
    /// Collinear continuation, no fold.
    Straight,
    /// Fold angle zero: the diagram doubles back.
    ZeroFold,
    Left,
    Right,
}

impl VertexKind {
    pub fn classify(angle: f64, eps: f64) -> VertexKind {
        let a = angle.abs();
        if PI - a <= eps {
            VertexKind::Straight
        } else if a <= eps {
            VertexKind::ZeroFold
        } else if angle > 0.0 {
            VertexKind::Left
        } else {
            VertexKind::Right
        }
    }

    pub fn is_fold(self) -> bool {
        self != VertexKind::Straight
    }
}

pub fn vertex_kinds(d: &KnotDiagram, eps: f64) -> Result<Vec<VertexKind>, DiagramError> {
    Ok(fold_angles(d)?.into_iter().map(|a| VertexKind::classify(a, eps)).collect())
}

pub fn total_length(d: &KnotDiagram) -> f64 {
    (0..d.len()).map(|i| d.edge_length(i)).sum()
}

/// A broken diagram invariant.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    TooFewVertices {
        n: usize,
    },
    NonFiniteVertex {
        vertex: usize,
    },
    ZeroLengthEdge {
        edge: usize,
    },
    CrossingEdgeOutOfRange {
        crossing: usize,
    },
    CrossingSameEdge {
        crossing: usize,
    },
    CrossingAdjacentEdges {
        crossing: usize,
        edges: (usize, usize),
    },
    CrossingNotTransversal {
        crossing: usize,
        edges: (usize, usize),
    },
    CrossingPointOffEdges {
        crossing: usize,
    },
    DuplicateCrossing {
        edges: (usize, usize),
    },
    MissingCrossing {
        edges: (usize, usize),
    },
    /// Only reported in strict-regular mode.
    CollinearOverlap {
        edges: (usize, usize),
    },
    /// Only reported in strict-regular mode.
    StackedVertices {
        vertices: (usize, usize),
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { n } => write!(f, "too few vertices: {n}"),
            Violation::NonFiniteVertex { vertex } => write!(f, "non-finite coordinate at vertex {vertex}"),
            Violation::ZeroLengthEdge { edge } => write!(f, "zero-length edge at index {edge}"),
            Violation::CrossingEdgeOutOfRange { crossing } => {
                write!(f, "crossing {crossing} references a missing edge")
            }
            Violation::CrossingSameEdge { crossing } => write!(f, "crossing {crossing} uses one edge twice"),
            Violation::CrossingAdjacentEdges { crossing, edges } => {
                write!(f, "crossing {crossing} joins adjacent edges {} and {}", edges.0, edges.1)
            }
            Violation::CrossingNotTransversal { crossing, edges } => {
                write!(f, "crossing {crossing}: edges {} and {} do not cross transversally", edges.0, edges.1)
            }
            Violation::CrossingPointOffEdges { crossing } => {
                write!(f, "crossing {crossing}: cached point is not on both edges")
            }
            Violation::DuplicateCrossing { edges } => {
                write!(f, "duplicate crossing at edge pair ({}, {})", edges.0, edges.1)
            }
            Violation::MissingCrossing { edges } => {
                write!(f, "missing crossing at edge pair ({}, {})", edges.0, edges.1)
            }
            Violation::CollinearOverlap { edges } => {
                write!(f, "edges {} and {} overlap collinearly", edges.0, edges.1)
            }
            Violation::StackedVertices { vertices } => {
                write!(f, "vertices {} and {} coincide", vertices.0, vertices.1)
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidateOptions {
    pub eps: f64,
    /// Also reject overlapping collinear edges and stacked vertices.
    pub strict_regular: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { eps: EPS_GEOM, strict_regular: false }
    }
}

/// Check every diagram invariant at the default tolerance.
pub fn validate(d: &KnotDiagram) -> Vec<Violation> {
    validate_with(d, ValidateOptions::default())
}

pub fn validate_with(d: &KnotDiagram, opts: ValidateOptions) -> Vec<Violation> {
    let eps = opts.eps;
    let n = d.len();
    let mut out = Vec::new();
    if n < 2 {
        out.push(Violation::TooFewVertices { n });
        return out;
    }
    for (i, v) in d.vertices().iter().enumerate() {
        if !v.is_finite() {
            out.push(Violation::NonFiniteVertex { vertex: i });
        }
    }
    if !out.is_empty() {
        return out;
    }
    for i in 0..n {
        if d.edge_length(i) <= eps {
            out.push(Violation::ZeroLengthEdge { edge: i });
        }
    }
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let mut listed = std::collections::BTreeMap::new();
    for (ci, c) in d.crossings().iter().enumerate() {
        if c.edge_over >= n || c.edge_under >= n {
            out.push(Violation::CrossingEdgeOutOfRange { crossing: ci });
            continue;
        }
        if c.edge_over == c.edge_under {
            out.push(Violation::CrossingSameEdge { crossing: ci });
            continue;
        }
        let k = key(c.edge_over, c.edge_under);
        if d.edges_adjacent(k.0, k.1) {
            out.push(Violation::CrossingAdjacentEdges { crossing: ci, edges: k });
            continue;
        }
        let (a0, a1) = d.edge(k.0);
        let (b0, b1) = d.edge(k.1);
        match segment_meet(a0, a1, b0, b1, eps) {
            SegmentMeet::Proper { point, .. } => {
                let scale = 1.0f64.max(point.norm());
                if point.dist(c.point) > 1e3 * eps * scale {
                    out.push(Violation::CrossingPointOffEdges { crossing: ci });
                }
            }
            _ => out.push(Violation::CrossingNotTransversal { crossing: ci, edges: k }),
        }
        *listed.entry(k).or_insert(0usize) += 1;
    }
    for (&k, &count) in &listed {
        if count > 1 {
            out.push(Violation::DuplicateCrossing { edges: k });
        }
    }
    for (a, b, _) in d.transversal_intersections(eps) {
        if !listed.contains_key(&(a, b)) {
            out.push(Violation::MissingCrossing { edges: (a, b) });
        }
    }
    if opts.strict_regular {
        for a in 0..n {
            for b in (a + 1)..n {
                let (a0, a1) = d.edge(a);
                let (b0, b1) = d.edge(b);
                if segment_meet(a0, a1, b0, b1, eps) == SegmentMeet::Overlap {
                    out.push(Violation::CollinearOverlap { edges: (a, b) });
                }
                if d.vertex(a).dist(d.vertex(b)) <= eps {
                    out.push(Violation::StackedVertices { vertices: (a, b) });
                }
            }
        }
    }
    out
}

/// Pairs of non-incident features closer than `w`: a vertex and an edge,
/// or two crossings. Such configurations may make ribbon pieces overlap in
/// ways the model does not describe; they are reported, not rejected.
pub fn proximity_warnings(d: &KnotDiagram, w: f64) -> Vec<String> {
    let n = d.len();
    let mut out = Vec::new();
    for v in 0..n {
        for e in 0..n {
            if e == v || (e + 1) % n == v || (v + 1) % n == e || (e + 2) % n == v {
                continue;
            }
            let (a, b) = d.edge(e);
            let dist = crate::geom::point_segment_distance(d.vertex(v), a, b);
            if dist < w && dist > EPS_GEOM {
                out.push(format!("vertex {v} is {dist:.3e} from edge {e} (< w = {w:.3e})"));
            }
        }
    }
    let cs = d.crossings();
    for i in 0..cs.len() {
        for j in (i + 1)..cs.len() {
            let dist = cs[i].point.dist(cs[j].point);
            if dist < w {
                out.push(format!("crossings {i} and {j} are {dist:.3e} apart (< w = {w:.3e})"));
            }
        }
    }
    out
}

/// True iff all fold angles share one sign and none is straight.
pub fn is_convex(d: &KnotDiagram) -> Result<bool, DiagramError> {
    is_convex_with(d, EPS_GEOM)
}

pub fn is_convex_with(d: &KnotDiagram, eps: f64) -> Result<bool, DiagramError> {
    if !d.crossings().is_empty() {
        return Err(DiagramError::HasCrossings(d.crossings().len()));
    }
    let kinds = vertex_kinds(d, eps)?;
    let all_left = kinds.iter().all(|&k| k == VertexKind::Left);
    let all_right = kinds.iter().all(|&k| k == VertexKind::Right);
    if !(all_left || all_right) {
        return Ok(false);
    }
    // a star polygon turns one way too; require total turning of one lap
    let turning: f64 = fold_angles(d)?.iter().map(|a| PI - a.abs()).sum();
    Ok((turning - 2.0 * PI).abs() <= 1e3 * eps)
}

/// Interior angles `pi - |turn|` of a convex diagram.
pub fn interior_angles(d: &KnotDiagram) -> Result<Vec<f64>, DiagramError> {
    if !is_convex(d)? {
        return Err(DiagramError::NotConvex);
    }
    Ok(fold_angles(d)?.into_iter().map(f64::abs).collect())
}

/// Annulus iff the number of folds (vertices that are not straight) is even.
pub fn topological_type(d: &KnotDiagram) -> Result<TopologicalType, DiagramError> {
    topological_type_with(d, EPS_GEOM)
}

pub fn topological_type_with(d: &KnotDiagram, eps: f64) -> Result<TopologicalType, DiagramError> {
    let folds = vertex_kinds(d, eps)?.into_iter().filter(|k| k.is_fold()).count();
    Ok(if folds % 2 == 0 { TopologicalType::Annulus } else { TopologicalType::MobiusBand })
}
