//! JSON diagram documents and the command implementations behind the
//! `ribbonforge` binary.
//!
//! ```json
//! {
//!   "version": 1,
//!   "vertices": [[0, 0], [1, 0], [1, 1], [0, 1]],
//!   "crossings": [],
//!   "folding": ["u", "u", "u", "u"],
//!   "width": 0.5
//! }
//! ```
//!
//! Edge `i` joins vertex `i` to vertex `i + 1` (mod n). Crossings name the
//! over and under edge; their points are recomputed. `heights` and
//! `metadata` are optional. Unknown top-level fields are kept in
//! `metadata`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::constructions::{build, ConstructionError, ConstructionResult, ConstructionSpec};
use crate::diagram_core::{
    is_convex_with, regular_polygon, validate_with, Crossing, DiagramError, FoldingInfo, HeightAssignment, KnotDiagram,
    Layer, ValidateOptions,
};
use crate::exec::Execution;
use crate::geom::{segment_meet, Point2, SegmentMeet};
use crate::linking::{
    enumerate_convex_linking, enumerate_foldings, folding_for_linking, linking_census, linking_oracle_planar_with,
    ribbon_report_with, LinkingError, RibbonReport,
};
use crate::optimize::{minimize_tan_sum_with, AngleDomain, OptimizeError};
use crate::ribbon_geometry::{max_feasible_width, GeometryError};

pub const FORMAT_VERSION: u32 = 1;

/// The boundary-crossing check runs at this fraction of the working width.
/// At a maximal width the boundary can pass exactly through fold lines and
/// other strands; Lk is the same at every embedded width.
pub const ORACLE_WIDTH_FACTOR: f64 = 0.1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Json(#[from] serde_json::Error),
    #[error("field `{field}`: {message}")]
    Schema { field: String, message: String },
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Linking(#[from] LinkingError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

fn schema(field: impl Into<String>, message: impl Into<String>) -> CliError {
    CliError::Schema { field: field.into(), message: message.into() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagramDocument {
    pub version: u32,
    pub diagram: KnotDiagram,
    pub folding: FoldingInfo,
    pub width: Option<f64>,
    pub heights: Option<HeightAssignment>,
    pub metadata: Map<String, Value>,
}

#[derive(Serialize, Deserialize)]
struct RawCrossing {
    over: usize,
    under: usize,
}

#[derive(Serialize, Deserialize)]
struct RawDocument {
    version: u32,
    vertices: Vec<[f64; 2]>,
    #[serde(default)]
    crossings: Vec<RawCrossing>,
    folding: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    width: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    heights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Map::is_empty")]
    metadata: Map<String, Value>,
    #[serde(flatten)]
    extra: Map<String, Value>,
}

/// Parse a document, recompute crossing points and check the schema.
pub fn parse_document(text: &str) -> Result<DiagramDocument, CliError> {
    parse_document_with(text, crate::tolerances::EPS_GEOM)
}

pub fn parse_document_with(text: &str, eps: f64) -> Result<DiagramDocument, CliError> {
    let raw: RawDocument = serde_json::from_str(text)?;
    if raw.version != FORMAT_VERSION {
        return Err(schema("version", format!("unsupported version {}, expected {FORMAT_VERSION}", raw.version)));
    }
    let n = raw.vertices.len();
    if n < 2 {
        return Err(schema("vertices", format!("need at least 2 vertices, got {n}")));
    }
    if raw.folding.len() != n {
        let msg = if raw.folding.len() < n {
            format!("{} entries for {n} vertices; missing entry for vertex {}", raw.folding.len(), raw.folding.len())
        } else {
            format!("{} entries for {n} vertices", raw.folding.len())
        };
        return Err(schema("folding", msg));
    }
    let folds = raw
        .folding
        .iter()
        .enumerate()
        .map(|(i, s)| match s.as_str() {
            "u" | "U" => Ok(Layer::Under),
            "o" | "O" => Ok(Layer::Over),
            other => Err(schema(format!("folding[{i}]"), format!("expected \"u\" or \"o\", got {other:?}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let vertices: Vec<Point2> = raw.vertices.iter().map(|&p| Point2::from(p)).collect();
    let probe = KnotDiagram::new(vertices.clone());
    let mut crossings = Vec::with_capacity(raw.crossings.len());
    for (i, c) in raw.crossings.iter().enumerate() {
        if c.over >= n || c.under >= n {
            return Err(schema(format!("crossings[{i}]"), format!("edge index out of range for {n} edges")));
        }
        let (a0, a1) = probe.edge(c.over.min(c.under));
        let (b0, b1) = probe.edge(c.over.max(c.under));
        match segment_meet(a0, a1, b0, b1, eps) {
            SegmentMeet::Proper { point, .. } if c.over != c.under => {
                crossings.push(Crossing { edge_over: c.over, edge_under: c.under, point })
            }
            _ => {
                return Err(schema(
                    format!("crossings[{i}]"),
                    format!("edges {} and {} do not cross transversally", c.over, c.under),
                ))
            }
        }
    }
    if let Some(h) = &raw.heights {
        if h.len() != n {
            return Err(schema("heights", format!("{} entries for {n} vertices", h.len())));
        }
    }
    if let Some(w) = raw.width {
        if !(w > 0.0 && w.is_finite()) {
            return Err(schema("width", format!("must be positive, got {w}")));
        }
    }
    let mut metadata = raw.metadata;
    for (k, v) in raw.extra {
        metadata.insert(k, v);
    }
    Ok(DiagramDocument {
        version: raw.version,
        diagram: KnotDiagram::with_crossings(vertices, crossings),
        folding: FoldingInfo::new(folds),
        width: raw.width,
        heights: raw.heights.map(HeightAssignment::new),
        metadata,
    })
}

/// Pretty JSON. Floats use the shortest representation that reads back to
/// the same value.
pub fn serialize_document(doc: &DiagramDocument) -> Result<String, CliError> {
    let raw = RawDocument {
        version: doc.version,
        vertices: doc.diagram.vertices().iter().map(|&p| p.into()).collect(),
        crossings: doc
            .diagram
            .crossings()
            .iter()
            .map(|c| RawCrossing { over: c.edge_over, under: c.edge_under })
            .collect(),
        folding: doc.folding.folds().iter().map(|l| l.symbol().to_string()).collect(),
        width: doc.width,
        heights: doc.heights.as_ref().map(|h| h.heights.clone()),
        metadata: doc.metadata.clone(),
        extra: Map::new(),
    };
    let mut s = serde_json::to_string_pretty(&raw)?;
    s.push('\n');
    Ok(s)
}

impl DiagramDocument {
    pub fn new(diagram: KnotDiagram, folding: FoldingInfo) -> Self {
        DiagramDocument { version: FORMAT_VERSION, diagram, folding, width: None, heights: None, metadata: Map::new() }
    }

    pub fn from_construction(r: &ConstructionResult) -> Self {
        let mut metadata = Map::new();
        metadata.insert("construction".into(), serde_json::to_value(r.kind).unwrap_or(Value::Null));
        metadata.insert("claimed".into(), serde_json::to_value(&r.claimed).unwrap_or(Value::Null));
        DiagramDocument {
            version: FORMAT_VERSION,
            diagram: r.diagram.clone(),
            folding: r.folding.clone(),
            width: Some(r.width),
            heights: r.heights.clone(),
            metadata,
        }
    }
}

/// Text printed by a command and whether every requested check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct CmdOutput {
    pub text: String,
    pub ok: bool,
}

impl CmdOutput {
    fn ok(text: String) -> Self {
        CmdOutput { text, ok: true }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct AnalyzeOptions {
    pub json: bool,
    pub check_identity: bool,
    pub width: Option<f64>,
    pub tolerance: f64,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions { json: false, check_identity: false, width: None, tolerance: crate::tolerances::EPS_GEOM }
    }
}

#[derive(Serialize)]
struct AnalyzeJson<'a> {
    report: &'a RibbonReport,
    width: f64,
    max_width: Option<f64>,
    identity_holds: bool,
    oracle_lk: Option<i64>,
    oracle_width: f64,
    violations: Vec<String>,
}

/// Width to analyze at: the explicit one, else the document's, else the
/// largest feasible width.
fn working_width(doc: &DiagramDocument, explicit: Option<f64>) -> Result<f64, CliError> {
    if let Some(w) = explicit.or(doc.width) {
        return Ok(w);
    }
    Ok(max_feasible_width(&doc.diagram, &doc.folding)?.width)
}

pub fn cmd_analyze(doc: &DiagramDocument, opts: AnalyzeOptions) -> Result<CmdOutput, CliError> {
    let eps = opts.tolerance;
    let violations: Vec<String> = validate_with(&doc.diagram, ValidateOptions { eps, strict_regular: false })
        .iter()
        .map(|v| v.to_string())
        .collect();
    if !violations.is_empty() {
        return Err(CliError::Invalid(violations.join("; ")));
    }
    let w = working_width(doc, opts.width)?;
    let report = ribbon_report_with(&doc.diagram, &doc.folding, w, eps)?;
    let convex = doc.diagram.crossings().is_empty() && is_convex_with(&doc.diagram, eps)?;
    let max_width = if convex { Some(max_feasible_width(&doc.diagram, &doc.folding)?.width) } else { None };
    let identity = report.identity_holds();
    let oracle = if opts.check_identity {
        linking_oracle_planar_with(&doc.diagram, &doc.folding, w * ORACLE_WIDTH_FACTOR, 0, doc.heights.as_ref())
            .ok()
            .map(|o| o.lk)
    } else {
        None
    };
    let ok = !opts.check_identity || (identity && oracle.is_none_or(|lk| lk == report.lk));
    let text = if opts.json {
        let j = AnalyzeJson {
            report: &report,
            width: w,
            max_width,
            identity_holds: identity,
            oracle_lk: oracle,
            oracle_width: w * ORACLE_WIDTH_FACTOR,
            violations,
        };
        serde_json::to_string_pretty(&j)? + "\n"
    } else {
        let mut t = String::new();
        let _ = writeln!(t, "vertices     {}", doc.diagram.len());
        let _ = writeln!(t, "type         {}", report.ttype);
        let _ = writeln!(t, "width        {:.12}", w);
        if let Some(m) = max_width {
            let _ = writeln!(t, "max width    {:.12}", m);
        }
        let _ = writeln!(t, "Rib          {:.12}", report.rib);
        let _ = writeln!(t, "Lk           {}", report.lk);
        let _ = writeln!(t, "Tw           {:.1}", report.tw);
        let _ = writeln!(t, "Wr           {}", report.wr);
        let signs: Vec<String> = report
            .fold_signs
            .iter()
            .map(|c| format!("{}:{}{}", c.vertex, if c.sign > 0 { '+' } else { '-' }, c.layer.symbol()))
            .collect();
        let _ = writeln!(t, "fold signs   {}", signs.join(" "));
        if opts.check_identity {
            let _ = writeln!(t, "identity     {}", if identity { "holds" } else { "FAILS" });
            match oracle {
                Some(lk) => {
                    let _ = writeln!(t, "oracle Lk    {lk} (at width {:.12})", w * ORACLE_WIDTH_FACTOR);
                }
                None => {
                    let _ = writeln!(t, "oracle Lk    unavailable at this width");
                }
            }
        }
        t
    };
    Ok(CmdOutput { text, ok })
}

/// Build a construction and return it as a document.
pub fn cmd_construct(spec: &ConstructionSpec) -> Result<(DiagramDocument, CmdOutput), CliError> {
    let r = build(spec)?;
    let doc = DiagramDocument::from_construction(&r);
    let c = &r.claimed;
    let text = format!("{:?}: {} sticks, Lk {}, Rib {:.12}, Wr {}, {}\n", r.kind, c.sticks, c.lk, c.rib, c.wr, c.ttype);
    Ok((doc, CmdOutput::ok(text)))
}

pub fn cmd_optimize(n: usize, seeds: usize, rng_seed: u64, json: bool) -> Result<CmdOutput, CliError> {
    let o = minimize_tan_sum_with(n, AngleDomain::for_n(n), seeds, rng_seed, Execution::default())?;
    let text = if json {
        serde_json::to_string_pretty(&o)? + "\n"
    } else {
        let mut t = String::new();
        let _ = writeln!(t, "n                  {n}");
        let _ = writeln!(t, "f_min              {:.12}", o.f_min);
        let _ = writeln!(t, "n cot(pi/n)        {:.12}", n as f64 / (std::f64::consts::PI / n as f64).tan());
        let _ = writeln!(t, "distance to equi   {:.3e}", o.minimizer.distance_to_equiangular());
        let _ = writeln!(t, "lagrange residual  {:.3e}", o.lagrange_residual);
        let _ = writeln!(t, "multistart spread  {:.3e}", o.multistart_spread);
        let _ = writeln!(t, "boundary active    {}", o.boundary_active);
        let _ = writeln!(t, "iterations         {}", o.iterations);
        t
    };
    Ok(CmdOutput::ok(text))
}

#[derive(Serialize)]
struct EnumerateJson {
    n: usize,
    achievable: Vec<i64>,
    brute_force: BTreeMap<i64, BTreeMap<usize, usize>>,
    consistent: bool,
}

/// Brute force over all foldings of the regular `n`-gon, compared with the
/// closed-form linking set and fold counts.
pub fn cmd_enumerate(n: usize, json: bool, eps: f64) -> Result<CmdOutput, CliError> {
    let achievable = enumerate_convex_linking(n)?;
    let d = regular_polygon(n, 1.0);
    let lks = enumerate_foldings(&d, eps, Execution::default())?;
    let census = linking_census(n, &lks);
    let mut consistent = census.keys().copied().collect::<Vec<_>>() == achievable;
    for (&lk, by_u) in &census {
        let expect = folding_for_linking(n, lk).map(|(u, _)| u).ok();
        consistent &= by_u.len() == 1 && by_u.keys().next().copied() == expect;
    }
    let text = if json {
        serde_json::to_string_pretty(&EnumerateJson { n, achievable, brute_force: census, consistent })? + "\n"
    } else {
        let mut t = String::new();
        let set: Vec<String> = achievable.iter().map(|k| k.to_string()).collect();
        let _ = writeln!(t, "achievable Lk  {{{}}}", set.join(", "));
        let _ = writeln!(t, "{:>6} {:>6} {:>6} {:>8}", "Lk", "under", "over", "count");
        for (&lk, by_u) in &census {
            for (&u, &count) in by_u {
                let _ = writeln!(t, "{:>6} {:>6} {:>6} {:>8}", lk, u, n - u, count);
            }
        }
        let _ = writeln!(t, "consistent     {consistent}");
        t
    };
    Ok(CmdOutput { text, ok: consistent })
}

pub fn cmd_svg(doc: &DiagramDocument, width: Option<f64>, eps: f64) -> Result<String, CliError> {
    let w = working_width(doc, width)?;
    Ok(crate::svg::render(&doc.diagram, &doc.folding, w, eps)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{"version": 1, "vertices": [[0,0],[1,0],[1,1],[0,1]], "folding": ["u","u","u","u"]}"#;

    #[test]
    fn parse_square() {
        let d = parse_document(SQUARE).unwrap();
        assert_eq!(d.diagram.len(), 4);
        assert!(crate::diagram_core::validate(&d.diagram).is_empty());
    }

    #[test]
    fn missing_folding_entry_is_named() {
        let text = r#"{"version": 1, "vertices": [[0,0],[1,0],[1,1],[0,1]], "folding": ["u","u","u"]}"#;
        let e = parse_document(text).unwrap_err().to_string();
        assert!(e.contains("folding") && e.contains("vertex 3"), "{e}");
    }

    #[test]
    fn unknown_fields_move_to_metadata() {
        let text =
            r#"{"version": 1, "vertices": [[0,0],[1,0],[1,1],[0,1]], "folding": ["u","u","u","u"], "author": "x"}"#;
        let d = parse_document(text).unwrap();
        assert_eq!(d.metadata["author"], Value::from("x"));
        let back = parse_document(&serialize_document(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn square_analysis() {
        let d = parse_document(SQUARE).unwrap();
        let out = cmd_analyze(&d, AnalyzeOptions { check_identity: true, ..Default::default() }).unwrap();
        assert!(out.ok);
        assert!(out.text.contains("Lk           2"), "{}", out.text);
        assert!(out.text.contains("Rib          4.000000000000"), "{}", out.text);
    }
}
