use std::path::PathBuf;
use std::process::Command;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ribbonforge::cli_io::{
    cmd_analyze, cmd_enumerate, cmd_svg, parse_document, serialize_document, AnalyzeOptions, DiagramDocument,
};
use ribbonforge::constructions::{annulus_lk_n, pentagram_trefoil, regular_ngon, Sign};
use ribbonforge::diagram_core::{regular_polygon, topological_type, FoldingInfo, TopologicalType};
use ribbonforge::ribbon_geometry::folding_vertices;
use ribbonforge::sampling::{random_convex_polygon, random_folding};
use ribbonforge::svg::{BOUNDARY_COLORS, CORE_COLOR, FOLD_LINE_COLOR};
use ribbonforge::tolerances::EPS_GEOM;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ribbonforge"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ribbonforge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn count(svg: &str, class: &str) -> usize {
    svg.matches(&format!("class=\"{class}\"")).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn documents_round_trip(n in 3usize..12, seed in any::<u64>(), w in proptest::option::of(1e-3..1.0f64)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut doc = DiagramDocument::new(random_convex_polygon(n, &mut rng), random_folding(n, &mut rng));
        doc.width = w;
        doc.metadata.insert("seed".into(), seed.into());
        let text = serialize_document(&doc).unwrap();
        let back = parse_document(&text).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(serialize_document(&back).unwrap(), text);
    }

    #[test]
    fn svg_counts_match_diagram(n in 3usize..12, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = random_convex_polygon(n, &mut rng);
        let doc = DiagramDocument::new(d.clone(), random_folding(n, &mut rng));
        let svg = cmd_svg(&doc, Some(0.01), EPS_GEOM).unwrap();
        let comps = match topological_type(&d).unwrap() {
            TopologicalType::Annulus => 2,
            TopologicalType::MobiusBand => 1,
        };
        prop_assert_eq!(count(&svg, "fold-line"), n);
        prop_assert_eq!(count(&svg, "fold-sign"), n);
        prop_assert_eq!(count(&svg, "boundary"), comps);
        prop_assert_eq!(count(&svg, "core"), 1);
    }
}

#[test]
fn constructions_round_trip_with_heights() {
    for r in [annulus_lk_n(4, Sign::Minus, 0.5).unwrap(), pentagram_trefoil(1.0).unwrap()] {
        let doc = DiagramDocument::from_construction(&r);
        let back = parse_document(&serialize_document(&doc).unwrap()).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.diagram.crossings().len(), r.diagram.crossings().len());
        let out = cmd_analyze(&back, AnalyzeOptions { check_identity: true, ..Default::default() }).unwrap();
        assert!(out.ok, "{}", out.text);
    }
}

#[test]
fn svg_of_stacked_construction() {
    let r = annulus_lk_n(3, Sign::Plus, 1.0).unwrap();
    let doc = DiagramDocument::from_construction(&r);
    let svg = cmd_svg(&doc, None, EPS_GEOM).unwrap();
    assert_eq!(count(&svg, "fold-line"), folding_vertices(&r.diagram).unwrap().len());
    assert_eq!(count(&svg, "boundary"), 2);
    assert!(svg.starts_with("<?xml") && svg.trim_end().ends_with("</svg>"));
    for c in [CORE_COLOR, BOUNDARY_COLORS[0], BOUNDARY_COLORS[1], FOLD_LINE_COLOR] {
        assert!(svg.contains(c));
    }
    let tri = DiagramDocument::new(regular_polygon(3, 1.0), FoldingInfo::parse("uuu").unwrap());
    let svg = cmd_svg(&tri, None, EPS_GEOM).unwrap();
    assert_eq!(count(&svg, "boundary"), 1);
    assert_eq!(count(&svg, "fold-line"), 3);
}

#[test]
fn schema_errors_are_specific() {
    let cases = [
        (r#"{"version": 2, "vertices": [[0,0],[1,0],[0,1]], "folding": ["u","u","u"]}"#, "version"),
        (r#"{"version": 1, "vertices": [[0,0],[1,0],[0,1]], "folding": ["u","x","u"]}"#, "folding[1]"),
        (r#"{"version": 1, "vertices": [[0,0],[1,0],[0,1]], "folding": ["u","u"]}"#, "vertex 2"),
        (
            r#"{"version": 1, "vertices": [[0,0],[1,0],[0,1]], "folding": ["u","u","u"], "crossings": [{"over":0,"under":1}]}"#,
            "crossings[0]",
        ),
        (r#"{"version": 1, "vertices": [[0,0],[1,0],[0,1]], "folding": ["u","u","u"], "width": -1}"#, "width"),
        (r#"{"version": 1, "vertices": [[0,0],[1,0],[0,1]], "folding": ["u","u","u"], "heights": [0]}"#, "heights"),
        ("{\"version\": 1,\n \"vertices\": [[0,0],[1,0],[0,1]],\n \"folding\": [\"u\",\"u\",\"u\"]\n,}", "line 4"),
    ];
    for (text, needle) in cases {
        let e = parse_document(text).unwrap_err().to_string();
        assert!(e.contains(needle), "{needle}: {e}");
    }
}

#[test]
fn enumerate_command() {
    let out = cmd_enumerate(5, false, EPS_GEOM).unwrap();
    assert!(out.ok);
    assert!(out.text.contains("achievable Lk  {-5, -3, -1, 1, 3, 5}"), "{}", out.text);
    let json: serde_json::Value = serde_json::from_str(&cmd_enumerate(4, true, EPS_GEOM).unwrap().text).unwrap();
    assert_eq!(json["achievable"], serde_json::json!([-2, -1, 0, 1, 2]));
    assert_eq!(json["consistent"], serde_json::json!(true));
}

#[test]
fn binary_end_to_end() {
    let doc = scratch("hexagon.json");
    let st = bin().args(["construct", "regular-ngon", "--n", "6", "--lk", "-2", "-o"]).arg(&doc).output().unwrap();
    assert!(st.status.success());
    let out = bin().args(["analyze", "--check-identity"]).arg(&doc).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Lk           -2"), "{text}");
    assert!(text.contains("Rib          10.392304845413"), "{text}");

    let out = bin().args(["--tolerance", "1e-7", "analyze", "--json"]).arg(&doc).output().unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["report"]["lk"], serde_json::json!(-2));

    let svg = scratch("hexagon.svg");
    assert!(bin().arg("svg").arg(&doc).arg("-o").arg(&svg).status().unwrap().success());
    assert_eq!(count(&std::fs::read_to_string(&svg).unwrap(), "fold-line"), 6);

    let out = bin().args(["optimize", "5", "--tolerance", "1e-9"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("f_min              6.881909602356"));

    assert!(bin().args(["enumerate", "7"]).output().unwrap().status.success());

    let bad = scratch("bad.json");
    std::fs::write(&bad, r#"{"version": 1, "vertices": [[0,0],[1,0],[2,0]], "folding": ["u","u","u"]}"#).unwrap();
    let st = bin().arg("analyze").arg(&bad).output().unwrap();
    assert_eq!(st.status.code(), Some(2));
    assert!(String::from_utf8(st.stderr).unwrap().contains("error"));
    assert!(!bin().args(["construct", "regular-ngon", "--n", "5", "--lk", "2"]).output().unwrap().status.success());
}

#[test]
fn regular_ngon_document_reports_tight_width() {
    let r = regular_ngon(8, 4, 1.0).unwrap();
    let mut doc = DiagramDocument::from_construction(&r);
    doc.width = None;
    let out = cmd_analyze(&doc, AnalyzeOptions::default()).unwrap();
    assert!(
        out.text.contains(&format!("Rib          {:.12}", 8.0 / (std::f64::consts::PI / 8.0).tan())),
        "{}",
        out.text
    );
}
