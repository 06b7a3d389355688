//! Folded ribbon knots over polygonal knot diagrams.
//!
//! A diagram is an ordered, closed list of planar vertices plus explicit
//! crossing data. Around it we build a flat ribbon of width `w` that folds
//! at every vertex, and compute its folded ribbonlength, ribbon linking
//! number, twist and writhe.
//!
//! ```
//! use ribbonforge::prelude::*;
//!
//! let tri = regular_polygon(3, 1.0);
//! let folds = FoldingInfo::parse("uuo").unwrap();
//! assert_eq!(ribbon_linking_number(&tri, &folds).unwrap(), 1);
//! let w = max_width(&tri).unwrap().width;
//! assert!((ribbonlength(&tri, w).unwrap() - 3f64.sqrt()).abs() < 1e-12);
//! ```

pub mod cli_io;
pub mod constructions;
pub mod diagram_core;
pub mod exec;
pub mod geom;
pub mod linking;
pub mod optimize;
pub mod ribbon_geometry;
pub mod sampling;
pub mod svg;
pub mod tolerances;

pub use diagram_core::{Crossing, DiagramError, FoldingInfo, HeightAssignment, KnotDiagram, Layer, TopologicalType};
pub use geom::Point2;

pub mod prelude {
    pub use crate::constructions::{
        annulus_lk_n, connected_sum, delta_l, four_stick_lk1, pentagram_trefoil, regular_ngon, two_stick,
        ConstructionResult, Sign,
    };
    pub use crate::diagram_core::{
        fold_angle, interior_angles, is_convex, regular_polygon, topological_type, total_length, validate, Crossing,
        FoldingInfo, HeightAssignment, KnotDiagram, Layer, TopologicalType,
    };
    pub use crate::exec::Execution;
    pub use crate::geom::Point2;
    pub use crate::linking::{
        crossing_sign, enumerate_convex_linking, fold_sign, folding_for_linking, linking_oracle_planar,
        rib_lower_bound, ribbon_linking_number, ribbon_report, space_writhe, twist, writhe, RibbonReport,
    };
    pub use crate::optimize::{lagrange_residual, minimize_tan_sum, tan_sum, AngleDomain};
    pub use crate::ribbon_geometry::{
        build_ribbon, extended_fold_ribbonlength, exterior_gaps, fold_ribbonlength, max_feasible_width, max_width,
        ribbonlength,
    };
}
