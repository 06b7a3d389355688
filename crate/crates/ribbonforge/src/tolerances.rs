//! Numerical tolerances shared across the crate.

/// Absolute tolerance for collinearity, intersection and angle classification
/// on unit-scale data.
pub const EPS_GEOM: f64 = 1e-9;

/// Angle-sum constraint tolerance for [`crate::optimize::AngleVector`].
pub const EPS_OPT: f64 = 1e-9;

/// Distance from the equiangular point accepted as converged, in radians.
pub const TOL_ANGLE: f64 = 1e-8;

/// Objective tolerance against the closed-form minimum.
pub const TOL_F: f64 = 1e-10;

/// Iteration cap for a single optimizer run.
pub const MAX_ITERS: usize = 100_000;

/// Minimum number of multistart seeds.
pub const MIN_SEEDS: usize = 20;
