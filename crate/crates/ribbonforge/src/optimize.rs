//! Minimizing `sum tan(a_i / 2)` over interior angles with fixed sum.
//!
//! For a perimeter-1 convex polygon the widest ribbon has
//! `w = 1 / sum tan(a_i / 2)`, so this minimum gives the largest width and
//! the smallest ribbonlength over all shapes with those angle constraints.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::diagram_core::interior_angles;
use crate::exec::Execution;
use crate::ribbon_geometry::max_width;
use crate::sampling::{random_triangle, triangle_from_angles};
use crate::tolerances::{EPS_OPT, MAX_ITERS, MIN_SEEDS, TOL_ANGLE};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OptimizeError {
    #[error("angle {0} is at or beyond the pole of tan(a/2)")]
    Pole(f64),
    #[error("need n >= 3, got {0}")]
    TooFewAngles(usize),
    #[error("need at least {MIN_SEEDS} seeds, got {0}")]
    TooFewSeeds(usize),
    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),
}

/// Allowed interior angles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum AngleDomain {
    /// `(0, pi)`.
    Open,
    /// `[pi/2, pi)`.
    Obtuse,
}

impl AngleDomain {
    /// `Open` for triangles, `Obtuse` otherwise.
    pub fn for_n(n: usize) -> AngleDomain {
        if n == 3 {
            AngleDomain::Open
        } else {
            AngleDomain::Obtuse
        }
    }

    pub fn lower(self) -> f64 {
        match self {
            AngleDomain::Open => 0.0,
            AngleDomain::Obtuse => PI / 2.0,
        }
    }

    pub fn contains(self, a: f64) -> bool {
        a < PI && (a >= self.lower() && (self == AngleDomain::Obtuse || a > 0.0))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AngleVector {
    pub alphas: Vec<f64>,
}

impl AngleVector {
    pub fn equiangular(n: usize) -> AngleVector {
        AngleVector { alphas: vec![(n as f64 - 2.0) * PI / n as f64; n] }
    }

    /// Largest deviation from the equiangular point.
    pub fn distance_to_equiangular(&self) -> f64 {
        let e = (self.alphas.len() as f64 - 2.0) * PI / self.alphas.len() as f64;
        self.alphas.iter().map(|a| (a - e).abs()).fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeOutcome {
    pub minimizer: AngleVector,
    pub f_min: f64,
    pub lagrange_residual: f64,
    /// Largest iteration count over the seeds.
    pub iterations: usize,
    /// Largest angle difference between any two seeds' minimizers.
    pub multistart_spread: f64,
    /// Some angle of the minimizer sits on the domain's lower bound.
    pub boundary_active: bool,
    pub seeds: usize,
}

/// `sum tan(a_i / 2)`.
pub fn tan_sum(a: &[f64]) -> Result<f64, OptimizeError> {
    a.iter().map(|&x| if x >= PI || !x.is_finite() { Err(OptimizeError::Pole(x)) } else { Ok((x / 2.0).tan()) }).sum()
}

/// Components `(1/2) sec^2(a_i / 2)`.
pub fn gradient(a: &[f64]) -> Vec<f64> {
    a.iter().map(|&x| 0.5 / (x / 2.0).cos().powi(2)).collect()
}

fn hessian_diag(a: &[f64]) -> Vec<f64> {
    a.iter().map(|&x| 0.5 * (x / 2.0).tan() / (x / 2.0).cos().powi(2)).collect()
}

/// Spread of the stationarity conditions `sec^2(a_i/2) = 2 lambda` plus the
/// angle-sum violation. Zero exactly at the equiangular point.
pub fn lagrange_residual(a: &[f64]) -> f64 {
    let n = a.len() as f64;
    let s: Vec<f64> = a.iter().map(|&x| 1.0 / (x / 2.0).cos().powi(2)).collect();
    let hi = s.iter().copied().fold(f64::MIN, f64::max);
    let lo = s.iter().copied().fold(f64::MAX, f64::min);
    (hi - lo) + (a.iter().sum::<f64>() - (n - 2.0) * PI).abs()
}

struct Run {
    x: Vec<f64>,
    iterations: usize,
}

/// Projected Newton with a diagonal Hessian on `sum a_i = (n - 2) pi`,
/// with angles on the lower bound held fixed while the gradient pushes
/// them down.
fn descend(mut x: Vec<f64>, domain: AngleDomain) -> Result<Run, OptimizeError> {
    let n = x.len();
    let lo = domain.lower();
    let mut fx = tan_sum(&x)?;
    for it in 0..MAX_ITERS {
        let g = gradient(&x);
        let h = hessian_diag(&x);
        let mut free: Vec<bool> = vec![true; n];
        let mut step = vec![0.0; n];
        loop {
            let (mut num, mut den) = (0.0, 0.0);
            for i in (0..n).filter(|&i| free[i]) {
                num += g[i] / h[i];
                den += 1.0 / h[i];
            }
            let lambda = num / den;
            let mut changed = false;
            for i in 0..n {
                step[i] = if free[i] { -(g[i] - lambda) / h[i] } else { 0.0 };
                if free[i] && x[i] <= lo + 1e-15 && step[i] < 0.0 {
                    free[i] = false;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let size = step.iter().map(|s| s.abs()).fold(0.0, f64::max);
        if size < 1e-14 {
            return Ok(Run { x, iterations: it });
        }
        // longest step that stays inside the domain
        let mut t: f64 = 1.0;
        for i in 0..n {
            if step[i] < 0.0 && x[i] + step[i] < lo {
                t = t.min((lo - x[i]) / step[i]);
            }
            if step[i] > 0.0 && x[i] + step[i] >= PI {
                t = t.min(0.5 * (PI - x[i]) / step[i]);
            }
        }
        let slope: f64 = g.iter().zip(&step).map(|(a, b)| a * b).sum();
        loop {
            let mut y: Vec<f64> = x.iter().zip(&step).map(|(a, s)| (a + t * s).max(lo)).collect();
            // keep the angle sum exact after clamping
            let drift = y.iter().sum::<f64>() - (n as f64 - 2.0) * PI;
            let movable: Vec<usize> = (0..n).filter(|&i| y[i] > lo + 1e-15).collect();
            for &i in &movable {
                y[i] -= drift / movable.len() as f64;
            }
            let fy = tan_sum(&y)?;
            // near the minimum f is flat to rounding; trust the Newton step there
            let stalled = (fx - fy).abs() <= 4.0 * f64::EPSILON * fx;
            if fy <= fx + 1e-4 * t * slope || stalled || t < 1e-16 {
                x = y;
                fx = fy;
                if stalled && size < TOL_ANGLE * 1e-3 {
                    return Ok(Run { x, iterations: it + 1 });
                }
                break;
            }
            t *= 0.5;
        }
    }
    Err(OptimizeError::NoConvergence(MAX_ITERS))
}

/// Random feasible start: the equiangular point moved along a random
/// direction in the constraint hyperplane, staying inside the domain.
fn random_start(n: usize, domain: AngleDomain, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let c = (n as f64 - 2.0) * PI / n as f64;
    let mut d: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let mean = d.iter().sum::<f64>() / n as f64;
    d.iter_mut().for_each(|x| *x -= mean);
    let mut s_max = f64::INFINITY;
    for &di in &d {
        if di > 0.0 {
            s_max = s_max.min((PI - c) / di);
        } else if di < 0.0 {
            s_max = s_max.min((c - domain.lower()) / -di);
        }
    }
    let s = if s_max.is_finite() { 0.999 * rng.gen::<f64>() * s_max } else { 0.0 };
    d.iter().map(|di| c + s * di).collect()
}

/// Single descent from a feasible `start` (angles in `domain`, summing to
/// `(n - 2) pi`).
pub fn minimize_from(start: &[f64], domain: AngleDomain) -> Result<AngleVector, OptimizeError> {
    if start.len() < 3 {
        return Err(OptimizeError::TooFewAngles(start.len()));
    }
    Ok(AngleVector { alphas: descend(start.to_vec(), domain)?.x })
}

/// Multistart minimization of [`tan_sum`] over `n` angles in `domain`.
pub fn minimize_tan_sum(n: usize, domain: AngleDomain, seeds: usize) -> Result<OptimizeOutcome, OptimizeError> {
    minimize_tan_sum_with(n, domain, seeds, 0x5eed, Execution::default())
}

pub fn minimize_tan_sum_with(
    n: usize,
    domain: AngleDomain,
    seeds: usize,
    rng_seed: u64,
    exec: Execution,
) -> Result<OptimizeOutcome, OptimizeError> {
    if n < 3 {
        return Err(OptimizeError::TooFewAngles(n));
    }
    if seeds < MIN_SEEDS {
        return Err(OptimizeError::TooFewSeeds(seeds));
    }
    let runs = exec.map_range(seeds, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed.wrapping_add(s as u64));
        descend(random_start(n, domain, &mut rng), domain)
    });
    let runs: Vec<Run> = runs.into_iter().collect::<Result<_, _>>()?;
    let mut best = 0;
    let mut fs = Vec::with_capacity(runs.len());
    for (i, r) in runs.iter().enumerate() {
        fs.push(tan_sum(&r.x)?);
        if fs[i] < fs[best] {
            best = i;
        }
    }
    let mut spread: f64 = 0.0;
    for r in &runs {
        for (a, b) in r.x.iter().zip(&runs[best].x) {
            spread = spread.max((a - b).abs());
        }
    }
    let x = runs[best].x.clone();
    Ok(OptimizeOutcome {
        boundary_active: domain == AngleDomain::Obtuse && x.iter().any(|&a| a <= PI / 2.0 + EPS_OPT),
        lagrange_residual: lagrange_residual(&x),
        f_min: fs[best],
        iterations: runs.iter().map(|r| r.iterations).max().unwrap_or(0),
        multistart_spread: spread,
        minimizer: AngleVector { alphas: x },
        seeds,
    })
}

/// `tan_sum` along `a_1 = pi - eps` with the other angles equal, for each
/// `eps`, ordered by decreasing `eps`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupTable {
    pub rows: Vec<(f64, f64)>,
    pub strictly_increasing: bool,
}

pub fn boundary_blowup_check(n: usize, eps_list: &[f64]) -> Result<BlowupTable, OptimizeError> {
    if n < 3 {
        return Err(OptimizeError::TooFewAngles(n));
    }
    let mut eps: Vec<f64> = eps_list.to_vec();
    eps.sort_by(|a, b| b.total_cmp(a));
    let rows = eps
        .into_iter()
        .map(|e| {
            let rest = ((n as f64 - 3.0) * PI + e) / (n as f64 - 1.0);
            let mut a = vec![rest; n];
            a[0] = PI - e;
            tan_sum(&a).map(|f| (e, f))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let strictly_increasing = rows.windows(2).all(|w| w[1].1 > w[0].1);
    Ok(BlowupTable { rows, strictly_increasing })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleSearch {
    pub samples: usize,
    /// Widest triangle found, including the equilateral reference sample.
    pub best_width: f64,
    pub best_angles: [f64; 3],
    /// Widest among the random samples only.
    pub best_random_width: f64,
    pub best_random_angles: [f64; 3],
    pub bound: f64,
    pub exceeds_bound: bool,
}

/// Max width of random perimeter-1 triangles, plus the equilateral one,
/// against the bound `1/sqrt(3)`.
pub fn triangle_width_search(samples: usize, rng_seed: u64, exec: Execution) -> TriangleSearch {
    let widths = exec.map_range(samples, |s| {
        let mut rng = ChaCha8Rng::seed_from_u64(rng_seed.wrapping_add(s as u64));
        let (_, t) = random_triangle(&mut rng);
        let w = max_width(&t).map(|b| b.width).unwrap_or(0.0);
        let angles = interior_angles(&t).unwrap_or_else(|_| vec![0.0; 3]);
        (w, [angles[0], angles[1], angles[2]])
    });
    let (best_random_width, best_random_angles) =
        widths.iter().copied().fold((0.0, [0.0; 3]), |acc, x| if x.0 > acc.0 { x } else { acc });
    let eq = [PI / 3.0; 3];
    let eq_w = max_width(&triangle_from_angles(eq)).map(|b| b.width).unwrap_or(0.0);
    let (best_width, best_angles) =
        if eq_w >= best_random_width { (eq_w, eq) } else { (best_random_width, best_random_angles) };
    let bound = 1.0 / 3f64.sqrt();
    TriangleSearch {
        samples,
        best_width,
        best_angles,
        best_random_width,
        best_random_angles,
        bound,
        exceeds_bound: best_width > bound + EPS_OPT,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tan_sum_values() {
        let t = PI / 3.0;
        assert!((tan_sum(&[t, t, t]).unwrap() - 3f64.sqrt()).abs() < 1e-15);
        let f = tan_sum(&[PI / 6.0, PI / 3.0, PI / 2.0]).unwrap();
        assert!((f - (3.0 - 2.0 * 3f64.sqrt() / 3.0)).abs() < 1e-15);
        assert!(tan_sum(&[PI, 0.0, 0.0]).is_err());
    }

    #[test]
    fn residual_zero_only_at_equiangular() {
        assert!(lagrange_residual(&AngleVector::equiangular(7).alphas) < 1e-12);
        assert!(lagrange_residual(&[PI / 6.0, PI / 3.0, PI / 2.0]) > 0.1);
    }

    #[test]
    fn square_domain_is_a_point() {
        let o = minimize_tan_sum(4, AngleDomain::Obtuse, 20).unwrap();
        assert!(o.minimizer.distance_to_equiangular() < 1e-12);
        assert!(o.boundary_active);
        assert!((o.f_min - 4.0).abs() < 1e-12);
    }

    #[test]
    fn blowup_table() {
        let t = boundary_blowup_check(5, &[0.1, 0.5, 0.02]).unwrap();
        assert!(t.strictly_increasing);
        assert_eq!(t.rows[0].0, 0.5);
    }
}
