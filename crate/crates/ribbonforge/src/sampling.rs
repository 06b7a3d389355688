//! Random polygons and foldings for searches and property tests.

use std::f64::consts::PI;

use rand::Rng;

use crate::diagram_core::{FoldingInfo, KnotDiagram, Layer};
use crate::geom::Point2;

/// Counterclockwise triangle with interior angles `angles` and perimeter 1.
pub fn triangle_from_angles(angles: [f64; 3]) -> KnotDiagram {
    // side opposite vertex i is proportional to sin(angle i)
    let s: Vec<f64> = angles.iter().map(|a| a.sin()).collect();
    let total: f64 = s.iter().sum();
    let (a, b) = (s[2] / total, s[1] / total);
    // vertex 0 at the origin, edge 0 along +x with length opposite vertex 2
    let p1 = Point2::new(a, 0.0);
    let p2 = Point2::new(b * angles[0].cos(), b * angles[0].sin());
    KnotDiagram::new(vec![Point2::new(0.0, 0.0), p1, p2])
}

/// Point of the probability simplex drawn uniformly (Dirichlet(1, ..., 1)).
pub fn uniform_simplex<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<f64> {
    let e: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let s: f64 = e.iter().sum();
    e.into_iter().map(|x| x / s).collect()
}

/// Perimeter-1 triangle with angles uniform on the simplex.
pub fn random_triangle<R: Rng + ?Sized>(rng: &mut R) -> ([f64; 3], KnotDiagram) {
    let w = uniform_simplex(3, rng);
    let angles = [w[0] * PI, w[1] * PI, w[2] * PI];
    (angles, triangle_from_angles(angles))
}

/// Polygon with exterior turning angles `turns` (summing to `2 pi`) and
/// the first `n - 2` edge lengths given; the last two lengths are solved
/// to close the polygon. `None` if they come out nonpositive.
pub fn polygon_from_turns(turns: &[f64], lengths: &[f64]) -> Option<KnotDiagram> {
    let n = turns.len();
    assert!(n >= 3 && lengths.len() == n - 2);
    let mut heading = 0.0;
    let dirs: Vec<Point2> = (0..n)
        .map(|i| {
            if i > 0 {
                heading += turns[i];
            }
            Point2::new(heading.cos(), heading.sin())
        })
        .collect();
    let mut r = Point2::new(0.0, 0.0);
    for i in 0..n - 2 {
        r = r + dirs[i] * lengths[i];
    }
    // solve a u + b v = -r
    let (u, v) = (dirs[n - 2], dirs[n - 1]);
    let det = u.cross(v);
    if det.abs() < 1e-12 {
        return None;
    }
    let a = (-r).cross(v) / det;
    let b = u.cross(-r) / det;
    if a <= 1e-9 || b <= 1e-9 {
        return None;
    }
    let mut p = Point2::new(0.0, 0.0);
    let mut vertices = Vec::with_capacity(n);
    for (i, &d) in dirs.iter().enumerate() {
        vertices.push(p);
        let l = if i < n - 2 {
            lengths[i]
        } else if i == n - 2 {
            a
        } else {
            b
        };
        p = p + d * l;
    }
    let per: f64 = (0..n).map(|i| vertices[(i + 1) % n].dist(vertices[i])).sum();
    Some(KnotDiagram::new(vertices.into_iter().map(|q| q * (1.0 / per)).collect()))
}

/// Random strictly convex counterclockwise `n`-gon of perimeter 1 whose
/// exterior turns are at most `max_turn` (so interior angles are at least
/// `pi - max_turn`).
pub fn random_convex_polygon_with<R: Rng + ?Sized>(n: usize, max_turn: f64, rng: &mut R) -> KnotDiagram {
    assert!(n >= 3 && max_turn * n as f64 > 2.0 * PI, "no convex {n}-gon has all turns below {max_turn}");
    loop {
        let turns: Vec<f64> = uniform_simplex(n, rng).into_iter().map(|x| x * 2.0 * PI).collect();
        if turns.iter().any(|&t| t >= max_turn || t < 1e-3) {
            continue;
        }
        let lengths: Vec<f64> = (0..n - 2).map(|_| rng.gen_range(0.2..1.0)).collect();
        if let Some(d) = polygon_from_turns(&turns, &lengths) {
            if (0..n).all(|i| d.edge_length(i) > 1e-3 / n as f64) {
                return d;
            }
        }
    }
}

/// Random strictly convex counterclockwise `n`-gon of perimeter 1.
pub fn random_convex_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> KnotDiagram {
    random_convex_polygon_with(n, PI - 1e-3, rng)
}

/// Random convex `n`-gon (`n >= 5`) with every interior angle obtuse.
pub fn random_obtuse_polygon<R: Rng + ?Sized>(n: usize, rng: &mut R) -> KnotDiagram {
    random_convex_polygon_with(n, PI / 2.0, rng)
}

pub fn random_folding<R: Rng + ?Sized>(n: usize, rng: &mut R) -> FoldingInfo {
    FoldingInfo::new((0..n).map(|_| if rng.gen() { Layer::Under } else { Layer::Over }).collect())
}
