//! Planar points and segment predicates.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl From<[f64; 2]> for Point2 {
    fn from(a: [f64; 2]) -> Self {
        Point2 { x: a[0], y: a[1] }
    }
}

impl From<Point2> for [f64; 2] {
    fn from(p: Point2) -> Self {
        [p.x, p.y]
    }
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, o: Point2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, o: Point2) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point2) -> f64 {
        (self - o).norm()
    }

    pub fn normalized(self) -> Point2 {
        let n = self.norm();
        Point2::new(self.x / n, self.y / n)
    }

    /// Rotate 90 degrees counterclockwise.
    pub fn perp(self) -> Point2 {
        Point2::new(-self.y, self.x)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn lerp(self, o: Point2, t: f64) -> Point2 {
        self + (o - self) * t
    }
}

impl Add for Point2 {
    type Output = Point2;
    fn add(self, o: Point2) -> Point2 {
        Point2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Point2;
    fn sub(self, o: Point2) -> Point2 {
        Point2::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Point2;
    fn mul(self, s: f64) -> Point2 {
        Point2::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Point2;
    fn neg(self) -> Point2 {
        Point2::new(-self.x, -self.y)
    }
}

/// How two closed segments meet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SegmentMeet {
    Disjoint,
    /// Interiors cross at a single point; `t`, `u` are the parameters on
    /// the first and second segment.
    Proper {
        t: f64,
        u: f64,
        point: Point2,
    },
    /// They share a point, but at an endpoint of at least one segment.
    Touch {
        point: Point2,
    },
    /// Collinear with an overlap of positive length.
    Overlap,
}

/// Classify the intersection of `[a0, a1]` and `[b0, b1]`.
///
/// `eps` is an absolute distance: parameters within `eps` of an endpoint
/// count as touching, and nearly parallel pairs closer than `eps` count as
/// collinear.
pub fn segment_meet(a0: Point2, a1: Point2, b0: Point2, b1: Point2, eps: f64) -> SegmentMeet {
    let r = a1 - a0;
    let s = b1 - b0;
    let rl = r.norm();
    let sl = s.norm();
    let denom = r.cross(s);
    let qp = b0 - a0;
    if denom.abs() <= eps * rl * sl {
        // parallel
        if qp.cross(r).abs() > eps * rl {
            return SegmentMeet::Disjoint;
        }
        let rr = r.dot(r);
        let t0 = qp.dot(r) / rr;
        let t1 = (b1 - a0).dot(r) / rr;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let lo = lo.max(0.0);
        let hi = hi.min(1.0);
        let tol = eps / rl;
        if hi - lo > tol {
            return SegmentMeet::Overlap;
        }
        if hi - lo >= -tol {
            return SegmentMeet::Touch { point: a0 + r * ((lo + hi) / 2.0) };
        }
        return SegmentMeet::Disjoint;
    }
    let t = qp.cross(s) / denom;
    let u = qp.cross(r) / denom;
    let ta = eps / rl;
    let ub = eps / sl;
    if t < -ta || t > 1.0 + ta || u < -ub || u > 1.0 + ub {
        return SegmentMeet::Disjoint;
    }
    let point = a0 + r * t;
    if t <= ta || t >= 1.0 - ta || u <= ub || u >= 1.0 - ub {
        SegmentMeet::Touch { point }
    } else {
        SegmentMeet::Proper { t, u, point }
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b - a;
    let l2 = ab.dot(ab);
    if l2 == 0.0 {
        return p.dist(a);
    }
    let t = ((p - a).dot(ab) / l2).clamp(0.0, 1.0);
    p.dist(a + ab * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: f64, y: f64) -> Point2 {
        Point2::new(x, y)
    }

    #[test]
    fn proper_crossing() {
        match segment_meet(p(0.0, 0.0), p(2.0, 0.0), p(1.0, -1.0), p(1.0, 1.0), 1e-9) {
            SegmentMeet::Proper { t, u, point } => {
                assert!((t - 0.5).abs() < 1e-15);
                assert!((u - 0.5).abs() < 1e-15);
                assert_eq!(point, p(1.0, 0.0));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn touching_and_disjoint() {
        let m = segment_meet(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(1.0, 1.0), 1e-9);
        assert!(matches!(m, SegmentMeet::Touch { .. }));
        let m = segment_meet(p(0.0, 0.0), p(1.0, 0.0), p(2.0, -1.0), p(2.0, 1.0), 1e-9);
        assert_eq!(m, SegmentMeet::Disjoint);
    }

    #[test]
    fn collinear_cases() {
        let m = segment_meet(p(0.0, 0.0), p(2.0, 0.0), p(1.0, 0.0), p(3.0, 0.0), 1e-9);
        assert_eq!(m, SegmentMeet::Overlap);
        let m = segment_meet(p(0.0, 0.0), p(1.0, 0.0), p(1.0, 0.0), p(3.0, 0.0), 1e-9);
        assert!(matches!(m, SegmentMeet::Touch { .. }));
        let m = segment_meet(p(0.0, 0.0), p(1.0, 0.0), p(0.0, 1.0), p(1.0, 1.0), 1e-9);
        assert_eq!(m, SegmentMeet::Disjoint);
    }

    #[test]
    fn distance_to_segment() {
        assert!((point_segment_distance(p(0.5, 2.0), p(0.0, 0.0), p(1.0, 0.0)) - 2.0).abs() < 1e-15);
        assert!((point_segment_distance(p(4.0, 4.0), p(0.0, 0.0), p(1.0, 0.0)) - 5.0).abs() < 1e-15);
    }
}
