//! Planar primitives: points, circle-circle intersection and collinearity.

use std::ops::{Add, Mul, Sub};

use serde::{Deserialize, Serialize};

/// Relative tolerance used to classify tangent and coincident circles.
pub const TANGENCY_TOLERANCE: f64 = 1e-9;

/// Default relative tolerance for [`are_collinear`].
pub const COLLINEARITY_TOLERANCE: f64 = 1e-6;

/// A 2D coordinate in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn distance(&self, other: &Point) -> f64 {
        distance(*self, *other)
    }

    /// Z component of the cross product of `self` and `other` seen as vectors.
    pub fn cross(&self, other: &Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(&self, other: &Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(&self) -> f64 {
        self.x.hypot(self.y)
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// The two positions consistent with two range measurements.
///
/// `p1` lies to the left of the directed segment from the first center to the
/// second one. For tangent circles both points are the same and `coincident`
/// is set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CandidatePair {
    pub p1: Point,
    pub p2: Point,
    pub coincident: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Intersection {
    Points(CandidatePair),
    /// Disjoint circles, or one nested inside the other.
    None,
    /// Same center and same radius.
    Infinite,
}

impl Intersection {
    pub fn pair(self) -> Option<CandidatePair> {
        match self {
            Intersection::Points(pair) => Some(pair),
            _ => None,
        }
    }
}

/// Euclidean distance.
pub fn distance(a: Point, b: Point) -> f64 {
    (a.x - b.x).hypot(a.y - b.y)
}

/// Intersects the circle `(c1, r1)` with the circle `(c2, r2)`.
///
/// Tangency is detected with a tolerance of `1e-9 * max(r1, r2)`, so exact
/// measurements that put a node on the line through its two anchors still
/// produce a (coincident) candidate.
pub fn circle_intersection(c1: Point, r1: f64, c2: Point, r2: f64) -> Intersection {
    let tol = TANGENCY_TOLERANCE * r1.max(r2);
    let axis = c2 - c1;
    let d = axis.norm();

    if d <= tol {
        return if (r1 - r2).abs() <= tol {
            Intersection::Infinite
        } else {
            Intersection::None
        };
    }

    let outer = r1 + r2;
    let inner = (r1 - r2).abs();
    if d > outer + tol || d < inner - tol {
        return Intersection::None;
    }

    let u = axis * (1.0 / d);
    if (d - outer).abs() <= tol || (d - inner).abs() <= tol {
        // Internal tangency with r1 < r2 touches on the far side of c1.
        let touch = if (d - outer).abs() <= tol || r1 >= r2 {
            c1 + u * r1
        } else {
            c1 - u * r1
        };
        return Intersection::Points(CandidatePair {
            p1: touch,
            p2: touch,
            coincident: true,
        });
    }

    let along = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    let half_chord = (r1 * r1 - along * along).max(0.0).sqrt();
    let mid = c1 + u * along;
    let left = Point::new(-u.y, u.x);
    Intersection::Points(CandidatePair {
        p1: mid + left * half_chord,
        p2: mid - left * half_chord,
        coincident: false,
    })
}

/// True when the triangle `abc` is degenerate.
///
/// Twice the triangle area is compared against `tol` scaled by the squared
/// longest side (floored at one), which makes the test a bound on the sine of
/// the flattest angle for triangles larger than a unit.
pub fn are_collinear(a: Point, b: Point, c: Point, tol: f64) -> bool {
    let twice_area = (b - a).cross(&(c - a)).abs();
    let longest = distance(a, b).max(distance(a, c)).max(distance(b, c));
    twice_area <= tol * (longest * longest).max(1.0)
}
