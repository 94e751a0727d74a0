//! Planar primitives and tolerance-aware predicates.
//!
//! Everything here works in `f64`. Predicates compare against a band scaled by
//! the squared magnitude of their operands, so the same [`Tolerance`] behaves
//! the same way for unit-scale and kilometre-scale inputs.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point (or free vector) in the plane.
///
/// Serialized as a two-element array `[x, y]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product.
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counter-clockwise rotation about the origin.
    pub fn rotated(self, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        Point::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Polar angle in `[0, 2π)`.
    pub fn polar_angle(self) -> f64 {
        let a = self.y.atan2(self.x);
        if a < 0.0 {
            a + 2.0 * PI
        } else {
            a
        }
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point { x, y }
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
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

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

/// Comparison band used by every predicate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Relative band, multiplied by the squared scale of the operands.
    pub eps_rel: f64,
    /// Absolute floor for lengths that count as zero.
    pub eps_abs: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps_rel: 1e-9, eps_abs: 1e-12 }
    }
}

impl Tolerance {
    pub fn new(eps_rel: f64, eps_abs: f64) -> Result<Self> {
        if !(eps_rel > 0.0 && eps_abs > 0.0 && eps_rel.is_finite() && eps_abs.is_finite()) {
            return Err(Error::PreconditionViolated(format!(
                "tolerances must be positive and finite (eps_rel={eps_rel}, eps_abs={eps_abs})"
            )));
        }
        Ok(Tolerance { eps_rel, eps_abs })
    }
}

/// An edge of the complete graph over an instance, stored with `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

impl Edge {
    /// Builds the canonical edge between `points[a]` and `points[b]`.
    ///
    /// Panics if `a == b` or either index is out of bounds.
    pub fn between(points: &[Point], a: usize, b: usize) -> Edge {
        assert_ne!(a, b, "an edge needs two distinct endpoints");
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        Edge { i, j, weight: dist(points[i], points[j]) }
    }

    pub fn endpoints(&self, points: &[Point]) -> (Point, Point) {
        (points[self.i], points[self.j])
    }

    pub fn other(&self, v: usize) -> usize {
        if v == self.i {
            self.j
        } else {
            self.i
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Self {
        debug_assert!(radius >= 0.0);
        Circle { center, radius }
    }

    /// The circle having segment `pq` as a diameter.
    pub fn diametral(p: Point, q: Point) -> Self {
        Circle { center: p.midpoint(q), radius: 0.5 * dist(p, q) }
    }

    /// Closed containment with a relative band of `eps` on the radius.
    pub fn contains(&self, x: Point, eps: f64) -> bool {
        dist(self.center, x) <= self.radius * (1.0 + eps)
    }
}

/// A closed disk, optionally tagged with the edge it is the diametral disk of.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Disk {
    pub center: Point,
    pub radius: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub edge: Option<Edge>,
}

impl Disk {
    pub fn new(center: Point, radius: f64) -> Self {
        Disk { center, radius, edge: None }
    }

    pub fn diametral(points: &[Point], edge: Edge) -> Self {
        let (p, q) = edge.endpoints(points);
        Disk { center: p.midpoint(q), radius: 0.5 * edge.weight, edge: Some(edge) }
    }

    /// Closed membership. Uses the same band as [`in_diametral_disk`]:
    /// `|x - c|² - r² <= eps_rel · (2r)²`.
    pub fn contains(&self, x: Point, tol: &Tolerance) -> bool {
        let excess = (x - self.center).norm_sq() - self.radius * self.radius;
        excess <= tol.eps_rel * 4.0 * self.radius * self.radius + tol.eps_abs * tol.eps_abs
    }
}

pub fn dist(p: Point, q: Point) -> f64 {
    (p - q).norm()
}

/// Unsigned angle `∠pcq` in `[0, π]`.
pub fn angle_at(c: Point, p: Point, q: Point, tol: &Tolerance) -> Result<f64> {
    let u = p - c;
    let v = q - c;
    let nu = u.norm();
    let nv = v.norm();
    if nu <= tol.eps_abs || nv <= tol.eps_abs {
        return Err(Error::DegenerateAngle { norm: nu.min(nv) });
    }
    Ok(u.cross(v).abs().atan2(u.dot(v)))
}

/// Whether `x` lies in the closed disk with diameter `pq`.
///
/// By Thales, `x` is inside iff `(p - x)·(q - x) <= 0`; the band is
/// `eps_rel · |pq|²`.
pub fn in_diametral_disk(p: Point, q: Point, x: Point, tol: &Tolerance) -> Result<bool> {
    let scale = (p - q).norm_sq();
    if scale.sqrt() <= tol.eps_abs {
        return Err(Error::DegenerateEdge { length: scale.sqrt() });
    }
    Ok((p - x).dot(q - x) <= tol.eps_rel * scale)
}

/// The circle through three points.
pub fn circumcircle(p: Point, q: Point, r: Point, tol: &Tolerance) -> Result<Circle> {
    let b = q - p;
    let c = r - p;
    let area2 = b.cross(c);
    let span = b.norm_sq().max(c.norm_sq()).max((r - q).norm_sq());
    if area2.abs() <= tol.eps_abs * span {
        return Err(Error::CollinearPoints { area: area2 });
    }
    let d = 2.0 * area2;
    let bb = b.norm_sq();
    let cc = c.norm_sq();
    let u = Point::new((c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d);
    Ok(Circle { center: p + u, radius: u.norm() })
}
