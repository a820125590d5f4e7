use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Planar point, also used as a free vector.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 2]", into = "[f64; 2]")]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3-D cross product.
    #[inline]
    pub fn cross(self, other: Point) -> f64 {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    #[inline]
    pub fn distance(self, other: Point) -> f64 {
        (self - other).norm()
    }

    #[inline]
    pub fn midpoint(self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    /// Counterclockwise quarter turn.
    #[inline]
    pub fn perp(self) -> Point {
        Point::new(-self.y, self.x)
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Lexicographic comparison on (x, y) using the IEEE total order.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        self.x.total_cmp(&other.x).then(self.y.total_cmp(&other.y))
    }
}

impl From<[f64; 2]> for Point {
    fn from([x, y]: [f64; 2]) -> Self {
        Point::new(x, y)
    }
}

impl From<Point> for [f64; 2] {
    fn from(p: Point) -> Self {
        [p.x, p.y]
    }
}

impl Add for Point {
    type Output = Point;
    #[inline]
    fn add(self, rhs: Point) -> Point {
        Point::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl AddAssign for Point {
    #[inline]
    fn add_assign(&mut self, rhs: Point) {
        self.x += rhs.x;
        self.y += rhs.y;
    }
}

impl Sub for Point {
    type Output = Point;
    #[inline]
    fn sub(self, rhs: Point) -> Point {
        Point::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Neg for Point {
    type Output = Point;
    #[inline]
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    #[inline]
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Mul<Point> for f64 {
    type Output = Point;
    #[inline]
    fn mul(self, p: Point) -> Point {
        p * self
    }
}

/// Unit-norm heading.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 2]", into = "[f64; 2]")]
pub struct Direction(Point);

impl Direction {
    /// Normalises `v`. Fails on zero-length or non-finite input.
    pub fn new(v: Point) -> Result<Self> {
        let n = v.norm();
        if !(n.is_finite() && n > 0.0) {
            return Err(Error::NumericalDegeneracy("cannot normalise a zero or non-finite vector"));
        }
        Ok(Direction(v * (1.0 / n)))
    }

    /// Heading at `angle` radians counterclockwise from +x.
    pub fn from_angle(angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Direction(Point::new(c, s))
    }

    #[inline]
    pub fn vector(self) -> Point {
        self.0
    }

    #[inline]
    pub fn dx(self) -> f64 {
        self.0.x
    }

    #[inline]
    pub fn dy(self) -> f64 {
        self.0.y
    }

    pub fn angle(self) -> f64 {
        self.0.y.atan2(self.0.x)
    }

    /// Rotates counterclockwise by `angle` radians.
    pub fn rotated(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        let v = self.0;
        Direction(Point::new(c * v.x - s * v.y, s * v.x + c * v.y))
    }

    /// Mirror image across a line whose unit normal is `normal`.
    pub fn reflected(self, normal: Direction) -> Self {
        let n = normal.0;
        Direction(self.0 - n * (2.0 * self.0.dot(n)))
    }

    pub fn dot(self, v: Point) -> f64 {
        self.0.dot(v)
    }
}

impl Neg for Direction {
    type Output = Direction;
    fn neg(self) -> Direction {
        Direction(-self.0)
    }
}

impl TryFrom<[f64; 2]> for Direction {
    type Error = Error;
    fn try_from(v: [f64; 2]) -> Result<Self> {
        Direction::new(v.into())
    }
}

impl From<Direction> for [f64; 2] {
    fn from(d: Direction) -> Self {
        d.0.into()
    }
}

/// Infinite line `{ X : normal · X = offset }` with unit normal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub normal: Direction,
    pub offset: f64,
}

impl Line {
    pub fn through(p: Point, normal: Direction) -> Self {
        Line { normal, offset: normal.dot(p) }
    }

    /// Line through two distinct points.
    pub fn from_points(a: Point, b: Point) -> Result<Self> {
        let normal = Direction::new((b - a).perp())?;
        Ok(Line::through(a, normal))
    }

    /// Perpendicular bisector of `a` and `b`, normal pointing from `a` to `b`.
    pub fn bisector(a: Point, b: Point) -> Result<Self> {
        let normal = Direction::new(b - a)?;
        Ok(Line::through(a.midpoint(b), normal))
    }

    #[inline]
    pub fn signed_distance(&self, p: Point) -> f64 {
        self.normal.dot(p) - self.offset
    }

    pub fn reflect(&self, p: Point) -> Point {
        p - self.normal.vector() * (2.0 * self.signed_distance(p))
    }

    pub fn project(&self, p: Point) -> Point {
        p - self.normal.vector() * self.signed_distance(p)
    }

    /// Intersection point; `None` when the lines are parallel to within `1e-12` rad.
    pub fn intersect(&self, other: &Line) -> Option<Point> {
        let (n1, n2) = (self.normal.vector(), other.normal.vector());
        let det = n1.cross(n2);
        if det.abs() <= 1e-12 {
            return None;
        }
        let x = (self.offset * n2.y - other.offset * n1.y) / det;
        let y = (n1.x * other.offset - n2.x * self.offset) / det;
        let p = Point::new(x, y);
        p.is_finite().then_some(p)
    }

    /// Parameter `alpha` with `origin + alpha * dir` on this line.
    pub fn ray_parameter(&self, origin: Point, dir: Point) -> Option<f64> {
        let denom = self.normal.dot(dir);
        let alpha = -self.signed_distance(origin) / denom;
        alpha.is_finite().then_some(alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn direction_normalises() {
        let d = Direction::new(Point::new(3.0, 4.0)).unwrap();
        assert_abs_diff_eq!(d.vector().norm(), 1.0, epsilon = 1e-15);
        assert!(Direction::new(Point::ORIGIN).is_err());
        assert!(Direction::new(Point::new(f64::NAN, 1.0)).is_err());
    }

    #[test]
    fn reflection_across_bisector_swaps_endpoints() {
        let a = Point::new(0.3, -1.2);
        let b = Point::new(2.0, 0.7);
        let bis = Line::bisector(a, b).unwrap();
        let r = bis.reflect(a);
        assert_abs_diff_eq!(r.x, b.x, epsilon = 1e-14);
        assert_abs_diff_eq!(r.y, b.y, epsilon = 1e-14);
        assert!(bis.signed_distance(a) < 0.0 && bis.signed_distance(b) > 0.0);
    }

    #[test]
    fn intersect_axes() {
        let l1 = Line::from_points(Point::new(0.0, 1.0), Point::new(5.0, 1.0)).unwrap();
        let l2 = Line::from_points(Point::new(2.0, -3.0), Point::new(2.0, 3.0)).unwrap();
        let p = l1.intersect(&l2).unwrap();
        assert_abs_diff_eq!(p.x, 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(p.y, 1.0, epsilon = 1e-14);
        assert!(l1.intersect(&l1).is_none());
    }

    #[test]
    fn rotation_and_reflection_keep_unit_norm() {
        let d = Direction::from_angle(0.4).rotated(2.1);
        assert_abs_diff_eq!(d.angle(), 2.5, epsilon = 1e-14);
        let n = Direction::from_angle(1.0);
        assert_abs_diff_eq!(d.reflected(n).vector().norm(), 1.0, epsilon = 1e-15);
    }
}
