//! Reference configurations built from a target cell.

use crate::geometry::{pursuers_from_cell, PlayerSet, Point, Triangle};

/// Unit equilateral cell `(0,0), (1,0), (1/2, sqrt(3)/2)` with the evader at its centre.
pub fn equilateral() -> PlayerSet {
    let tri = equilateral_triangle(1.0);
    pursuers_from_cell(&tri, tri.centroid()).expect("centroid is interior")
}

pub fn equilateral_triangle(side: f64) -> Triangle {
    Triangle::new(Point::new(0.0, 0.0), Point::new(side, 0.0), Point::new(0.5 * side, 0.5 * 3f64.sqrt() * side))
}

/// 3-4-5 right-triangle cell `(0,0), (4,0), (4,3)` with the evader at `(3, 1/2)`.
pub fn right_345() -> PlayerSet {
    let tri = Triangle::new(Point::new(0.0, 0.0), Point::new(4.0, 0.0), Point::new(4.0, 3.0));
    pursuers_from_cell(&tri, Point::new(3.0, 0.5)).expect("interior point")
}
