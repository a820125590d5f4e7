use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use super::point::{Direction, Line, Point};
use crate::error::{Error, Result};

/// Strictness margin for "evader inside the hull", relative to the hull diameter.
pub const ADMISSIBILITY_TOLERANCE: f64 = 1e-12;

/// Relative tolerance under which two edge lengths count as equal when labelling.
pub const LABEL_TIE_TOLERANCE: f64 = 1e-9;

/// Evader and three pursuers. Pursuer order is whatever the caller supplied;
/// labels only exist on a [`VoronoiCell`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlayerSet {
    pub evader: Point,
    pub pursuers: [Point; 3],
}

impl PlayerSet {
    pub fn new(evader: Point, pursuers: [Point; 3]) -> Self {
        Self { evader, pursuers }
    }

    /// Like [`PlayerSet::new`] but rejects configurations where the evader is
    /// not strictly inside the pursuers' hull.
    pub fn admissible(evader: Point, pursuers: [Point; 3]) -> Result<Self> {
        let players = Self::new(evader, pursuers);
        if !players.is_finite() {
            return Err(Error::NonFinite);
        }
        if !assert_admissible(&players) {
            return Err(Error::NotATriangle);
        }
        Ok(players)
    }

    pub fn is_finite(&self) -> bool {
        self.evader.is_finite() && self.pursuers.iter().all(|p| p.is_finite())
    }

    /// Relative positions `z_i = P_i - E`.
    pub fn relative(&self) -> [Point; 3] {
        self.pursuers.map(|p| p - self.evader)
    }

    pub fn scaled(&self, k: f64) -> Self {
        Self::new(self.evader * k, self.pursuers.map(|p| p * k))
    }

    pub fn translated(&self, by: Point) -> Self {
        Self::new(self.evader + by, self.pursuers.map(|p| p + by))
    }

    /// Largest pairwise distance among the pursuers.
    pub fn hull_diameter(&self) -> f64 {
        let [a, b, c] = self.pursuers;
        a.distance(b).max(b.distance(c)).max(a.distance(c))
    }

    /// Smallest inward distance from the evader to a hull edge, divided by the
    /// hull diameter. Negative when the evader is outside; `None` for a
    /// collapsed hull.
    pub fn hull_margin(&self) -> Option<f64> {
        let [a, b, c] = self.pursuers;
        let diam = self.hull_diameter();
        let area2 = (b - a).cross(c - a);
        if !(diam > 0.0) || area2.abs() <= 1e-14 * diam * diam {
            return None;
        }
        let sign = area2.signum();
        let edge_margin = |p: Point, q: Point| sign * (q - p).cross(self.evader - p) / p.distance(q);
        let m = edge_margin(a, b).min(edge_margin(b, c)).min(edge_margin(c, a));
        Some(m / diam)
    }
}

/// Assumption check: all points finite and distinct, evader strictly inside
/// the pursuers' convex hull by at least `ADMISSIBILITY_TOLERANCE * diameter`.
pub fn assert_admissible(players: &PlayerSet) -> bool {
    admissible_with_margin(players, ADMISSIBILITY_TOLERANCE)
}

pub fn admissible_with_margin(players: &PlayerSet, margin: f64) -> bool {
    players.is_finite() && players.hull_margin().is_some_and(|m| m >= margin)
}

/// Unlabelled triangle, used to build fixtures from a desired cell.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Triangle {
    pub vertices: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Self {
        Self { vertices: [a, b, c] }
    }

    pub fn centroid(&self) -> Point {
        let [a, b, c] = self.vertices;
        Point::new((a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0)
    }

    pub fn diameter(&self) -> f64 {
        let [a, b, c] = self.vertices;
        a.distance(b).max(b.distance(c)).max(a.distance(c))
    }

    /// Line through the edge opposite vertex `i`.
    fn opposite_edge(&self, i: usize) -> Result<Line> {
        let v = self.vertices;
        Line::from_points(v[(i + 1) % 3], v[(i + 2) % 3])
    }

    /// Smallest inward distance from `p` to an edge line, relative to the diameter.
    pub fn interior_margin(&self, p: Point) -> Option<f64> {
        let [a, b, c] = self.vertices;
        let diam = self.diameter();
        let area2 = (b - a).cross(c - a);
        if !(diam > 0.0) || area2.abs() <= 1e-14 * diam * diam {
            return None;
        }
        let sign = area2.signum();
        let d = |u: Point, w: Point| sign * (w - u).cross(p - u) / u.distance(w);
        Some(d(a, b).min(d(b, c)).min(d(c, a)) / diam)
    }
}

/// The evader's Voronoi cell, labelled so that `V1` joins the longest and the
/// medium edge and pursuer `P_i` is the one farthest from `V_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VoronoiCell {
    /// `[V1, V2, V3]`.
    pub vertices: [Point; 3],
    /// `|V1 - V2|`.
    pub l: f64,
    /// `|V1 - V3|`.
    pub m: f64,
    /// `|V2 - V3|`.
    pub s: f64,
    /// Interior angles `[phi1, phi2, phi3]` at `V1, V2, V3`.
    pub angles: [f64; 3],
    /// `assignment[i]` is the index in [`PlayerSet::pursuers`] of pursuer `P_{i+1}`.
    pub assignment: [usize; 3],
    pub evader: Point,
    /// Labelled pursuers `[P1, P2, P3]`.
    pub pursuers: [Point; 3],
}

impl VoronoiCell {
    #[inline]
    pub fn v1(&self) -> Point {
        self.vertices[0]
    }
    #[inline]
    pub fn v2(&self) -> Point {
        self.vertices[1]
    }
    #[inline]
    pub fn v3(&self) -> Point {
        self.vertices[2]
    }

    pub fn phi1(&self) -> f64 {
        self.angles[0]
    }

    pub fn phi2(&self) -> f64 {
        self.angles[1]
    }

    pub fn diameter(&self) -> f64 {
        self.l
    }

    /// Unit vector `v_ij = (V_i - V_j) / |V_i - V_j|`, labels 1-based.
    pub fn unit(&self, i: usize, j: usize) -> Direction {
        Direction::new(self.vertices[i - 1] - self.vertices[j - 1]).expect("cell vertices are distinct")
    }

    /// Bisector of `E` and `P_i` (the edge opposite `V_i`), normal pointing
    /// out of the cell. Label 1-based.
    pub fn edge_line(&self, i: usize) -> Line {
        Line::bisector(self.evader, self.pursuers[i - 1]).expect("pursuer differs from evader")
    }

    pub fn triangle(&self) -> Triangle {
        Triangle { vertices: self.vertices }
    }

    pub fn frame(&self) -> CellFrame {
        CellFrame::new(self)
    }
}

/// Build and label the evader's Voronoi cell.
pub fn voronoi_cell(players: &PlayerSet) -> Result<VoronoiCell> {
    if !players.is_finite() {
        return Err(Error::NonFinite);
    }
    if !assert_admissible(players) {
        return Err(Error::NotATriangle);
    }
    let e = players.evader;
    let mut bisectors = [None; 3];
    for (k, p) in players.pursuers.iter().enumerate() {
        bisectors[k] = Some(Line::bisector(e, *p).map_err(|_| Error::NotATriangle)?);
    }
    let bisectors = bisectors.map(Option::unwrap);

    // corners[k] is the vertex not on bisector k, i.e. the one opposite it.
    let mut corners = [Point::ORIGIN; 3];
    for k in 0..3 {
        let (a, b) = ((k + 1) % 3, (k + 2) % 3);
        corners[k] =
            bisectors[a].intersect(&bisectors[b]).ok_or(Error::NumericalDegeneracy("two bisectors are parallel"))?;
        if bisectors[k].signed_distance(corners[k]) >= 0.0 {
            return Err(Error::NotATriangle);
        }
    }

    // Reflection property gives the assignment; confirm it against the
    // "farthest pursuer" definition.
    for (k, c) in corners.iter().enumerate() {
        let own = c.distance(players.pursuers[k]);
        let others = (0..3).filter(|&j| j != k).map(|j| c.distance(players.pursuers[j])).fold(0.0_f64, f64::max);
        if !(own > others) {
            return Err(Error::NumericalDegeneracy("assigned pursuer is not the farthest from its vertex"));
        }
    }

    let opposite_len = |k: usize| corners[(k + 1) % 3].distance(corners[(k + 2) % 3]);
    let lens = [opposite_len(0), opposite_len(1), opposite_len(2)];
    let scale = lens.iter().cloned().fold(0.0_f64, f64::max);
    if !(scale > 0.0) {
        return Err(Error::NotATriangle);
    }

    // Ascending by opposite edge: V1 faces s, V2 faces m, V3 faces l.
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| lens[a].total_cmp(&lens[b]));
    let tie = |a: usize, b: usize| (lens[a] - lens[b]).abs() <= LABEL_TIE_TOLERANCE * scale;
    for _ in 0..2 {
        for j in 0..2 {
            let (a, b) = (order[j], order[j + 1]);
            if tie(a, b) && corners[b].lex_cmp(&corners[a]) == Ordering::Less {
                order.swap(j, j + 1);
            }
        }
    }

    let vertices = order.map(|k| corners[k]);
    let pursuers = order.map(|k| players.pursuers[k]);
    let [v1, v2, v3] = vertices;
    let angle_at = |p: Point, a: Point, b: Point| {
        let (u, w) = (a - p, b - p);
        u.cross(w).abs().atan2(u.dot(w))
    };
    let angles = [angle_at(v1, v2, v3), angle_at(v2, v1, v3), angle_at(v3, v1, v2)];

    Ok(VoronoiCell {
        vertices,
        l: v1.distance(v2),
        m: v1.distance(v3),
        s: v2.distance(v3),
        angles,
        assignment: order,
        evader: e,
        pursuers,
    })
}

/// Pursuer positions that make `triangle` the Voronoi cell of `evader`:
/// `P_i` is the mirror image of the evader across the edge opposite vertex `i`.
/// Pursuers come back in the triangle's vertex order.
pub fn pursuers_from_cell(triangle: &Triangle, evader: Point) -> Result<PlayerSet> {
    match triangle.interior_margin(evader) {
        Some(m) if m >= ADMISSIBILITY_TOLERANCE => {}
        _ => return Err(Error::EvaderOutsideCell),
    }
    let mut pursuers = [Point::ORIGIN; 3];
    for (i, p) in pursuers.iter_mut().enumerate() {
        *p = triangle.opposite_edge(i).map_err(|_| Error::EvaderOutsideCell)?.reflect(evader);
    }
    Ok(PlayerSet::new(evader, pursuers))
}

/// Points where the line through the evader parallel to the longest edge
/// meets the other two edges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnchorPoints {
    /// On edge `V2V3`.
    pub s: Point,
    /// On edge `V1V3`.
    pub q: Point,
    pub v_qe: Direction,
    pub v_se: Direction,
    pub v_v1q: Direction,
}

pub fn anchor_points(cell: &VoronoiCell, evader: Point) -> Result<AnchorPoints> {
    match cell.triangle().interior_margin(evader) {
        Some(m) if m > 0.0 => {}
        _ => return Err(Error::DegenerateCell("evader is not strictly inside the cell")),
    }
    let v = cell.v1() - cell.v2();
    let hit = |a: Point, b: Point| -> Result<Point> {
        let line = Line::from_points(a, b)?;
        let alpha = line.ray_parameter(evader, v).ok_or(Error::DegenerateCell("edge parallel to the longest edge"))?;
        Ok(evader + v * alpha)
    };
    let s = hit(cell.v2(), cell.v3())?;
    let q = hit(cell.v1(), cell.v3())?;
    // Q - E runs along V1 - V2, S - E against it and V1 - Q along V1 - V3.
    Ok(AnchorPoints { s, q, v_qe: cell.unit(1, 2), v_se: cell.unit(2, 1), v_v1q: cell.unit(1, 3) })
}

/// Angular frame attached to a cell: `theta = 0` is `v12` and the rotation
/// sense is chosen so that `v13` sits at `2*pi - phi1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CellFrame {
    pub axis: Direction,
    /// `+1` when angles run counterclockwise, `-1` otherwise.
    pub orientation: f64,
}

impl CellFrame {
    pub fn new(cell: &VoronoiCell) -> Self {
        let axis = cell.unit(1, 2);
        let v13 = cell.unit(1, 3);
        let orientation = if axis.vector().cross(v13.vector()) < 0.0 { 1.0 } else { -1.0 };
        Self { axis, orientation }
    }

    pub fn direction(&self, theta: f64) -> Direction {
        self.axis.rotated(self.orientation * theta)
    }

    /// Angle of `dir` in this frame, in `[0, 2*pi)`.
    pub fn angle_of(&self, dir: Direction) -> f64 {
        let a = self.axis.vector();
        let d = dir.vector();
        let raw = self.orientation * a.cross(d).atan2(a.dot(d));
        let wrapped = raw.rem_euclid(TAU);
        if wrapped >= TAU {
            0.0
        } else {
            wrapped
        }
    }

    /// Frame angles of the six edge directions: `v12, v32, v31, v21, v23, v13`.
    pub fn boundaries(phi1: f64, phi2: f64) -> [f64; 6] {
        [0.0, phi2, PI - phi1, PI, PI + phi2, TAU - phi1]
    }
}
