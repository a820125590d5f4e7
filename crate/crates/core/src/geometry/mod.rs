//! Planar primitives and the evader's Voronoi cell.
//!
//! The cell is the intersection of the three half-planes bounded by the
//! perpendicular bisectors of the evader and each pursuer. With the evader
//! strictly inside the pursuers' hull it is a triangle, labelled as follows:
//!
//! - `V1` joins the longest edge `l = |V1 - V2|` and the medium edge `m = |V1 - V3|`;
//!   `s = |V2 - V3|` is the shortest.
//! - `P_i` is the pursuer farthest from `V_i`; its bisector is the edge opposite `V_i`.
//! - Edge lengths within a relative `1e-9` of each other are ties; ties are
//!   broken by lexicographic order of vertex coordinates (smaller vertex gets
//!   the smaller label).

mod cell;
mod point;

pub use cell::{
    admissible_with_margin, anchor_points, assert_admissible, pursuers_from_cell, voronoi_cell, AnchorPoints,
    CellFrame, PlayerSet, Triangle, VoronoiCell, ADMISSIBILITY_TOLERANCE, LABEL_TIE_TOLERANCE,
};
pub use point::{Direction, Line, Point};
