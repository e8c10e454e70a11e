//! Piecewise-convex polygons: rooms, the constrained triangulation graph,
//! mappings from 2-dominating sets to guard sets, and sampled visibility
//! verification.
//!
//! Arcs are line segments or circular arcs. Orientation tests on vertices
//! are exact; predicates involving circles and the sampled verifier use
//! floating point with absolute tolerance [`EPS`].

mod guards;
mod polygon;
mod triangulate;
mod visibility;

use thiserror::Error;

pub use guards::{
    edge_guards_from_edge_set, guard_piecewise_convex, mobile_guards_from_diag_set, verify_guard_set, Guard,
    GuardMode, GuardSet, Strategy, VerifyReport,
};
pub use polygon::{
    bulging_arc, format_rational, orient, parse_rational, ArcKind, ArcOrientation, ConvexArc, PiecewiseConvexPolygon,
    Point, EPS,
};
pub use triangulate::{
    build_constrained_triangulation, classify_rooms, ConstrainedTriangulation, EdgeKind, Room, RoomStatus,
    TriangleClass,
};
pub use visibility::{is_visible, FlatArc, FlatPolygon, Location};

/// Errors raised by the geometric operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("polygon is not simple: {0}")]
    NonSimple(String),
    #[error("need at least 3 vertices, got {0}")]
    DegenerateInput(usize),
    #[error("the set does not 2-dominate the triangulation graph")]
    NotDominating,
    #[error("member ({0}, {1}) is not a polygon edge")]
    NonEdgeMember(usize, usize),
    #[error("point {0:?} lies outside the polygon")]
    PointOutside([f64; 2]),
}
