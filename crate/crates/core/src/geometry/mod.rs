//! Exact geometric primitives: objects, intersection predicates, lifting maps
//! and the quadtree machinery used by the fat-object builders.

pub mod coord;
mod hitting;
mod lifting;
pub mod lp;
mod object;
mod polytope;
mod predicates;
mod quadtree;

use thiserror::Error;

pub use coord::Coord;
pub use hitting::{boundary_hitting_points, HittingSet};
pub use lifting::{lift_ball_to_halfspace, lift_ball_to_halfspace_shape, veronese_halfspace, veronese_lift, veronese_point, Side};
pub use object::{GeomObject, Kind, Mode, Shape, FLOAT_EPS};
pub use predicates::{contains_box, intersects, shape_contains_point, shape_intersects};
pub use quadtree::{
    centroid_cell, centroid_cell_in, is_c_aligned, quadtree_cell_of, shape_cell_of, shift_vectors, CentroidCell, QuadtreeCell,
    ShiftConfig,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("mixed arithmetic modes")]
    MixedModes,
    #[error("float objects carry different tolerances ({0} vs {1})")]
    EpsMismatch(f64, f64),
    #[error("unsupported kind pair {0} / {1}")]
    Unsupported(Kind, Kind),
    #[error("invalid object: {0}")]
    Invalid(String),
    #[error("object is unbounded")]
    Unbounded,
    #[error("expected a {0}")]
    WrongKind(&'static str),
    #[error("empty input")]
    Empty,
}
