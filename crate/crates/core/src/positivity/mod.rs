//! Evidence about which roots `(α : β : 1)` keep the whole shadow tree
//! nonnegative: witness search, the exact half-plane description of
//! positivity to a fixed depth, polygon clipping and grid sweeps.
//!
//! Nonnegativity is the criterion throughout (`≥ 0`); the vertex trees
//! contain zero shadows.

pub mod constraints;
pub mod geometry;
pub mod svg;
pub mod sweep;
pub mod witness;

pub use constraints::{halfplanes_to_depth, Constraint, ConstraintSet};
pub use geometry::{
    conjectured_quadrilateral, polygon_intersect, ChartPoint, ConvexPolygon, HalfPlane, HalfPlaneKind, Location,
};
pub use svg::render_svg;
pub use sweep::{grid_scan, rows_to_csv, summarize, GridRow, SweepSummary};
pub use witness::{
    find_witness, find_witness_for_root, is_positive_to_depth, replay_path, replay_witness, NegativityWitness,
    DEFAULT_DIGIT_BUDGET,
};
