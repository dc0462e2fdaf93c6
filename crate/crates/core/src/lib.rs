//! Optimal oriented containers of convex polygons.
//!
//! For a convex polygon this crate finds the minimum-area and the
//! minimum-perimeter container within each of four families (rectangles,
//! isosceles triangles, right triangles, ellipses) and measures how far apart
//! the orientations of the two optima are. Angles are radians internally;
//! reports that leave the crate (`gap_degrees`, studies, JSON) use degrees.

pub mod ellipse;
pub mod error;
pub mod experiments;
pub mod fixtures;
pub mod geom;
pub mod optimize;
pub mod rect;
pub mod rng;
pub mod svg;
pub mod tri;

pub use ellipse::{ellipse_gap_report, gk_perimeter, min_perimeter_ellipse, mvee, perimeter_oracle, Ellipse, EllipseGapReport};
pub use error::{Error, Result};
pub use geom::{angular_gap, convex_hull, intersect_convex, ConvexPolygon, HalfPlane, Point};
pub use rect::{bounding_rect_at, min_rects, OrientedRectangle, RectGapReport};
pub use tri::{min_iso_containers, min_right_containers, TriGapReport, TriangleContainer};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Relative tolerance for optimizer cross-checks and construction matching.
pub const TOL_OPT: f64 = 1e-6;

/// Relative tolerance under which two rectangle candidates tie.
pub const TIE_TOL_REL: f64 = 1e-9;

/// A side is flush when its contact with the region is longer than this
/// fraction of the region's diameter.
pub const FLUSH_REL: f64 = 1e-6;
