//! Curve construction for bundled parallel coordinates.
//!
//! Each row becomes a chain of `2(m - 1)` cubic Bézier segments through the
//! anchor sequence `A0, B0, A1, B1, ..., A(m-1)`, where `Aj` sits on data
//! axis `j` and `Bj` on the bundling axis halfway to axis `j + 1`.
//! Control points leave every anchor horizontally with reach
//! `alpha * d`, `d` being the narrower of the anchor's two adjacent spans;
//! using the same reach on both sides makes the joins C1.
//!
//! Horizontal positions live on a dyadic grid (see [`GRID`]) so that the
//! control offsets on either side of a join are bit-identical.

mod bezier;
mod bundle;
mod curve;
mod layout;

pub use self::bezier::{bezier_point, BezierSegment, Point};
pub use self::bundle::{bundling_anchor, redistribute_gap, BundleParams};
pub use self::curve::{
    build_curve, build_paths, curve_y_at_x, flatten, CurvePath, DEFAULT_TOL_T,
};
pub use self::layout::{layout, Margins, PlotLayout, GRID};
pub(crate) use self::curve::SegmentSweep;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("canvas too small: inner extent {inner_width} x {inner_height} px")]
    DegenerateCanvas { inner_width: f64, inner_height: f64 },
    #[error("need at least 2 axes, got {0}")]
    TooFewAxes(usize),
    #[error("{name} = {value} is outside [0, 1]")]
    ParamOutOfRange { name: &'static str, value: f64 },
    #[error("x = {x} is outside the plotted range [{lo}, {hi}]")]
    XOutOfRange { x: f64, lo: f64, hi: f64 },
    #[error("row has {found} values but the layout has {expected} axes")]
    AxisCountMismatch { expected: usize, found: usize },
    #[error("cluster {cluster} is not in the model (k = {k})")]
    UnknownCluster { cluster: usize, k: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}
