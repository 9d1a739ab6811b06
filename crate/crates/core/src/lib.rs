//! Bundled-curve parallel coordinates.
//!
//! Rows of a multivariate table are drawn as chains of cubic Bézier
//! segments that pass through every data axis and through a virtual
//! bundling axis placed halfway between each pair of neighbouring data
//! axes. On a bundling axis, a curve is pulled from its own midpoint
//! towards the centroid of its cluster by the bundling strength `beta`;
//! the horizontal reach of the control points is governed by `alpha`.
//! With `alpha = beta = 0` the curves collapse onto classic polylines.
//!
//! The crate is split into three layers:
//!
//! * [`ingest`]: CSV parsing, min–max normalization, k-means and the
//!   per-gap cluster model.
//! * [`geometry`]: plot layout, centroid redistribution, curve
//!   construction, evaluation and flattening.
//! * [`render`]: SVG output, per-cluster line density fields, transfer
//!   function, compositing and PNG encoding.

pub mod geometry;
pub mod ingest;
pub mod render;

pub use geometry::{
    build_curve, build_paths, bezier_point, bundling_anchor, curve_y_at_x, flatten, layout,
    redistribute_gap, BezierSegment, BundleParams, CurvePath, GeometryError, Margins, PlotLayout,
    Point,
};
pub use ingest::{
    build_cluster_model, kmeans, normalize, parse_csv, ClusterModel, CsvOptions, Dataset,
    IngestError, RawTable,
};
pub use render::{
    accumulate_density, apply_transfer, composite, encode_png, render_svg, DensityField,
    IntensityField, Normalization, RasterSize, RenderError, Rgb, StyleParams, TransferParams,
};
