//! Command-line and HTTP front ends for bundled-curve parallel coordinates.
//!
//! Both front ends share [`pipeline`]: a dataset snapshot plus a
//! [`pipeline::PlotRequest`] yields SVG or PNG bytes, or a JSON geometry
//! document for clients that draw the curves themselves.

pub mod cli;
pub mod document;
pub mod http;
pub mod pipeline;

pub use document::{geometry_json, GeometryDocument};
pub use pipeline::{Clustering, JobError, OutputFormat, PlotRequest, Snapshot};
