use rayon::prelude::*;

use super::bezier::horner;
use super::{bundling_anchor, BezierSegment, BundleParams, GeometryError, PlotLayout, Point, GRID};
use crate::ingest::{ClusterModel, Dataset};

/// Default bisection tolerance in curve parameter space.
pub const DEFAULT_TOL_T: f64 = 1e-6;

/// Geometric trace of one row: `2(m - 1)` chained cubic segments.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvePath {
    pub row_id: usize,
    pub cluster_id: usize,
    pub segments: Vec<BezierSegment>,
}

impl CurvePath {
    /// Anchors in curve order, `2m - 1` points.
    pub fn anchors(&self) -> impl Iterator<Item = Point> + '_ {
        self.segments
            .first()
            .map(|s| s.p0)
            .into_iter()
            .chain(self.segments.iter().map(|s| s.p3))
    }

    /// Anchor on bundling axis `gap`.
    pub fn bundle_anchor(&self, gap: usize) -> Point {
        self.segments[2 * gap].p3
    }

    /// Anchor on data axis `j`.
    pub fn axis_anchor(&self, j: usize) -> Point {
        if j == 0 {
            self.segments[0].p0
        } else {
            self.segments[2 * j - 1].p3
        }
    }

    pub fn start(&self) -> Point {
        self.segments[0].p0
    }

    pub fn end(&self) -> Point {
        self.segments[self.segments.len() - 1].p3
    }
}

fn snap_half(x: f64) -> f64 {
    let half = GRID / 2.0;
    (x / half).round() * half
}

/// Builds the bundled curve for one row.
///
/// `values` are the row's normalized values, one per axis of `layout`.
pub fn build_curve(
    row_id: usize,
    values: &[f64],
    cluster_id: usize,
    model: &ClusterModel,
    layout: &PlotLayout,
    params: &BundleParams,
) -> Result<CurvePath, GeometryError> {
    let m = layout.m;
    if values.len() != m || model.gaps() != m - 1 {
        return Err(GeometryError::AxisCountMismatch {
            expected: m,
            found: if values.len() != m {
                values.len()
            } else {
                model.gaps() + 1
            },
        });
    }
    if cluster_id >= model.k() {
        return Err(GeometryError::UnknownCluster {
            cluster: cluster_id,
            k: model.k(),
        });
    }

    let mut anchors = Vec::with_capacity(2 * m - 1);
    for j in 0..m {
        anchors.push(Point::new(layout.axis_x[j], layout.ymap(values[j])));
        if j + 1 < m {
            let target = if params.redistribute() {
                model.slot(j, cluster_id)
            } else {
                model.centroid(j, cluster_id)
            };
            let v = bundling_anchor(values[j], values[j + 1], target, params.beta());
            anchors.push(Point::new(layout.bundle_x[j], layout.ymap(v)));
        }
    }

    // Control reach per anchor: alpha times the narrower adjacent span.
    // Positions are on the half grid, so reach and offsets stay exact.
    let reach: Vec<f64> = (0..anchors.len())
        .map(|i| {
            let left = (i > 0).then(|| anchors[i].x - anchors[i - 1].x);
            let right = anchors.get(i + 1).map(|a| a.x - anchors[i].x);
            let d = match (left, right) {
                (Some(l), Some(r)) => l.min(r),
                (Some(w), None) | (None, Some(w)) => w,
                (None, None) => 0.0,
            };
            snap_half(params.alpha() * d).min(d)
        })
        .collect();

    let segments = anchors
        .windows(2)
        .enumerate()
        .map(|(s, w)| {
            let (p, q) = (w[0], w[1]);
            BezierSegment::new(
                p,
                Point::new(p.x + reach[s], p.y),
                Point::new(q.x - reach[s + 1], q.y),
                q,
            )
        })
        .collect();

    Ok(CurvePath {
        row_id,
        cluster_id,
        segments,
    })
}

/// Builds one curve per dataset row, labelled by `model`.
pub fn build_paths(
    data: &Dataset,
    model: &ClusterModel,
    layout: &PlotLayout,
    params: &BundleParams,
) -> Result<Vec<CurvePath>, GeometryError> {
    (0..data.n())
        .into_par_iter()
        .map(|i| build_curve(i, data.row(i), model.labels()[i], model, layout, params))
        .collect()
}

/// Height of the curve at horizontal position `x`.
///
/// The containing segment is found (leftmost on ties) and `x(t) = x` is
/// solved by bisection until the parameter bracket is at most `tol_t` wide.
/// The result is interpolated linearly inside the final bracket.
pub fn curve_y_at_x(path: &CurvePath, x: f64, tol_t: f64) -> Result<f64, GeometryError> {
    if !(tol_t > 0.0 && tol_t.is_finite()) {
        return Err(GeometryError::InvalidTolerance(tol_t));
    }
    let (lo, hi) = (path.start().x, path.end().x);
    if !(lo..=hi).contains(&x) {
        return Err(GeometryError::XOutOfRange { x, lo, hi });
    }
    let idx = path.segments.partition_point(|s| s.p3.x < x);
    Ok(segment_y_at_x(&path.segments[idx], x, tol_t))
}

fn segment_y_at_x(seg: &BezierSegment, x: f64, tol_t: f64) -> f64 {
    if x <= seg.p0.x {
        return seg.p0.y;
    }
    if x >= seg.p3.x {
        return seg.p3.y;
    }
    let cx = seg.x_poly();
    let (mut t_lo, mut t_hi) = (0.0, 1.0);
    let (mut x_lo, mut x_hi) = (seg.p0.x, seg.p3.x);
    while t_hi - t_lo > tol_t {
        let mid = 0.5 * (t_lo + t_hi);
        let xm = horner(seg.p0.x, &cx, mid);
        if xm < x {
            t_lo = mid;
            x_lo = xm;
        } else {
            t_hi = mid;
            x_hi = xm;
        }
    }
    let cy = seg.y_poly();
    let y_at = |t: f64| match t {
        0.0 => seg.p0.y,
        1.0 => seg.p3.y,
        _ => horner(seg.p0.y, &cy, t),
    };
    let (y_lo, y_hi) = (y_at(t_lo), y_at(t_hi));
    if x_hi > x_lo {
        y_lo + (x - x_lo) / (x_hi - x_lo) * (y_hi - y_lo)
    } else {
        y_lo
    }
}

/// Height lookup for a left-to-right sweep over one segment.
///
/// Queries must come in non-decreasing `x`. Each solve is a safeguarded
/// Newton iteration on `x(t)` started from the previous root, falling back to
/// bisection whenever a step leaves the bracket or fails to halve, and stops
/// once the step in `t` drops below `SWEEP_TOL_T`.
pub(crate) struct SegmentSweep<'a> {
    seg: &'a BezierSegment,
    cx: [f64; 3],
    cy: [f64; 3],
    t: f64,
}

const SWEEP_TOL_T: f64 = 1e-12;

impl<'a> SegmentSweep<'a> {
    pub(crate) fn new(seg: &'a BezierSegment) -> Self {
        Self {
            seg,
            cx: seg.x_poly(),
            cy: seg.y_poly(),
            t: 0.0,
        }
    }

    pub(crate) fn y_at(&mut self, x: f64) -> f64 {
        let seg = self.seg;
        if x <= seg.p0.x {
            return seg.p0.y;
        }
        if x >= seg.p3.x {
            self.t = 1.0;
            return seg.p3.y;
        }
        let c = &self.cx;
        let (mut lo, mut hi) = (self.t, 1.0);
        let mut t = self.t;
        let mut last_step = hi - lo;
        for _ in 0..200 {
            let f = horner(seg.p0.x, c, t) - x;
            if f == 0.0 {
                break;
            }
            if f < 0.0 {
                lo = t;
            } else {
                hi = t;
            }
            let d = (3.0 * c[2] * t + 2.0 * c[1]) * t + c[0];
            let newton = t - f / d;
            let next = if newton > lo && newton < hi && (newton - t).abs() <= 0.5 * last_step {
                newton
            } else {
                0.5 * (lo + hi)
            };
            last_step = (next - t).abs();
            t = next;
            if last_step < SWEEP_TOL_T || hi - lo < SWEEP_TOL_T {
                break;
            }
        }
        self.t = t;
        horner(seg.p0.y, &self.cy, t)
    }
}

const MAX_FLATTEN_DEPTH: u32 = 32;

/// Approximates the path by a polyline whose segments stay within
/// `flatness_tol` pixels of the curve.
pub fn flatten(path: &CurvePath, flatness_tol: f64) -> Result<Vec<Point>, GeometryError> {
    if !(flatness_tol > 0.0 && flatness_tol.is_finite()) {
        return Err(GeometryError::InvalidTolerance(flatness_tol));
    }
    let mut out = vec![path.start()];
    for seg in &path.segments {
        subdivide(seg, flatness_tol, 0, &mut out);
        // Keep the exact anchor rather than the last subdivision point.
        if let Some(last) = out.last_mut() {
            *last = seg.p3;
        }
    }
    Ok(out)
}

fn subdivide(seg: &BezierSegment, tol: f64, depth: u32, out: &mut Vec<Point>) {
    if depth >= MAX_FLATTEN_DEPTH || seg.flatness() <= tol {
        let prev_x = out.last().map_or(seg.p3.x, |p| p.x);
        // x(t) is monotone; clamp away rounding noise near stationary points.
        out.push(Point::new(seg.p3.x.max(prev_x), seg.p3.y));
        return;
    }
    let (left, right) = seg.split(0.5);
    subdivide(&left, tol, depth + 1, out);
    subdivide(&right, tol, depth + 1, out);
}
