//! JSON geometry document served to interactive clients.

use bundlepc_core::render::default_palette;
use serde::{Deserialize, Serialize};

use crate::pipeline::{build_scene, JobError, PlotRequest, Snapshot};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryDocument {
    pub snapshot_id: u64,
    pub params: DocumentParams,
    pub layout: DocumentLayout,
    pub rows: Vec<RowRecord>,
    pub clusters: ClusterInfo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentParams {
    pub alpha: f64,
    pub beta: f64,
    pub redistribute: bool,
    /// `order[p]` is the original index of the axis drawn at position `p`.
    pub order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocumentLayout {
    pub width: f64,
    pub height: f64,
    pub plot_top: f64,
    pub plot_height: f64,
    pub axis_x: Vec<f64>,
    pub bundle_x: Vec<f64>,
    pub axis_names: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RowRecord {
    pub row_id: usize,
    pub cluster_id: usize,
    /// `[x0, y0, x1, y1, x2, y2, x3, y3]` per cubic segment.
    pub segments: Vec<[f64; 8]>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterInfo {
    pub k: usize,
    pub sizes: Vec<usize>,
    /// `#rrggbb` per cluster id.
    pub hues: Vec<String>,
}

/// Builds the geometry document for `snapshot` under `request`.
///
/// Coordinates are serialized with shortest round-trip formatting, so a
/// parsed document reproduces the `f64` values bit for bit.
pub fn geometry_json(snapshot: &Snapshot, request: &PlotRequest) -> Result<GeometryDocument, JobError> {
    let scene = build_scene(snapshot, request)?;
    let rows = scene
        .paths
        .iter()
        .map(|p| RowRecord {
            row_id: p.row_id,
            cluster_id: p.cluster_id,
            segments: p
                .segments
                .iter()
                .map(|s| [s.p0.x, s.p0.y, s.p1.x, s.p1.y, s.p2.x, s.p2.y, s.p3.x, s.p3.y])
                .collect(),
        })
        .collect();
    Ok(GeometryDocument {
        snapshot_id: snapshot.id,
        params: DocumentParams {
            alpha: request.params.alpha(),
            beta: request.params.beta(),
            redistribute: request.params.redistribute(),
            order: scene.order.clone(),
        },
        layout: DocumentLayout {
            width: scene.layout.width,
            height: scene.layout.height,
            plot_top: scene.layout.plot_top,
            plot_height: scene.layout.plot_height,
            axis_x: scene.layout.axis_x.clone(),
            bundle_x: scene.layout.bundle_x.clone(),
            axis_names: scene.dataset.axis_names().to_vec(),
        },
        rows,
        clusters: ClusterInfo {
            k: snapshot.k,
            sizes: scene.model.sizes().to_vec(),
            hues: default_palette(snapshot.k).iter().map(ToString::to_string).collect(),
        },
    })
}
