use super::RenderError;
use crate::geometry::{CurvePath, PlotLayout, SegmentSweep};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RasterSize {
    pub width: usize,
    pub height: usize,
}

impl RasterSize {
    pub fn new(width: usize, height: usize) -> Self {
        Self { width, height }
    }

    /// Raster matching the layout's canvas at one cell per pixel.
    pub fn of(layout: &PlotLayout) -> Self {
        Self::new(layout.width.ceil() as usize, layout.height.ceil() as usize)
    }
}

/// Per-cluster line coverage accumulated over a raster.
///
/// Cells are stored column by column.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityField {
    pub width: usize,
    pub height: usize,
    pub cluster_id: usize,
    pub curve_count: usize,
    cells: Vec<f64>,
}

impl DensityField {
    pub fn zeros(size: RasterSize, cluster_id: usize) -> Self {
        Self {
            width: size.width,
            height: size.height,
            cluster_id,
            curve_count: 0,
            cells: vec![0.0; size.width * size.height],
        }
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.cells[x * self.height + y]
    }

    pub fn column(&self, x: usize) -> &[f64] {
        &self.cells[x * self.height..(x + 1) * self.height]
    }

    pub fn column_sum(&self, x: usize) -> f64 {
        self.column(x).iter().sum()
    }

    pub fn max(&self) -> f64 {
        self.cells.iter().copied().fold(0.0, f64::max)
    }

    pub(crate) fn cells(&self) -> &[f64] {
        &self.cells
    }

    #[cfg(test)]
    pub(crate) fn cells_mut(&mut self) -> &mut [f64] {
        &mut self.cells
    }
}

/// Pixel-column centers (in layout coordinates) that fall inside `[lo, hi]`.
pub(crate) fn columns_in(layout: &PlotLayout, size: RasterSize, lo: f64, hi: f64) -> Vec<(usize, f64)> {
    let sx = layout.width / size.width as f64;
    (0..size.width)
        .map(|ix| (ix, (ix as f64 + 0.5) * sx))
        .filter(|&(_, x)| lo <= x && x <= hi)
        .collect()
}

/// Deposits one unit of weight per curve per pixel column.
///
/// In every column whose center lies between the first and last data axis
/// the curve height is solved to within 1e-10 px of the column center in `x`
/// and the unit is split linearly between the two rows bracketing it. Rows outside the raster are clamped onto the
/// border row with their full weight.
pub fn accumulate_density(
    cluster_id: usize,
    paths: &[CurvePath],
    layout: &PlotLayout,
    size: RasterSize,
) -> Result<DensityField, RenderError> {
    if size.width == 0 || size.height == 0 {
        return Err(RenderError::EmptyRaster(size.width, size.height));
    }
    if let Some(p) = paths.iter().find(|p| p.cluster_id != cluster_id) {
        return Err(RenderError::MixedClusters {
            expected: cluster_id,
            found: p.cluster_id,
        });
    }

    let mut field = DensityField::zeros(size, cluster_id);
    field.curve_count = paths.len();
    let h = size.height;
    let last_row = h as i64 - 1;
    let sy = h as f64 / layout.height;

    for path in paths {
        let columns = columns_in(layout, size, path.start().x, path.end().x);
        let mut seg_idx = 0;
        let mut sweep = SegmentSweep::new(&path.segments[0]);
        for (ix, x) in columns {
            // Columns ascend, so the leftmost segment with p3.x >= x only moves right.
            if path.segments[seg_idx].p3.x < x {
                while path.segments[seg_idx].p3.x < x {
                    seg_idx += 1;
                }
                sweep = SegmentSweep::new(&path.segments[seg_idx]);
            }
            let y = sweep.y_at(x);
            let fy = y * sy - 0.5;
            let r0 = fy.floor();
            let frac = fy - r0;
            let r0 = r0 as i64;
            let column = &mut field.cells[ix * h..(ix + 1) * h];
            column[r0.clamp(0, last_row) as usize] += 1.0 - frac;
            column[(r0 + 1).clamp(0, last_row) as usize] += frac;
        }
    }
    Ok(field)
}
