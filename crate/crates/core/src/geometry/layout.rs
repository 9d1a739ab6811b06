use super::GeometryError;

/// Horizontal positions are multiples of this step (in pixels).
///
/// Data axes sit on this grid and bundling axes on half of it, so sums and
/// differences of positions and control reaches are exact in `f64`.
pub const GRID: f64 = 1.0 / 1024.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Margins {
    pub left: f64,
    pub right: f64,
    pub top: f64,
    pub bottom: f64,
}

impl Margins {
    pub const ZERO: Margins = Margins {
        left: 0.0,
        right: 0.0,
        top: 0.0,
        bottom: 0.0,
    };

    pub fn uniform(px: f64) -> Self {
        Self {
            left: px,
            right: px,
            top: px,
            bottom: px,
        }
    }
}

impl Default for Margins {
    fn default() -> Self {
        Self {
            left: 40.0,
            right: 40.0,
            top: 24.0,
            bottom: 40.0,
        }
    }
}

/// Pixel placement of data axes and bundling axes.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotLayout {
    pub m: usize,
    pub axis_x: Vec<f64>,
    pub bundle_x: Vec<f64>,
    pub plot_top: f64,
    pub plot_height: f64,
    pub width: f64,
    pub height: f64,
}

impl PlotLayout {
    /// Normalized value to pixel row; 1 maps to the top of the plot.
    pub fn ymap(&self, v: f64) -> f64 {
        self.plot_top + (1.0 - v) * self.plot_height
    }

    /// Inverse of [`PlotLayout::ymap`].
    pub fn yunmap(&self, y: f64) -> f64 {
        1.0 - (y - self.plot_top) / self.plot_height
    }

    /// Anchor x positions in curve order: axis 0, bundle 0, axis 1, ...
    pub fn anchor_x(&self) -> impl Iterator<Item = f64> + '_ {
        (0..2 * self.m - 1).map(move |s| {
            if s % 2 == 0 {
                self.axis_x[s / 2]
            } else {
                self.bundle_x[s / 2]
            }
        })
    }

    pub fn x_range(&self) -> (f64, f64) {
        (self.axis_x[0], self.axis_x[self.m - 1])
    }
}

fn snap(x: f64) -> f64 {
    (x / GRID).round() * GRID
}

/// Spreads `m` axes uniformly over the inner width of the canvas.
pub fn layout(
    m: usize,
    width: f64,
    height: f64,
    margins: Margins,
) -> Result<PlotLayout, GeometryError> {
    if m < 2 {
        return Err(GeometryError::TooFewAxes(m));
    }
    let inner_width = width - margins.left - margins.right;
    let inner_height = height - margins.top - margins.bottom;
    let spacing = inner_width / (m - 1) as f64;
    // NaN-safe: all comparisons false on NaN.
    if !(inner_width > 0.0 && inner_height > 0.0 && spacing >= 4.0 * GRID && width < 1e6) {
        return Err(GeometryError::DegenerateCanvas {
            inner_width,
            inner_height,
        });
    }

    let axis_x: Vec<f64> = (0..m)
        .map(|j| {
            if j == m - 1 {
                snap(width - margins.right)
            } else {
                snap(margins.left + j as f64 * spacing)
            }
        })
        .collect();
    let bundle_x = axis_x.windows(2).map(|w| (w[0] + w[1]) / 2.0).collect();

    Ok(PlotLayout {
        m,
        axis_x,
        bundle_x,
        plot_top: margins.top,
        plot_height: inner_height,
        width,
        height,
    })
}
