//! Vector and raster output.

mod color;
mod composite;
mod density;
mod svg;
mod transfer;

pub use self::color::{default_palette, Rgb};
pub use self::composite::{composite, draw_axes, encode_png, rasterize_curves};
pub use self::density::{accumulate_density, DensityField, RasterSize};
pub use self::svg::{render_svg, render_svg_with_image, StyleParams};
pub use self::transfer::{apply_transfer, norm_values, IntensityField, Normalization, TransferParams};

pub use image::RgbaImage;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("path for cluster {found} passed to the density field of cluster {expected}")]
    MixedClusters { expected: usize, found: usize },
    #[error("normalization value must be positive and finite, got {0}")]
    NonPositiveNorm(f64),
    #[error("transfer exponent must be positive and finite, got {0}")]
    InvalidGamma(f64),
    #[error("field is {found:?} but {expected:?} was expected")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("{fields} fields but {hues} hues")]
    HueCountMismatch { fields: usize, hues: usize },
    #[error("raster size must be positive, got {0} x {1}")]
    EmptyRaster(usize, usize),
    #[error("invalid style: {0}")]
    InvalidStyle(String),
    #[error("PNG encoding failed: {0}")]
    Encode(String),
}
