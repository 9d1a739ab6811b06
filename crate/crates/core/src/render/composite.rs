use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{ExtendedColorType, ImageEncoder, Rgba, RgbaImage};

use super::density::RasterSize;
use super::{IntensityField, RenderError, Rgb, StyleParams};
use crate::geometry::{flatten, CurvePath, PlotLayout, Point};

/// Blends per-cluster intensity fields over an opaque background.
///
/// Fields are applied source-over in ascending cluster-id order with the
/// intensity as alpha; `hues[i]` colors `fields[i]`.
pub fn composite(
    fields: &[IntensityField],
    hues: &[Rgb],
    background: Rgb,
) -> Result<RgbaImage, RenderError> {
    if fields.len() != hues.len() {
        return Err(RenderError::HueCountMismatch {
            fields: fields.len(),
            hues: hues.len(),
        });
    }
    let Some(first) = fields.first() else {
        return Err(RenderError::EmptyRaster(0, 0));
    };
    let (w, h) = (first.width, first.height);
    for f in fields {
        if (f.width, f.height) != (w, h) {
            return Err(RenderError::DimensionMismatch {
                expected: (w, h),
                found: (f.width, f.height),
            });
        }
    }

    let mut order: Vec<usize> = (0..fields.len()).collect();
    order.sort_by_key(|&i| fields[i].cluster_id);

    let bg = background.channels().map(f64::from);
    let mut acc = vec![bg; w * h];
    for &i in &order {
        let field = &fields[i];
        let hue = hues[i].channels().map(f64::from);
        for x in 0..w {
            for y in 0..h {
                let a = field.get(x, y);
                if a > 0.0 {
                    let px = &mut acc[y * w + x];
                    for c in 0..3 {
                        px[c] = px[c] * (1.0 - a) + hue[c] * a;
                    }
                }
            }
        }
    }
    Ok(to_image(w, h, &acc))
}

fn to_image(w: usize, h: usize, acc: &[[f64; 3]]) -> RgbaImage {
    let mut img = RgbaImage::new(w as u32, h as u32);
    for (px, c) in img.pixels_mut().zip(acc) {
        let q = |v: f64| v.round().clamp(0.0, 255.0) as u8;
        *px = Rgba([q(c[0]), q(c[1]), q(c[2]), 255]);
    }
    img
}

/// Lossless 8-bit RGBA PNG with fixed encoder settings.
pub fn encode_png(image: &RgbaImage) -> Result<Vec<u8>, RenderError> {
    let mut bytes = Vec::new();
    let encoder = PngEncoder::new_with_quality(&mut bytes, CompressionType::Default, FilterType::Adaptive);
    encoder
        .write_image(image.as_raw(), image.width(), image.height(), ExtendedColorType::Rgba8)
        .map_err(|e| RenderError::Encode(e.to_string()))?;
    Ok(bytes)
}

const AXIS_RGB: [u8; 3] = [0x33, 0x33, 0x33];

/// Draws the data axes as one-pixel vertical lines.
pub fn draw_axes(image: &mut RgbaImage, layout: &PlotLayout) {
    let sx = image.width() as f64 / layout.width;
    let sy = image.height() as f64 / layout.height;
    let y0 = (layout.plot_top * sy).floor().max(0.0) as u32;
    let y1 = (((layout.plot_top + layout.plot_height) * sy).ceil() as u32).min(image.height());
    for &x in &layout.axis_x {
        let ix = ((x * sx).floor() as u32).min(image.width().saturating_sub(1));
        for iy in y0..y1 {
            image.put_pixel(ix, iy, Rgba([AXIS_RGB[0], AXIS_RGB[1], AXIS_RGB[2], 255]));
        }
    }
}

/// Anti-aliased stroke rendering of the curves onto a raster.
///
/// Each curve is flattened and its coverage (max over its own pieces) is
/// blended once with the cluster hue at the style's opacity, in path order.
pub fn rasterize_curves(
    paths: &[CurvePath],
    layout: &PlotLayout,
    style: &StyleParams,
    size: RasterSize,
) -> Result<RgbaImage, RenderError> {
    let (w, h) = (size.width, size.height);
    if w == 0 || h == 0 {
        return Err(RenderError::EmptyRaster(w, h));
    }
    let sx = w as f64 / layout.width;
    let sy = h as f64 / layout.height;
    let half = style.stroke_width * sx.min(sy) / 2.0;

    let bg = style.background.channels().map(f64::from);
    let mut acc = vec![bg; w * h];
    let mut coverage = vec![0.0f64; w * h];
    let mut touched: Vec<usize> = Vec::new();

    for path in paths {
        let tol = 0.25 / sx.max(sy);
        let pts: Vec<Point> = flatten(path, tol)
            .expect("positive tolerance")
            .into_iter()
            .map(|p| Point::new(p.x * sx, p.y * sy))
            .collect();
        for seg in pts.windows(2) {
            let (a, b) = (seg[0], seg[1]);
            let reach = half + 1.0;
            let x0 = ((a.x.min(b.x) - reach).floor().max(0.0)) as usize;
            let x1 = ((a.x.max(b.x) + reach).ceil().max(0.0) as usize).min(w);
            let y0 = ((a.y.min(b.y) - reach).floor().max(0.0)) as usize;
            let y1 = ((a.y.max(b.y) + reach).ceil().max(0.0) as usize).min(h);
            for y in y0..y1 {
                for x in x0..x1 {
                    let c = Point::new(x as f64 + 0.5, y as f64 + 0.5);
                    let cov = (half + 0.5 - c.distance_to_segment(a, b)).clamp(0.0, 1.0);
                    let idx = y * w + x;
                    if cov > coverage[idx] {
                        if coverage[idx] == 0.0 {
                            touched.push(idx);
                        }
                        coverage[idx] = cov;
                    }
                }
            }
        }
        let hue = style
            .cluster_hues
            .get(path.cluster_id)
            .copied()
            .unwrap_or(Rgb::BLACK)
            .channels()
            .map(f64::from);
        for &idx in &touched {
            let a = coverage[idx] * style.stroke_opacity;
            let px = &mut acc[idx];
            for c in 0..3 {
                px[c] = px[c] * (1.0 - a) + hue[c] * a;
            }
            coverage[idx] = 0.0;
        }
        touched.clear();
    }
    Ok(to_image(w, h, &acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform(w: usize, h: usize, cluster: usize, v: f64) -> IntensityField {
        IntensityField::from_row_major(w, h, cluster, &vec![v; w * h])
    }

    #[test]
    fn zero_intensity_leaves_background() {
        let bg = Rgb::new(10, 20, 30);
        let img = composite(&[uniform(3, 2, 0, 0.0)], &[Rgb::new(200, 0, 0)], bg).unwrap();
        assert!(img.pixels().all(|p| p.0 == [10, 20, 30, 255]));
    }

    #[test]
    fn full_intensity_is_the_hue() {
        let hue = Rgb::new(1, 2, 3);
        let img = composite(&[uniform(2, 2, 0, 1.0)], &[hue], Rgb::WHITE).unwrap();
        assert!(img.pixels().all(|p| p.0 == [1, 2, 3, 255]));
    }

    #[test]
    fn two_layers_source_over() {
        let (h0, h1) = (Rgb::new(200, 0, 100), Rgb::new(0, 100, 50));
        // Passed out of order: cluster 1 first, so sorting is exercised.
        let img = composite(
            &[uniform(1, 1, 1, 0.5), uniform(1, 1, 0, 1.0)],
            &[h1, h0],
            Rgb::BLACK,
        )
        .unwrap();
        assert_eq!(img.get_pixel(0, 0).0, [100, 50, 75, 255]);
    }

    #[test]
    fn dimension_checks() {
        assert!(matches!(
            composite(&[uniform(2, 2, 0, 0.1), uniform(2, 3, 1, 0.1)], &[Rgb::WHITE, Rgb::BLACK], Rgb::WHITE),
            Err(RenderError::DimensionMismatch { .. })
        ));
        assert!(matches!(
            composite(&[uniform(2, 2, 0, 0.1)], &[], Rgb::WHITE),
            Err(RenderError::HueCountMismatch { .. })
        ));
    }

    #[test]
    fn png_round_trip_and_determinism() {
        let mut img = RgbaImage::new(7, 5);
        for (i, p) in img.pixels_mut().enumerate() {
            *p = Rgba([i as u8, (i * 7) as u8, (i * 13) as u8, 255]);
        }
        let a = encode_png(&img).unwrap();
        let b = encode_png(&img).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with(b"\x89PNG\r\n\x1a\n"));
        let back = image::load_from_memory(&a).unwrap().to_rgba8();
        assert_eq!(back, img);
    }

    #[test]
    fn tiny_png() {
        let img = RgbaImage::from_pixel(1, 1, Rgba([9, 8, 7, 255]));
        let bytes = encode_png(&img).unwrap();
        assert!(bytes.len() < 200, "{} bytes", bytes.len());
    }
}
