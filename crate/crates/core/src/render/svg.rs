use std::fmt::Write;

use super::{default_palette, RenderError, Rgb};
use crate::geometry::{CurvePath, PlotLayout};

#[derive(Debug, Clone, PartialEq)]
pub struct StyleParams {
    /// One color per cluster id.
    pub cluster_hues: Vec<Rgb>,
    pub stroke_width: f64,
    pub stroke_opacity: f64,
    pub background: Rgb,
    pub show_axes: bool,
    pub axis_label_size: f64,
}

impl StyleParams {
    pub fn for_clusters(k: usize) -> Self {
        Self {
            cluster_hues: default_palette(k),
            stroke_width: 1.0,
            stroke_opacity: 0.6,
            background: Rgb::WHITE,
            show_axes: true,
            axis_label_size: 12.0,
        }
    }

    pub fn validate(&self) -> Result<(), RenderError> {
        if !(0.0..=1.0).contains(&self.stroke_opacity) {
            return Err(RenderError::InvalidStyle(format!(
                "stroke opacity {} outside [0, 1]",
                self.stroke_opacity
            )));
        }
        if !(self.stroke_width > 0.0) {
            return Err(RenderError::InvalidStyle(format!(
                "stroke width {} must be positive",
                self.stroke_width
            )));
        }
        for (i, a) in self.cluster_hues.iter().enumerate() {
            if self.cluster_hues[i + 1..].contains(a) {
                return Err(RenderError::InvalidStyle(format!("duplicate cluster hue {a}")));
            }
        }
        Ok(())
    }

    fn hue(&self, cluster: usize) -> Rgb {
        self.cluster_hues.get(cluster).copied().unwrap_or(Rgb::BLACK)
    }
}

const AXIS_COLOR: &str = "#333333";

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn header(out: &mut String, layout: &PlotLayout, style: &StyleParams) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" xmlns:xlink="http://www.w3.org/1999/xlink" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#,
        w = layout.width,
        h = layout.height
    );
    let _ = writeln!(
        out,
        r#"<rect x="0" y="0" width="{}" height="{}" fill="{}"/>"#,
        layout.width, layout.height, style.background
    );
}

fn axes(out: &mut String, layout: &PlotLayout, style: &StyleParams, axis_names: &[String]) {
    if !style.show_axes {
        return;
    }
    let top = layout.plot_top;
    let bottom = layout.plot_top + layout.plot_height;
    let _ = writeln!(out, r#"<g id="axes" stroke="{AXIS_COLOR}" stroke-width="1">"#);
    for &x in &layout.axis_x {
        let _ = writeln!(
            out,
            r#"<line x1="{x:.3}" y1="{top:.3}" x2="{x:.3}" y2="{bottom:.3}"/>"#
        );
    }
    let _ = writeln!(out, "</g>");
    let _ = writeln!(
        out,
        r#"<g id="labels" font-family="sans-serif" font-size="{}" text-anchor="middle" fill="{AXIS_COLOR}">"#,
        style.axis_label_size
    );
    let label_y = bottom + style.axis_label_size * 1.5;
    for (x, name) in layout.axis_x.iter().zip(axis_names) {
        let _ = writeln!(out, r#"<text x="{x:.3}" y="{label_y:.3}">{}</text>"#, escape(name));
    }
    let _ = writeln!(out, "</g>");
}

/// SVG document with one cubic path per curve, colored by cluster.
///
/// Curves are drawn in the given order; with no curves only the axes are
/// emitted.
pub fn render_svg(
    paths: &[CurvePath],
    layout: &PlotLayout,
    style: &StyleParams,
    axis_names: &[String],
) -> String {
    let mut out = String::new();
    header(&mut out, layout, style);
    let _ = writeln!(
        out,
        r#"<g id="curves" fill="none" stroke-width="{}" stroke-opacity="{}" stroke-linecap="round">"#,
        style.stroke_width, style.stroke_opacity
    );
    for path in paths {
        let _ = write!(
            out,
            r#"<path data-row="{}" data-cluster="{}" stroke="{}" d=""#,
            path.row_id,
            path.cluster_id,
            style.hue(path.cluster_id)
        );
        let start = path.start();
        let _ = write!(out, "M{:.3},{:.3}", start.x, start.y);
        for s in &path.segments {
            let _ = write!(
                out,
                " C{:.3},{:.3} {:.3},{:.3} {:.3},{:.3}",
                s.p1.x, s.p1.y, s.p2.x, s.p2.y, s.p3.x, s.p3.y
            );
        }
        let _ = writeln!(out, r#""/>"#);
    }
    let _ = writeln!(out, "</g>");
    axes(&mut out, layout, style, axis_names);
    out.push_str("</svg>\n");
    out
}

/// SVG document showing a pre-rendered raster (for example a density
/// composite as a `data:` URI) underneath the axes.
pub fn render_svg_with_image(
    image_href: &str,
    layout: &PlotLayout,
    style: &StyleParams,
    axis_names: &[String],
) -> String {
    let mut out = String::new();
    header(&mut out, layout, style);
    let _ = writeln!(
        out,
        r#"<image x="0" y="0" width="{}" height="{}" preserveAspectRatio="none" xlink:href="{}"/>"#,
        layout.width,
        layout.height,
        escape(image_href)
    );
    axes(&mut out, layout, style, axis_names);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{build_curve, layout, BundleParams, Margins};
    use crate::ingest::{build_cluster_model, Dataset};

    fn one_row() -> (Vec<CurvePath>, PlotLayout) {
        let data = Dataset::from_rows(&[vec![0.25, 0.75]]).unwrap();
        let model = build_cluster_model(&data, &[0], 1, false).unwrap();
        let l = layout(2, 300.0, 200.0, Margins::default()).unwrap();
        let p = BundleParams::new(0.5, 0.8, false).unwrap();
        let path = build_curve(0, data.row(0), 0, &model, &l, &p).unwrap();
        (vec![path], l)
    }

    fn names() -> Vec<String> {
        vec!["a".into(), "b<&>".into()]
    }

    #[test]
    fn structure_for_one_row() {
        let (paths, l) = one_row();
        let svg = render_svg(&paths, &l, &StyleParams::for_clusters(1), &names());
        assert_eq!(svg.matches("<path").count(), 1);
        assert_eq!(svg.matches(" C").count(), 2);
        assert_eq!(svg.matches("<line").count(), 2);
        assert!(svg.contains("b&lt;&amp;&gt;"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_data_draws_axes_only() {
        let (_, l) = one_row();
        let svg = render_svg(&[], &l, &StyleParams::for_clusters(1), &names());
        assert_eq!(svg.matches("<path").count(), 0);
        assert_eq!(svg.matches("<line").count(), 2);
    }

    #[test]
    fn coordinates_match_control_points() {
        let (paths, l) = one_row();
        let svg = render_svg(&paths, &l, &StyleParams::for_clusters(1), &names());
        let d = svg.split(" d=\"").nth(1).unwrap().split('"').next().unwrap();
        let nums: Vec<f64> = d
            .split(|c: char| c == ' ' || c == ',' || c == 'M' || c == 'C')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().unwrap())
            .collect();
        let mut expected = vec![paths[0].start().x, paths[0].start().y];
        for s in &paths[0].segments {
            expected.extend([s.p1.x, s.p1.y, s.p2.x, s.p2.y, s.p3.x, s.p3.y]);
        }
        assert_eq!(nums.len(), expected.len());
        for (a, b) in nums.iter().zip(&expected) {
            assert!((a - b).abs() <= 5e-4);
        }
    }

    #[test]
    fn style_validation() {
        let mut s = StyleParams::for_clusters(3);
        assert!(s.validate().is_ok());
        s.cluster_hues[2] = s.cluster_hues[0];
        assert!(s.validate().is_err());
        let mut s = StyleParams::for_clusters(1);
        s.stroke_opacity = 1.5;
        assert!(s.validate().is_err());
    }
}
