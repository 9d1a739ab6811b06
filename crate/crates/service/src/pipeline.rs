use base64::Engine;
use bundlepc_core::geometry::GeometryError;
use bundlepc_core::ingest::{dense_labels, IngestError, KMeansConfig};
use bundlepc_core::render::{
    draw_axes, norm_values, rasterize_curves, render_svg_with_image, RasterSize, RenderError,
    RgbaImage,
};
use bundlepc_core::*;
use thiserror::Error;

/// Failure classes, each tied to a CLI exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum JobError {
    /// Flags or request parameters are invalid (possibly only in the light of
    /// the loaded data, e.g. an axis order of the wrong length).
    #[error("{0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Render(String),
}

impl JobError {
    pub fn exit_code(&self) -> i32 {
        match self {
            JobError::InvalidConfig(_) => 2,
            JobError::Input(_) => 3,
            JobError::Render(_) => 4,
        }
    }
}

impl From<IngestError> for JobError {
    fn from(e: IngestError) -> Self {
        match e {
            IngestError::KTooLarge { .. }
            | IngestError::ZeroK
            | IngestError::MissingLabelColumn(_)
            | IngestError::InvalidAxisOrder(_) => JobError::InvalidConfig(e.to_string()),
            _ => JobError::Input(e.to_string()),
        }
    }
}

impl From<GeometryError> for JobError {
    fn from(e: GeometryError) -> Self {
        match e {
            GeometryError::DegenerateCanvas { .. } | GeometryError::ParamOutOfRange { .. } => {
                JobError::InvalidConfig(e.to_string())
            }
            _ => JobError::Render(e.to_string()),
        }
    }
}

impl From<RenderError> for JobError {
    fn from(e: RenderError) -> Self {
        match e {
            RenderError::InvalidGamma(_) => JobError::InvalidConfig(e.to_string()),
            _ => JobError::Render(e.to_string()),
        }
    }
}

/// Where cluster labels come from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Clustering {
    /// Every row in one implicit cluster.
    #[default]
    Single,
    /// Integer column in the input, mapped onto `0..k` by ascending value.
    LabelColumn(String),
    KMeans { k: usize, seed: u64 },
}

/// Immutable dataset plus cluster labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub id: u64,
    pub dataset: Dataset,
    pub labels: Vec<usize>,
    pub k: usize,
}

impl Snapshot {
    /// Parses CSV text and clusters it.
    pub fn from_csv(id: u64, text: &str, clustering: &Clustering) -> Result<Self, JobError> {
        let options = CsvOptions {
            label_column: match clustering {
                Clustering::LabelColumn(name) => Some(name.clone()),
                _ => None,
            },
            ..CsvOptions::default()
        };
        let raw = parse_csv(text, &options)?;
        let dataset = normalize(&raw);
        let (labels, k) = match clustering {
            Clustering::Single => (vec![0; dataset.n()], 1),
            Clustering::LabelColumn(_) => dense_labels(raw.labels.as_deref().unwrap_or_default()),
            Clustering::KMeans { k, seed } => {
                let labels = kmeans(&dataset, *k, *seed, KMeansConfig::DEFAULT_MAX_ITER)?;
                (labels, *k)
            }
        };
        Ok(Self {
            id,
            dataset,
            labels,
            k,
        })
    }

    pub fn cluster_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Svg,
    Png,
}

impl OutputFormat {
    pub fn from_path(path: &std::path::Path) -> Option<Self> {
        let ext = path.extension()?.to_str()?.to_ascii_lowercase();
        match ext.as_str() {
            "svg" => Some(Self::Svg),
            "png" => Some(Self::Png),
            _ => None,
        }
    }
}

/// Everything needed to draw a snapshot.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotRequest {
    pub params: BundleParams,
    pub axis_order: Option<Vec<usize>>,
    pub width: u32,
    pub height: u32,
    pub density: bool,
    pub transfer: TransferParams,
}

impl Default for PlotRequest {
    fn default() -> Self {
        Self {
            params: BundleParams::default(),
            axis_order: None,
            width: 1200,
            height: 800,
            density: false,
            transfer: TransferParams::default(),
        }
    }
}

/// Curves for a snapshot under a request, with the data they were built from.
pub struct Scene {
    pub dataset: Dataset,
    pub model: ClusterModel,
    pub layout: PlotLayout,
    pub paths: Vec<CurvePath>,
    pub order: Vec<usize>,
}

pub fn build_scene(snapshot: &Snapshot, request: &PlotRequest) -> Result<Scene, JobError> {
    let m = snapshot.dataset.m();
    let order = request.axis_order.clone().unwrap_or_else(|| (0..m).collect());
    let dataset = snapshot.dataset.reorder(&order)?;
    let model = build_cluster_model(
        &dataset,
        &snapshot.labels,
        snapshot.k,
        request.params.redistribute(),
    )?;
    let layout = layout(
        m,
        f64::from(request.width),
        f64::from(request.height),
        Margins::default(),
    )?;
    let paths = build_paths(&dataset, &model, &layout, &request.params)?;
    Ok(Scene {
        dataset,
        model,
        layout,
        paths,
        order,
    })
}

fn density_image(scene: &Scene, style: &StyleParams, transfer: &TransferParams) -> Result<RgbaImage, JobError> {
    let size = RasterSize::of(&scene.layout);
    let fields = (0..scene.model.k())
        .map(|c| {
            let members: Vec<CurvePath> = scene
                .paths
                .iter()
                .filter(|p| p.cluster_id == c)
                .cloned()
                .collect();
            accumulate_density(c, &members, &scene.layout, size)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let norms = norm_values(&fields, transfer.normalization);
    let intensities = fields
        .iter()
        .zip(norms)
        .map(|(f, norm)| apply_transfer(f, transfer, norm))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(composite(&intensities, &style.cluster_hues, style.background)?)
}

pub fn render_svg_bytes(scene: &Scene, request: &PlotRequest) -> Result<Vec<u8>, JobError> {
    let style = StyleParams::for_clusters(scene.model.k());
    let names = scene.dataset.axis_names();
    if request.density {
        let png = encode_png(&density_image(scene, &style, &request.transfer)?)?;
        let href = format!(
            "data:image/png;base64,{}",
            base64::engine::general_purpose::STANDARD.encode(png)
        );
        Ok(render_svg_with_image(&href, &scene.layout, &style, names).into_bytes())
    } else {
        Ok(render_svg(&scene.paths, &scene.layout, &style, names).into_bytes())
    }
}

pub fn render_png_bytes(scene: &Scene, request: &PlotRequest) -> Result<Vec<u8>, JobError> {
    let style = StyleParams::for_clusters(scene.model.k());
    let mut image = if request.density {
        density_image(scene, &style, &request.transfer)?
    } else {
        rasterize_curves(&scene.paths, &scene.layout, &style, RasterSize::of(&scene.layout))?
    };
    draw_axes(&mut image, &scene.layout);
    Ok(encode_png(&image)?)
}

/// Renders `snapshot` in `format`.
pub fn render(snapshot: &Snapshot, request: &PlotRequest, format: OutputFormat) -> Result<Vec<u8>, JobError> {
    let scene = build_scene(snapshot, request)?;
    match format {
        OutputFormat::Svg => render_svg_bytes(&scene, request),
        OutputFormat::Png => render_png_bytes(&scene, request),
    }
}
