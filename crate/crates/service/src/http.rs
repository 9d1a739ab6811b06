//! HTTP service for interactive clients.
//!
//! One dataset is held at a time. Each upload replaces the current
//! [`Snapshot`] atomically; requests clone the `Arc` they start with, so a
//! response is always computed from a single snapshot and its own query
//! parameters.

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use axum::extract::{Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use bundlepc_core::{BundleParams, Normalization, TransferParams};
use serde::Serialize;
use thiserror::Error;

use crate::cli::parse_order;
use crate::document::geometry_json;
use crate::pipeline::{render, Clustering, JobError, OutputFormat, PlotRequest, Snapshot};

#[derive(Default)]
pub struct AppState {
    current: RwLock<Option<Arc<Snapshot>>>,
    next_id: AtomicU64,
}

impl AppState {
    pub fn new(initial: Option<Snapshot>) -> Arc<Self> {
        let state = Arc::new(Self::default());
        if let Some(mut snapshot) = initial {
            snapshot.id = state.allocate_id();
            state.install(snapshot);
        }
        state
    }

    fn allocate_id(&self) -> u64 {
        self.next_id.fetch_add(1, Ordering::Relaxed) + 1
    }

    fn install(&self, snapshot: Snapshot) {
        *self.current.write().expect("snapshot lock poisoned") = Some(Arc::new(snapshot));
    }

    pub fn snapshot(&self) -> Option<Arc<Snapshot>> {
        self.current.read().expect("snapshot lock poisoned").clone()
    }
}

#[derive(Debug, Error)]
pub enum ServeError {
    #[error("cannot bind {addr}: {source}")]
    BindFailure {
        addr: String,
        source: std::io::Error,
    },
    #[error("server error: {0}")]
    Io(#[from] std::io::Error),
}

/// API error rendered as `{"error": "..."}`.
#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    message: String,
}

impl ApiError {
    fn bad_request(message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            message: message.into(),
        }
    }

    fn no_dataset() -> Self {
        Self {
            status: StatusCode::NOT_FOUND,
            message: "no dataset loaded; POST CSV to /api/dataset first".into(),
        }
    }
}

impl From<JobError> for ApiError {
    fn from(e: JobError) -> Self {
        let status = match e {
            JobError::InvalidConfig(_) | JobError::Input(_) => StatusCode::BAD_REQUEST,
            JobError::Render(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        Self {
            status,
            message: e.to_string(),
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (
            self.status,
            Json(serde_json::json!({ "error": self.message })),
        )
            .into_response()
    }
}

type Params = Query<HashMap<String, String>>;

fn param<T: std::str::FromStr>(q: &HashMap<String, String>, name: &str) -> Result<Option<T>, ApiError> {
    match q.get(name) {
        None => Ok(None),
        Some(raw) => raw
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| ApiError::bad_request(format!("query parameter {name}: cannot parse '{raw}'"))),
    }
}

fn flag(q: &HashMap<String, String>, name: &str) -> Result<bool, ApiError> {
    match q.get(name).map(|s| s.trim().to_ascii_lowercase()) {
        None => Ok(false),
        Some(s) => match s.as_str() {
            "" | "1" | "true" | "yes" | "on" => Ok(true),
            "0" | "false" | "no" | "off" => Ok(false),
            _ => Err(ApiError::bad_request(format!(
                "query parameter {name}: expected a boolean, got '{s}'"
            ))),
        },
    }
}

fn positive_dim(q: &HashMap<String, String>, name: &str, default: u32) -> Result<u32, ApiError> {
    let v = param::<u32>(q, name)?.unwrap_or(default);
    if v == 0 || v > 16_384 {
        return Err(ApiError::bad_request(format!("{name} = {v} is outside 1..=16384")));
    }
    Ok(v)
}

/// Plot request from query parameters; absent values take the CLI defaults.
pub fn plot_request(q: &HashMap<String, String>) -> Result<PlotRequest, ApiError> {
    let defaults = PlotRequest::default();
    let alpha = param(q, "alpha")?.unwrap_or(defaults.params.alpha());
    let beta = param(q, "beta")?.unwrap_or(defaults.params.beta());
    let params = BundleParams::new(alpha, beta, flag(q, "redistribute")?)
        .map_err(|e| ApiError::bad_request(e.to_string()))?;
    let axis_order = match q.get("order").map(|s| s.trim()).filter(|s| !s.is_empty()) {
        Some(s) => Some(parse_order(s).map_err(|e| ApiError::bad_request(format!("order: {e}")))?),
        None => None,
    };
    let gamma = param(q, "gamma")?.unwrap_or(TransferParams::DEFAULT_GAMMA);
    let normalization = match q.get("normalization").map(String::as_str) {
        None | Some("cluster") => Normalization::PerClusterMax,
        Some("global") => Normalization::GlobalMax,
        Some(other) => {
            return Err(ApiError::bad_request(format!(
                "normalization: expected 'cluster' or 'global', got '{other}'"
            )))
        }
    };
    let transfer =
        TransferParams::new(gamma, normalization).map_err(|e| ApiError::bad_request(e.to_string()))?;
    Ok(PlotRequest {
        params,
        axis_order,
        width: positive_dim(q, "width", defaults.width)?,
        height: positive_dim(q, "height", defaults.height)?,
        density: flag(q, "density")?,
        transfer,
    })
}

fn current(state: &AppState) -> Result<Arc<Snapshot>, ApiError> {
    state.snapshot().ok_or_else(ApiError::no_dataset)
}

async fn blocking<T: Send + 'static>(
    f: impl FnOnce() -> Result<T, JobError> + Send + 'static,
) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError {
            status: StatusCode::INTERNAL_SERVER_ERROR,
            message: e.to_string(),
        })?
        .map_err(ApiError::from)
}

#[derive(Serialize)]
struct UploadResponse {
    snapshot_id: u64,
    n: usize,
    m: usize,
    k: usize,
}

async fn upload(State(state): State<Arc<AppState>>, Query(q): Params, body: String) -> Result<Json<UploadResponse>, ApiError> {
    let label_column = q.get("label_column").filter(|s| !s.is_empty()).cloned();
    let k: Option<usize> = param(&q, "kmeans")?;
    let seed: u64 = param(&q, "seed")?.unwrap_or(0);
    let clustering = match (label_column, k) {
        (Some(_), Some(_)) => {
            return Err(ApiError::bad_request("give either label_column or kmeans, not both"))
        }
        (Some(name), None) => Clustering::LabelColumn(name),
        (None, Some(0)) => return Err(ApiError::bad_request("kmeans must be at least 1")),
        (None, Some(k)) => Clustering::KMeans { k, seed },
        (None, None) => Clustering::Single,
    };
    let id = state.allocate_id();
    let snapshot = blocking(move || Snapshot::from_csv(id, &body, &clustering)).await?;
    let response = UploadResponse {
        snapshot_id: snapshot.id,
        n: snapshot.dataset.n(),
        m: snapshot.dataset.m(),
        k: snapshot.k,
    };
    state.install(snapshot);
    Ok(Json(response))
}

/// Session summary, including normalized values for client-side brushing.
#[derive(Debug, Serialize, serde::Deserialize, PartialEq)]
pub struct Meta {
    pub snapshot_id: u64,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub axis_names: Vec<String>,
    pub axis_min: Vec<f64>,
    pub axis_max: Vec<f64>,
    pub cluster_sizes: Vec<usize>,
    pub labels: Vec<usize>,
    pub values: Vec<Vec<f64>>,
}

async fn meta(State(state): State<Arc<AppState>>) -> Result<Json<Meta>, ApiError> {
    let s = current(&state)?;
    Ok(Json(Meta {
        snapshot_id: s.id,
        n: s.dataset.n(),
        m: s.dataset.m(),
        k: s.k,
        axis_names: s.dataset.axis_names().to_vec(),
        axis_min: s.dataset.axis_min().to_vec(),
        axis_max: s.dataset.axis_max().to_vec(),
        cluster_sizes: s.cluster_sizes(),
        labels: s.labels.clone(),
        values: s.dataset.rows().map(<[f64]>::to_vec).collect(),
    }))
}

async fn geometry(State(state): State<Arc<AppState>>, Query(q): Params) -> Result<Response, ApiError> {
    let request = plot_request(&q)?;
    let s = current(&state)?;
    let doc = blocking(move || geometry_json(&s, &request)).await?;
    Ok(Json(doc).into_response())
}

async fn plot(state: Arc<AppState>, q: HashMap<String, String>, format: OutputFormat) -> Result<Response, ApiError> {
    let request = plot_request(&q)?;
    let s = current(&state)?;
    let bytes = blocking(move || render(&s, &request, format)).await?;
    let content_type = match format {
        OutputFormat::Svg => "image/svg+xml",
        OutputFormat::Png => "image/png",
    };
    Ok(([(header::CONTENT_TYPE, content_type)], bytes).into_response())
}

async fn plot_svg(State(state): State<Arc<AppState>>, Query(q): Params) -> Result<Response, ApiError> {
    plot(state, q, OutputFormat::Svg).await
}

async fn plot_png(State(state): State<Arc<AppState>>, Query(q): Params) -> Result<Response, ApiError> {
    plot(state, q, OutputFormat::Png).await
}

async fn index() -> &'static str {
    "bundlepc service\n\
     POST /api/dataset?label_column=|kmeans=&seed=   (CSV body)\n\
     GET  /api/meta\n\
     GET  /api/geometry?alpha&beta&redistribute&order&width&height\n\
     GET  /api/plot.svg?...\n\
     GET  /api/plot.png?...&density=1&gamma=\n"
}

pub fn router(state: Arc<AppState>) -> Router {
    Router::new()
        .route("/", get(index))
        .route("/api/dataset", post(upload))
        .route("/api/meta", get(meta))
        .route("/api/geometry", get(geometry))
        .route("/api/plot.svg", get(plot_svg))
        .route("/api/plot.png", get(plot_png))
        .with_state(state)
}

/// Binds `host:port` and serves until the process is stopped.
pub async fn serve(host: &str, port: u16, initial: Option<Snapshot>) -> Result<(), ServeError> {
    let addr = format!("{host}:{port}");
    let listener = tokio::net::TcpListener::bind(&addr)
        .await
        .map_err(|source| ServeError::BindFailure {
            addr: addr.clone(),
            source,
        })?;
    let local: SocketAddr = listener.local_addr()?;
    tracing::info!("listening on http://{local}");
    axum::serve(listener, router(AppState::new(initial))).await?;
    Ok(())
}
