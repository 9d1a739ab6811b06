//! Batch rendering: one input file in, one SVG or PNG file out.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use bundlepc_core::{BundleParams, Normalization, TransferParams};
use clap::error::ErrorKind;
use clap::Parser;

use crate::pipeline::{render, Clustering, JobError, OutputFormat, PlotRequest, Snapshot};

#[derive(Debug, Parser)]
#[command(
    name = "bundlepc",
    version,
    allow_negative_numbers = true,
    about = "Render bundled-curve parallel coordinates plots"
)]
pub struct Args {
    /// CSV input with one header row
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,

    /// Integer column holding cluster labels
    #[arg(long, value_name = "NAME", conflicts_with = "kmeans")]
    pub label_column: Option<String>,

    /// Cluster rows with k-means into K groups
    #[arg(long, value_name = "K", value_parser = clap::value_parser!(u32).range(1..))]
    pub kmeans: Option<u32>,

    /// Seed for k-means initialization
    #[arg(long, value_name = "N", default_value_t = 0)]
    pub seed: u64,

    /// Curve smoothness in [0, 1]
    #[arg(long, value_name = "F", default_value_t = 0.5, value_parser = unit_interval)]
    pub alpha: f64,

    /// Bundling strength in [0, 1]
    #[arg(long, value_name = "F", default_value_t = 0.8, value_parser = unit_interval)]
    pub beta: f64,

    /// Spread cluster centroids uniformly over each gap
    #[arg(long)]
    pub redistribute: bool,

    /// Draw per-cluster line density instead of strokes
    #[arg(long)]
    pub density: bool,

    /// Density transfer exponent (> 0)
    #[arg(long, value_name = "F", default_value_t = TransferParams::DEFAULT_GAMMA, value_parser = positive)]
    pub gamma: f64,

    #[arg(long, value_name = "N", default_value_t = 1200, value_parser = clap::value_parser!(u32).range(1..))]
    pub width: u32,

    #[arg(long, value_name = "N", default_value_t = 800, value_parser = clap::value_parser!(u32).range(1..))]
    pub height: u32,

    /// Axis order as comma-separated column indices, e.g. 2,0,1
    #[arg(long, value_name = "i,j,k,...", value_parser = parse_order)]
    pub order: Option<::std::vec::Vec<usize>>,

    /// Output file; .svg or .png
    #[arg(long, value_name = "PATH")]
    pub out: PathBuf,
}

fn unit_interval(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("{v} is outside the range [0, 1]"))
    }
}

fn positive(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("'{s}' is not a number"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(format!("{v} must be a positive finite number"))
    }
}

/// Parses `i,j,k`; the permutation itself is checked against the data.
pub fn parse_order(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("'{t}' is not an axis index"))
        })
        .collect()
}

impl Args {
    pub fn clustering(&self) -> Clustering {
        match (&self.label_column, self.kmeans) {
            (Some(name), _) => Clustering::LabelColumn(name.clone()),
            (None, Some(k)) => Clustering::KMeans {
                k: k as usize,
                seed: self.seed,
            },
            (None, None) => Clustering::Single,
        }
    }

    pub fn format(&self) -> Result<OutputFormat, JobError> {
        OutputFormat::from_path(&self.out).ok_or_else(|| {
            JobError::InvalidConfig(format!(
                "--out {}: unsupported extension (expected .svg or .png)",
                self.out.display()
            ))
        })
    }

    pub fn request(&self) -> Result<PlotRequest, JobError> {
        let params = BundleParams::new(self.alpha, self.beta, self.redistribute)?;
        let transfer = TransferParams::new(self.gamma, Normalization::PerClusterMax)?;
        Ok(PlotRequest {
            params,
            axis_order: self.order.clone(),
            width: self.width,
            height: self.height,
            density: self.density,
            transfer,
        })
    }
}

/// Runs one job; returns the process exit code.
pub fn execute(args: &Args) -> Result<(), JobError> {
    let format = args.format()?;
    let request = args.request()?;
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| JobError::Input(format!("--input {}: {e}", args.input.display())))?;
    let snapshot = Snapshot::from_csv(0, &text, &args.clustering())?;
    if let Some(order) = &args.order {
        if snapshot.dataset.reorder(order).is_err() {
            return Err(JobError::InvalidConfig(format!(
                "--order {order:?} is not a permutation of 0..{}",
                snapshot.dataset.m()
            )));
        }
    }
    let bytes = render(&snapshot, &request, format)?;
    std::fs::write(&args.out, bytes)
        .map_err(|e| JobError::Render(format!("--out {}: {e}", args.out.display())))
}

/// Parses `argv`, runs the job and reports failures as one line on `stderr`.
pub fn run_cli<I, T>(argv: I, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(stderr, "{line}");
            return 2;
        }
    };
    match execute(&args) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
