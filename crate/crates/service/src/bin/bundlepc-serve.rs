use std::path::PathBuf;

use bundlepc::http::serve;
use bundlepc::pipeline::{Clustering, Snapshot};
use clap::Parser;

/// Serve bundled-curve parallel coordinates over HTTP.
#[derive(Debug, Parser)]
#[command(name = "bundlepc-serve", version)]
struct Args {
    #[arg(long, default_value = "127.0.0.1")]
    host: String,

    #[arg(long, default_value_t = 8080)]
    port: u16,

    /// CSV dataset to load at startup
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,

    #[arg(long, value_name = "NAME", conflicts_with = "kmeans", requires = "input")]
    label_column: Option<String>,

    #[arg(long, value_name = "K", requires = "input", value_parser = clap::value_parser!(u32).range(1..))]
    kmeans: Option<u32>,

    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,
}

#[tokio::main]
async fn main() {
    tracing_subscriber::fmt::init();
    let args = Args::parse();

    let initial = match &args.input {
        None => None,
        Some(path) => {
            let clustering = match (&args.label_column, args.kmeans) {
                (Some(name), _) => Clustering::LabelColumn(name.clone()),
                (None, Some(k)) => Clustering::KMeans {
                    k: k as usize,
                    seed: args.seed,
                },
                (None, None) => Clustering::Single,
            };
            let loaded = std::fs::read_to_string(path)
                .map_err(|e| format!("{}: {e}", path.display()))
                .and_then(|text| Snapshot::from_csv(0, &text, &clustering).map_err(|e| e.to_string()));
            match loaded {
                Ok(s) => Some(s),
                Err(e) => {
                    eprintln!("error: {e}");
                    std::process::exit(3);
                }
            }
        }
    };

    if let Err(e) = serve(&args.host, args.port, initial).await {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
