//! Tabular input, normalization and clustering.

mod cluster;
mod csv;
mod dataset;
mod kmeans;

pub use self::cluster::{build_cluster_model, canonical_labels, dense_labels, ClusterModel};
pub use self::csv::{parse_csv, CsvOptions, RawTable};
pub use self::dataset::{normalize, Dataset};
pub use self::kmeans::{kmeans, within_cluster_ss, KMeans, KMeansConfig, SplitMix64};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum IngestError {
    #[error("input is empty (a header row and at least one data row are required)")]
    EmptyInput,
    #[error("row {line} has {found} fields, expected {expected}")]
    MalformedRow {
        line: u64,
        expected: usize,
        found: usize,
    },
    #[error("row {line}, column '{column}': '{value}' is not a finite number")]
    NonNumericCell {
        line: u64,
        column: String,
        value: String,
    },
    #[error("row {line}, column '{column}': '{value}' is not an integer label")]
    InvalidLabel {
        line: u64,
        column: String,
        value: String,
    },
    #[error("label column '{0}' not found in header")]
    MissingLabelColumn(String),
    #[error("need at least 2 numeric columns, found {0}")]
    TooFewAxes(usize),
    #[error("malformed delimited text: {0}")]
    Csv(String),
    #[error("k must be at least 1")]
    ZeroK,
    #[error("k = {k} exceeds row count n = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("label {label} at row {row} is outside 0..{k}")]
    LabelOutOfRange { row: usize, label: usize, k: usize },
    #[error("cluster {0} has no members")]
    EmptyCluster(usize),
    #[error("expected {expected} labels, got {found}")]
    LabelCountMismatch { expected: usize, found: usize },
    #[error("axis order {0:?} is not a permutation of the dataset axes")]
    InvalidAxisOrder(Vec<usize>),
}
