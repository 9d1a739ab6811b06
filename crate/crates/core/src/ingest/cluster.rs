use std::collections::BTreeMap;

use super::{Dataset, IngestError};
use crate::geometry::redistribute_gap;

/// Cluster labels plus per-gap centroid positions.
///
/// Gap `j` is the space between data axes `j` and `j + 1`. A cluster's
/// centroid on that gap is the mean over its members of
/// `(v[j] + v[j + 1]) / 2`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterModel {
    k: usize,
    labels: Vec<usize>,
    sizes: Vec<usize>,
    /// `(m - 1) × k`, row-major by gap.
    gap_centroids: Vec<f64>,
    /// `(m - 1) × k`, row-major by gap.
    gap_slots: Vec<f64>,
}

impl ClusterModel {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn gaps(&self) -> usize {
        self.gap_centroids.len() / self.k
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn gap_centroids(&self, gap: usize) -> &[f64] {
        &self.gap_centroids[gap * self.k..(gap + 1) * self.k]
    }

    pub fn gap_slots(&self, gap: usize) -> &[f64] {
        &self.gap_slots[gap * self.k..(gap + 1) * self.k]
    }

    pub fn centroid(&self, gap: usize, cluster: usize) -> f64 {
        self.gap_centroids[gap * self.k + cluster]
    }

    pub fn slot(&self, gap: usize, cluster: usize) -> f64 {
        self.gap_slots[gap * self.k + cluster]
    }
}

/// Computes per-gap centroids for `labels` (each in `0..k`).
///
/// When `redistribute` is set, slots are spread uniformly per gap while
/// keeping the centroid order; otherwise slots equal the centroids.
pub fn build_cluster_model(
    data: &Dataset,
    labels: &[usize],
    k: usize,
    redistribute: bool,
) -> Result<ClusterModel, IngestError> {
    if k == 0 {
        return Err(IngestError::ZeroK);
    }
    if labels.len() != data.n() {
        return Err(IngestError::LabelCountMismatch {
            expected: data.n(),
            found: labels.len(),
        });
    }
    let mut sizes = vec![0usize; k];
    for (row, &label) in labels.iter().enumerate() {
        if label >= k {
            return Err(IngestError::LabelOutOfRange { row, label, k });
        }
        sizes[label] += 1;
    }
    if let Some(empty) = sizes.iter().position(|&s| s == 0) {
        return Err(IngestError::EmptyCluster(empty));
    }

    let gaps = data.m() - 1;
    let mut sums = vec![0.0; gaps * k];
    for (row, &c) in data.rows().zip(labels) {
        for j in 0..gaps {
            sums[j * k + c] += (row[j] + row[j + 1]) / 2.0;
        }
    }
    let gap_centroids: Vec<f64> = sums
        .iter()
        .enumerate()
        .map(|(idx, s)| (s / sizes[idx % k] as f64).clamp(0.0, 1.0))
        .collect();

    let gap_slots = if redistribute {
        gap_centroids
            .chunks_exact(k)
            .flat_map(redistribute_gap)
            .collect()
    } else {
        gap_centroids.clone()
    };

    Ok(ClusterModel {
        k,
        labels: labels.to_vec(),
        sizes,
        gap_centroids,
        gap_slots,
    })
}

/// Renumbers labels so that ids are assigned in order of first occurrence.
pub fn canonical_labels(labels: &[usize]) -> Vec<usize> {
    let mut map = BTreeMap::new();
    labels
        .iter()
        .map(|l| {
            let next = map.len();
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// Maps arbitrary integer labels onto `0..k` by ascending label value.
///
/// Returns the dense labels and `k`.
pub fn dense_labels(labels: &[i64]) -> (Vec<usize>, usize) {
    let mut distinct: Vec<i64> = labels.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let dense = labels
        .iter()
        .map(|l| distinct.binary_search(l).expect("label present"))
        .collect();
    (dense, distinct.len())
}
