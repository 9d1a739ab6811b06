//! Lloyd's k-means with portable, seeded initialization.
//!
//! Initial centers are `k` distinct rows picked by a partial Fisher–Yates
//! shuffle driven by [`SplitMix64`]. A bounded index is drawn as the high 64
//! bits of `next_u64() * bound` (128-bit product). Both steps are fully
//! specified here so that ports in other languages reproduce the same labels.
//!
//! Several restarts (derived seeds `seed + r`) are run and the partition with
//! the lowest within-cluster sum of squares wins; ties go to the earliest
//! restart.

use rayon::prelude::*;

use super::{canonical_labels, Dataset, IngestError};

/// SplitMix64 generator (Steele, Lea & Flood constants).
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish index in `0..bound` via the multiply-high reduction.
    pub fn next_index(&mut self, bound: usize) -> usize {
        ((self.next_u64() as u128 * bound as u128) >> 64) as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KMeansConfig {
    pub k: usize,
    pub seed: u64,
    pub max_iter: usize,
    pub restarts: usize,
}

impl KMeansConfig {
    pub const DEFAULT_MAX_ITER: usize = 300;
    pub const DEFAULT_RESTARTS: usize = 10;

    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            max_iter: Self::DEFAULT_MAX_ITER,
            restarts: Self::DEFAULT_RESTARTS,
        }
    }
}

/// Result of one k-means fit.
#[derive(Debug, Clone, PartialEq)]
pub struct KMeans {
    /// Canonical labels: cluster ids appear in order of first occurrence.
    pub labels: Vec<usize>,
    /// Centers indexed by canonical label, each of length `m`.
    pub centroids: Vec<Vec<f64>>,
    /// Within-cluster sum of squares of the winning run.
    pub inertia: f64,
    /// Lloyd iterations performed by the winning run.
    pub iterations: usize,
    /// Objective after every update step of the winning run.
    pub history: Vec<f64>,
}

/// Clusters the rows of `data` into `k` groups and returns canonical labels.
pub fn kmeans(
    data: &Dataset,
    k: usize,
    seed: u64,
    max_iter: usize,
) -> Result<Vec<usize>, IngestError> {
    let config = KMeansConfig {
        max_iter,
        ..KMeansConfig::new(k, seed)
    };
    KMeans::fit(data, &config).map(|fit| fit.labels)
}

/// Sum of squared distances from each row to the mean of its cluster.
pub fn within_cluster_ss(data: &Dataset, labels: &[usize], k: usize) -> f64 {
    let centroids = centroids_of(data, labels, k);
    data.rows()
        .zip(labels)
        .map(|(row, &c)| sq_dist(row, &centroids[c]))
        .sum()
}

impl KMeans {
    pub fn fit(data: &Dataset, config: &KMeansConfig) -> Result<Self, IngestError> {
        let n = data.n();
        if config.k == 0 {
            return Err(IngestError::ZeroK);
        }
        if config.k > n {
            return Err(IngestError::KTooLarge { k: config.k, n });
        }

        let mut best: Option<Run> = None;
        for r in 0..config.restarts.max(1) {
            let run = lloyd(data, config.k, config.seed.wrapping_add(r as u64), config.max_iter);
            if best.as_ref().map_or(true, |b| run.inertia < b.inertia) {
                best = Some(run);
            }
        }
        let run = best.expect("at least one restart");

        let labels = canonical_labels(&run.labels);
        // Centroid for canonical id c is the run centroid of the first row labelled c.
        let mut centroids = vec![Vec::new(); config.k];
        for (i, &c) in labels.iter().enumerate() {
            if centroids[c].is_empty() {
                centroids[c] = run.centroids[run.labels[i]].clone();
            }
        }
        Ok(Self {
            labels,
            centroids,
            inertia: run.inertia,
            iterations: run.iterations,
            history: run.history,
        })
    }
}

struct Run {
    labels: Vec<usize>,
    centroids: Vec<Vec<f64>>,
    inertia: f64,
    iterations: usize,
    history: Vec<f64>,
}

fn sq_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// Distinct row indices chosen by a partial Fisher–Yates shuffle.
fn initial_rows(n: usize, k: usize, seed: u64) -> Vec<usize> {
    let mut rng = SplitMix64::new(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + rng.next_index(n - i);
        idx.swap(i, j);
    }
    idx.truncate(k);
    idx
}

fn nearest(row: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (c, centroid) in centroids.iter().enumerate() {
        let d = sq_dist(row, centroid);
        if d < best_d {
            best = c;
            best_d = d;
        }
    }
    best
}

/// Cluster means accumulated in row order. Empty clusters get an empty vector.
fn centroids_of(data: &Dataset, labels: &[usize], k: usize) -> Vec<Vec<f64>> {
    let m = data.m();
    let mut sums = vec![vec![0.0; m]; k];
    let mut counts = vec![0usize; k];
    for (row, &c) in data.rows().zip(labels) {
        counts[c] += 1;
        for (s, v) in sums[c].iter_mut().zip(row) {
            *s += v;
        }
    }
    sums.into_iter()
        .zip(counts)
        .map(|(s, count)| {
            if count == 0 {
                Vec::new()
            } else {
                s.into_iter().map(|v| v / count as f64).collect()
            }
        })
        .collect()
}

fn lloyd(data: &Dataset, k: usize, seed: u64, max_iter: usize) -> Run {
    let mut centroids: Vec<Vec<f64>> = initial_rows(data.n(), k, seed)
        .into_iter()
        .map(|i| data.row(i).to_vec())
        .collect();
    let mut labels: Vec<usize> = Vec::new();
    let mut history = Vec::new();
    let mut iterations = 0;

    for _ in 0..max_iter.max(1) {
        let assigned: Vec<usize> = data
            .rows()
            .collect::<Vec<_>>()
            .par_iter()
            .map(|row| nearest(row, &centroids))
            .collect();
        if assigned == labels {
            break;
        }
        labels = assigned;
        iterations += 1;
        reseed_empty(data, &mut labels, &centroids, k);
        centroids = centroids_of(data, &labels, k);
        history.push(
            data.rows()
                .zip(&labels)
                .map(|(row, &c)| sq_dist(row, &centroids[c]))
                .sum(),
        );
    }

    let inertia = history.last().copied().unwrap_or(0.0);
    Run {
        labels,
        centroids,
        inertia,
        iterations,
        history,
    }
}

/// Moves the row farthest from its assigned centre into each empty cluster.
///
/// Only rows from clusters with at least two members are eligible so no new
/// empty cluster is created. Ties go to the lowest row index.
fn reseed_empty(data: &Dataset, labels: &mut [usize], centroids: &[Vec<f64>], k: usize) {
    let mut sizes = vec![0usize; k];
    for &c in labels.iter() {
        sizes[c] += 1;
    }
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let mut pick: Option<(usize, f64)> = None;
        for (i, row) in data.rows().enumerate() {
            let c = labels[i];
            if sizes[c] < 2 {
                continue;
            }
            let d = sq_dist(row, &centroids[c]);
            if pick.map_or(true, |(_, best)| d > best) {
                pick = Some((i, d));
            }
        }
        // k <= n guarantees some cluster has a spare member.
        let (i, _) = pick.expect("a cluster with at least two members exists");
        sizes[labels[i]] -= 1;
        labels[i] = empty;
        sizes[empty] = 1;
    }
}
