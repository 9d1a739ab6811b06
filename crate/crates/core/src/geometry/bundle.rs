use super::GeometryError;

/// Smoothness, bundling strength and centroid redistribution switch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BundleParams {
    alpha: f64,
    beta: f64,
    redistribute: bool,
}

impl BundleParams {
    pub fn new(alpha: f64, beta: f64, redistribute: bool) -> Result<Self, GeometryError> {
        for (name, value) in [("alpha", alpha), ("beta", beta)] {
            if !(0.0..=1.0).contains(&value) {
                return Err(GeometryError::ParamOutOfRange { name, value });
            }
        }
        Ok(Self {
            alpha,
            beta,
            redistribute,
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn redistribute(&self) -> bool {
        self.redistribute
    }
}

impl Default for BundleParams {
    fn default() -> Self {
        Self {
            alpha: 0.5,
            beta: 0.8,
            redistribute: false,
        }
    }
}

/// Uniform slots for one gap: the cluster of rank `r` (ascending centroid,
/// ties by cluster id) gets `(r + 0.5) / k`.
pub fn redistribute_gap(centroids: &[f64]) -> Vec<f64> {
    let k = centroids.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| centroids[a].total_cmp(&centroids[b]).then(a.cmp(&b)));
    let mut slots = vec![0.0; k];
    for (rank, &c) in order.iter().enumerate() {
        slots[c] = (rank as f64 + 0.5) / k as f64;
    }
    slots
}

/// Bundling-axis position: the segment midpoint pulled towards the centroid.
pub fn bundling_anchor(y_left: f64, y_right: f64, centroid: f64, beta: f64) -> f64 {
    (1.0 - beta) * (y_left + y_right) / 2.0 + beta * centroid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slots_for_sorted_centroids() {
        assert_eq!(
            redistribute_gap(&[0.1, 0.2, 0.3, 0.4]),
            vec![0.125, 0.375, 0.625, 0.875]
        );
        assert_eq!(redistribute_gap(&[0.77]), vec![0.5]);
    }

    #[test]
    fn slots_follow_rank() {
        let s = redistribute_gap(&[0.9, 0.1, 0.5]);
        assert_eq!(s, vec![2.5 / 3.0, 0.5 / 3.0, 0.5]);
        assert!((s[0] - 0.833_333_333_333).abs() < 1e-12);
    }

    #[test]
    fn ties_break_by_cluster_id() {
        assert_eq!(redistribute_gap(&[0.4, 0.4, 0.1]), vec![0.5, 5.0 / 6.0, 1.0 / 6.0]);
    }

    #[test]
    fn anchor_interpolation() {
        assert!((bundling_anchor(0.2, 0.6, 0.9, 0.0) - 0.4).abs() < 1e-15);
        assert_eq!(bundling_anchor(0.2, 0.6, 0.9, 1.0), 0.9);
        assert!((bundling_anchor(0.2, 0.6, 0.9, 0.5) - 0.65).abs() < 1e-15);
    }

    #[test]
    fn param_validation() {
        assert!(BundleParams::new(0.0, 1.0, true).is_ok());
        assert_eq!(
            BundleParams::new(1.5, 0.0, false).unwrap_err(),
            GeometryError::ParamOutOfRange {
                name: "alpha",
                value: 1.5
            }
        );
        assert!(BundleParams::new(0.5, -0.1, false).is_err());
        assert!(BundleParams::new(f64::NAN, 0.5, false).is_err());
    }
}
