use super::{DensityField, RenderError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    /// Each cluster is scaled by its own maximum cell.
    #[default]
    PerClusterMax,
    /// All clusters share the largest cell over every field.
    GlobalMax,
}

/// Power-law transfer function `(cell / norm) ^ gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransferParams {
    gamma: f64,
    pub normalization: Normalization,
}

impl TransferParams {
    pub const DEFAULT_GAMMA: f64 = 0.4;

    pub fn new(gamma: f64, normalization: Normalization) -> Result<Self, RenderError> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(RenderError::InvalidGamma(gamma));
        }
        Ok(Self {
            gamma,
            normalization,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }
}

impl Default for TransferParams {
    fn default() -> Self {
        Self {
            gamma: Self::DEFAULT_GAMMA,
            normalization: Normalization::PerClusterMax,
        }
    }
}

/// Display intensities in `[0, 1]`, same layout as the source field.
#[derive(Debug, Clone, PartialEq)]
pub struct IntensityField {
    pub width: usize,
    pub height: usize,
    pub cluster_id: usize,
    values: Vec<f64>,
}

impl IntensityField {
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.values[x * self.height + y]
    }

    /// Builds a field from row-major values (`values[y * width + x]`).
    pub fn from_row_major(width: usize, height: usize, cluster_id: usize, values: &[f64]) -> Self {
        assert_eq!(values.len(), width * height);
        let mut out = vec![0.0; width * height];
        for y in 0..height {
            for x in 0..width {
                out[x * height + y] = values[y * width + x].clamp(0.0, 1.0);
            }
        }
        Self {
            width,
            height,
            cluster_id,
            values: out,
        }
    }
}

/// Normalization value for every field under `mode`.
///
/// Fields with no coverage get 1 so the transfer stays defined.
pub fn norm_values(fields: &[DensityField], mode: Normalization) -> Vec<f64> {
    let positive = |v: f64| if v > 0.0 { v } else { 1.0 };
    match mode {
        Normalization::PerClusterMax => fields.iter().map(|f| positive(f.max())).collect(),
        Normalization::GlobalMax => {
            let global = positive(fields.iter().map(DensityField::max).fold(0.0, f64::max));
            vec![global; fields.len()]
        }
    }
}

pub fn apply_transfer(
    field: &DensityField,
    params: &TransferParams,
    norm_value: f64,
) -> Result<IntensityField, RenderError> {
    if !(norm_value > 0.0 && norm_value.is_finite()) {
        return Err(RenderError::NonPositiveNorm(norm_value));
    }
    let gamma = params.gamma();
    let values = field
        .cells()
        .iter()
        .map(|&c| {
            if c <= 0.0 {
                0.0
            } else {
                (c / norm_value).powf(gamma).clamp(0.0, 1.0)
            }
        })
        .collect();
    Ok(IntensityField {
        width: field.width,
        height: field.height,
        cluster_id: field.cluster_id,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::render::RasterSize;

    fn field_with(cells: &[f64]) -> DensityField {
        let mut f = DensityField::zeros(RasterSize::new(cells.len(), 1), 0);
        f.cells_mut().copy_from_slice(cells);
        f
    }

    #[test]
    fn fixed_points_and_formula() {
        let f = field_with(&[0.0, 0.25, 1.0, 4.0]);
        let p = TransferParams::new(0.5, Normalization::PerClusterMax).unwrap();
        let out = apply_transfer(&f, &p, 1.0).unwrap();
        assert_eq!(out.get(0, 0), 0.0);
        assert_eq!(out.get(1, 0), 0.5);
        assert_eq!(out.get(2, 0), 1.0);
        assert_eq!(out.get(3, 0), 1.0);
    }

    #[test]
    fn strictly_increasing_below_norm() {
        let cells: Vec<f64> = (1..=1000).map(|i| i as f64 / 100.0).collect();
        let f = field_with(&cells);
        for gamma in [0.1, 0.4, 1.0, 2.5] {
            let p = TransferParams::new(gamma, Normalization::default()).unwrap();
            let out = apply_transfer(&f, &p, 10.0).unwrap();
            for i in 1..cells.len() {
                assert!(out.get(i, 0) > out.get(i - 1, 0));
            }
        }
    }

    #[test]
    fn errors() {
        let f = field_with(&[1.0]);
        let p = TransferParams::default();
        assert_eq!(
            apply_transfer(&f, &p, 0.0).unwrap_err(),
            RenderError::NonPositiveNorm(0.0)
        );
        assert!(TransferParams::new(0.0, Normalization::GlobalMax).is_err());
        assert!(TransferParams::new(f64::NAN, Normalization::GlobalMax).is_err());
    }

    #[test]
    fn normalization_modes() {
        let a = field_with(&[1.0, 3.0]);
        let b = field_with(&[6.0, 0.0]);
        let empty = field_with(&[0.0, 0.0]);
        let fields = [a, b, empty];
        assert_eq!(norm_values(&fields, Normalization::PerClusterMax), vec![3.0, 6.0, 1.0]);
        assert_eq!(norm_values(&fields, Normalization::GlobalMax), vec![6.0; 3]);
    }
}
