use super::{IngestError, RawTable};

/// Normalized `n × m` table. Every value lies in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    n: usize,
    m: usize,
    /// Row-major values.
    values: Vec<f64>,
    axis_names: Vec<String>,
    axis_min: Vec<f64>,
    axis_max: Vec<f64>,
}

impl Dataset {
    /// Builds a dataset from already-normalized rows.
    ///
    /// Axis names default to `x0, x1, ...` and original bounds to `[0, 1]`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, IngestError> {
        let n = rows.len();
        if n == 0 {
            return Err(IngestError::EmptyInput);
        }
        let m = rows[0].len();
        if m < 2 {
            return Err(IngestError::TooFewAxes(m));
        }
        let mut values = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(IngestError::MalformedRow {
                    line: i as u64 + 1,
                    expected: m,
                    found: row.len(),
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if !(0.0..=1.0).contains(&v) {
                    return Err(IngestError::NonNumericCell {
                        line: i as u64 + 1,
                        column: format!("x{j}"),
                        value: v.to_string(),
                    });
                }
            }
            values.extend_from_slice(row);
        }
        Ok(Self {
            n,
            m,
            values,
            axis_names: (0..m).map(|j| format!("x{j}")).collect(),
            axis_min: vec![0.0; m],
            axis_max: vec![1.0; m],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.m..(i + 1) * self.m]
    }

    pub fn rows(&self) -> impl ExactSizeIterator<Item = &[f64]> + '_ {
        self.values.chunks_exact(self.m)
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.m + j]
    }

    pub fn axis_names(&self) -> &[String] {
        &self.axis_names
    }

    pub fn axis_min(&self) -> &[f64] {
        &self.axis_min
    }

    pub fn axis_max(&self) -> &[f64] {
        &self.axis_max
    }

    /// Maps a normalized value on axis `j` back to original units.
    pub fn denormalize(&self, j: usize, v: f64) -> f64 {
        self.axis_min[j] + v * (self.axis_max[j] - self.axis_min[j])
    }

    /// Returns a copy with axes rearranged so that new axis `p` is old axis
    /// `order[p]`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self, IngestError> {
        let mut seen = vec![false; self.m];
        if order.len() != self.m {
            return Err(IngestError::InvalidAxisOrder(order.to_vec()));
        }
        for &j in order {
            if j >= self.m || std::mem::replace(&mut seen[j], true) {
                return Err(IngestError::InvalidAxisOrder(order.to_vec()));
            }
        }
        let values = self
            .rows()
            .flat_map(|row| order.iter().map(move |&j| row[j]))
            .collect();
        Ok(Self {
            n: self.n,
            m: self.m,
            values,
            axis_names: order.iter().map(|&j| self.axis_names[j].clone()).collect(),
            axis_min: order.iter().map(|&j| self.axis_min[j]).collect(),
            axis_max: order.iter().map(|&j| self.axis_max[j]).collect(),
        })
    }
}

/// Min–max scales every column of `raw` onto `[0, 1]`.
///
/// A constant column maps every row to 0.5.
pub fn normalize(raw: &RawTable) -> Dataset {
    let n = raw.rows();
    let m = raw.axes();
    let mut axis_min = Vec::with_capacity(m);
    let mut axis_max = Vec::with_capacity(m);
    for col in &raw.columns {
        let (lo, hi) = col
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            });
        axis_min.push(lo);
        axis_max.push(hi);
    }

    let mut values = vec![0.0; n * m];
    for (j, col) in raw.columns.iter().enumerate() {
        let (lo, hi) = (axis_min[j], axis_max[j]);
        let span = hi - lo;
        for (i, &x) in col.iter().enumerate() {
            values[i * m + j] = if span > 0.0 {
                ((x - lo) / span).clamp(0.0, 1.0)
            } else {
                0.5
            };
        }
    }

    Dataset {
        n,
        m,
        values,
        axis_names: raw.column_names.clone(),
        axis_min,
        axis_max,
    }
}
