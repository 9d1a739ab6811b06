use super::IngestError;

/// Options for [`parse_csv`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    pub delimiter: u8,
    /// Name of an integer column holding cluster labels. It is removed from
    /// the numeric columns.
    pub label_column: Option<String>,
}

impl Default for CsvOptions {
    fn default() -> Self {
        Self {
            delimiter: b',',
            label_column: None,
        }
    }
}

/// Column-oriented numeric table as read from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct RawTable {
    pub column_names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
    pub labels: Option<Vec<i64>>,
}

impl RawTable {
    /// Builds a table from columns, checking the shape invariants.
    pub fn new(
        column_names: Vec<String>,
        columns: Vec<Vec<f64>>,
        labels: Option<Vec<i64>>,
    ) -> Result<Self, IngestError> {
        if columns.len() < 2 {
            return Err(IngestError::TooFewAxes(columns.len()));
        }
        let n = columns[0].len();
        if n == 0 {
            return Err(IngestError::EmptyInput);
        }
        for col in &columns {
            if col.len() != n {
                return Err(IngestError::MalformedRow {
                    line: 0,
                    expected: n,
                    found: col.len(),
                });
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != n {
                return Err(IngestError::LabelCountMismatch {
                    expected: n,
                    found: labels.len(),
                });
            }
        }
        Ok(Self {
            column_names,
            columns,
            labels,
        })
    }

    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn axes(&self) -> usize {
        self.columns.len()
    }
}

/// Parses delimiter-separated text with one header row.
///
/// Numbers are read in C-locale format and must be finite. Surrounding
/// whitespace in cells is ignored; blank lines are skipped.
pub fn parse_csv(text: &str, options: &CsvOptions) -> Result<RawTable, IngestError> {
    let mut reader = ::csv::ReaderBuilder::new()
        .delimiter(options.delimiter)
        .has_headers(true)
        .flexible(true)
        .trim(::csv::Trim::All)
        .from_reader(text.as_bytes());

    let header: Vec<String> = reader
        .headers()
        .map_err(|e| IngestError::Csv(e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    if header.is_empty() || (header.len() == 1 && header[0].is_empty()) {
        return Err(IngestError::EmptyInput);
    }

    let label_idx = match &options.label_column {
        Some(name) => Some(
            header
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| IngestError::MissingLabelColumn(name.clone()))?,
        ),
        None => None,
    };
    let numeric_idx: Vec<usize> = (0..header.len()).filter(|&i| Some(i) != label_idx).collect();

    let mut columns = vec![Vec::new(); numeric_idx.len()];
    let mut labels = label_idx.map(|_| Vec::new());

    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Csv(e.to_string()))?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != header.len() {
            return Err(IngestError::MalformedRow {
                line,
                expected: header.len(),
                found: record.len(),
            });
        }
        for (col, &idx) in columns.iter_mut().zip(&numeric_idx) {
            let cell = &record[idx];
            let value = cell
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| IngestError::NonNumericCell {
                    line,
                    column: header[idx].clone(),
                    value: cell.to_owned(),
                })?;
            col.push(value);
        }
        if let (Some(labels), Some(idx)) = (labels.as_mut(), label_idx) {
            let cell = &record[idx];
            let label = cell.parse::<i64>().map_err(|_| IngestError::InvalidLabel {
                line,
                column: header[idx].clone(),
                value: cell.to_owned(),
            })?;
            labels.push(label);
        }
    }

    if columns.len() < 2 {
        return Err(IngestError::TooFewAxes(columns.len()));
    }
    if columns[0].is_empty() {
        return Err(IngestError::EmptyInput);
    }

    let column_names = numeric_idx.iter().map(|&i| header[i].clone()).collect();
    Ok(RawTable {
        column_names,
        columns,
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_simple_table() {
        let t = parse_csv("a,b\n1,2\n3,4", &CsvOptions::default()).unwrap();
        assert_eq!(t.column_names, vec!["a", "b"]);
        assert_eq!(t.columns, vec![vec![1.0, 3.0], vec![2.0, 4.0]]);
        assert_eq!(t.labels, None);
    }

    #[test]
    fn extracts_label_column() {
        let opts = CsvOptions {
            label_column: Some("cl".into()),
            ..Default::default()
        };
        let t = parse_csv("a,b,cl\n1,2,0\n3,4,1", &opts).unwrap();
        assert_eq!(t.axes(), 2);
        assert_eq!(t.labels, Some(vec![0, 1]));
    }

    #[test]
    fn label_column_in_the_middle() {
        let opts = CsvOptions {
            label_column: Some("cl".into()),
            ..Default::default()
        };
        let t = parse_csv("a,cl,b\n1,5,2\n", &opts).unwrap();
        assert_eq!(t.column_names, vec!["a", "b"]);
        assert_eq!(t.columns, vec![vec![1.0], vec![2.0]]);
    }

    #[test]
    fn rejects_non_numeric() {
        let err = parse_csv("a,b\n1,x", &CsvOptions::default()).unwrap_err();
        assert!(matches!(err, IngestError::NonNumericCell { ref value, .. } if value == "x"));
    }

    #[test]
    fn rejects_nan_and_infinity() {
        for bad in ["NaN", "inf", "-inf", ""] {
            let text = format!("a,b\n1,{bad}");
            assert!(matches!(
                parse_csv(&text, &CsvOptions::default()),
                Err(IngestError::NonNumericCell { .. })
            ));
        }
    }

    #[test]
    fn rejects_ragged_rows() {
        let err = parse_csv("a,b\n1,2\n3", &CsvOptions::default()).unwrap_err();
        assert_eq!(
            err,
            IngestError::MalformedRow {
                line: 3,
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn rejects_too_few_axes() {
        assert_eq!(
            parse_csv("a\n1\n2", &CsvOptions::default()).unwrap_err(),
            IngestError::TooFewAxes(1)
        );
        let opts = CsvOptions {
            label_column: Some("cl".into()),
            ..Default::default()
        };
        assert_eq!(
            parse_csv("a,cl\n1,0", &opts).unwrap_err(),
            IngestError::TooFewAxes(1)
        );
    }

    #[test]
    fn rejects_empty() {
        assert_eq!(
            parse_csv("", &CsvOptions::default()).unwrap_err(),
            IngestError::EmptyInput
        );
        assert_eq!(
            parse_csv("a,b\n", &CsvOptions::default()).unwrap_err(),
            IngestError::EmptyInput
        );
    }

    #[test]
    fn other_delimiters_and_whitespace() {
        let opts = CsvOptions {
            delimiter: b';',
            label_column: None,
        };
        let t = parse_csv("x ; y\n 1.5 ; -2e3 \n", &opts).unwrap();
        assert_eq!(t.column_names, vec!["x", "y"]);
        assert_eq!(t.columns, vec![vec![1.5], vec![-2000.0]]);
    }

    #[test]
    fn missing_or_bad_label_column() {
        let opts = CsvOptions {
            label_column: Some("cl".into()),
            ..Default::default()
        };
        assert_eq!(
            parse_csv("a,b\n1,2", &opts).unwrap_err(),
            IngestError::MissingLabelColumn("cl".into())
        );
        assert!(matches!(
            parse_csv("a,b,cl\n1,2,0.5", &opts),
            Err(IngestError::InvalidLabel { .. })
        ));
    }
}
