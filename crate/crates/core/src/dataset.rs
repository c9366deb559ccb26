//! Numeric datasets: ingestion, standardization and canonical serialization.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Input file formats accepted by [`load_dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Csv,
    Json,
}

impl InputFormat {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "csv" => Some(InputFormat::Csv),
            "json" => Some(InputFormat::Json),
            _ => None,
        }
    }
}

/// An N×d real matrix, rows are samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    n_rows: usize,
    n_cols: usize,
    /// Row-major values.
    values: Vec<f64>,
    pub column_names: Vec<String>,
    pub source: String,
    pub is_standardized: bool,
    /// Columns with zero spread, zeroed by [`standardize`].
    pub constant_columns: Vec<usize>,
}

impl Dataset {
    /// Builds a dataset from rows. Rows must be non-empty, rectangular and finite.
    pub fn from_rows(rows: Vec<Vec<f64>>, source: impl Into<String>) -> Result<Self> {
        if rows.is_empty() || rows[0].is_empty() {
            return Err(Error::EmptyDataset);
        }
        let n_cols = rows[0].len();
        let mut values = Vec::with_capacity(rows.len() * n_cols);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n_cols {
                return Err(Error::Parse {
                    row: r,
                    col: row.len().min(n_cols),
                    msg: format!("expected {} columns, found {}", n_cols, row.len()),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::Parse {
                        row: r,
                        col: c,
                        msg: "non-finite value".into(),
                    });
                }
            }
            values.extend_from_slice(row);
        }
        Ok(Self {
            n_rows: rows.len(),
            n_cols,
            values,
            column_names: (0..n_cols).map(|c| format!("x{c}")).collect(),
            source: source.into(),
            is_standardized: false,
            constant_columns: Vec::new(),
        })
    }

    pub fn from_flat(n_rows: usize, n_cols: usize, values: Vec<f64>, source: impl Into<String>) -> Result<Self> {
        if n_rows == 0 || n_cols == 0 {
            return Err(Error::EmptyDataset);
        }
        if values.len() != n_rows * n_cols {
            return Err(Error::Format(format!(
                "flat buffer of {} values does not match {}x{}",
                values.len(),
                n_rows,
                n_cols
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Parse {
                row: i / n_cols,
                col: i % n_cols,
                msg: "non-finite value".into(),
            });
        }
        Ok(Self {
            n_rows,
            n_cols,
            values,
            column_names: (0..n_cols).map(|c| format!("x{c}")).collect(),
            source: source.into(),
            is_standardized: false,
            constant_columns: Vec::new(),
        })
    }

    pub fn with_column_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n_cols {
            return Err(Error::Format(format!(
                "{} column names for {} columns",
                names.len(),
                self.n_cols
            )));
        }
        self.column_names = names;
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.n_cols)
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.n_cols + col]
    }

    pub fn column(&self, col: usize) -> Vec<f64> {
        self.rows().map(|r| r[col]).collect()
    }

    /// Keeps the rows at `indices`, in that order.
    pub fn select_rows(&self, indices: &[usize]) -> Dataset {
        let mut values = Vec::with_capacity(indices.len() * self.n_cols);
        for &i in indices {
            values.extend_from_slice(self.row(i));
        }
        Dataset {
            n_rows: indices.len(),
            values,
            ..self.clone()
        }
    }

    /// Canonical byte layout: row-major little-endian IEEE-754 binary64.
    pub fn to_le_bytes(&self) -> Vec<u8> {
        self.values.iter().flat_map(|v| v.to_le_bytes()).collect()
    }

    /// CSV with a header row; values use the shortest round-trip representation.
    pub fn to_csv_string(&self) -> String {
        let mut out = self.column_names.join(",");
        out.push('\n');
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// Reads a dataset from disk.
pub fn load_dataset(path: &Path, format: InputFormat, has_header: bool) -> Result<Dataset> {
    let text = fs::read_to_string(path)?;
    let mut ds = match format {
        InputFormat::Csv => parse_csv(&text, has_header)?,
        InputFormat::Json => parse_json(&text)?,
    };
    ds.source = path.display().to_string();
    Ok(ds)
}

/// Parses a rectangular numeric CSV table. Row indices in errors count data
/// rows from 0, excluding the header.
pub fn parse_csv(text: &str, has_header: bool) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(has_header)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());

    let names: Option<Vec<String>> = if has_header {
        let h = reader.headers().map_err(|e| Error::Format(e.to_string()))?;
        Some(h.iter().map(str::to_string).collect())
    } else {
        None
    };

    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (r, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Format(e.to_string()))?;
        if record.len() == 1 && record.get(0) == Some("") {
            continue;
        }
        let mut row = Vec::with_capacity(record.len());
        for (c, cell) in record.iter().enumerate() {
            let v: f64 = cell.parse().map_err(|_| Error::Parse {
                row: r,
                col: c,
                msg: format!("non-numeric cell {cell:?}"),
            })?;
            row.push(v);
        }
        if let Some(first) = rows.first() {
            if first.len() != row.len() {
                return Err(Error::Parse {
                    row: r,
                    col: row.len().min(first.len()),
                    msg: format!("ragged row: expected {} cells, found {}", first.len(), row.len()),
                });
            }
        }
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let ds = Dataset::from_rows(rows, "<csv>")?;
    match names {
        Some(n) if n.len() == ds.n_cols() => ds.with_column_names(n),
        Some(n) => Err(Error::Format(format!(
            "header has {} names but rows have {} cells",
            n.len(),
            ds.n_cols()
        ))),
        None => Ok(ds),
    }
}

#[derive(Deserialize)]
struct JsonTable {
    data: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    columns: Option<Vec<String>>,
}

/// Parses `{"data": [[...], ...], "columns": [...]}`.
pub fn parse_json(text: &str) -> Result<Dataset> {
    let table: JsonTable = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if table.data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let mut rows = Vec::with_capacity(table.data.len());
    for (r, raw) in table.data.iter().enumerate() {
        let mut row = Vec::with_capacity(raw.len());
        for (c, cell) in raw.iter().enumerate() {
            let v = cell.as_f64().ok_or_else(|| Error::Parse {
                row: r,
                col: c,
                msg: format!("non-numeric cell {cell}"),
            })?;
            row.push(v);
        }
        rows.push(row);
    }
    let ds = Dataset::from_rows(rows, "<json>")?;
    match table.columns {
        Some(names) => ds.with_column_names(names),
        None => Ok(ds),
    }
}

/// Column-wise z-scores using the N−1 sample standard deviation.
///
/// Constant columns are set to zero and listed in `constant_columns`.
pub fn standardize(d: &Dataset) -> Result<Dataset> {
    let n = d.n_rows();
    if n < 2 {
        return Err(Error::InsufficientSamples { required: 2, got: n });
    }
    let mut out = d.clone();
    out.constant_columns.clear();
    for c in 0..d.n_cols() {
        let col = d.column(c);
        // Rescale by the largest magnitude first so squares cannot overflow.
        let scale = col.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        let is_constant = scale == 0.0 || col.iter().all(|&v| v == col[0]);
        if is_constant {
            for r in 0..n {
                out.values[r * d.n_cols() + c] = 0.0;
            }
            out.constant_columns.push(c);
            continue;
        }
        let scaled: Vec<f64> = col.iter().map(|v| v / scale).collect();
        let mean = scaled.iter().sum::<f64>() / n as f64;
        let var = scaled.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let sd = var.sqrt();
        if !(sd > 0.0) || !sd.is_finite() {
            return Err(Error::Numerical(format!("column {c} has non-finite spread")));
        }
        for (r, v) in scaled.iter().enumerate() {
            out.values[r * d.n_cols() + c] = (v - mean) / sd;
        }
    }
    out.is_standardized = true;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_small_csv() {
        let d = parse_csv("1,2\n3,4\n5,6", false).unwrap();
        assert_eq!((d.n_rows(), d.n_cols()), (3, 2));
        assert_eq!(d.row(2), &[5.0, 6.0]);
        assert!(!d.is_standardized);
    }

    #[test]
    fn csv_header_names() {
        let d = parse_csv("a,b\n1,2\n", true).unwrap();
        assert_eq!(d.column_names, vec!["a", "b"]);
    }

    #[test]
    fn non_numeric_cell_reports_position() {
        let e = parse_csv("1,x", false).unwrap_err();
        assert!(matches!(e, Error::Parse { row: 0, col: 1, .. }), "{e:?}");
    }

    #[test]
    fn ragged_rows_rejected() {
        let e = parse_csv("1,2\n3\n", false).unwrap_err();
        assert!(matches!(e, Error::Parse { row: 1, .. }), "{e:?}");
    }

    #[test]
    fn empty_inputs() {
        assert_eq!(parse_csv("", false).unwrap_err(), Error::EmptyDataset);
        assert_eq!(parse_json(r#"{"data": []}"#).unwrap_err(), Error::EmptyDataset);
    }

    #[test]
    fn json_table() {
        let d = parse_json(r#"{"data": [[1, 2.5], [3, 4]], "columns": ["p", "q"]}"#).unwrap();
        assert_eq!(d.get(0, 1), 2.5);
        assert_eq!(d.column_names, vec!["p", "q"]);
        assert!(matches!(
            parse_json(r#"{"data": [[1, "a"]]}"#).unwrap_err(),
            Error::Parse { row: 0, col: 1, .. }
        ));
    }

    #[test]
    fn two_point_zscore() {
        let d = Dataset::from_rows(vec![vec![0.0], vec![2.0]], "t").unwrap();
        let s = standardize(&d).unwrap();
        // sample sd of [0,2] is sqrt(2)
        let expected = 1.0 / 2f64.sqrt();
        assert!((s.get(0, 0) + expected).abs() < 1e-15);
        assert!((s.get(1, 0) - expected).abs() < 1e-15);
    }

    #[test]
    fn constant_column_zeroed_and_flagged() {
        let d = Dataset::from_rows(vec![vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 4.0]], "t").unwrap();
        let s = standardize(&d).unwrap();
        assert_eq!(s.column(0), vec![0.0, 0.0, 0.0]);
        assert_eq!(s.constant_columns, vec![0]);
    }

    #[test]
    fn standardize_needs_two_rows() {
        let d = Dataset::from_rows(vec![vec![1.0]], "t").unwrap();
        assert!(matches!(standardize(&d), Err(Error::InsufficientSamples { .. })));
    }

    #[test]
    fn standardized_moments() {
        let d = Dataset::from_rows((0..50).map(|i| vec![i as f64 * 3.7 + 1e6, (i * i) as f64]).collect(), "t").unwrap();
        let s = standardize(&d).unwrap();
        for c in 0..2 {
            let col = s.column(c);
            let m = col.iter().sum::<f64>() / 50.0;
            let sd = (col.iter().map(|v| (v - m).powi(2)).sum::<f64>() / 49.0).sqrt();
            assert!(m.abs() < 1e-9);
            assert!((sd - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn standardize_survives_huge_magnitudes() {
        let d = Dataset::from_rows(vec![vec![1e308], vec![-1e308], vec![0.0]], "t").unwrap();
        let s = standardize(&d).unwrap();
        assert!(s.values().iter().all(|v| v.is_finite()));
    }
}
