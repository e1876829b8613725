//! Columnar result tables and their CSV form.
//!
//! A table is a set of equal-length real-valued columns plus ordered
//! metadata. The CSV form carries the metadata as a leading block of
//! `# key = value` lines, then a header row, then one row per sweep point.
//! Values print in shortest round-trip decimal form, so reading a file
//! back reproduces every bit.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultTable {
    pub columns: Vec<Column>,
    pub metadata: Vec<(String, String)>,
}

impl ResultTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn push_column(&mut self, name: impl Into<String>, values: Vec<f64>) -> Result<()> {
        if let Some(first) = self.columns.first() {
            if first.values.len() != values.len() {
                return Err(Error::InvalidInput(format!(
                    "column length {} does not match table length {}",
                    values.len(),
                    first.values.len()
                )));
            }
        }
        self.columns.push(Column {
            name: name.into(),
            values,
        });
        Ok(())
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn to_csv_string(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let header: Vec<&str> = self.columns.iter().map(|c| c.name.as_str()).collect();
        let _ = writeln!(out, "{}", header.join(","));
        for row in 0..self.n_rows() {
            let mut first = true;
            for col in &self.columns {
                if !first {
                    out.push(',');
                }
                let _ = write!(out, "{}", col.values[row]);
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn write_csv(&self, path: &Path) -> Result<()> {
        if let Some(parent) = path.parent() {
            if !parent.as_os_str().is_empty() {
                fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            }
        }
        fs::write(path, self.to_csv_string()).map_err(|e| Error::io(path, e))
    }

    /// Parse the exact layout produced by [`ResultTable::to_csv_string`].
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut table = ResultTable::new();
        let mut lines = text.lines().peekable();
        while let Some(line) = lines.peek() {
            let Some(rest) = line.strip_prefix('#') else {
                break;
            };
            let (k, v) = rest
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("bad metadata line `{line}`")))?;
            table.push_meta(k.trim(), v.trim());
            lines.next();
        }
        let header = lines
            .next()
            .ok_or_else(|| Error::InvalidInput("missing CSV header".into()))?;
        let names: Vec<&str> = header.split(',').collect();
        let mut values: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != names.len() {
                return Err(Error::InvalidInput(format!(
                    "row has {} fields, header has {}",
                    fields.len(),
                    names.len()
                )));
            }
            for (col, field) in values.iter_mut().zip(&fields) {
                col.push(
                    field
                        .parse::<f64>()
                        .map_err(|_| Error::InvalidInput(format!("bad value `{field}`")))?,
                );
            }
        }
        for (name, vals) in names.into_iter().zip(values) {
            table.push_column(name, vals)?;
        }
        Ok(table)
    }

    pub fn read_csv(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_csv_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_writes_metadata_and_header_only() {
        let mut t = ResultTable::new();
        t.push_meta("experiment", "fig1_delta_k");
        t.push_meta("master_seed", 7);
        t.push_column("k", vec![]).unwrap();
        t.push_column("delta_mc", vec![]).unwrap();
        let csv = t.to_csv_string();
        assert_eq!(
            csv,
            "# experiment = fig1_delta_k\n# master_seed = 7\nk,delta_mc\n"
        );
    }

    #[test]
    fn round_trip_is_exact() {
        let mut t = ResultTable::new();
        t.push_meta("seed", 42);
        t.push_column("x", vec![0.1, 2.0 / 3.0, -1e-300, 6.02e23])
            .unwrap();
        t.push_column("y", vec![f64::NAN, 1.0, -0.0, 0.1 + 0.2])
            .unwrap();
        let csv = t.to_csv_string();
        let back = ResultTable::from_csv_str(&csv).unwrap();
        assert_eq!(back.metadata, t.metadata);
        for (a, b) in t.columns.iter().zip(&back.columns) {
            assert_eq!(a.name, b.name);
            for (x, y) in a.values.iter().zip(&b.values) {
                assert_eq!(x.to_bits(), y.to_bits(), "{x} vs {y}");
            }
        }
    }

    #[test]
    fn mismatched_column_lengths_rejected() {
        let mut t = ResultTable::new();
        t.push_column("a", vec![1.0, 2.0]).unwrap();
        assert!(t.push_column("b", vec![1.0]).is_err());
    }

    #[test]
    fn write_and_read_file() {
        let dir = std::env::temp_dir().join("matchmarket_table_test");
        let path = dir.join("t.csv");
        let mut t = ResultTable::new();
        t.push_meta("k", "v");
        t.push_column("a", vec![1.5, 2.5]).unwrap();
        t.write_csv(&path).unwrap();
        let back = ResultTable::read_csv(&path).unwrap();
        assert_eq!(t, back);
        std::fs::remove_dir_all(&dir).ok();
    }
}
