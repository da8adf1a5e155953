//! Plain numeric tables and their CSV form.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::error::{CliError, Result};

/// A header plus rows of optional numbers; `None` is written as an empty cell.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self { header: header.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Option<f64>>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.map(|v| format!("{v:.14e}")).unwrap_or_default()))
                .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
    }

    /// Writes to `path`, or to stdout when `path` is `None`.
    pub fn write_to(&self, path: Option<&Path>) -> Result<()> {
        let csv = self.to_csv();
        match path {
            Some(p) => fs::write(p, csv).map_err(|source| CliError::Io { path: p.to_path_buf(), source }),
            None => io::stdout()
                .lock()
                .write_all(csv.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(["x", "y"]);
        t.push(vec![Some(0.5), None]);
        t.push(vec![Some(-1.0), Some(1.0 / 3.0)]);
        assert_eq!(t.to_csv(), "x,y\n5.00000000000000e-1,\n-1.00000000000000e0,3.33333333333333e-1\n");
        assert_eq!(t.column("y").unwrap(), vec![None, Some(1.0 / 3.0)]);
        assert!(t.column("z").is_none());
    }
}
