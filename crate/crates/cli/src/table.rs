//! CSV ingestion: a header row of column names, numeric cells, and the
//! literal `NA` for missing values.

use std::io::Read;
use std::path::Path;

use dcorr::Sample;

use crate::error::{CliError, Result};

pub const MISSING: &str = "NA";

/// Column-oriented numeric table. `None` cells were `NA` in the file.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    source: String,
    names: Vec<String>,
    columns: Vec<Vec<Option<f64>>>,
}

pub fn load_table(path: &Path) -> Result<Table> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::io(format!("cannot open {}", path.display()), e))?;
    parse_table(file, &path.display().to_string())
}

pub fn parse_table<R: Read>(reader: R, source: &str) -> Result<Table> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| csv_error(source, e))?,
        None => return Err(CliError::Data(format!("{source}: missing header row"))),
    };
    let names: Vec<String> = header.iter().map(str::to_string).collect();
    for (i, name) in names.iter().enumerate() {
        if name.is_empty() {
            return Err(CliError::Data(format!(
                "{source}: line 1: column {} has an empty name",
                i + 1
            )));
        }
        if names[..i].contains(name) {
            return Err(CliError::Data(format!(
                "{source}: line 1: duplicate column '{name}'"
            )));
        }
    }
    let mut columns = vec![Vec::new(); names.len()];
    for rec in records {
        let rec = rec.map_err(|e| csv_error(source, e))?;
        let line = rec.position().map_or(0, |p| p.line());
        for ((cell, name), column) in rec.iter().zip(&names).zip(columns.iter_mut()) {
            let value = if cell == MISSING {
                None
            } else {
                let v: f64 = cell.parse().map_err(|_| {
                    CliError::Data(format!(
                        "{source}: line {line}, column '{name}': cannot parse '{cell}' as a number"
                    ))
                })?;
                if !v.is_finite() {
                    return Err(CliError::Data(format!(
                        "{source}: line {line}, column '{name}': value '{cell}' is not finite"
                    )));
                }
                Some(v)
            };
            column.push(value);
        }
    }
    Ok(Table {
        source: source.to_string(),
        names,
        columns,
    })
}

fn csv_error(source: &str, err: csv::Error) -> CliError {
    match err.kind() {
        csv::ErrorKind::UnequalLengths {
            pos,
            expected_len,
            len,
        } => CliError::Data(format!(
            "{source}: line {}: expected {expected_len} fields, found {len}",
            pos.as_ref().map_or(0, |p| p.line())
        )),
        _ => CliError::Data(format!("{source}: {err}")),
    }
}

impl Table {
    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn column(&self, name: &str) -> Option<&[Option<f64>]> {
        self.index_of(name).map(|i| self.columns[i].as_slice())
    }

    pub fn column_at(&self, i: usize) -> &[Option<f64>] {
        &self.columns[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Resolves a comma-separated list of column names.
    pub fn select(&self, selector: &str) -> Result<Vec<usize>> {
        let cols: Vec<usize> = selector
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| {
                self.index_of(name).ok_or_else(|| {
                    CliError::Usage(format!("{}: no column named '{name}'", self.source))
                })
            })
            .collect::<Result<_>>()?;
        if cols.is_empty() {
            return Err(CliError::Usage(format!(
                "empty column selection '{selector}'"
            )));
        }
        Ok(cols)
    }

    /// Builds a sample from the given columns. Missing cells are an error.
    pub fn sample(&self, cols: &[usize]) -> Result<Sample> {
        let n = self.n_rows();
        let mut data = Vec::with_capacity(n * cols.len());
        for row in 0..n {
            for &c in cols {
                match self.columns[c][row] {
                    Some(v) => data.push(v),
                    None => {
                        return Err(CliError::Data(format!(
                            "{}: line {}, column '{}': missing value not allowed here",
                            self.source,
                            row + 2,
                            self.names[c]
                        )))
                    }
                }
            }
        }
        Sample::new(data, n, cols.len()).map_err(|e| CliError::from_core(&self.source, e))
    }
}
