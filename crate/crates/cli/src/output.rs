//! Output assembly: every subcommand produces a JSON value and, where the
//! data is tabular, CSV rows; both render deterministically.

use std::fmt::Display;
use std::io::Write;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::Value;
use shapoform::matrix::{EntryString, LabeledMatrix, Mat};

use crate::CliError;

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Rendered {
    pub json: Value,
    /// CSV rows, absent for payloads with no tabular form.
    pub csv: Option<Vec<Vec<String>>>,
}

impl Rendered {
    pub fn json_only(json: Value) -> Self {
        Rendered { json, csv: None }
    }
}

pub fn emit(rendered: &Rendered, format: Format, output: Option<&Path>) -> Result<(), CliError> {
    let bytes = match format {
        Format::Json => {
            let mut text = serde_json::to_string_pretty(&rendered.json)?;
            text.push('\n');
            text.into_bytes()
        }
        Format::Csv => {
            let rows = rendered.csv.as_ref().ok_or_else(|| {
                CliError::Usage("this subcommand has no CSV form; use --format json".into())
            })?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            for row in rows {
                writer.write_record(row).map_err(io_of_csv)?;
            }
            writer.into_inner().map_err(|e| CliError::Io(e.into_error()))?
        }
    };
    match output {
        Some(path) => std::fs::write(path, bytes)?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(())
}

fn io_of_csv(e: csv::Error) -> CliError {
    CliError::Io(std::io::Error::other(e))
}

/// CSV rows for a labeled matrix: labels in the header row and column.
pub fn matrix_csv<L: Display, T: EntryString>(m: &LabeledMatrix<L, T>) -> Vec<Vec<String>> {
    let mut rows = Vec::with_capacity(m.mat.nrows() + 1);
    let mut header = vec![String::new()];
    header.extend(m.col_labels.iter().map(|l| l.to_string()));
    rows.push(header);
    for (i, label) in m.row_labels.iter().enumerate() {
        let mut row = vec![label.to_string()];
        row.extend((0..m.mat.ncols()).map(|j| m.mat[(i, j)].entry_string()));
        rows.push(row);
    }
    rows
}

/// An unlabeled integer matrix as decimal strings, for transform output.
pub fn plain_matrix_json(m: &Mat<BigInt>) -> Value {
    let rows: Vec<Vec<String>> = (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| m[(i, j)].to_string()).collect())
        .collect();
    serde_json::to_value(rows).expect("string matrix serializes")
}

pub fn join_factors(values: &[impl ToString]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}
