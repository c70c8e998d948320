//! CSV emission: RFC-4180 quoting, CRLF records, a header row and floats
//! written with 17 significant digits so that parsing them back recovers
//! every bit.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use thiserror::Error;

/// One value of a CSV record.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    /// Not applicable for this row.
    Empty,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    /// `Empty` for `None`.
    pub fn opt_float(v: Option<f64>) -> Cell {
        v.map_or(Cell::Empty, Cell::Float)
    }

    pub fn render(&self) -> String {
        match self {
            // one digit before the point and 16 after: 17 significant digits
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }
}

/// A header plus rows, already in emission order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }
}

#[derive(Debug, Error)]
pub enum CsvError {
    #[error("row {row} has {got} cells but the header has {expected}")]
    Schema { row: usize, expected: usize, got: usize },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

/// Writes `table` to `out`.
pub fn write_csv<W: Write>(table: &Table, out: W) -> Result<(), CsvError> {
    if let Some((row, cells)) = table
        .rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != table.header.len())
    {
        return Err(CsvError::Schema {
            row,
            expected: table.header.len(),
            got: cells.len(),
        });
    }
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out);
    writer.write_record(&table.header)?;
    for row in &table.rows {
        writer.write_record(row.iter().map(Cell::render))?;
    }
    writer.flush()?;
    Ok(())
}

/// Writes `table` to the file at `path`, replacing it.
pub fn emit_csv(table: &Table, path: &Path) -> Result<(), CsvError> {
    let mut file = BufWriter::new(File::create(path)?);
    write_csv(table, &mut file)?;
    file.flush()?;
    Ok(())
}
