//! Plain-text matrix format: a `rows cols` header, then row-major `re im`
//! pairs separated by whitespace.

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::path::Path;

pub fn format_matrix(m: &ComplexMatrix) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} {}", m.rows(), m.cols());
    for i in 0..m.rows() {
        let line: Vec<String> = m.row(i).iter().map(|z| format!("{:.16e} {:.16e}", z.re, z.im)).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}

pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let mut tokens = text.split_whitespace();
    let mut dim = |what: &str| -> Result<usize> {
        tokens
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {what} in matrix header")))?
            .parse::<usize>()
            .map_err(|e| Error::Parse(format!("bad {what} in matrix header: {e}")))
    };
    let rows = dim("row count")?;
    let cols = dim("column count")?;
    let values: Vec<f64> = tokens
        .map(|t| t.parse::<f64>().map_err(|e| Error::Parse(format!("bad matrix entry {t:?}: {e}"))))
        .collect::<Result<_>>()?;
    if values.len() != 2 * rows * cols {
        return Err(Error::Parse(format!(
            "expected {} numbers for a {rows}x{cols} complex matrix, found {}",
            2 * rows * cols,
            values.len()
        )));
    }
    let data = values.chunks(2).map(|p| C64::new(p[0], p[1])).collect();
    ComplexMatrix::new(rows, cols, data).map_err(|e| Error::Parse(e.to_string()))
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix) -> Result<()> {
    std::fs::write(path, format_matrix(m))?;
    Ok(())
}

pub fn read_matrix(path: &Path) -> Result<ComplexMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}
