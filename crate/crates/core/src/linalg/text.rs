//! Plain-text matrix format: one row per line, whitespace-separated entries,
//! `#` starts a comment that runs to the end of the line.

use super::{SquareMatrix, Vector};
use crate::error::{Error, Result};

fn numeric_lines(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let row = content
            .split_whitespace()
            .map(|tok| {
                tok.parse::<f64>().map_err(|_| {
                    Error::Parse(format!("line {}: invalid number {tok:?}", lineno + 1))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

pub fn parse_matrix_text(text: &str) -> Result<SquareMatrix> {
    let rows = numeric_lines(text)?;
    if rows.is_empty() {
        return Err(Error::Parse("matrix has no rows".into()));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != rows.len()) {
        return Err(Error::Parse(format!(
            "row {} has {} entries, expected {} for a square matrix",
            i + 1,
            row.len(),
            rows.len()
        )));
    }
    SquareMatrix::from_rows(&rows)
}

/// Entries may be spread over any number of lines.
pub fn parse_vector_text(text: &str) -> Result<Vector> {
    Vector::new(numeric_lines(text)?.into_iter().flatten().collect())
}

pub fn format_matrix_text(m: &SquareMatrix) -> String {
    let mut out = String::new();
    for row in m.rows() {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}
