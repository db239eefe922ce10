//! The `.qmat` text format.
//!
//! ```text
//! # comment lines start with '#'
//! 3 4
//! i -k j 1
//! 2i j 1 k
//! -1 j k i
//! ```
//!
//! The first non-comment line holds `<rows> <cols>`; each following line holds
//! one row of literals separated by single spaces. The file must end with a
//! newline. Vectors are stored as `m 1` or `1 n` matrices.

use crate::error::{Error, Result};
use crate::quaternion_scalar::{format_decimal, format_quaternion, parse_quaternion};
use crate::QMatrix;

fn shift(err: Error, line: usize, offset: usize) -> Error {
    match err {
        Error::Parse {
            column, message, ..
        } => Error::Parse {
            line,
            column: column + offset,
            message,
        },
        other => other,
    }
}

fn parse_dimension(field: &str, line: usize, column: usize) -> Result<usize> {
    match field.parse::<usize>() {
        Ok(0) => Err(Error::parse(line, column, "dimensions must be positive")),
        Ok(v) if field.bytes().all(|b| b.is_ascii_digit()) => Ok(v),
        _ => Err(Error::parse(
            line,
            column,
            format!("invalid dimension '{field}'"),
        )),
    }
}

/// Splits on single spaces, returning each field with its 1-based column.
fn fields(text: &str, line: usize) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut column = 1;
    for field in text.split(' ') {
        if field.is_empty() {
            return Err(Error::parse(
                line,
                column,
                "fields must be separated by exactly one space",
            ));
        }
        out.push((column, field));
        column += field.len() + 1;
    }
    Ok(out)
}

pub fn parse_qmat(text: &str) -> Result<QMatrix> {
    if !text.ends_with('\n') {
        let line = text.lines().count().max(1);
        return Err(Error::parse(
            line,
            text.lines().last().map_or(0, str::len) + 1,
            "missing trailing newline",
        ));
    }
    let mut lines = text
        .split_terminator('\n')
        .enumerate()
        .map(|(n, l)| (n + 1, l.strip_suffix('\r').unwrap_or(l)))
        .filter(|(_, l)| !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::parse(1, 1, "missing '<rows> <cols>' header"))?;
    let dims = fields(header, header_line)?;
    if dims.len() != 2 {
        return Err(Error::parse(
            header_line,
            1,
            "header must be '<rows> <cols>'",
        ));
    }
    let rows = parse_dimension(dims[0].1, header_line, dims[0].0)?;
    let cols = parse_dimension(dims[1].1, header_line, dims[1].0)?;

    let mut entries = Vec::with_capacity(rows * cols);
    for r in 0..rows {
        let (line_no, line) = lines.next().ok_or_else(|| {
            Error::parse(header_line, 1, format!("expected {rows} rows, found {r}"))
        })?;
        let row = fields(line, line_no)?;
        if row.len() != cols {
            return Err(Error::parse(
                line_no,
                1,
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
        for (column, literal) in row {
            entries.push(parse_quaternion(literal).map_err(|e| shift(e, line_no, column - 1))?);
        }
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::parse(
            line_no,
            1,
            "unexpected content after the last row",
        ));
    }
    QMatrix::new(rows, cols, entries)
}

/// Canonical `.qmat` text, lowest-terms literals, ending with a newline.
pub fn write_qmat(m: &QMatrix) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.entries().chunks(m.cols()) {
        let literals: Vec<String> = row.iter().map(format_quaternion).collect();
        out.push_str(&literals.join(" "));
        out.push('\n');
    }
    out
}

/// Like [`write_qmat`] with a `#` comment line after every row giving decimal values.
pub fn write_qmat_with_decimals(m: &QMatrix, precision: usize) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for row in m.entries().chunks(m.cols()) {
        let literals: Vec<String> = row.iter().map(format_quaternion).collect();
        let decimals: Vec<String> = row.iter().map(|q| format_decimal(q, precision)).collect();
        out.push_str(&literals.join(" "));
        out.push_str("\n# ~ ");
        out.push_str(&decimals.join(" "));
        out.push('\n');
    }
    out
}
