//! Plain-text matrix and signal files.
//!
//! ```text
//! # rows=2 cols=3 field=complex
//! 1.0,0.5-0.25i,0
//! -2,0+1i,3.5e-3
//! ```
//!
//! The header is mandatory. Each following non-blank line holds one matrix
//! row of comma-separated cells. A cell is `RE` or `RE±IMi`, both parts
//! decimal floats (exponents allowed). `field=real` files must not contain
//! imaginary parts. Signals are single-column matrices. Indices are not
//! stored; row and column positions are zero-based everywhere else in the
//! crate.
//!
//! Numbers are written with Rust's shortest round-trip formatting, so
//! `write` followed by `read` reproduces the exact bits.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::dictionary::Dictionary;
use crate::error::{Error, Result};
use crate::signal::Signal;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_header(line: &str) -> Result<(usize, usize, Field)> {
    let body = line
        .trim()
        .strip_prefix('#')
        .ok_or_else(|| parse_err(1, "missing '# rows=M cols=N field=...' header"))?;
    let (mut rows, mut cols, mut field) = (None, None, None);
    for tok in body.split_whitespace() {
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| parse_err(1, format!("malformed header token '{tok}'")))?;
        match key {
            "rows" => rows = Some(value.parse::<usize>().map_err(|e| parse_err(1, e.to_string()))?),
            "cols" => cols = Some(value.parse::<usize>().map_err(|e| parse_err(1, e.to_string()))?),
            "field" => {
                field = Some(match value {
                    "real" => Field::Real,
                    "complex" => Field::Complex,
                    other => return Err(parse_err(1, format!("unknown field '{other}'"))),
                })
            }
            other => return Err(parse_err(1, format!("unknown header key '{other}'"))),
        }
    }
    match (rows, cols, field) {
        (Some(r), Some(c), Some(f)) if r > 0 && c > 0 => Ok((r, c, f)),
        (Some(_), Some(_), Some(_)) => Err(parse_err(1, "rows and cols must be positive")),
        _ => Err(parse_err(1, "header needs rows, cols and field")),
    }
}

/// Parses one cell: `RE`, `RE+IMi` or `RE-IMi`.
pub fn parse_cell(cell: &str) -> std::result::Result<Complex64, String> {
    let s = cell.trim();
    if s.is_empty() {
        return Err("empty cell".into());
    }
    let Some(body) = s.strip_suffix('i') else {
        let re = s.parse::<f64>().map_err(|e| format!("bad number '{s}': {e}"))?;
        return Ok(Complex64::new(re, 0.0));
    };
    // The imaginary sign is the last '+'/'-' not at the start and not part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| matches!(bytes[i], b'+' | b'-') && !matches!(bytes[i - 1], b'e' | b'E'))
        .ok_or_else(|| format!("cell '{s}' has no real part"))?;
    let re = body[..split].parse::<f64>().map_err(|e| format!("bad real part in '{s}': {e}"))?;
    let im = body[split..].parse::<f64>().map_err(|e| format!("bad imaginary part in '{s}': {e}"))?;
    Ok(Complex64::new(re, im))
}

pub fn format_cell(z: Complex64, field: Field) -> String {
    match field {
        Field::Real => format!("{:?}", z.re),
        Field::Complex => {
            let sign = if z.im.is_sign_negative() { '-' } else { '+' };
            format!("{:?}{}{:?}i", z.re, sign, z.im.abs())
        }
    }
}

/// Parses matrix file contents.
pub fn parse_matrix(text: &str) -> Result<DMatrix<Complex64>> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let (_, header) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let (rows, cols, field) = parse_header(header)?;
    let mut data = Vec::with_capacity(rows * cols);
    let mut count = 0;
    for (idx, line) in lines {
        let lineno = idx + 1;
        if line.trim_start().starts_with('#') {
            continue;
        }
        count += 1;
        if count > rows {
            return Err(parse_err(lineno, format!("more than {rows} rows")));
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != cols {
            return Err(parse_err(lineno, format!("expected {cols} cells, found {}", cells.len())));
        }
        for cell in cells {
            let z = parse_cell(cell).map_err(|m| parse_err(lineno, m))?;
            if field == Field::Real && z.im != 0.0 {
                return Err(parse_err(lineno, "imaginary part in a field=real file"));
            }
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(parse_err(lineno, "non-finite cell"));
            }
            data.push(z);
        }
    }
    if count != rows {
        return Err(parse_err(text.lines().count(), format!("expected {rows} rows, found {count}")));
    }
    Ok(DMatrix::from_row_iterator(rows, cols, data))
}

/// Formats a matrix; `field=real` is chosen when every imaginary part is zero.
pub fn format_matrix(m: &DMatrix<Complex64>) -> String {
    let field = if m.iter().all(|z| z.im == 0.0 && !z.im.is_sign_negative()) {
        Field::Real
    } else {
        Field::Complex
    };
    let mut out = format!(
        "# rows={} cols={} field={}\n",
        m.nrows(),
        m.ncols(),
        if field == Field::Real { "real" } else { "complex" }
    );
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if c > 0 {
                out.push(',');
            }
            let _ = write!(out, "{}", format_cell(m[(r, c)], field));
        }
        out.push('\n');
    }
    out
}

pub fn read_matrix(path: impl AsRef<Path>) -> Result<DMatrix<Complex64>> {
    parse_matrix(&std::fs::read_to_string(path)?)
}

pub fn write_matrix(path: impl AsRef<Path>, m: &DMatrix<Complex64>) -> Result<()> {
    std::fs::write(path, format_matrix(m))?;
    Ok(())
}

/// Reads a dictionary; columns must already be unit norm unless `normalize`.
pub fn read_dictionary(path: impl AsRef<Path>, normalize: bool) -> Result<Dictionary> {
    Dictionary::new(read_matrix(path)?, normalize)
}

pub fn write_dictionary(path: impl AsRef<Path>, d: &Dictionary) -> Result<()> {
    write_matrix(path, d.matrix())
}

pub fn parse_signal(text: &str) -> Result<Signal> {
    let m = parse_matrix(text)?;
    if m.ncols() != 1 {
        return Err(parse_err(1, format!("signal files need cols=1, found {}", m.ncols())));
    }
    Signal::new(m.iter().copied().collect())
}

pub fn format_signal(x: &Signal) -> String {
    format_matrix(&DMatrix::from_column_slice(x.dim(), 1, x.entries()))
}

pub fn read_signal(path: impl AsRef<Path>) -> Result<Signal> {
    parse_signal(&std::fs::read_to_string(path)?)
}

pub fn write_signal(path: impl AsRef<Path>, x: &Signal) -> Result<()> {
    std::fs::write(path, format_signal(x))?;
    Ok(())
}
