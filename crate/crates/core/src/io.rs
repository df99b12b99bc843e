//! Matrix file formats shared with the command-line front end.
//!
//! CSV: n lines of n comma-separated decimal reals (real matrices only).
//! JSON: `{ "n": int, "entries": [[...]] }` where an entry is a number or a
//! two-element `[re, im]` array. Row uniform matrices serialize as
//! `{ "n": int, "support": [[i, j], ...], "row_value": [...] }` with
//! 1-based support indices.

use num_complex::Complex64;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMatrix, NonnegMatrix, RowUniformMatrix};

fn parse_err(message: impl Into<String>) -> Error {
    Error::Parse { message: message.into() }
}

pub fn parse_nonneg_csv(text: &str) -> Result<NonnegMatrix> {
    let rows: Vec<Vec<f64>> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            line.split(',')
                .map(|tok| {
                    tok.trim()
                        .parse::<f64>()
                        .map_err(|e| parse_err(format!("bad number {tok:?}: {e}")))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() {
        return Err(Error::EmptyMatrix);
    }
    NonnegMatrix::from_rows(&rows)
}

pub fn matrix_to_csv(a: &NonnegMatrix) -> String {
    a.rows()
        .iter()
        .map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn value_as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| parse_err(format!("{what} must be a nonnegative integer")))
}

fn value_as_f64(v: &Value, what: &str) -> Result<f64> {
    v.as_f64().ok_or_else(|| parse_err(format!("{what} must be a number")))
}

fn entry_as_complex(v: &Value) -> Result<Complex64> {
    match v {
        Value::Number(_) => Ok(Complex64::new(value_as_f64(v, "entry")?, 0.0)),
        Value::Array(pair) if pair.len() == 2 => Ok(Complex64::new(
            value_as_f64(&pair[0], "real part")?,
            value_as_f64(&pair[1], "imaginary part")?,
        )),
        _ => Err(parse_err("entry must be a number or a [re, im] pair")),
    }
}

fn entries_of(v: &Value) -> Result<(usize, &Vec<Value>)> {
    let obj = v.as_object().ok_or_else(|| parse_err("expected a JSON object"))?;
    let n = value_as_usize(obj.get("n").ok_or_else(|| parse_err("missing field n"))?, "n")?;
    let entries = obj
        .get("entries")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing entries array"))?;
    if entries.len() != n {
        return Err(parse_err(format!("expected {n} rows, got {}", entries.len())));
    }
    Ok((n, entries))
}

pub fn value_to_nonneg(v: &Value) -> Result<NonnegMatrix> {
    let (n, entries) = entries_of(v)?;
    let mut data = Vec::with_capacity(n * n);
    for row in entries {
        let row = row.as_array().ok_or_else(|| parse_err("row must be an array"))?;
        if row.len() != n {
            return Err(parse_err(format!("expected {n} columns, got {}", row.len())));
        }
        for e in row {
            data.push(value_as_f64(e, "entry")?);
        }
    }
    NonnegMatrix::new(n, data)
}

pub fn value_to_complex(v: &Value) -> Result<ComplexMatrix> {
    let (n, entries) = entries_of(v)?;
    let mut data = Vec::with_capacity(n * n);
    for row in entries {
        let row = row.as_array().ok_or_else(|| parse_err("row must be an array"))?;
        if row.len() != n {
            return Err(parse_err(format!("expected {n} columns, got {}", row.len())));
        }
        for e in row {
            data.push(entry_as_complex(e)?);
        }
    }
    ComplexMatrix::new(n, data)
}

pub fn value_to_row_uniform(v: &Value) -> Result<RowUniformMatrix> {
    let obj = v.as_object().ok_or_else(|| parse_err("expected a JSON object"))?;
    let n = value_as_usize(obj.get("n").ok_or_else(|| parse_err("missing field n"))?, "n")?;
    let support = obj
        .get("support")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing support array"))?;
    let row_value = obj
        .get("row_value")
        .and_then(Value::as_array)
        .ok_or_else(|| parse_err("missing row_value array"))?;
    let mut mask = vec![false; n * n];
    for pair in support {
        let pair = pair.as_array().ok_or_else(|| parse_err("support entry must be [i, j]"))?;
        if pair.len() != 2 {
            return Err(parse_err("support entry must be [i, j]"));
        }
        let i = value_as_usize(&pair[0], "support row")?;
        let j = value_as_usize(&pair[1], "support column")?;
        if !(1..=n).contains(&i) || !(1..=n).contains(&j) {
            return Err(Error::IndexOutOfBounds { index: i.max(j), n });
        }
        mask[(i - 1) * n + (j - 1)] = true;
    }
    let values: Vec<f64> = row_value
        .iter()
        .map(|v| value_as_f64(v, "row value"))
        .collect::<Result<_>>()?;
    if values.len() != n {
        return Err(parse_err(format!("expected {n} row values, got {}", values.len())));
    }
    RowUniformMatrix::new(n, mask, values)
}

pub fn nonneg_to_value(a: &NonnegMatrix) -> Value {
    serde_json::json!({ "n": a.n(), "entries": a.rows() })
}

pub fn complex_to_value(a: &ComplexMatrix) -> Value {
    let rows: Vec<Vec<Value>> = a
        .rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|z| serde_json::json!([z.re, z.im]))
                .collect()
        })
        .collect();
    serde_json::json!({ "n": a.n(), "entries": rows })
}

pub fn row_uniform_to_value(b: &RowUniformMatrix) -> Value {
    let support: Vec<[usize; 2]> =
        b.support_edges().iter().map(|&(i, j)| [i + 1, j + 1]).collect();
    serde_json::json!({ "n": b.n(), "support": support, "row_value": b.row_values() })
}

/// What a matrix file turned out to contain.
#[derive(Debug, Clone)]
pub enum MatrixInput {
    Real(NonnegMatrix),
    Complex(ComplexMatrix),
    RowUniform(RowUniformMatrix),
}

/// Read a matrix file: `.csv` is a dense real matrix, `.json` is detected
/// by shape (a `support` field means row uniform, any `[re, im]` entry
/// means complex).
pub fn read_matrix_file(path: &std::path::Path) -> Result<MatrixInput> {
    let text = std::fs::read_to_string(path)?;
    if path.extension().and_then(|e| e.to_str()) == Some("csv") {
        return Ok(MatrixInput::Real(parse_nonneg_csv(&text)?));
    }
    let value: Value =
        serde_json::from_str(&text).map_err(|e| parse_err(format!("invalid JSON: {e}")))?;
    if value.get("support").is_some() {
        return Ok(MatrixInput::RowUniform(value_to_row_uniform(&value)?));
    }
    let has_complex = value
        .get("entries")
        .and_then(Value::as_array)
        .map(|rows| {
            rows.iter().any(|r| {
                r.as_array()
                    .map(|row| row.iter().any(Value::is_array))
                    .unwrap_or(false)
            })
        })
        .unwrap_or(false);
    if has_complex {
        Ok(MatrixInput::Complex(value_to_complex(&value)?))
    } else {
        Ok(MatrixInput::Real(value_to_nonneg(&value)?))
    }
}

impl MatrixInput {
    /// Coerce to a nonnegative real matrix.
    pub fn into_nonneg(self) -> Result<NonnegMatrix> {
        match self {
            MatrixInput::Real(a) => Ok(a),
            MatrixInput::RowUniform(b) => Ok(b.as_matrix()),
            MatrixInput::Complex(_) => Err(parse_err("expected a real matrix, got complex")),
        }
    }

    /// Coerce to a row uniform matrix (dense inputs are validated).
    pub fn into_row_uniform(self) -> Result<RowUniformMatrix> {
        match self {
            MatrixInput::RowUniform(b) => Ok(b),
            MatrixInput::Real(a) => RowUniformMatrix::from_dense(&a),
            MatrixInput::Complex(c) => RowUniformMatrix::from_dense(&c.modulus()),
        }
    }

    pub fn into_complex(self) -> Result<ComplexMatrix> {
        match self {
            MatrixInput::Complex(c) => Ok(c),
            MatrixInput::Real(a) => Ok(a.to_complex()),
            MatrixInput::RowUniform(b) => Ok(b.as_matrix().to_complex()),
        }
    }
}
