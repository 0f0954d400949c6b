//! Text and JSON formats for lists of stochastic matrices.
//!
//! Text: one row per line with whitespace-separated `p/q` entries; matrices
//! are separated by blank lines and `#` starts a comment. JSON: an array of
//! matrices, each an array of rows of fraction strings.

use super::matrix::StochasticMatrix;
use super::rational::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

pub fn parse_matrices(text: &str) -> Result<Vec<StochasticMatrix>> {
    let mut out = Vec::new();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut start_line = 0;
    let mut flush = |rows: &mut Vec<Vec<Rational>>, line: usize| -> Result<()> {
        if !rows.is_empty() {
            let m = StochasticMatrix::new(std::mem::take(rows)).map_err(|e| match e {
                Error::NotStochastic(msg) => {
                    Error::NotStochastic(format!("matrix {} (line {line}): {msg}", out.len()))
                }
                other => Error::Parse(format!("matrix {} (line {line}): {other}", out.len())),
            })?;
            out.push(m);
        }
        Ok(())
    };
    for (no, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            flush(&mut rows, start_line)?;
            continue;
        }
        if rows.is_empty() {
            start_line = no + 1;
        }
        let row = line
            .split_whitespace()
            .map(|tok| parse_rational(tok).map_err(|e| Error::Parse(format!("line {}: {e}", no + 1))))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    flush(&mut rows, start_line)?;
    Ok(out)
}

pub fn format_matrices(ms: &[StochasticMatrix]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join("\n")
}

pub fn matrices_to_json(ms: &[StochasticMatrix]) -> serde_json::Value {
    serde_json::Value::Array(ms.iter().map(matrix_to_json).collect())
}

pub fn matrix_to_json(m: &StochasticMatrix) -> serde_json::Value {
    m.rows()
        .iter()
        .map(|r| r.iter().map(format_rational).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into()
}

pub fn matrices_from_json(value: &serde_json::Value) -> Result<Vec<StochasticMatrix>> {
    let list: Vec<Vec<Vec<String>>> =
        serde_json::from_value(value.clone()).map_err(|e| Error::Parse(format!("matrix JSON: {e}")))?;
    list.into_iter()
        .enumerate()
        .map(|(k, m)| {
            let rows = m
                .iter()
                .map(|r| r.iter().map(|x| parse_rational(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            StochasticMatrix::new(rows).map_err(|e| match e {
                Error::NotStochastic(msg) => Error::NotStochastic(format!("matrix {k}: {msg}")),
                other => Error::Parse(format!("matrix {k}: {other}")),
            })
        })
        .collect()
}
