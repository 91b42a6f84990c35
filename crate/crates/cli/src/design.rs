//! Plain-text design files.
//!
//! ```text
//! n p q
//! x_11 ... x_1p        (n rows)
//! ...
//! a_1 ... a_p
//! beta_1 ... beta_p    (one or more rows; each is a grid point)
//! sigma
//! ```
//!
//! Blank lines and lines starting with `#` are skipped.

use nalgebra::{DMatrix, DVector};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct DesignFile {
    pub n: usize,
    pub p: usize,
    pub q: usize,
    pub x: DMatrix<f64>,
    pub a: DVector<f64>,
    pub betas: Vec<Vec<f64>>,
    pub sigma: f64,
}

fn numbers(line: &str, lineno: usize) -> Result<Vec<f64>, CliError> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<f64>()
                .map_err(|_| CliError::invalid(format!("design line {lineno}: '{t}' is not a number")))
        })
        .collect()
}

pub fn parse_design(text: &str) -> Result<DesignFile, CliError> {
    let rows: Vec<(usize, Vec<f64>)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| numbers(l, i + 1).map(|v| (i + 1, v)))
        .collect::<Result<_, _>>()?;
    let (_, header) = rows.first().ok_or_else(|| CliError::invalid("design file is empty"))?;
    let dims: Vec<usize> = header
        .iter()
        .filter(|v| v.fract() == 0.0 && **v >= 0.0)
        .map(|&v| v as usize)
        .collect();
    let (n, p, q) = match (header.len(), dims.as_slice()) {
        (3, &[n, p, q]) => (n, p, q),
        _ => return Err(CliError::invalid("design header must be 'n p q' with nonnegative integers")),
    };
    // header, n rows of X, a, at least one beta, sigma
    if rows.len() < n + 4 {
        return Err(CliError::invalid(format!(
            "design file has {} data lines, expected at least {}",
            rows.len(),
            n + 4
        )));
    }
    let width = |(lineno, row): &(usize, Vec<f64>), want: usize| -> Result<(), CliError> {
        if row.len() != want {
            return Err(CliError::invalid(format!(
                "design line {lineno}: expected {want} values, found {}",
                row.len()
            )));
        }
        Ok(())
    };
    for r in &rows[1..=n] {
        width(r, p)?;
    }
    let x = DMatrix::from_fn(n, p, |i, j| rows[1 + i].1[j]);
    width(&rows[n + 1], p)?;
    let a = DVector::from_column_slice(&rows[n + 1].1);
    let last = rows.len() - 1;
    let mut betas = Vec::new();
    for r in &rows[n + 2..last] {
        width(r, p)?;
        betas.push(r.1.clone());
    }
    width(&rows[last], 1)?;
    let sigma = rows[last].1[0];
    Ok(DesignFile { n, p, q, x, a, betas, sigma })
}
