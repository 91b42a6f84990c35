use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::CliError;

/// Residual degrees of freedom, or the large-sample limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MValue {
    Finite(u64),
    Inf,
}

impl fmt::Display for MValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MValue::Finite(m) => write!(f, "{m}"),
            MValue::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for MValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            MValue::Finite(m) => s.serialize_u64(*m),
            MValue::Inf => s.serialize_str("inf"),
        }
    }
}

pub fn parse_m_list(text: &str) -> Result<Vec<MValue>, CliError> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim) {
        if part.eq_ignore_ascii_case("inf") {
            out.push(MValue::Inf);
            continue;
        }
        match part.parse::<u64>() {
            Ok(m) if m >= 1 => out.push(MValue::Finite(m)),
            _ => return Err(CliError::invalid(format!("bad m value '{part}' (expected a positive integer or inf)"))),
        }
    }
    if out.is_empty() {
        return Err(CliError::invalid("empty m list"));
    }
    Ok(out)
}

/// Parse `lo:step:hi` into an inclusive grid, rounded to 12 decimals so
/// values print cleanly.
pub fn parse_rho_grid(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let nums: Vec<f64> = match parts.as_slice() {
        [a, b, c] => [a, b, c]
            .iter()
            .map(|s| s.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::invalid(format!("bad rho grid '{text}' (expected lo:step:hi)")))?,
        _ => return Err(CliError::invalid(format!("bad rho grid '{text}' (expected lo:step:hi)"))),
    };
    let (lo, step, hi) = (nums[0], nums[1], nums[2]);
    if !(step > 0.0) || !lo.is_finite() || !hi.is_finite() || lo > hi {
        return Err(CliError::invalid(format!("rho grid '{text}' is empty")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..count)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect();
    for &r in &grid {
        check_rho(r)?;
    }
    Ok(grid)
}

pub fn check_rho(rho: f64) -> Result<(), CliError> {
    if !(0.0..=1.0).contains(&rho) {
        return Err(CliError::invalid(format!(
            "rho must lie in [0, 1] (coverage is even in rho), got {rho}"
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn m_list() {
        assert_eq!(
            parse_m_list("5, 20,inf").unwrap(),
            vec![MValue::Finite(5), MValue::Finite(20), MValue::Inf]
        );
        assert!(parse_m_list("0").is_err());
        assert!(parse_m_list("5,x").is_err());
    }

    #[test]
    fn rho_grid() {
        let g = parse_rho_grid("0:0.05:0.95").unwrap();
        assert_eq!(g.len(), 20);
        assert_eq!(g[6], 0.3);
        assert_eq!(*g.last().unwrap(), 0.95);
        assert_eq!(parse_rho_grid("0.5:0.1:0.5").unwrap(), vec![0.5]);
        assert!(parse_rho_grid("0.9:0.1:0.1").is_err());
        assert!(parse_rho_grid("0:0:1").is_err());
        assert!(parse_rho_grid("-0.5:0.1:0").is_err());
        assert!(parse_rho_grid("0:1").is_err());
    }
}
