//! `E*(t) = E(t) - 2πΔ*(t/2π)` and scans of it on a uniform grid.

use serde::Serialize;
use std::f64::consts::PI;

use super::mean_square::MeanSquare;
use crate::divisor::{delta_star, sieve_divisors, DivisorTable};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorTermSample {
    pub t: f64,
    #[serde(rename = "E")]
    pub e: f64,
    /// `2πΔ*(t/2π)`
    pub delta_star_scaled: f64,
    #[serde(rename = "E_star")]
    pub e_star: f64,
}

impl ErrorTermSample {
    pub fn new(t: f64, e: f64, delta_star_scaled: f64) -> Self {
        Self { t, e, delta_star_scaled, e_star: e - delta_star_scaled }
    }
}

/// Divisor-table size needed for `Δ*(t/2π)` with `t <= t_max`.
pub fn table_limit_for(t_max: f64) -> u64 {
    (4.0 * t_max / (2.0 * PI)).floor() as u64 + 1
}

/// `E*(T)` from a cached mean-square integral and a divisor table.
pub fn e_star(table: &DivisorTable, mean_square: &mut MeanSquare, t: f64) -> Result<ErrorTermSample> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid!("E*(t) needs t >= 0, got {t}"));
    }
    let scaled = 2.0 * PI * delta_star(table, t / (2.0 * PI))?;
    Ok(ErrorTermSample::new(t, mean_square.error_term(t), scaled))
}

/// Samples `E*` at `t = 0, step, 2·step, …, <= t_max`.
pub fn e_star_scan(t_max: f64, step: f64) -> Result<Vec<ErrorTermSample>> {
    if !(t_max > 0.0 && step > 0.0) {
        return Err(invalid!("scan range and step must be positive"));
    }
    let table = sieve_divisors(table_limit_for(t_max))?;
    let mut ms = MeanSquare::for_range(step, t_max)?;
    ms.extend_to(t_max);
    let count = (t_max / step + 1e-9).floor() as usize;
    (0..=count)
        .map(|i| {
            let t = i as f64 * step;
            let scaled = 2.0 * PI * delta_star(&table, t / (2.0 * PI))?;
            Ok(ErrorTermSample::new(t, ms.error_term_at_node(i), scaled))
        })
        .collect()
}
