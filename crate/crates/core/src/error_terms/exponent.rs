//! Empirical growth exponents from dyadic block maxima.

use serde::Serialize;

use crate::divisor::{main_term, DivisorTable};
use crate::error::{invalid, Result};

/// Running maxima of `|value|` over blocks `[2^j, 2^{j+1})`.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct DyadicMaxima {
    blocks: Vec<(i32, f64)>,
}

impl DyadicMaxima {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a sample; `t` must be at least 1.
    pub fn push(&mut self, t: f64, value: f64) {
        debug_assert!(t >= 1.0);
        let j = t.log2().floor() as i32;
        let v = value.abs();
        match self.blocks.binary_search_by_key(&j, |b| b.0) {
            Ok(i) => self.blocks[i].1 = self.blocks[i].1.max(v),
            Err(i) => self.blocks.insert(i, (j, v)),
        }
    }

    /// `(block midpoint 1.5·2^j, max |value|)` per block.
    pub fn blocks(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.blocks.iter().map(|&(j, m)| (1.5 * 2f64.powi(j), m))
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Least-squares slope of `log max` against `log midpoint`.
    pub fn slope(&self) -> Result<f64> {
        let pts: Vec<(f64, f64)> = self.blocks().filter(|b| b.1 > 0.0).map(|(t, m)| (t.ln(), m.ln())).collect();
        if pts.len() < MIN_BLOCKS {
            return Err(invalid!("need at least {MIN_BLOCKS} dyadic blocks, have {}", pts.len()));
        }
        Ok(least_squares_slope(&pts))
    }
}

pub const MIN_BLOCKS: usize = 8;

pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    sxy / sxx
}

/// Slope of `log(max |value|)` per dyadic block against `log(block midpoint)`.
pub fn empirical_exponent(samples: &[(f64, f64)]) -> Result<f64> {
    let mut m = DyadicMaxima::new();
    for &(t, v) in samples {
        if t < 1.0 {
            return Err(invalid!("samples must have t >= 1, got {t}"));
        }
        m.push(t, v);
    }
    m.slope()
}

/// Block maxima of `|Δ(x)|` for real `x` in `[1, limit]`.
///
/// `Δ` jumps up by `d(n)` at each integer and decreases in between, so the
/// extremes on `[n, n+1)` are attained at `n` and approached just below `n+1`.
pub fn delta_block_maxima(table: &DivisorTable) -> DyadicMaxima {
    let mut m = DyadicMaxima::new();
    let limit = table.limit();
    for n in 1..=limit {
        let s = table.prefix_sum(n) as f64;
        let x = n as f64;
        m.push(x, s - main_term(x).to_f64());
        if n < limit {
            let right = (n + 1) as f64;
            m.push(x, s - main_term(right).to_f64());
        }
    }
    m
}
