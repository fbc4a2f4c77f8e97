//! Atkinson's explicit formula `E(T) = Σ₁(T) + Σ₂(T) + O(log² T)`.

use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use crate::divisor::DivisorTable;
use crate::error::{invalid, out_of_range, Result};
use crate::precise::CompensatedSum;

/// Lower cutoff constant: `N > A T`.
pub const ATKINSON_A: f64 = 0.5;
/// Upper cutoff constant: `N < A' T`.
pub const ATKINSON_A_PRIME: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AtkinsonEval {
    pub t: f64,
    pub n: f64,
    pub n_prime: f64,
    pub sigma1: f64,
    pub sigma2: f64,
    pub value: f64,
}

/// `N'(T) = T/2π + N/2 - (N²/4 + NT/2π)^{1/2}`.
pub fn n_prime(t: f64, n: f64) -> f64 {
    let a = t / (2.0 * PI);
    // written as a difference quotient to avoid cancellation
    let root = (n * n / 4.0 + n * a).sqrt();
    let sum = a + n / 2.0;
    (sum * sum - root * root) / (sum + root)
}

/// `e(T, n) = (1 + πn/2T)^{-1/4} {(2T/πn)^{1/2} arsinh((πn/2T)^{1/2})}^{-1}`.
pub fn atkinson_e(t: f64, n: f64) -> f64 {
    let u = (PI * n / (2.0 * t)).sqrt();
    (1.0 + u * u).powf(-0.25) * u / u.asinh()
}

/// `f(T, n) = 2T arsinh((πn/2T)^{1/2}) + (2πnT + π²n²)^{1/2} - π/4`.
pub fn atkinson_f(t: f64, n: f64) -> f64 {
    let u = (PI * n / (2.0 * t)).sqrt();
    2.0 * t * u.asinh() + (2.0 * PI * n * t + PI * PI * n * n).sqrt() - FRAC_PI_4
}

pub fn e_atkinson(table: &DivisorTable, t: f64, n: f64) -> Result<AtkinsonEval> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid!("Atkinson's formula needs T > 0, got {t}"));
    }
    if !(ATKINSON_A * t < n && n < ATKINSON_A_PRIME * t) {
        return Err(invalid!("cutoff N = {n} must satisfy {ATKINSON_A}T < N < {ATKINSON_A_PRIME}T at T = {t}"));
    }
    let np = n_prime(t, n);
    let needed = n.max(np).floor() as u64;
    if needed > table.limit() {
        return Err(out_of_range!("Atkinson sums need d(n) up to {needed}, table has {}", table.limit()));
    }

    let mut s1 = CompensatedSum::new();
    for k in 1..=n.floor() as u64 {
        let kf = k as f64;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        s1.add(sign * table.d(k) as f64 * kf.powf(-0.75) * atkinson_e(t, kf) * atkinson_f(t, kf).cos());
    }
    let sigma1 = SQRT_2 * (t / (2.0 * PI)).powf(0.25) * s1.value();

    let mut s2 = CompensatedSum::new();
    for k in 1..=np.floor() as u64 {
        let kf = k as f64;
        let l = (t / (2.0 * PI * kf)).ln();
        s2.add(table.d(k) as f64 / kf.sqrt() / l * (t * l - t + FRAC_PI_4).cos());
    }
    let sigma2 = -2.0 * s2.value();

    Ok(AtkinsonEval { t, n, n_prime: np, sigma1, sigma2, value: sigma1 + sigma2 })
}
