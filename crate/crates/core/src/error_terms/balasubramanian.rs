//! Balasubramanian's double-sum formula for `E(T)`, built on the Riemann–Siegel main sum.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{invalid, Error, Result};
use crate::precise::CompensatedSum;
use crate::zeta::theta1;

/// Default cap on `K = √(T/2π)`; the cost is `O(K²)`.
pub const DEFAULT_MAX_K: f64 = 1e4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BalasubramanianEval {
    pub t: f64,
    pub k: f64,
    pub first: f64,
    pub second: f64,
    pub value: f64,
}

pub fn e_balasubramanian(t: f64) -> Result<BalasubramanianEval> {
    e_balasubramanian_capped(t, DEFAULT_MAX_K)
}

pub fn e_balasubramanian_capped(t: f64, max_k: f64) -> Result<BalasubramanianEval> {
    if !(t > 2.0 * PI && t.is_finite()) {
        return Err(invalid!("the double sums need T > 2π, got {t}"));
    }
    let k = (t / (2.0 * PI)).sqrt();
    if k > max_k {
        return Err(Error::ResourceLimit(format!("K = {k:.1} exceeds the cap {max_k}")));
    }
    let theta = theta1(t)?;
    let two_theta = 2.0 * theta.value;
    let two_theta_prime = 2.0 * theta.derivative;
    let kk = k.floor() as usize;
    let logs: Vec<f64> = (0..=kk).map(|n| (n.max(1) as f64).ln()).collect();
    let roots: Vec<f64> = (0..=kk).map(|n| (n as f64).sqrt()).collect();

    let mut first = CompensatedSum::new();
    let mut second = CompensatedSum::new();
    for n in 1..=kk {
        for m in 1..=kk {
            if m == n {
                continue;
            }
            let ratio = logs[n] - logs[m];
            let root = roots[m] * roots[n];
            first.add((t * ratio).sin() / (root * ratio));
            let lmn = logs[m] + logs[n];
            second.add((two_theta - t * lmn).sin() / (root * (two_theta_prime - lmn)));
        }
    }
    let first = 2.0 * first.value();
    let second = 2.0 * second.value();
    Ok(BalasubramanianEval { t, k, first, second, value: first + second })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_sum_is_twice_its_upper_triangle() {
        let t = 500.0;
        let ev = e_balasubramanian(t).unwrap();
        let kk = (t / (2.0 * PI)).sqrt().floor() as usize;
        let mut half = 0.0;
        for n in 1..=kk {
            for m in 1..n {
                let r = (n as f64 / m as f64).ln();
                half += (t * r).sin() / ((m * n) as f64).sqrt() / r;
            }
        }
        assert!((ev.first - 4.0 * half).abs() < 1e-9 * ev.first.abs().max(1.0));
    }

    #[test]
    fn main_sum_length_and_cap() {
        let ev = e_balasubramanian(2.0 * PI * 1e4).unwrap();
        assert!((ev.k - 100.0).abs() < 1e-9);
        assert!(matches!(e_balasubramanian_capped(1e6, 10.0), Err(Error::ResourceLimit(_))));
        assert!(e_balasubramanian(1.0).is_err());
    }
}
