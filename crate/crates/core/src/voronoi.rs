//! Truncated Voronoï series for `Δ(x)` and `Δ*(x)`:
//!
//! `(1/(π√2)) x^{1/4} Σ_{n≤N} w(n) d(n) n^{-3/4} cos(4π√(nx) - π/4)`,
//! with `w(n) = 1` for `Δ` and `w(n) = (-1)^n` for `Δ*`.

use serde::Serialize;
use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

use crate::divisor::DivisorTable;
use crate::error::{invalid, out_of_range, Result};
use crate::precise::CompensatedSum;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VoronoiSum {
    pub x: f64,
    pub n: u64,
    pub value: f64,
    pub term_count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoronoiKind {
    Delta,
    DeltaStar,
}

pub fn voronoi_delta(table: &DivisorTable, x: f64, n: u64) -> Result<VoronoiSum> {
    voronoi_sum(table, x, n, VoronoiKind::Delta)
}

pub fn voronoi_delta_star(table: &DivisorTable, x: f64, n: u64) -> Result<VoronoiSum> {
    voronoi_sum(table, x, n, VoronoiKind::DeltaStar)
}

pub fn voronoi_sum(table: &DivisorTable, x: f64, n: u64, kind: VoronoiKind) -> Result<VoronoiSum> {
    if n < 2 {
        return Err(invalid!("truncation N must be at least 2, got {n}"));
    }
    if !(x >= 2.0 && x.is_finite()) {
        return Err(invalid!("Voronoï series needs x >= 2, got {x}"));
    }
    if n > table.limit() {
        return Err(out_of_range!("N = {n} exceeds table limit {}", table.limit()));
    }
    let sqrt_x = x.sqrt();
    let mut acc = CompensatedSum::new();
    for k in 1..=n {
        let kf = k as f64;
        let sign = match kind {
            VoronoiKind::DeltaStar if k % 2 == 1 => -1.0,
            _ => 1.0,
        };
        let term = sign * table.d(k) as f64 * kf.powf(-0.75) * (4.0 * PI * kf.sqrt() * sqrt_x - FRAC_PI_4).cos();
        acc.add(term);
    }
    let value = x.powf(0.25) / (PI * SQRT_2) * acc.value();
    Ok(VoronoiSum { x, n, value, term_count: n })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::{delta, delta_star, sieve_divisors};

    fn two_term(x: f64, sign1: f64) -> f64 {
        let t1 = sign1 * (4.0 * PI * x.sqrt() - FRAC_PI_4).cos();
        let t2 = 2.0 * 2f64.powf(-0.75) * (4.0 * PI * (2.0 * x).sqrt() - FRAC_PI_4).cos();
        x.powf(0.25) / (PI * SQRT_2) * (t1 + t2)
    }

    #[test]
    fn two_term_closed_forms() {
        let t = sieve_divisors(10).unwrap();
        let x = 1e4;
        let v = voronoi_delta(&t, x, 2).unwrap();
        assert_eq!(v.term_count, 2);
        assert!((v.value - two_term(x, 1.0)).abs() < 1e-12);
        let v = voronoi_delta_star(&t, x, 2).unwrap();
        assert!((v.value - two_term(x, -1.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_truncation() {
        let t = sieve_divisors(10).unwrap();
        assert!(voronoi_delta(&t, 100.0, 1).is_err());
        assert!(voronoi_delta(&t, 1.0, 2).is_err());
        assert!(voronoi_delta(&t, 100.0, 11).is_err());
    }

    #[test]
    fn residual_against_direct_evaluators() {
        let t = sieve_divisors(50_000).unwrap();
        // off the integer jumps of Δ
        let x = 10_000.5;
        let r = (voronoi_delta(&t, x, 10_000).unwrap().value - delta(&t, x).unwrap().delta).abs();
        assert!(r <= 10.0, "residual {r}");
        let x = 1000.0;
        let r = (voronoi_delta_star(&t, x, 1000).unwrap().value - delta_star(&t, x).unwrap()).abs();
        assert!(r <= 10.0, "residual {r}");
    }

    #[test]
    fn summation_order_is_immaterial() {
        let t = sieve_divisors(5000).unwrap();
        let x = 12_345.678;
        let forward = voronoi_delta(&t, x, 5000).unwrap().value;
        let mut backward = 0.0;
        for k in (1..=5000u64).rev() {
            let kf = k as f64;
            backward += t.d(k) as f64 * kf.powf(-0.75) * (4.0 * PI * (kf * x).sqrt() - FRAC_PI_4).cos();
        }
        backward *= x.powf(0.25) / (PI * SQRT_2);
        assert!((forward - backward).abs() <= 1e-9 * forward.abs().max(1.0));
    }

    #[test]
    fn continuous_in_x() {
        let t = sieve_divisors(2000).unwrap();
        let a = voronoi_delta(&t, 1e4, 2000).unwrap().value;
        let b = voronoi_delta(&t, 1e4 + 1e-6, 2000).unwrap().value;
        assert!((a - b).abs() < 1.0);
    }
}
