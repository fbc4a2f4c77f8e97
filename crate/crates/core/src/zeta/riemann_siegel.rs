//! Riemann–Siegel evaluation of Hardy's `Z(t)` with corrections `C_0 … C_4`.
//!
//! The corrections are combinations of derivatives of
//! `Ψ(p) = cos(2π(p² - p - 1/16)) / cos(2πp)`. `Ψ(1/2 + x)` is entire, so its
//! Taylor coefficients at `x = 0` are obtained once from a discrete Cauchy
//! integral on `|x| = 1` (where `|cos 2πx| >= 1`) and every `C_k` becomes a
//! fixed polynomial in `x = p - 1/2`.

use num_complex::Complex64;
use std::f64::consts::PI;
use std::sync::OnceLock;

const TAYLOR_LEN: usize = 128;

struct Corrections {
    polys: [Vec<f64>; 5],
}

fn psi_centered(x: Complex64) -> Complex64 {
    let num = (x * x * (2.0 * PI) - 5.0 * PI / 8.0).cos();
    let den = (x * (2.0 * PI)).cos();
    -num / den
}

fn taylor_coefficients() -> Vec<f64> {
    let m = TAYLOR_LEN;
    let samples: Vec<Complex64> =
        (0..m).map(|j| psi_centered(Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64))).collect();
    (0..m)
        .map(|k| {
            let mut acc = Complex64::new(0.0, 0.0);
            for (j, v) in samples.iter().enumerate() {
                let angle = -2.0 * PI * ((j * k) % m) as f64 / m as f64;
                acc += v * Complex64::from_polar(1.0, angle);
            }
            acc.re / m as f64
        })
        .collect()
}

/// Coefficients of the `order`-th derivative of the series `coeffs`.
fn derivative(coeffs: &[f64], order: usize) -> Vec<f64> {
    (order..coeffs.len())
        .map(|k| {
            let falling: f64 = (0..order).map(|j| (k - j) as f64).product();
            coeffs[k] * falling
        })
        .collect()
}

fn combine(parts: &[(f64, &[f64])]) -> Vec<f64> {
    let len = parts.iter().map(|(_, p)| p.len()).max().unwrap_or(0);
    let mut out = vec![0.0; len];
    for (w, p) in parts {
        for (o, c) in out.iter_mut().zip(p.iter()) {
            *o += w * c;
        }
    }
    // drop coefficients that cannot matter on |x| <= 1/2
    while out.len() > 1 {
        let k = out.len() - 1;
        if out[k].abs() * 0.5f64.powi(k as i32) < 1e-22 {
            out.pop();
        } else {
            break;
        }
    }
    out
}

fn corrections() -> &'static Corrections {
    static CELL: OnceLock<Corrections> = OnceLock::new();
    CELL.get_or_init(|| {
        let psi = taylor_coefficients();
        let d: Vec<Vec<f64>> = (0..=12).map(|k| derivative(&psi, k)).collect();
        let p2 = PI * PI;
        let p4 = p2 * p2;
        let p6 = p4 * p2;
        let p8 = p4 * p4;
        let polys = [
            combine(&[(1.0, &d[0])]),
            combine(&[(-1.0 / (96.0 * p2), &d[3])]),
            combine(&[(1.0 / (64.0 * p2), &d[2]), (1.0 / (18432.0 * p4), &d[6])]),
            combine(&[(-1.0 / (64.0 * p2), &d[1]), (-1.0 / (3840.0 * p4), &d[5]), (-1.0 / (5_308_416.0 * p6), &d[9])]),
            combine(&[
                (1.0 / (128.0 * p2), &d[0]),
                (19.0 / (24576.0 * p4), &d[4]),
                (11.0 / (5_898_240.0 * p6), &d[8]),
                (1.0 / (2_038_431_744.0 * p8), &d[12]),
            ]),
        ];
        Corrections { polys }
    })
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// `C_k(p)` for `k <= 4` and `p` in `[0, 1)`.
pub fn correction_coefficient(k: usize, p: f64) -> f64 {
    horner(&corrections().polys[k], p - 0.5)
}

/// Number of correction terms applied by [`hardy_z_rs`].
pub const CORRECTION_TERMS: usize = 5;

/// Main sum and remainder of the Riemann–Siegel formula at height `t`, given the phase `θ(t)`.
pub fn hardy_z_rs(t: f64, theta: f64, corrections_used: usize) -> f64 {
    let a = (t / (2.0 * PI)).sqrt();
    let n_terms = a.floor() as u64;
    let p = a - n_terms as f64;
    let mut sum = crate::precise::CompensatedSum::new();
    for n in 1..=n_terms {
        let ln_n = (n as f64).ln();
        sum.add((theta - t * ln_n).cos() / (n as f64).sqrt());
    }
    let inv_a = 1.0 / a;
    let mut rem = 0.0;
    let mut pow = 1.0;
    for k in 0..corrections_used.min(CORRECTION_TERMS) {
        rem += correction_coefficient(k, p) * pow;
        pow *= inv_a;
    }
    let sign = if n_terms % 2 == 1 { 1.0 } else { -1.0 };
    2.0 * sum.value() + sign * inv_a.sqrt() * rem
}

/// `⌊√(t/2π)⌋`, the length of the main sum.
pub fn main_sum_length(t: f64) -> u64 {
    (t / (2.0 * PI)).sqrt().floor() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leading_coefficient_matches_closed_form() {
        for &p in &[0.0, 0.1, 0.25, 0.5, 0.75, 0.9, 0.999] {
            let direct = if (p - 0.25f64).abs() < 1e-12 || (p - 0.75f64).abs() < 1e-12 {
                None
            } else {
                Some((2.0 * PI * (p * p - p - 1.0 / 16.0)).cos() / (2.0 * PI * p).cos())
            };
            if let Some(v) = direct {
                assert!((correction_coefficient(0, p) - v).abs() < 1e-12, "p = {p}");
            }
        }
        // Ψ(1/2) = -cos(5π/8)
        assert!((correction_coefficient(0, 0.5) + (5.0 * PI / 8.0).cos()).abs() < 1e-14);
    }

    #[test]
    fn parity_of_corrections() {
        // C_0, C_2, C_4 are even about p = 1/2 and C_1, C_3 odd
        for k in 0..5 {
            let a = correction_coefficient(k, 0.5 + 0.3);
            let b = correction_coefficient(k, 0.5 - 0.3);
            if k % 2 == 0 {
                assert!((a - b).abs() < 1e-12);
            } else {
                assert!((a + b).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn main_sum_length_at_round_height() {
        assert_eq!(main_sum_length(2.0 * PI * 1e4), 100);
    }
}
