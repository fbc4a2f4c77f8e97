//! Cumulative moments `∫_0^T |E*(t)|^k dt` at dyadic checkpoints.

use serde::Serialize;

use super::e_star::ErrorTermSample;
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentResult {
    pub t: f64,
    pub k: u32,
    pub integral: f64,
    pub normalizer: f64,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentScan {
    pub k: u32,
    pub checkpoints: Vec<MomentResult>,
    pub warnings: Vec<String>,
}

/// Minimum number of samples below a checkpoint before it is trusted.
pub const MIN_SAMPLES_PER_CHECKPOINT: usize = 1000;

/// Predicted order of growth: `T^{4/3} log³T`, `T^{16/9}`, `T²` for `k = 2, 4, 5`.
pub fn normalizer(k: u32, t: f64) -> Result<f64> {
    match k {
        2 => Ok(t.powf(4.0 / 3.0) * t.ln().powi(3)),
        4 => Ok(t.powf(16.0 / 9.0)),
        5 => Ok(t * t),
        _ => Err(invalid!("moment order must be 2, 4 or 5, got {k}")),
    }
}

/// Trapezoid integral of `|E*|^k` over the sample grid, reported at `T = 2^j`.
///
/// Checkpoints between grid nodes are closed off with a linear interpolant.
pub fn moment_scan(samples: &[ErrorTermSample], k: u32) -> Result<MomentScan> {
    normalizer(k, 2.0)?;
    if samples.len() < 2 {
        return Err(invalid!("need at least two samples"));
    }
    if samples.windows(2).any(|w| !(w[1].t > w[0].t)) {
        return Err(invalid!("samples must be strictly increasing in t"));
    }
    let t_max = samples.last().unwrap().t;
    let mut checkpoints = Vec::new();
    let mut warnings = Vec::new();
    let mut next_j = 1i32;
    let mut acc = 0.0f64;
    let g = |s: &ErrorTermSample| s.e_star.abs().powi(k as i32);
    for (i, w) in samples.windows(2).enumerate() {
        let (a, b) = (&w[0], &w[1]);
        loop {
            let cp = 2f64.powi(next_j);
            if cp > b.t || cp > t_max {
                break;
            }
            if cp >= a.t {
                let frac = (cp - a.t) / (b.t - a.t);
                let e_cp = a.e_star + frac * (b.e_star - a.e_star);
                let partial = 0.5 * (g(a) + e_cp.abs().powi(k as i32)) * (cp - a.t);
                let integral = acc + partial;
                let norm = normalizer(k, cp)?;
                if i + 1 < MIN_SAMPLES_PER_CHECKPOINT {
                    warnings.push(format!(
                        "checkpoint T = {cp}: only {} samples below it (want {MIN_SAMPLES_PER_CHECKPOINT})",
                        i + 1
                    ));
                }
                checkpoints.push(MomentResult { t: cp, k, integral, normalizer: norm, ratio: integral / norm });
            }
            next_j += 1;
        }
        acc += 0.5 * (g(a) + g(b)) * (b.t - a.t);
    }
    Ok(MomentScan { k, checkpoints, warnings })
}

/// `max / min` of the ratios over the last `count` checkpoints.
pub fn ratio_spread(scan: &MomentScan, count: usize) -> Option<f64> {
    let top = scan.checkpoints.len().checked_sub(count)?;
    let ratios = scan.checkpoints[top..].iter().map(|c| c.ratio);
    let max = ratios.clone().fold(f64::MIN, f64::max);
    let min = ratios.fold(f64::MAX, f64::min);
    (min > 0.0).then(|| max / min)
}

/// Least-squares polynomial of degree `degree` through `(x, y)`; coefficients in ascending order.
#[allow(clippy::needless_range_loop)]
pub fn polyfit(xs: &[f64], ys: &[f64], degree: usize) -> Result<Vec<f64>> {
    let n = degree + 1;
    if xs.len() != ys.len() || xs.len() < n {
        return Err(invalid!("need at least {n} points for a degree-{degree} fit"));
    }
    // normal equations in the centred, scaled variable keep the system well conditioned
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let scale = xs.iter().map(|x| (x - mean).abs()).fold(0.0, f64::max).max(1e-300);
    let mut a = vec![vec![0.0; n + 1]; n];
    for (&x, &y) in xs.iter().zip(ys) {
        let u = (x - mean) / scale;
        let pows: Vec<f64> = (0..n).map(|p| u.powi(p as i32)).collect();
        for r in 0..n {
            for c in 0..n {
                a[r][c] += pows[r] * pows[c];
            }
            a[r][n] += pows[r] * y;
        }
    }
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        a.swap(col, pivot);
        if a[col][col].abs() < 1e-300 {
            return Err(invalid!("degenerate abscissae for polynomial fit"));
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col] / a[col][col];
                for c in col..=n {
                    a[r][c] -= f * a[col][c];
                }
            }
        }
    }
    let in_u: Vec<f64> = (0..n).map(|r| a[r][n] / a[r][r]).collect();
    // expand p(u) with u = (x - mean)/scale back to powers of x
    let mut coeffs = vec![0.0; n];
    for (p, &c) in in_u.iter().enumerate() {
        // c ((x - mean)/scale)^p
        let f = c / scale.powi(p as i32);
        for j in 0..=p {
            let binom = (0..j).fold(1.0, |acc, i| acc * (p - i) as f64 / (i + 1) as f64);
            coeffs[j] += f * binom * (-mean).powi((p - j) as i32);
        }
    }
    Ok(coeffs)
}

pub fn polyval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

/// Cubic fit of `∫(E*)²/T^{4/3}` against `log T`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CubicLogFit {
    /// Coefficients of `P₃(log T)`, ascending.
    pub coefficients: Vec<f64>,
    /// Checkpoints used for the fit.
    pub fitted_from: f64,
    /// Largest relative residual over the last `checked` checkpoints.
    pub max_relative_residual: f64,
    pub checked: usize,
}

/// Fits `integral / T^{4/3}` by a cubic in `log T` over checkpoints with `T >= fit_from`.
pub fn fit_second_moment(scan: &MomentScan, fit_from: f64, checked: usize) -> Result<CubicLogFit> {
    if scan.k != 2 {
        return Err(invalid!("the cubic-in-log fit applies to the second moment"));
    }
    let used: Vec<&MomentResult> = scan.checkpoints.iter().filter(|c| c.t >= fit_from).collect();
    let xs: Vec<f64> = used.iter().map(|c| c.t.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|c| c.integral / c.t.powf(4.0 / 3.0)).collect();
    let coefficients = polyfit(&xs, &ys, 3)?;
    if used.len() < checked {
        return Err(invalid!("only {} checkpoints available, {checked} requested", used.len()));
    }
    let max_relative_residual = xs[xs.len() - checked..]
        .iter()
        .zip(&ys[ys.len() - checked..])
        .map(|(&x, &y)| ((polyval(&coefficients, x) - y) / y).abs())
        .fold(0.0, f64::max);
    Ok(CubicLogFit { coefficients, fitted_from: fit_from, max_relative_residual, checked })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constant_samples(value: f64, t_max: f64, step: f64) -> Vec<ErrorTermSample> {
        let n = (t_max / step) as usize;
        (0..=n).map(|i| ErrorTermSample::new(i as f64 * step, value, 0.0)).collect()
    }

    #[test]
    fn constant_integrand_gives_linear_integral() {
        let s = constant_samples(2.0, 100.0, 0.25);
        let scan = moment_scan(&s, 2).unwrap();
        let ts: Vec<f64> = scan.checkpoints.iter().map(|c| c.t).collect();
        assert_eq!(ts, vec![2.0, 4.0, 8.0, 16.0, 32.0, 64.0]);
        for c in &scan.checkpoints {
            assert!((c.integral - 4.0 * c.t).abs() < 1e-9);
        }
        assert!(!scan.warnings.is_empty());
        let scan5 = moment_scan(&s, 5).unwrap();
        assert!((scan5.checkpoints[5].ratio - 32.0 * 64.0 / 4096.0).abs() < 1e-9);
        assert!(moment_scan(&s, 3).is_err());
    }

    #[test]
    fn polyfit_recovers_a_cubic() {
        let xs: Vec<f64> = (0..9).map(|i| 3.0 + i as f64 * 0.7).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - 2.0 * x + 0.5 * x * x + 0.1 * x * x * x).collect();
        let c = polyfit(&xs, &ys, 3).unwrap();
        for (got, want) in c.iter().zip([1.0, -2.0, 0.5, 0.1]) {
            assert!((got - want).abs() < 1e-8, "{c:?}");
        }
    }
}
