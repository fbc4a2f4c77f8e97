//! Complex log-gamma by shifted Stirling series.
//!
//! The argument is shifted up with `lnΓ(z) = lnΓ(z + m) - Σ ln(z + j)` until
//! `|z + m| >= 15`, where eight Stirling terms leave an error below `1e-17`.
//! Left of `Re z = 1/2` the reflection formula is used. On `Re z > 0` the
//! result is the continuous branch, which the Riemann–Siegel phase relies on.

use num_complex::Complex64;
use std::f64::consts::PI;

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const SHIFT_RADIUS: f64 = 15.0;

// B_{2k} / (2k (2k - 1))
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // lnΓ(z) = ln π - ln sin(πz) - lnΓ(1 - z)
        return Complex64::new(PI.ln(), 0.0) - ln_sin(z * PI) - ln_gamma(1.0 - z);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < SHIFT_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    stirling(w) - shift
}

fn stirling(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut series = Complex64::new(0.0, 0.0);
    let mut pow = inv;
    for c in STIRLING {
        series += pow * c;
        pow *= inv2;
    }
    (z - 0.5) * z.ln() - z + LN_SQRT_2PI + series
}

/// `ln sin(w)` without overflow for large `|Im w|` (branch unspecified).
pub fn ln_sin(w: Complex64) -> Complex64 {
    if w.im.abs() < 1.0 {
        return w.sin().ln();
    }
    if w.im < 0.0 {
        return ln_sin(w.conj()).conj();
    }
    // sin w = (i/2) e^{-iw} (1 - e^{2iw}), |e^{2iw}| = e^{-2 Im w} < 1
    let i = Complex64::i();
    -i * w + Complex64::new(0.5f64.ln(), PI / 2.0) + (1.0 - (2.0 * i * w).exp()).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn real_factorials() {
        for n in 1..20u32 {
            let exact: f64 = (1..n).map(|k| (k as f64).ln()).sum();
            let got = ln_gamma(c(n as f64, 0.0));
            assert!((got.re - exact).abs() < 1e-13 * exact.abs().max(1.0), "n = {n}");
            assert!(got.im.abs() < 1e-14);
        }
        let half = ln_gamma(c(0.5, 0.0));
        assert!((half.re - 0.5 * PI.ln()).abs() < 1e-14);
    }

    #[test]
    fn recurrence_holds_off_axis() {
        for &z in &[c(0.25, 3.0), c(0.7, -12.0), c(-2.3, 5.0), c(0.5, 200.0)] {
            let lhs = (ln_gamma(z + 1.0) - ln_gamma(z) - z.ln()).exp();
            assert!((lhs - 1.0).norm() < 1e-12, "z = {z}");
        }
    }

    #[test]
    fn modulus_on_critical_line_is_closed_form() {
        // |Γ(1/2 + iy)|² = π / cosh(πy)
        for &y in &[0.5, 3.0, 20.0, 100.0] {
            let g = ln_gamma(c(0.5, y));
            let expected = 0.5 * (PI.ln() - (PI * y).cosh().ln());
            assert!((g.re - expected).abs() < 1e-12, "y = {y}");
        }
    }

    #[test]
    fn ln_sin_large_imaginary_part() {
        let w = c(1.0, 400.0);
        let l = ln_sin(w);
        // |sin(x + iy)| ~ e^y / 2
        assert!((l.re - (400.0 - 2f64.ln())).abs() < 1e-12);
        let small = c(0.3, 2.0);
        assert!((ln_sin(small).exp() - small.sin()).norm() < 1e-13 * small.sin().norm());
    }
}
