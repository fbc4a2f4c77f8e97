use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

// B_{2k} for k = 1..=15
const BERNOULLI_2K: [(f64, f64); 15] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174_611.0, 330.0),
    (854_513.0, 138.0),
    (-236_364_091.0, 2730.0),
    (8_553_103.0, 6.0),
    (-23_749_461_029.0, 870.0),
    (8_615_841_276_005.0, 14322.0),
];

pub const MAX_CORRECTION_ORDER: usize = BERNOULLI_2K.len();

/// Summation parameters giving better than `1e-12` relative accuracy for `|t| <= 2000`.
pub fn default_params(t: f64) -> (usize, usize) {
    let terms = (2.0 * (1.0 + t.abs())).ceil().max(20.0) as usize;
    (terms, 12)
}

/// `ζ(s)` by Euler–Maclaurin summation:
///
/// `Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2 + Σ_{k=1}^{p} B_{2k}/(2k)! s(s+1)…(s+2k-2) N^{-s-2k+1}`.
pub fn zeta_em(s: Complex64, terms: usize, correction_order: usize) -> Result<Complex64> {
    if (s - 1.0).norm() < 1e-14 {
        return Err(Error::Domain("ζ(s) has a pole at s = 1".into()));
    }
    if terms < 2 {
        return Err(invalid!("Euler–Maclaurin needs at least 2 terms, got {terms}"));
    }
    if correction_order > MAX_CORRECTION_ORDER {
        return Err(invalid!("correction order {correction_order} exceeds the tabulated {MAX_CORRECTION_ORDER}"));
    }
    let mut re = crate::precise::CompensatedSum::new();
    let mut im = crate::precise::CompensatedSum::new();
    for n in 1..terms {
        let v = (-s * (n as f64).ln()).exp();
        re.add(v.re);
        im.add(v.im);
    }
    let big_n = terms as f64;
    let ln_n = big_n.ln();
    let n_pow = (-s * ln_n).exp(); // N^{-s}
    let mut tail = n_pow * big_n / (s - 1.0) + n_pow * 0.5;

    let mut rising = s; // s(s+1)…(s+2k-2)
    let mut n_pow_k = n_pow / big_n; // N^{-s-2k+1}
    let mut factorial = 2.0; // (2k)!
    for (k, &(num, den)) in BERNOULLI_2K.iter().enumerate().take(correction_order) {
        let k = k + 1;
        if k > 1 {
            let a = 2.0 * k as f64 - 3.0;
            rising = rising * (s + a) * (s + a + 1.0);
            n_pow_k /= big_n * big_n;
            factorial *= (2 * k - 1) as f64 * (2 * k) as f64;
        }
        tail += rising * n_pow_k * (num / den / factorial);
    }
    Ok(Complex64::new(re.value(), im.value()) + tail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn basel_value() {
        let z = zeta_em(Complex64::new(2.0, 0.0), 20, 12).unwrap();
        assert!((z.re - PI * PI / 6.0).abs() < 1e-12);
        assert!(z.im.abs() < 1e-15);
    }

    #[test]
    fn value_at_one_half_is_parameter_independent() {
        let a = zeta_em(Complex64::new(0.5, 0.0), 20, 12).unwrap();
        let b = zeta_em(Complex64::new(0.5, 0.0), 200, 6).unwrap();
        assert!((a - b).norm() < 1e-10);
        assert!((a.re + 1.460_354_508_8).abs() < 1e-10);
    }

    #[test]
    fn high_on_the_line_two_settings_agree() {
        let s = Complex64::new(0.5, 1999.0);
        let (n, p) = default_params(s.im);
        let a = zeta_em(s, n, p).unwrap();
        let b = zeta_em(s, n + 731, p - 3).unwrap();
        assert!((a - b).norm() < 1e-11 * a.norm().max(1.0));
    }

    #[test]
    fn pole_and_bad_parameters() {
        assert!(matches!(zeta_em(Complex64::new(1.0, 0.0), 20, 4), Err(Error::Domain(_))));
        assert!(zeta_em(Complex64::new(0.5, 1.0), 1, 4).is_err());
        assert!(zeta_em(Complex64::new(0.5, 1.0), 10, 99).is_err());
    }
}
