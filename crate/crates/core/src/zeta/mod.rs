//! Evaluation of `ζ(s)` in the critical strip and of Hardy's `Z(t)` on the critical line.
//!
//! Three independent evaluators are available:
//!
//! * [`zeta_em`], Euler–Maclaurin summation, the reference oracle;
//! * the alternating `η` series with Borwein weights, used for `t < RS_CROSSOVER`;
//! * the Riemann–Siegel formula with corrections `C_0 … C_4`, used above it.

pub mod eta;
pub mod euler_maclaurin;
pub mod riemann_siegel;
pub mod witness;

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{invalid, out_of_range, Error, Result};
use crate::gamma::{ln_gamma, ln_sin};

pub use euler_maclaurin::zeta_em;

/// Height above which [`hardy_z`] switches to the Riemann–Siegel formula.
///
/// With `C_0 … C_4` the Riemann–Siegel remainder is below `3e-9` here.
pub const RS_CROSSOVER: f64 = 300.0;
/// Smallest height accepted by [`z_function`].
pub const Z_FUNCTION_MIN_T: f64 = 10.0;

/// `s = σ + it`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexPoint {
    pub sigma: f64,
    pub t: f64,
}

impl ComplexPoint {
    pub fn new(sigma: f64, t: f64) -> Self {
        Self { sigma, t }
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

impl From<Complex64> for ComplexPoint {
    fn from(s: Complex64) -> Self {
        Self { sigma: s.re, t: s.im }
    }
}

/// `θ₁(T) = (T/2) log(T/2π) - T/2 - π/8` and its derivative `(1/2) log(T/2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThetaPhase {
    pub t: f64,
    pub value: f64,
    pub derivative: f64,
}

/// One point of `Z(t)` with `|ζ(1/2 + it)|² = Z(t)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalSample {
    pub t: f64,
    pub z: f64,
    pub zeta_abs2: f64,
}

pub fn theta1(t: f64) -> Result<ThetaPhase> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(invalid!("θ₁(T) needs T > 0, got {t}"));
    }
    let l = (t / (2.0 * PI)).ln();
    Ok(ThetaPhase { t, value: 0.5 * t * l - 0.5 * t - PI / 8.0, derivative: 0.5 * l })
}

/// The exact Riemann–Siegel phase `θ(t) = Im lnΓ(1/4 + it/2) - (t/2) log π`.
pub fn rs_theta(t: f64) -> f64 {
    ln_gamma(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

fn is_positive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re >= 1.0 && s.re.fract() == 0.0
}

/// `χ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s)`, assembled in logarithms.
pub fn chi_factor(s: ComplexPoint) -> Result<Complex64> {
    let s = s.to_complex();
    if is_positive_integer(s) {
        return Err(Error::Domain(format!("χ(s) is not evaluated at the pole s = {}", s.re)));
    }
    let log = s * 2f64.ln() + (s - 1.0) * PI.ln() + ln_sin(s * (PI / 2.0)) + ln_gamma(1.0 - s);
    Ok(log.exp())
}

/// Stirling approximation `χ(s) ≈ (2π/t)^{σ+it-1/2} e^{i(t+π/4)}` for `t > 0`.
pub fn chi_stirling(s: ComplexPoint) -> Result<Complex64> {
    if !(s.t > 0.0) {
        return Err(invalid!("the Stirling form of χ needs t > 0"));
    }
    let exponent = Complex64::new(s.sigma - 0.5, s.t) * (2.0 * PI / s.t).ln();
    Ok((exponent + Complex64::new(0.0, s.t + PI / 4.0)).exp())
}

/// `ζ(s)` by Euler–Maclaurin with parameters chosen from `t`.
pub fn zeta(s: ComplexPoint) -> Result<Complex64> {
    let (n, p) = euler_maclaurin::default_params(s.t);
    zeta_em(s.to_complex(), n, p)
}

/// Hardy's `Z(t)` for any `t >= 0`; `Z` is even, so negative `t` is reflected.
pub fn hardy_z(t: f64) -> f64 {
    let t = t.abs();
    if t >= RS_CROSSOVER {
        riemann_siegel::hardy_z_rs(t, rs_theta(t), riemann_siegel::CORRECTION_TERMS)
    } else {
        rotated_zeta(t).re
    }
}

/// `e^{iθ(t)} ζ(1/2 + it)` from the alternating series; real up to rounding.
pub fn rotated_zeta(t: f64) -> Complex64 {
    let z = eta::zeta_eta(Complex64::new(0.5, t)).expect("height checked by caller");
    Complex64::from_polar(1.0, rs_theta(t)) * z
}

/// `|ζ(1/2 + it)|²` for any real `t`.
#[inline]
pub fn zeta_abs2(t: f64) -> f64 {
    let z = hardy_z(t);
    z * z
}

/// `Z(t)` for `t >= 10`.
pub fn z_function(t: f64) -> Result<CriticalSample> {
    if !(t >= Z_FUNCTION_MIN_T && t.is_finite()) {
        return Err(out_of_range!("z_function supports t >= {Z_FUNCTION_MIN_T}; use zeta_em below"));
    }
    let z = hardy_z(t);
    Ok(CriticalSample { t, z, zeta_abs2: z * z })
}

/// The convexity exponent `(1 - σ)/2` in `ζ(σ + it) ≪ t^{(1-σ)/2 + ε}`.
pub fn convexity_exponent(sigma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(invalid!("σ must lie in [0, 1], got {sigma}"));
    }
    Ok((1.0 - sigma) / 2.0)
}

/// Locates a sign change of `Z` in `[lo, hi]` by bisection, if the endpoints differ in sign.
pub fn bisect_zero(lo: f64, hi: f64, tol: f64) -> Option<f64> {
    let (mut a, mut b) = (lo, hi);
    let (mut fa, fb) = (hardy_z(a), hardy_z(b));
    if fa * fb > 0.0 {
        return None;
    }
    while b - a > tol {
        let m = 0.5 * (a + b);
        let fm = hardy_z(m);
        if fa * fm <= 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    Some(0.5 * (a + b))
}
