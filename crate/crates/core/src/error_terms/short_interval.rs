//! Smoothed short-interval mean square `∫ f(t) |ζ(1/2+it)|² dt` over `[T-2G, T+2G]`.

use serde::Serialize;

use super::mean_square::panel_width;
use crate::error::{invalid, Result};
use crate::quadrature::{panels_for, simpson};
use crate::zeta::zeta_abs2;

/// Shape of the weight on the collars `T-2G..T-G` and `T+G..T+2G`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BumpProfile {
    /// `exp(1 - 1/(1 - u²))` with `u` the relative depth into the collar.
    ExpCollar,
    /// `φ(1-u) / (φ(1-u) + φ(u))` with `φ(x) = exp(-1/x)`.
    SmoothStep,
}

impl BumpProfile {
    /// Collar weight at relative depth `u` in `[0, 1]`: 1 at the plateau edge, 0 at the support edge.
    pub fn collar(self, u: f64) -> f64 {
        if u <= 0.0 {
            return 1.0;
        }
        if u >= 1.0 {
            return 0.0;
        }
        match self {
            BumpProfile::ExpCollar => (1.0 - 1.0 / (1.0 - u * u)).exp(),
            BumpProfile::SmoothStep => {
                let phi = |x: f64| (-1.0 / x).exp();
                let a = phi(1.0 - u);
                a / (a + phi(u))
            }
        }
    }

    /// The weight `f(t)` for centre `T` and half-width `G`.
    pub fn weight(self, t: f64, centre: f64, g: f64) -> f64 {
        let dist = (t - centre).abs();
        self.collar((dist - g) / g)
    }
}

/// `∫ f(t)|ζ(1/2+it)|² dt` with `f = 1` on `[T-G, T+G]`, supported in `[T-2G, T+2G]`.
pub fn short_interval_ms(t: f64, g: f64, profile: BumpProfile) -> Result<f64> {
    if !(t.is_finite() && g.is_finite() && (2.0..=t / 2.0).contains(&g)) {
        return Err(invalid!("need 2 <= G <= T/2, got T = {t}, G = {g}"));
    }
    let width = panel_width(t + 2.0 * g);
    let f = |x: f64| profile.weight(x, t, g) * zeta_abs2(x);
    let left = simpson(f, t - 2.0 * g, t - g, panels_for(0.0, g, width));
    let middle = simpson(zeta_abs2, t - g, t + g, panels_for(0.0, 2.0 * g, width));
    let right = simpson(f, t + g, t + 2.0 * g, panels_for(0.0, g, width));
    Ok(left + middle + right)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profiles_are_admissible() {
        for p in [BumpProfile::ExpCollar, BumpProfile::SmoothStep] {
            assert_eq!(p.collar(0.0), 1.0);
            assert_eq!(p.collar(1.0), 0.0);
            let mut prev = 1.0;
            for i in 1..100 {
                let v = p.collar(i as f64 / 100.0);
                assert!(v <= prev && v >= 0.0);
                prev = v;
            }
            assert_eq!(p.weight(1000.0, 1000.0, 10.0), 1.0);
            assert_eq!(p.weight(1021.0, 1000.0, 10.0), 0.0);
        }
    }

    #[test]
    fn degenerate_widths_rejected() {
        assert!(short_interval_ms(1000.0, 1000.0, BumpProfile::ExpCollar).is_err());
        assert!(short_interval_ms(1000.0, 1.0, BumpProfile::ExpCollar).is_err());
    }

    #[test]
    fn profiles_give_similar_values() {
        let t: f64 = 1e4;
        let g = t.powf(1.0 / 3.0);
        let a = short_interval_ms(t, g, BumpProfile::ExpCollar).unwrap();
        let b = short_interval_ms(t, g, BumpProfile::SmoothStep).unwrap();
        assert!((a - b).abs() <= 0.1 * a.max(b), "{a} vs {b}");
    }
}
