//! `E(T) = ∫_0^T |ζ(1/2+it)|² dt - T(log(T/2π) + 2γ - 1)` by direct quadrature.

use std::f64::consts::PI;

use crate::divisor::EULER_GAMMA;
use crate::error::{invalid, Error, Result};
use crate::quadrature::{panels_for, simpson, CumulativeIntegral};
use crate::zeta::zeta_abs2;

/// Largest Simpson panel used below height `t`; resolves the fastest oscillation of `Z(t)²`.
pub fn panel_width(t: f64) -> f64 {
    let l = (t / (2.0 * PI)).ln();
    if l <= 0.0 {
        0.05
    } else {
        0.05f64.min(2.0 * PI / (10.0 * l))
    }
}

/// Refinement stops once halving the panel width changes `E` by less than this.
pub const REFINE_TOLERANCE: f64 = 0.1;
/// Smallest panel width tried before giving up.
pub const STEP_FLOOR: f64 = 1e-4;

/// `T(log(T/2π) + 2γ - 1)`, vanishing at `T = 0`.
pub fn mean_square_main_term(t: f64) -> f64 {
    if t == 0.0 {
        0.0
    } else {
        t * ((t / (2.0 * PI)).ln() + 2.0 * EULER_GAMMA - 1.0)
    }
}

/// Cached running integral of `|ζ(1/2+it)|²` on a uniform node grid.
#[derive(Debug, Clone)]
pub struct MeanSquare {
    integral: CumulativeIntegral,
}

impl MeanSquare {
    /// Nodes every `grid_step`, each cell split into panels no wider than `panel`.
    pub fn new(grid_step: f64, panel: f64) -> Result<Self> {
        if !(grid_step > 0.0 && panel > 0.0) {
            return Err(invalid!("grid step and panel width must be positive"));
        }
        let per_cell = panels_for(0.0, grid_step, panel);
        Ok(Self { integral: CumulativeIntegral::new(grid_step, per_cell) })
    }

    /// Grid and panel widths suitable for all heights up to `t_max`.
    pub fn for_range(grid_step: f64, t_max: f64) -> Result<Self> {
        Self::new(grid_step, panel_width(t_max))
    }

    pub fn grid_step(&self) -> f64 {
        self.integral.step()
    }

    pub fn extend_to(&mut self, t: f64) {
        self.integral.extend_to(&zeta_abs2, t);
    }

    /// `∫_0^T |ζ(1/2+it)|² dt`.
    pub fn integral(&mut self, t: f64) -> f64 {
        self.integral.integral(&zeta_abs2, t)
    }

    /// `E(T)`.
    pub fn error_term(&mut self, t: f64) -> f64 {
        self.integral(t) - mean_square_main_term(t)
    }

    /// `E` at node `i`, which must already be covered.
    pub fn error_term_at_node(&self, i: usize) -> f64 {
        let t = i as f64 * self.integral.step();
        self.integral.at_node(i) - mean_square_main_term(t)
    }

    pub fn node_count(&self) -> usize {
        self.integral.node_count()
    }
}

/// `E(T)` with panel width `step`, halved until successive values differ by less than 0.1.
pub fn e_direct(t: f64, step: f64) -> Result<f64> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(invalid!("E(T) needs T >= 0, got {t}"));
    }
    if !(step > 0.0) {
        return Err(invalid!("step must be positive"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let mut h = step;
    let mut coarse = simpson(zeta_abs2, 0.0, t, panels_for(0.0, t, h));
    loop {
        let fine_h = h / 2.0;
        if fine_h < STEP_FLOOR {
            return Err(Error::Precision(format!(
                "E({t}) did not settle to {REFINE_TOLERANCE} before panel width {STEP_FLOOR}"
            )));
        }
        let fine = simpson(zeta_abs2, 0.0, t, panels_for(0.0, t, fine_h));
        if (fine - coarse).abs() < REFINE_TOLERANCE {
            return Ok(fine - mean_square_main_term(t));
        }
        coarse = fine;
        h = fine_h;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vanishes_at_zero() {
        assert_eq!(e_direct(0.0, 0.05).unwrap(), 0.0);
        let e3 = e_direct(1e-3, 0.05).unwrap();
        let e6 = e_direct(1e-6, 0.05).unwrap();
        assert!(e3.abs() < 0.02 && e6.abs() < 1e-4, "{e3} {e6}");
    }

    #[test]
    fn step_halving_is_self_consistent() {
        let a = e_direct(100.0, 0.05).unwrap();
        let b = e_direct(100.0, 0.025).unwrap();
        assert!((a - b).abs() < 0.1);
    }

    #[test]
    fn cached_integral_agrees_with_direct_and_is_additive() {
        let mut ms = MeanSquare::for_range(0.25, 500.0).unwrap();
        let e300 = ms.error_term(300.0);
        assert!((e300 - e_direct(300.0, 0.05).unwrap()).abs() < 0.05);
        let i1 = ms.integral(200.0);
        let i2 = ms.integral(470.3);
        let piece = simpson(zeta_abs2, 200.0, 470.3, 10_000);
        assert!((i2 - i1 - piece).abs() < 1e-6);
    }

    #[test]
    fn panel_width_rule() {
        assert_eq!(panel_width(10.0), 0.05);
        assert!(panel_width(1e8) < 0.05);
    }
}
