//! Running maximum of `|ζ(1/2+it)|·t^{-1/6}` over an adaptive grid.

use serde::Serialize;
use std::f64::consts::PI;

use super::{hardy_z, Z_FUNCTION_MIN_T};
use crate::error::{invalid, Result};
use crate::error_terms::exponent::least_squares_slope;

/// Largest grid step; smaller steps follow the local zero spacing.
pub const MAX_STEP: f64 = 0.05;

/// `min(0.05, π/(8 log(t/2π)))`, a sixteenth of the mean gap between zeros.
pub fn witness_step(t: f64) -> f64 {
    let l = (t / (2.0 * PI)).ln();
    if l <= 0.0 {
        MAX_STEP
    } else {
        MAX_STEP.min(PI / (8.0 * l))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Record {
    pub t: f64,
    /// `|Z(t)|`
    pub z_abs: f64,
    /// `|Z(t)| t^{-1/6}`
    pub scaled: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SubconvexityWitness {
    pub t_min: f64,
    pub t_max: f64,
    pub samples: usize,
    /// Every point at which the running maximum increased, after local refinement.
    pub records: Vec<Record>,
    /// Running maximum at `t = t_max / 10^{j/8}`, `j = 8, …, 0`, ascending in `t`.
    pub top_decade: Vec<(f64, f64)>,
    /// Least-squares slope of `log max` against `log t` over `top_decade`.
    pub top_decade_slope: f64,
}

impl SubconvexityWitness {
    pub fn running_max_at(&self, t: f64) -> f64 {
        self.records.iter().take_while(|r| r.t <= t).last().map_or(0.0, |r| r.scaled)
    }
}

fn scaled(t: f64) -> f64 {
    hardy_z(t).abs() * t.powf(-1.0 / 6.0)
}

/// Golden-section maximisation of the scaled `|Z|` on `[a, b]`.
fn refine(a: f64, b: f64) -> (f64, f64) {
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (scaled(c), scaled(d));
    for _ in 0..40 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = scaled(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = scaled(d);
        }
        if b - a < 1e-9 * b {
            break;
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Scans `[t_min, t_max]` (`t_min >= 10`) with [`witness_step`], refining around each new record.
pub fn subconvexity_witness(t_min: f64, t_max: f64) -> Result<SubconvexityWitness> {
    if !(t_min >= Z_FUNCTION_MIN_T && t_max > 10.0 * t_min) {
        return Err(invalid!("witness range needs 10 <= t_min and t_max > 10 t_min"));
    }
    let mut records: Vec<Record> = Vec::new();
    let mut best = 0.0f64;
    let mut samples = 0usize;
    let mut prev = (t_min, scaled(t_min));
    let mut t = t_min;
    // candidate record whose neighbourhood still needs its right-hand sample
    let mut pending: Option<(f64, f64)> = None;
    while t < t_max {
        let next = (t + witness_step(t)).min(t_max);
        let v = scaled(next);
        samples += 1;
        if let Some((left, _)) = pending.take() {
            let (tr, vr) = refine(left, next);
            let (tr, vr) = if vr >= prev.1 { (tr, vr) } else { prev };
            if vr > best {
                best = vr;
                records.push(Record { t: tr, z_abs: vr * tr.powf(1.0 / 6.0), scaled: vr });
            }
        }
        if v > best {
            pending = Some((t, v));
        }
        prev = (next, v);
        t = next;
    }
    if let Some((_, v)) = pending {
        if v > best {
            records.push(Record { t: prev.0, z_abs: v * prev.0.powf(1.0 / 6.0), scaled: v });
        }
    }
    let mut w = SubconvexityWitness { t_min, t_max, samples, records, top_decade: Vec::new(), top_decade_slope: 0.0 };
    w.top_decade = (0..=8)
        .rev()
        .map(|j| {
            let t = t_max / 10f64.powf(j as f64 / 8.0);
            (t, w.running_max_at(t))
        })
        .collect();
    let pts: Vec<(f64, f64)> = w.top_decade.iter().map(|&(t, m)| (t.ln(), m.ln())).collect();
    w.top_decade_slope = least_squares_slope(&pts);
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn step_rule() {
        assert_eq!(witness_step(20.0), MAX_STEP);
        let t = 1e5;
        assert!((witness_step(t) - PI / (8.0 * (t / (2.0 * PI)).ln())).abs() < 1e-15);
        assert!(witness_step(t) < MAX_STEP);
    }

    #[test]
    fn running_max_is_monotone_and_refined() {
        let w = subconvexity_witness(10.0, 200.0).unwrap();
        assert!(w.records.windows(2).all(|r| r[0].t < r[1].t && r[0].scaled < r[1].scaled));
        let last = w.records.last().unwrap();
        // refinement must not lose to any plain grid point
        let mut t = 10.0;
        while t < 200.0 {
            assert!(scaled(t) <= last.scaled + 1e-9);
            t += 0.01;
        }
        assert!(w.top_decade.windows(2).all(|p| p[0].1 <= p[1].1));
    }

    #[test]
    fn rejects_short_range() {
        assert!(subconvexity_witness(5.0, 1000.0).is_err());
        assert!(subconvexity_witness(10.0, 50.0).is_err());
    }
}
