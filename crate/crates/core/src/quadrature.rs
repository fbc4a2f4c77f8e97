//! Composite Simpson rules and a cumulative integral on a uniform grid.

use crate::precise::CompensatedSum;

/// Composite Simpson over `[a, b]` with `panels` panels (each panel uses its midpoint).
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize) -> f64 {
    if b == a {
        return 0.0;
    }
    let panels = panels.max(1);
    let h = (b - a) / panels as f64;
    let mut acc = CompensatedSum::new();
    let mut left = f(a);
    for i in 0..panels {
        let x0 = a + i as f64 * h;
        let x1 = if i + 1 == panels { b } else { x0 + h };
        let mid = f(0.5 * (x0 + x1));
        let right = f(x1);
        acc.add((left + 4.0 * mid + right) * (x1 - x0) / 6.0);
        left = right;
    }
    acc.value()
}

/// Number of panels of width at most `width` needed to cover `[a, b]`.
pub fn panels_for(a: f64, b: f64, width: f64) -> usize {
    (((b - a) / width).ceil() as usize).max(1)
}

/// `∫_0^{t_i} f` at the grid nodes `t_i = i * step`, extendable to the right.
#[derive(Debug, Clone)]
pub struct CumulativeIntegral {
    step: f64,
    panels_per_cell: usize,
    nodes: Vec<f64>,
    acc: CompensatedSum,
}

impl CumulativeIntegral {
    pub fn new(step: f64, panels_per_cell: usize) -> Self {
        assert!(step > 0.0 && panels_per_cell > 0);
        Self { step, panels_per_cell, nodes: vec![0.0], acc: CompensatedSum::new() }
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn panels_per_cell(&self) -> usize {
        self.panels_per_cell
    }

    /// Last grid node currently covered.
    pub fn covered(&self) -> f64 {
        (self.nodes.len() - 1) as f64 * self.step
    }

    /// Extends the node table until it covers `t`.
    pub fn extend_to<F: Fn(f64) -> f64>(&mut self, f: &F, t: f64) {
        while self.covered() < t {
            let i = self.nodes.len() - 1;
            let a = i as f64 * self.step;
            let b = (i + 1) as f64 * self.step;
            self.acc.add(simpson(f, a, b, self.panels_per_cell));
            self.nodes.push(self.acc.value());
        }
    }

    /// Integral at the `i`-th node.
    pub fn at_node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_0^t f`, integrating the last partial cell directly; extends as needed.
    pub fn integral<F: Fn(f64) -> f64>(&mut self, f: &F, t: f64) -> f64 {
        self.extend_to(f, t);
        let i = (t / self.step).floor() as usize;
        let base = i as f64 * self.step;
        if t <= base {
            return self.nodes[i];
        }
        let frac = (t - base) / self.step;
        let panels = ((self.panels_per_cell as f64 * frac).ceil() as usize).max(1);
        self.nodes[i] + simpson(f, base, t, panels)
    }
}
