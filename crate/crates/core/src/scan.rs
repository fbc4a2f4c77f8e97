//! Columnar output: E/E* scans and exponent-pair frontiers as CSV, summaries as JSON.

use std::io::Write;

use serde::Serialize;

use crate::error::Result;
use crate::error_terms::e_star::ErrorTermSample;
use crate::error_terms::moments::{CubicLogFit, MomentScan};
use crate::exppair::{report, ExponentPair, ExponentReport};

pub const SCAN_HEADER: [&str; 4] = ["t", "E", "delta_star", "E_star"];
pub const FRONTIER_HEADER: [&str; 5] = ["kappa", "lambda", "word", "theta_div", "theta_zeta"];

/// Samples of `E`, `2πΔ*(t/2π)` and `E*` plus whatever was derived from them.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanResult {
    #[serde(skip)]
    pub samples: Vec<ErrorTermSample>,
    pub moments: Vec<MomentScan>,
    pub fit: Option<CubicLogFit>,
    pub sup_abs_e: f64,
    pub sup_abs_delta_star: f64,
    pub sup_abs_e_star: f64,
}

impl ScanResult {
    pub fn new(samples: Vec<ErrorTermSample>) -> Self {
        let sup = |f: fn(&ErrorTermSample) -> f64| samples.iter().map(f).fold(0.0_f64, |m, v| m.max(v.abs()));
        Self {
            sup_abs_e: sup(|s| s.e),
            sup_abs_delta_star: sup(|s| s.delta_star_scaled),
            sup_abs_e_star: sup(|s| s.e_star),
            samples,
            moments: Vec::new(),
            fit: None,
        }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        write_samples_csv(&self.samples, out)
    }

    pub fn summary_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

/// Writes `t,E,delta_star,E_star` rows; floats use the shortest round-trip form.
pub fn write_samples_csv<W: Write>(samples: &[ErrorTermSample], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SCAN_HEADER)?;
    for s in samples {
        w.write_record([s.t, s.e, s.delta_star_scaled, s.e_star].map(|v| v.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn frontier_row(r: &ExponentReport) -> [String; 5] {
    [
        r.pair.kappa().to_string(),
        r.pair.lambda().to_string(),
        format!("{}:{}", r.pair.seed(), r.pair.word_string()),
        r.theta_div.to_string(),
        r.theta_zeta.to_string(),
    ]
}

/// Writes `kappa,lambda,word,theta_div,theta_zeta` with exact rationals; the word
/// column is `seed:processes`.
pub fn write_frontier_csv<W: Write>(reports: &[ExponentReport], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FRONTIER_HEADER)?;
    for r in reports {
        w.write_record(frontier_row(r))?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_pairs_csv<W: Write>(pairs: &[ExponentPair], out: W) -> Result<()> {
    let reports: Vec<ExponentReport> = pairs.iter().map(report).collect();
    write_frontier_csv(&reports, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exppair::seed_pairs;

    #[test]
    fn scan_csv_header_and_rows() {
        let samples = vec![ErrorTermSample::new(0.0, 0.0, 0.0), ErrorTermSample::new(0.25, 1.5, -0.5)];
        let mut buf = Vec::new();
        ScanResult::new(samples).write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "t,E,delta_star,E_star\n0,0,0,0\n0.25,1.5,-0.5,2\n");
    }

    #[test]
    fn summary_tracks_sups() {
        let r = ScanResult::new(vec![ErrorTermSample::new(1.0, -3.0, 1.0), ErrorTermSample::new(2.0, 2.0, 0.5)]);
        assert_eq!((r.sup_abs_e, r.sup_abs_delta_star, r.sup_abs_e_star), (3.0, 1.0, 4.0));
        let json: serde_json::Value = serde_json::from_str(&r.summary_json().unwrap()).unwrap();
        assert_eq!(json["sup_abs_e_star"], 4.0);
    }

    #[test]
    fn frontier_csv_is_exact() {
        let mut buf = Vec::new();
        write_pairs_csv(&seed_pairs()[1..2], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "kappa,lambda,word,theta_div,theta_zeta\n1/2,1/2,standard:-,1/3,1/6\n");
    }
}
