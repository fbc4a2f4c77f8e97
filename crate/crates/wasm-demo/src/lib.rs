//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each exported function is a thin wrapper over a plain Rust function of the same name
//! with a `_points`/`_json` suffix, which is what the native tests exercise.

use divzeta::divisor::{delta, delta_star, sieve_divisors_capped};
use divzeta::exppair::{parse_rational, report, ExponentPair, PairMode, Process};
use divzeta::voronoi::{voronoi_sum, VoronoiKind};
use divzeta::zeta::{hardy_z, Z_FUNCTION_MIN_T};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; a 4·10⁶ table is ~50 MB of wasm memory.
pub const MAX_BROWSER_TABLE: u64 = 4_000_000;
pub const MAX_SAMPLES: usize = 20_000;

fn check_samples(samples: usize) -> Result<(), String> {
    if (2..=MAX_SAMPLES).contains(&samples) {
        Ok(())
    } else {
        Err(format!("samples must be between 2 and {MAX_SAMPLES}"))
    }
}

/// `[t0, Z(t0), t1, Z(t1), …]` on an even grid over `[t_min, t_max]`.
pub fn z_curve_points(t_min: f64, t_max: f64, samples: usize) -> Result<Vec<f64>, String> {
    check_samples(samples)?;
    if !(t_min >= Z_FUNCTION_MIN_T && t_max > t_min && t_max <= 1e8) {
        return Err(format!("need {Z_FUNCTION_MIN_T} <= t_min < t_max <= 1e8"));
    }
    let h = (t_max - t_min) / (samples - 1) as f64;
    Ok((0..samples)
        .flat_map(|i| {
            let t = t_min + i as f64 * h;
            [t, hardy_z(t)]
        })
        .collect())
}

/// `[x0, exact0, series0, x1, …]`: `Δ` (or `Δ*`) against its Voronoi sum truncated at `n`.
pub fn voronoi_points(x_min: f64, x_max: f64, samples: usize, n: u32, star: bool) -> Result<Vec<f64>, String> {
    check_samples(samples)?;
    if !(x_min >= 2.0 && x_max > x_min) {
        return Err("need 2 <= x_min < x_max".into());
    }
    let kind = if star { VoronoiKind::DeltaStar } else { VoronoiKind::Delta };
    let need = (n as u64).max((4.0 * x_max).ceil() as u64);
    let table = sieve_divisors_capped(need, MAX_BROWSER_TABLE).map_err(|e| e.to_string())?;
    let h = (x_max - x_min) / (samples - 1) as f64;
    let mut out = Vec::with_capacity(3 * samples);
    for i in 0..samples {
        let x = x_min + i as f64 * h;
        let exact = if star { delta_star(&table, x) } else { delta(&table, x).map(|d| d.delta) };
        let series = voronoi_sum(&table, x, n as u64, kind).map(|v| v.value);
        out.extend([x, exact.map_err(|e| e.to_string())?, series.map_err(|e| e.to_string())?]);
    }
    Ok(out)
}

/// Exact report for `(κ, λ)` after applying `word`, as a JSON object of strings and booleans.
pub fn exppair_json(kappa: &str, lambda: &str, word: &str, hypothetical: bool) -> Result<String, String> {
    let k = parse_rational(kappa).map_err(|e| e.to_string())?;
    let l = parse_rational(lambda).map_err(|e| e.to_string())?;
    let mode = if hypothetical { PairMode::Hypothetical } else { PairMode::Proven };
    let mut p = ExponentPair::new(k, l, mode).map_err(|e| e.to_string())?;
    for ch in word.chars().filter(|c| !c.is_whitespace()) {
        let step = match ch.to_ascii_uppercase() {
            'A' => Process::A,
            'B' => Process::B,
            other => return Err(format!("unknown process {other:?}; use A and B")),
        };
        p = p.apply(step).map_err(|e| e.to_string())?;
    }
    let r = report(&p);
    let [dk, dl, dd, dz] = r.decimal();
    Ok(serde_json::json!({
        "kappa": p.kappa().to_string(),
        "lambda": p.lambda().to_string(),
        "word": p.word_string(),
        "theta_div": r.theta_div.to_string(),
        "theta_zeta": r.theta_zeta.to_string(),
        "beats_one_third": r.beats_one_third,
        "nontrivial": r.nontrivial,
        "decimal": { "kappa": dk, "lambda": dl, "theta_div": dd, "theta_zeta": dz },
    })
    .to_string())
}

#[wasm_bindgen]
pub fn z_curve(t_min: f64, t_max: f64, samples: usize) -> Result<Vec<f64>, JsValue> {
    z_curve_points(t_min, t_max, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn voronoi_compare(x_min: f64, x_max: f64, samples: usize, n: u32, star: bool) -> Result<Vec<f64>, JsValue> {
    voronoi_points(x_min, x_max, samples, n, star).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn exppair_report(kappa: &str, lambda: &str, word: &str, hypothetical: bool) -> Result<String, JsValue> {
    exppair_json(kappa, lambda, word, hypothetical).map_err(|e| JsValue::from_str(&e))
}
