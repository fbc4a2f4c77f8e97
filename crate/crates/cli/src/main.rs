//! `divzeta`: scans and checks for the divisor problem and the mean square of ζ on the critical line.
//!
//! Exit codes: 0 success, 1 other failure (including a failed `verify`), 2 usage,
//! 3 resource cap, 4 precision failure.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use divzeta::cache::{default_cache_dir, load_or_build_capped, CacheOutcome};
use divzeta::divisor::{delta, delta_star, delta_star_alternating, delta_via_psi, sieve_divisors_capped, DivisorTable};
use divzeta::error_terms::atkinson::e_atkinson;
use divzeta::error_terms::balasubramanian::e_balasubramanian_capped;
use divzeta::error_terms::e_star::{e_star, table_limit_for};
use divzeta::error_terms::mean_square::{e_direct, panel_width, MeanSquare};
use divzeta::error_terms::moments::{fit_second_moment, moment_scan, ratio_spread};
use divzeta::error_terms::short_interval::{short_interval_ms, BumpProfile};
use divzeta::exppair::{
    lindelof_pair, parse_rational, report, search_from, seed_pairs, ExponentPair, Objective, PairMode, Process,
    MAX_SEARCH_DEPTH,
};
use divzeta::scan::{write_frontier_csv, ScanResult};
use divzeta::voronoi::{voronoi_sum, VoronoiKind};
use divzeta::zeta::{z_function, zeta, ComplexPoint, Z_FUNCTION_MIN_T};
use output::{manifest_path, Run, Sink};
use serde::Serialize;

#[derive(Parser, Serialize)]
#[command(name = "divzeta", version, about = "Divisor-problem and zeta mean-square scans")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Serialize)]
struct Global {
    /// Data file; a `<out>.manifest.json` run manifest is written next to it
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// csv: columnar data; json: summary object
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Divisor-table cache directory (default: $DIVZETA_CACHE_DIR, then the user cache dir)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    /// Sieve in memory without touching the cache
    #[arg(long, global = true)]
    no_cache: bool,
    /// Largest divisor table a run may allocate
    #[arg(long, global = true, default_value_t = divzeta::divisor::DEFAULT_MAX_TABLE_LIMIT)]
    max_table: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
enum Format {
    Csv,
    Json,
}

#[derive(Args, Serialize, Clone)]
struct Range {
    /// Lower end of the range
    #[arg(long)]
    min: Option<f64>,
    /// Upper end of the range
    #[arg(long)]
    max: f64,
    /// Spacing between points
    #[arg(long, conflicts_with = "count")]
    step: Option<f64>,
    /// Number of equally spaced points instead of --step
    #[arg(long)]
    count: Option<usize>,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Δ(x), Δ*(x) or the ψ-sum form of Δ over a range of x
    DeltaScan {
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value_t = DeltaKind::Delta)]
        kind: DeltaKind,
    },
    /// Truncated Voronoi sums against the exact Δ or Δ*
    Voronoi {
        #[arg(long)]
        x: f64,
        /// Truncation orders, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [100u64, 1000, 10000])]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value_t = SeriesKind::Delta)]
        kind: SeriesKind,
    },
    /// ζ(σ+it) and, on the critical line, Hardy's Z(t)
    ZetaEval {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long, default_value_t = 0.5)]
        sigma: f64,
    },
    /// E(T) from the cumulative mean-square integral
    EScan {
        #[command(flatten)]
        range: Range,
        /// Simpson panel width (default: resolves the fastest oscillation at --max)
        #[arg(long)]
        panel: Option<f64>,
    },
    /// E(T) from Atkinson's formula
    Atkinson {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        /// Cutoff N (default N = T)
        #[arg(long)]
        n: Option<f64>,
        /// Also compute E(T) by quadrature and fit C in |ΔE| <= C log²T
        #[arg(long)]
        compare: bool,
    },
    /// E(T) from Balasubramanian's double sums
    Balasu {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        #[arg(long)]
        compare: bool,
        /// Cap on K = √(T/2π)
        #[arg(long, default_value_t = divzeta::error_terms::balasubramanian::DEFAULT_MAX_K)]
        max_k: f64,
    },
    /// E, 2πΔ*(t/2π) and E* on a grid
    EstarScan {
        #[arg(long)]
        max: f64,
        #[arg(long, default_value_t = 0.25)]
        step: f64,
    },
    /// ∫|E*|^k at dyadic checkpoints
    Moments {
        #[arg(long)]
        max: f64,
        #[arg(long, default_value_t = 0.25)]
        step: f64,
        #[arg(long, value_delimiter = ',', default_values_t = [2u32, 4, 5])]
        k: Vec<u32>,
        /// Smallest checkpoint used by the cubic-in-log fit of the second moment
        #[arg(long, default_value_t = 32.0)]
        fit_from: f64,
    },
    /// Smoothed mean square of ζ over [T-2G, T+2G]
    ShortInterval {
        #[arg(long, value_delimiter = ',', required = true)]
        t: Vec<f64>,
        /// Half-width G (default T^{1/3})
        #[arg(long)]
        g: Option<f64>,
        #[arg(long, value_enum, default_value_t = Profile::Exp)]
        profile: Profile,
    },
    /// Exponents induced by an exponent pair, optionally after a process word
    ExppairReport {
        /// κ as p/q
        #[arg(long)]
        kappa: String,
        /// λ as p/q
        #[arg(long)]
        lambda: String,
        /// Processes to apply first, e.g. ABA
        #[arg(long, default_value = "")]
        word: String,
        /// Accept boundary pairs such as (0, 1/2)
        #[arg(long)]
        hypothetical: bool,
    },
    /// Exhaustive A/B search; writes the Pareto frontier
    ExppairSearch {
        #[arg(long, default_value_t = 10)]
        depth: usize,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::ThetaDiv)]
        objective: ObjectiveArg,
        /// Add the hypothetical (0, 1/2) seed
        #[arg(long)]
        hypothetical: bool,
    },
    /// Run acceptance criteria
    Verify {
        /// Criteria to run (default: all)
        #[arg(long, value_delimiter = ',')]
        criterion: Vec<u32>,
        /// Upper end of the moment suite
        #[arg(long, default_value_t = 2e4)]
        moment_max: f64,
    },
    /// Build or load the cached divisor table
    Cache {
        #[arg(long)]
        limit: u64,
    },
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum DeltaKind {
    Delta,
    DeltaStar,
    Psi,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum SeriesKind {
    Delta,
    DeltaStar,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum Profile {
    Exp,
    Smoothstep,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
enum ObjectiveArg {
    ThetaDiv,
    ThetaZeta,
}

enum Failure {
    Usage(String),
    Core(divzeta::Error),
    Io(std::io::Error),
    Verify(Vec<u32>),
}

impl From<divzeta::Error> for Failure {
    fn from(e: divzeta::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Core(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Core(e.into())
    }
}

type Outcome<T> = Result<T, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

impl Range {
    fn points(&self, default_min: f64, default_step: f64) -> Outcome<Vec<f64>> {
        let min = self.min.unwrap_or(default_min);
        if !self.max.is_finite() || !min.is_finite() {
            return Err(usage("--min/--max must be finite"));
        }
        if self.max < min || self.max <= 0.0 {
            return Err(usage(format!("--max {} gives an empty range (from {min})", self.max)));
        }
        if let Some(count) = self.count {
            return match count {
                0 => Err(usage("--count must be at least 1")),
                1 => Ok(vec![self.max]),
                _ => Ok((0..count).map(|i| min + (self.max - min) * i as f64 / (count - 1) as f64).collect()),
            };
        }
        let step = self.step.unwrap_or(default_step);
        if !(step > 0.0 && step.is_finite()) {
            return Err(usage("--step must be positive"));
        }
        let n = ((self.max - min) / step + 1e-9).floor() as usize;
        if n > 100_000_000 {
            return Err(Failure::Core(divzeta::Error::ResourceLimit(format!("{} points requested", n + 1))));
        }
        Ok((0..=n).map(|i| min + i as f64 * step).collect())
    }
}

fn positive_list(flag: &str, values: &[f64]) -> Outcome<()> {
    match values.iter().find(|v| !(**v > 0.0 && v.is_finite())) {
        Some(v) => Err(usage(format!("--{flag} must be positive, got {v}"))),
        None => Ok(()),
    }
}

fn load_table(g: &Global, limit: u64, run: &mut Run) -> Outcome<DivisorTable> {
    let limit = limit.max(1);
    if g.no_cache {
        return Ok(sieve_divisors_capped(limit, g.max_table)?);
    }
    let dir = g.cache_dir.clone().unwrap_or_else(default_cache_dir);
    match load_or_build_capped(&dir, limit, g.max_table) {
        Ok((table, outcome)) => {
            if let CacheOutcome::Rebuilt(why) = outcome {
                run.warn(format!("divisor cache in {} rebuilt: {why}", dir.display()));
            }
            Ok(table)
        }
        Err(divzeta::Error::Io(e)) => {
            run.warn(format!("cache directory {} unusable ({e}); sieving in memory", dir.display()));
            Ok(sieve_divisors_capped(limit, g.max_table)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn csv_rows(sink: &mut Sink, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Outcome<()> {
    let mut w = csv::Writer::from_writer(sink.writer());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    w.flush()?;
    Ok(())
}

fn json_out(sink: &mut Sink, value: &impl Serialize) -> Outcome<()> {
    serde_json::to_writer_pretty(&mut *sink.writer(), value)?;
    sink.writer().push(b'\n');
    Ok(())
}

fn f(v: f64) -> String {
    v.to_string()
}

/// Emits rows as CSV, or as a JSON array of objects keyed by the header.
fn emit(
    g: &Global,
    sink: &mut Sink,
    header: &[&str],
    rows: Vec<Vec<String>>,
    summary: serde_json::Value,
) -> Outcome<()> {
    match g.format {
        Format::Csv => csv_rows(sink, header, rows),
        Format::Json => {
            let mut obj = summary;
            if obj.is_null() {
                obj = serde_json::json!({});
            }
            obj["rows"] = rows.len().into();
            json_out(sink, &obj)
        }
    }
}

fn run(cli: &Cli, sink: &mut Sink, run: &mut Run) -> Outcome<()> {
    let g = &cli.global;
    match &cli.command {
        Command::DeltaScan { range, kind } => {
            let xs = range.points(1.0, 1.0)?;
            if xs[0] < 1.0 {
                return Err(usage("--min must be at least 1 for delta-scan"));
            }
            let top = *xs.last().unwrap();
            let mut rows = Vec::with_capacity(xs.len());
            let header: &[&str] = match kind {
                DeltaKind::Delta => {
                    let table = load_table(g, top.floor() as u64, run)?;
                    for &x in &xs {
                        let d = delta(&table, x)?;
                        rows.push(vec![f(x), d.sum_d.to_string(), f(d.main_term), f(d.delta)]);
                    }
                    &["x", "sum_d", "main_term", "delta"]
                }
                DeltaKind::DeltaStar => {
                    let table = load_table(g, (4.0 * top).floor() as u64, run)?;
                    for &x in &xs {
                        rows.push(vec![f(x), f(delta_star(&table, x)?), f(delta_star_alternating(&table, x)?)]);
                    }
                    &["x", "delta_star", "delta_star_alternating"]
                }
                DeltaKind::Psi => {
                    for &x in &xs {
                        rows.push(vec![f(x), f(delta_via_psi(x)?)]);
                    }
                    &["x", "delta_psi"]
                }
            };
            emit(g, sink, header, rows, serde_json::json!({ "points": xs.len(), "max": top }))
        }
        Command::Voronoi { x, n, kind } => {
            if !(*x >= 2.0 && x.is_finite()) {
                return Err(usage(format!("--x must be at least 2, got {x}")));
            }
            if n.is_empty() {
                return Err(usage("--n needs at least one truncation order"));
            }
            let kind = match kind {
                SeriesKind::Delta => VoronoiKind::Delta,
                SeriesKind::DeltaStar => VoronoiKind::DeltaStar,
            };
            let need = n.iter().copied().max().unwrap().max((4.0 * x).ceil() as u64);
            let table = load_table(g, need, run)?;
            let exact = match kind {
                VoronoiKind::Delta => delta(&table, *x)?.delta,
                VoronoiKind::DeltaStar => delta_star(&table, *x)?,
            };
            let mut rows = Vec::new();
            for &order in n {
                let v = voronoi_sum(&table, *x, order, kind)?;
                let residual = (v.value - exact).abs();
                run.constants.insert(format!("residual N={order}"), residual);
                rows.push(vec![f(*x), order.to_string(), f(v.value), f(exact), f(residual)]);
            }
            emit(
                g,
                sink,
                &["x", "N", "value", "exact", "residual"],
                rows,
                serde_json::json!({ "exact": exact, "residuals": run.constants }),
            )
        }
        Command::ZetaEval { t, sigma } => {
            let mut rows = Vec::new();
            for &ti in t {
                if !ti.is_finite() {
                    return Err(usage("--t must be finite"));
                }
                let z = zeta(ComplexPoint::new(*sigma, ti))?;
                let hardy = if *sigma == 0.5 && ti >= Z_FUNCTION_MIN_T { f(z_function(ti)?.z) } else { String::new() };
                rows.push(vec![f(*sigma), f(ti), f(z.re), f(z.im), f(z.norm()), hardy]);
            }
            emit(g, sink, &["sigma", "t", "re", "im", "abs", "z"], rows, serde_json::Value::Null)
        }
        Command::EScan { range, panel } => {
            let ts = range.points(0.0, 1.0)?;
            if ts[0] < 0.0 {
                return Err(usage("--min must be non-negative"));
            }
            let top = *ts.last().unwrap();
            let width = panel.unwrap_or_else(|| panel_width(top.max(1.0)));
            if !(width > 0.0) {
                return Err(usage("--panel must be positive"));
            }
            let grid = range.step.unwrap_or(1.0).min(top.max(width));
            let per_cell = (grid / width).ceil().max(1.0) as usize;
            let mut ms = MeanSquare::new(grid, grid / per_cell as f64)?;
            let rows: Vec<Vec<String>> = ts.iter().map(|&t| vec![f(t), f(ms.error_term(t))]).collect();
            emit(g, sink, &["t", "E"], rows, serde_json::json!({ "panel": grid / per_cell as f64 }))
        }
        Command::Atkinson { t, n, compare } => {
            positive_list("t", t)?;
            let top = t.iter().copied().fold(0.0, f64::max);
            let table = load_table(g, (n.unwrap_or(top).max(top) * 2.0).ceil() as u64 + 2, run)?;
            let mut rows = Vec::new();
            let mut c = 0.0f64;
            for &ti in t {
                let a = e_atkinson(&table, ti, n.unwrap_or(ti))?;
                let mut row = vec![f(ti), f(a.n), f(a.n_prime), f(a.sigma1), f(a.sigma2), f(a.value)];
                if *compare {
                    let ed = e_direct(ti, panel_width(ti))?;
                    c = c.max((ed - a.value).abs() / ti.ln().powi(2));
                    row.extend([f(ed), f(ed - a.value)]);
                }
                rows.push(row);
            }
            let mut header = vec!["T", "N", "N_prime", "sigma1", "sigma2", "E_atkinson"];
            if *compare {
                header.extend(["E_direct", "difference"]);
                run.constants.insert("C".into(), c);
            }
            emit(g, sink, &header, rows, serde_json::json!({ "C": compare.then_some(c) }))
        }
        Command::Balasu { t, compare, max_k } => {
            positive_list("t", t)?;
            let mut rows = Vec::new();
            let mut c = 0.0f64;
            for &ti in t {
                let b = e_balasubramanian_capped(ti, *max_k)?;
                let mut row = vec![f(ti), f(b.k), f(b.first), f(b.second), f(b.value)];
                if *compare {
                    let ed = e_direct(ti, panel_width(ti))?;
                    c = c.max((ed - b.value).abs() / ti.ln().powi(2));
                    row.extend([f(ed), f(ed - b.value)]);
                }
                rows.push(row);
            }
            let mut header = vec!["T", "K", "first", "second", "E_balasubramanian"];
            if *compare {
                header.extend(["E_direct", "difference"]);
                run.constants.insert("C".into(), c);
            }
            emit(g, sink, &header, rows, serde_json::json!({ "C": compare.then_some(c) }))
        }
        Command::EstarScan { max, step } => {
            let scan = estar_samples(g, *max, *step, run)?;
            match g.format {
                Format::Csv => scan.write_csv(sink.writer())?,
                Format::Json => json_out(sink, &scan)?,
            }
            run.constants.insert("sup |E*|".into(), scan.sup_abs_e_star);
            Ok(())
        }
        Command::Moments { max, step, k, fit_from } => {
            let mut scan = estar_samples(g, *max, *step, run)?;
            let mut rows = Vec::new();
            for &order in k {
                let m = moment_scan(&scan.samples, order)?;
                for w in &m.warnings {
                    run.warn(format!("k = {order}: {w}"));
                }
                if let Some(s) = ratio_spread(&m, 4) {
                    run.constants.insert(format!("k={order} spread over top 4"), s);
                }
                for c in &m.checkpoints {
                    rows.push(vec![f(c.t), order.to_string(), f(c.integral), f(c.normalizer), f(c.ratio)]);
                }
                if order == 2 {
                    match fit_second_moment(&m, *fit_from, 4) {
                        Ok(fit) => {
                            for (i, c) in fit.coefficients.iter().enumerate() {
                                run.constants.insert(format!("P3 coefficient {i}"), *c);
                            }
                            run.constants.insert("cubic fit residual".into(), fit.max_relative_residual);
                            scan.fit = Some(fit);
                        }
                        Err(e) => run.warn(format!("cubic fit skipped: {e}")),
                    }
                }
                scan.moments.push(m);
            }
            match g.format {
                Format::Csv => csv_rows(sink, &["t", "k", "integral", "normalizer", "ratio"], rows),
                Format::Json => json_out(sink, &scan),
            }
        }
        Command::ShortInterval { t, g: half, profile } => {
            positive_list("t", t)?;
            let profile = match profile {
                Profile::Exp => BumpProfile::ExpCollar,
                Profile::Smoothstep => BumpProfile::SmoothStep,
            };
            let mut rows = Vec::new();
            for &ti in t {
                let gi = half.unwrap_or_else(|| ti.powf(1.0 / 3.0));
                let v = short_interval_ms(ti, gi, profile).map_err(|e| match e {
                    divzeta::Error::InvalidArgument(m) => usage(format!("--g: {m}")),
                    e => e.into(),
                })?;
                let ratio = v / (gi * ti.ln());
                run.constants.insert(format!("ratio T={ti}"), ratio);
                rows.push(vec![f(ti), f(gi), f(v), f(ratio)]);
            }
            emit(g, sink, &["T", "G", "value", "ratio"], rows, serde_json::json!({ "ratios": run.constants }))
        }
        Command::ExppairReport { kappa, lambda, word, hypothetical } => {
            let k = parse_rational(kappa).map_err(|e| usage(format!("--kappa: {e}")))?;
            let l = parse_rational(lambda).map_err(|e| usage(format!("--lambda: {e}")))?;
            let mode = if *hypothetical { PairMode::Hypothetical } else { PairMode::Proven };
            let mut p = ExponentPair::new(k, l, mode).map_err(|e| usage(format!("--kappa/--lambda: {e}")))?;
            for ch in word.chars() {
                let step = match ch.to_ascii_uppercase() {
                    'A' => Process::A,
                    'B' => Process::B,
                    _ => return Err(usage(format!("--word may only contain A and B, got {ch:?}"))),
                };
                p = p.apply(step)?;
            }
            let r = report(&p);
            let [dk, dl, dd, dz] = r.decimal();
            eprintln!(
                "pair ({}, {}) ≈ ({dk:.6}, {dl:.6}); theta_div = {} ≈ {dd:.6}; theta_zeta = {} ≈ {dz:.6}; 3λ+κ < 2: {}; λ < 1: {}",
                p.kappa(), p.lambda(), r.theta_div, r.theta_zeta, r.beats_one_third, r.nontrivial
            );
            run.constants.insert("theta_div".into(), dd);
            run.constants.insert("theta_zeta".into(), dz);
            let row = vec![
                p.kappa().to_string(),
                p.lambda().to_string(),
                p.word_string(),
                r.theta_div.to_string(),
                r.theta_zeta.to_string(),
                r.beats_one_third.to_string(),
                r.nontrivial.to_string(),
            ];
            let header = ["kappa", "lambda", "word", "theta_div", "theta_zeta", "beats_one_third", "nontrivial"];
            match g.format {
                Format::Csv => csv_rows(sink, &header, [row]),
                Format::Json => {
                    let obj: serde_json::Map<String, serde_json::Value> =
                        header.iter().zip(row).map(|(h, v)| (h.to_string(), v.into())).collect();
                    json_out(sink, &obj)
                }
            }
        }
        Command::ExppairSearch { depth, objective, hypothetical } => {
            if *depth > MAX_SEARCH_DEPTH {
                return Err(Failure::Core(divzeta::Error::ResourceLimit(format!(
                    "--depth {depth} exceeds the cap {MAX_SEARCH_DEPTH}"
                ))));
            }
            let mut seeds = seed_pairs();
            if *hypothetical {
                // rebuild the proven seeds in hypothetical mode so every pair shares one rule
                seeds = seeds
                    .into_iter()
                    .map(|s| ExponentPair::new(s.kappa().clone(), s.lambda().clone(), PairMode::Hypothetical))
                    .collect::<Result<_, _>>()?;
                seeds.push(lindelof_pair());
            }
            let objective = match objective {
                ObjectiveArg::ThetaDiv => Objective::ThetaDiv,
                ObjectiveArg::ThetaZeta => Objective::ThetaZeta,
            };
            let out = search_from(&seeds, *depth, objective)?;
            let [_, _, dd, dz] = out.best.decimal();
            eprintln!(
                "best after depth {depth}: ({}, {}) from {} via {}; theta_div = {} ≈ {dd:.8}; {} pairs reached, {} on the frontier",
                out.best.pair.kappa(),
                out.best.pair.lambda(),
                out.best.pair.seed(),
                out.best.pair.word_string(),
                out.best.theta_div,
                out.reached,
                out.frontier.len()
            );
            run.constants.insert("best theta_div".into(), dd);
            run.constants.insert("best theta_zeta".into(), dz);
            run.constants.insert("pairs reached".into(), out.reached as f64);
            match g.format {
                Format::Csv => Ok(write_frontier_csv(&out.frontier, sink.writer())?),
                Format::Json => json_out(
                    sink,
                    &serde_json::json!({
                        "best": {
                            "kappa": out.best.pair.kappa().to_string(),
                            "lambda": out.best.pair.lambda().to_string(),
                            "seed": out.best.pair.seed(),
                            "word": out.best.pair.word_string(),
                            "theta_div": out.best.theta_div.to_string(),
                            "theta_zeta": out.best.theta_zeta.to_string(),
                        },
                        "best_by_depth": out.best_by_depth.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
                        "reached": out.reached,
                        "frontier_size": out.frontier.len(),
                    }),
                ),
            }
        }
        Command::Verify { criterion, moment_max } => {
            let ids: Vec<u32> = if criterion.is_empty() { (1..=8).collect() } else { criterion.clone() };
            if let Some(bad) = ids.iter().find(|i| !(1..=8).contains(*i)) {
                return Err(usage(format!("--criterion {bad}: expected 1..=8")));
            }
            let mut reports = Vec::new();
            for id in ids {
                let r = divzeta::verify::run_one(id, *moment_max)?;
                eprintln!("{}", r.summary());
                for (k, v) in &r.constants {
                    run.constants.insert(format!("criterion {id}: {k}"), *v);
                }
                reports.push(r);
            }
            match g.format {
                Format::Csv => {
                    for r in &reports {
                        sink.writer().extend_from_slice(r.to_string().as_bytes());
                    }
                }
                Format::Json => json_out(sink, &reports)?,
            }
            let failed: Vec<u32> = reports.iter().filter(|r| !r.passed()).map(|r| r.id).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure::Verify(failed))
            }
        }
        Command::Cache { limit } => {
            if *limit == 0 {
                return Err(usage("--limit must be at least 1"));
            }
            let dir = g.cache_dir.clone().unwrap_or_else(default_cache_dir);
            let (table, outcome) = load_or_build_capped(&dir, *limit, g.max_table)?;
            let outcome = match outcome {
                CacheOutcome::Loaded => "loaded".to_string(),
                CacheOutcome::Built => "built".to_string(),
                CacheOutcome::Rebuilt(why) => {
                    run.warn(format!("cache rebuilt: {why}"));
                    "rebuilt".to_string()
                }
            };
            let path = divzeta::cache::cache_path(&dir);
            emit(
                g,
                sink,
                &["path", "limit", "outcome"],
                vec![vec![path.display().to_string(), table.limit().to_string(), outcome.clone()]],
                serde_json::json!({ "path": path, "limit": table.limit(), "outcome": outcome }),
            )
        }
    }
}

fn estar_samples(g: &Global, max: f64, step: f64, run: &mut Run) -> Outcome<ScanResult> {
    if !(max > 0.0 && max.is_finite()) {
        return Err(usage(format!("--max must be positive, got {max}")));
    }
    if !(step > 0.0 && step <= max) {
        return Err(usage(format!("--step must lie in (0, --max], got {step}")));
    }
    let table = load_table(g, table_limit_for(max), run)?;
    let mut ms = MeanSquare::for_range(step, max)?;
    ms.extend_to(max);
    let count = (max / step + 1e-9).floor() as usize;
    let samples = (0..=count).map(|i| e_star(&table, &mut ms, i as f64 * step)).collect::<divzeta::Result<Vec<_>>>()?;
    Ok(ScanResult::new(samples))
}

fn exit_code(f: &Failure) -> (u8, String) {
    use divzeta::Error as E;
    match f {
        Failure::Usage(m) => (2, format!("usage error: {m}")),
        Failure::Core(e @ (E::InvalidArgument(_) | E::OutOfRange(_) | E::Domain(_))) => (2, format!("error: {e}")),
        Failure::Core(e @ E::ResourceLimit(_)) => (3, format!("error: {e}")),
        Failure::Core(e @ E::Precision(_)) => (4, format!("error: {e}")),
        Failure::Core(e) => (1, format!("error: {e}")),
        Failure::Io(e) => (1, format!("error: {e}")),
        Failure::Verify(ids) => (1, format!("verification failed for criteria {ids:?}")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut run_state = Run::start();
    let mut sink = Sink::new(cli.global.out.clone());
    let result = run(&cli, &mut sink, &mut run_state);
    // data is written even when verification fails, so the report is kept
    let keep = matches!(result, Ok(()) | Err(Failure::Verify(_)));
    if keep {
        let written = match sink.finish() {
            Ok(w) => w,
            Err(e) => {
                eprintln!("error: writing output: {e}");
                return ExitCode::from(1);
            }
        };
        if let Some(out) = &cli.global.out {
            let name = serde_json::to_value(&cli.command)
                .ok()
                .and_then(|v| match v {
                    serde_json::Value::Object(m) => m.keys().next().cloned(),
                    serde_json::Value::String(s) => Some(s),
                    _ => None,
                })
                .unwrap_or_default();
            let config = serde_json::to_value(&cli).unwrap_or(serde_json::Value::Null);
            let manifest = run_state.manifest(&name, config, written);
            let text = serde_json::to_string_pretty(&manifest).expect("manifest serialises");
            if let Err(e) = std::fs::write(manifest_path(out), text + "\n") {
                eprintln!("error: writing manifest: {e}");
                return ExitCode::from(1);
            }
        }
    }
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = exit_code(&f);
            eprintln!("{msg}");
            ExitCode::from(code)
        }
    }
}
