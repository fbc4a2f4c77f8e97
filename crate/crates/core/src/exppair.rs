//! Exact exponent-pair calculus: van der Corput's `A` and `B` processes,
//! the exponents they induce for `E(T)`, `Δ(x)` and `ζ(1/2+it)`, and an
//! exhaustive search over process words.
//!
//! Everything here is exact rational arithmetic; floating point only appears
//! in [`ExponentReport::decimal`] for display.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};

/// Deepest word length [`search_optimal`] will enumerate.
pub const MAX_SEARCH_DEPTH: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Process {
    A,
    B,
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Process::A => "A",
            Process::B => "B",
        })
    }
}

/// Whether a pair is a proven one or a conjectural boundary pair such as `(0, 1/2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairMode {
    /// `0 <= κ <= 1/2 <= λ <= 1` and `κ + λ > 1/2`.
    Proven,
    /// The same with `κ + λ >= 1/2`, admitting the Lindelöf corner `(0, 1/2)`.
    Hypothetical,
}

/// An exponent pair `(κ, λ)` together with the processes applied to its seed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentPair {
    kappa: BigRational,
    lambda: BigRational,
    /// Processes in the order they were applied.
    word: Vec<Process>,
    seed: String,
    mode: PairMode,
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p/q` or an integer.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| invalid!("not a rational: {s:?}"))?;
    let den: BigInt = den.parse().map_err(|_| invalid!("not a rational: {s:?}"))?;
    if den.is_zero() {
        return Err(invalid!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

impl ExponentPair {
    pub fn new(kappa: BigRational, lambda: BigRational, mode: PairMode) -> Result<Self> {
        let seed = format!("({kappa}, {lambda})");
        let p = Self { kappa, lambda, word: Vec::new(), seed, mode };
        p.check().map_err(|m| invalid!("{m}"))?;
        Ok(p)
    }

    pub fn from_ratios(k: (i64, i64), l: (i64, i64)) -> Result<Self> {
        Self::new(ratio(k.0, k.1), ratio(l.0, l.1), PairMode::Proven)
    }

    fn named(mut self, name: &str) -> Self {
        self.seed = name.to_string();
        self
    }

    pub fn kappa(&self) -> &BigRational {
        &self.kappa
    }

    pub fn lambda(&self) -> &BigRational {
        &self.lambda
    }

    pub fn word(&self) -> &[Process] {
        &self.word
    }

    pub fn seed(&self) -> &str {
        &self.seed
    }

    pub fn mode(&self) -> PairMode {
        self.mode
    }

    /// Word rendered in application order, `-` for the bare seed.
    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "-".into()
        } else {
            self.word.iter().map(|p| p.to_string()).collect()
        }
    }

    fn check(&self) -> std::result::Result<(), String> {
        let half = ratio(1, 2);
        let (k, l) = (&self.kappa, &self.lambda);
        let box_ok = !k.is_negative() && *k <= half && half <= *l && *l <= BigRational::one();
        let sum = k + l;
        let corner_ok = match self.mode {
            PairMode::Proven => sum > half,
            PairMode::Hypothetical => sum >= half,
        };
        if box_ok && corner_ok {
            Ok(())
        } else {
            Err(format!(
                "({k}, {l}) is not an admissible {} exponent pair",
                match self.mode {
                    PairMode::Proven => "proven",
                    PairMode::Hypothetical => "hypothetical",
                }
            ))
        }
    }

    fn derived(&self, kappa: BigRational, lambda: BigRational, step: Process) -> Result<Self> {
        let mut word = self.word.clone();
        word.push(step);
        let p = Self { kappa, lambda, word, seed: self.seed.clone(), mode: self.mode };
        p.check().map_err(Error::InternalConsistency)?;
        Ok(p)
    }

    /// `A: (κ, λ) -> (κ/(2κ+2), (κ+λ+1)/(2κ+2))`.
    pub fn apply_a(&self) -> Result<Self> {
        let two = ratio(2, 1);
        let den = &two * &self.kappa + &two;
        let kappa = &self.kappa / &den;
        let lambda = (&self.kappa + &self.lambda + BigRational::one()) / &den;
        self.derived(kappa, lambda, Process::A)
    }

    /// `B: (κ, λ) -> (λ - 1/2, κ + 1/2)`, an involution.
    pub fn apply_b(&self) -> Result<Self> {
        let half = ratio(1, 2);
        self.derived(&self.lambda - &half, &self.kappa + &half, Process::B)
    }

    pub fn apply(&self, p: Process) -> Result<Self> {
        match p {
            Process::A => self.apply_a(),
            Process::B => self.apply_b(),
        }
    }

    fn key(&self) -> (BigRational, BigRational) {
        (self.kappa.clone(), self.lambda.clone())
    }
}

/// The trivial `(0,1)`, standard `(1/2,1/2)`, classical `(1/6,2/3)` and `(11/30,16/30)` pairs.
pub fn seed_pairs() -> Vec<ExponentPair> {
    let mk = |k, l, name| ExponentPair::from_ratios(k, l).expect("seed pairs are admissible").named(name);
    vec![
        mk((0, 1), (1, 1), "trivial"),
        mk((1, 2), (1, 2), "standard"),
        mk((1, 6), (2, 3), "classical"),
        mk((11, 30), (16, 30), "11/30"),
    ]
}

/// The Lindelöf corner `(0, 1/2)`, only admissible in hypothetical mode.
pub fn lindelof_pair() -> ExponentPair {
    ExponentPair::new(ratio(0, 1), ratio(1, 2), PairMode::Hypothetical)
        .expect("(0, 1/2) is a hypothetical pair")
        .named("lindelof")
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExponentReport {
    pub pair: ExponentPair,
    /// `(κ+λ)/(2+2κ)`, the exponent for `E(T)` and `Δ(x)`.
    pub theta_div: BigRational,
    /// `(κ+λ)/(4+4κ)`, the exponent for `ζ(1/2+it)`.
    pub theta_zeta: BigRational,
    /// `3λ + κ < 2`, i.e. `theta_div < 1/3`.
    pub beats_one_third: bool,
    /// `λ < 1`, i.e. `theta_zeta < 1/4`.
    pub nontrivial: bool,
}

impl ExponentReport {
    /// `(κ, λ, theta_div, theta_zeta)` as floats, for display only.
    pub fn decimal(&self) -> [f64; 4] {
        [&self.pair.kappa, &self.pair.lambda, &self.theta_div, &self.theta_zeta].map(|r| r.to_f64().unwrap_or(f64::NAN))
    }
}

pub fn report(p: &ExponentPair) -> ExponentReport {
    let sum = &p.kappa + &p.lambda;
    let one = BigRational::one();
    let two = ratio(2, 1);
    let theta_div = &sum / (&two + &two * &p.kappa);
    let theta_zeta = &sum / (ratio(4, 1) + ratio(4, 1) * &p.kappa);
    let beats_one_third = ratio(3, 1) * &p.lambda + &p.kappa < two;
    let nontrivial = p.lambda < one;
    ExponentReport { pair: p.clone(), theta_div, theta_zeta, beats_one_third, nontrivial }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Objective {
    ThetaDiv,
    ThetaZeta,
}

impl Objective {
    fn value(self, r: &ExponentReport) -> &BigRational {
        match self {
            Objective::ThetaDiv => &r.theta_div,
            Objective::ThetaZeta => &r.theta_zeta,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub best: ExponentReport,
    /// Pairs not dominated in both coordinates, sorted by `κ`.
    pub frontier: Vec<ExponentReport>,
    /// Distinct pairs reached, seeds included.
    pub reached: usize,
    /// Best objective after each depth `0..=max_depth`.
    pub best_by_depth: Vec<BigRational>,
}

/// Breadth-first enumeration of all words of length `<= max_depth` over every seed.
pub fn search_optimal(max_depth: usize, objective: Objective) -> Result<SearchOutcome> {
    search_from(&seed_pairs(), max_depth, objective)
}

/// As [`search_optimal`] from the given seeds. A pair reached by several words keeps the
/// shortest; among equal lengths the earliest seed, then the lexicographically smallest word.
pub fn search_from(seeds: &[ExponentPair], max_depth: usize, objective: Objective) -> Result<SearchOutcome> {
    if max_depth > MAX_SEARCH_DEPTH {
        return Err(Error::ResourceLimit(format!("search depth {max_depth} exceeds the cap {MAX_SEARCH_DEPTH}")));
    }
    if seeds.is_empty() {
        return Err(invalid!("no seed pairs"));
    }
    let mut seen: HashMap<(BigRational, BigRational), ()> = HashMap::new();
    let mut all: Vec<ExponentPair> = Vec::new();
    let mut level: Vec<ExponentPair> = Vec::new();
    for s in seeds {
        if seen.insert(s.key(), ()).is_none() {
            level.push(s.clone());
            all.push(s.clone());
        }
    }
    let better = |a: &ExponentReport, b: &ExponentReport| {
        let (va, vb) = (objective.value(a), objective.value(b));
        va < vb || (va == vb && a.pair.word < b.pair.word && a.pair.word.len() <= b.pair.word.len())
    };
    let mut best = report(&level[0]);
    for p in &level[1..] {
        let r = report(p);
        if better(&r, &best) {
            best = r;
        }
    }
    let mut best_by_depth = vec![objective.value(&best).clone()];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        for p in &level {
            for step in [Process::A, Process::B] {
                let q = p.apply(step)?;
                if seen.insert(q.key(), ()).is_none() {
                    let r = report(&q);
                    if better(&r, &best) {
                        best = r;
                    }
                    next.push(q.clone());
                    all.push(q);
                }
            }
        }
        best_by_depth.push(objective.value(&best).clone());
        level = next;
    }
    let reached = all.len();
    let frontier = pareto_frontier(&all).into_iter().map(|p| report(&p)).collect();
    Ok(SearchOutcome { best, frontier, reached, best_by_depth })
}

/// Pairs for which no other pair is at least as small in both `κ` and `λ`.
pub fn pareto_frontier(pairs: &[ExponentPair]) -> Vec<ExponentPair> {
    let mut sorted: Vec<&ExponentPair> = pairs.iter().collect();
    sorted.sort_by(|a, b| a.kappa.cmp(&b.kappa).then(a.lambda.cmp(&b.lambda)));
    let mut out: Vec<ExponentPair> = Vec::new();
    for p in sorted {
        if out.last().is_some_and(|q| q.kappa == p.kappa) {
            continue;
        }
        if out.last().is_none_or(|q| p.lambda < q.lambda) {
            out.push(p.clone());
        }
    }
    out
}

/// Every pair reachable within `depth` processes from the seeds (deduplicated).
pub fn reachable(seeds: &[ExponentPair], depth: usize) -> Result<Vec<ExponentPair>> {
    let mut seen = HashMap::new();
    let mut level: Vec<ExponentPair> = seeds.iter().filter(|s| seen.insert(s.key(), ()).is_none()).cloned().collect();
    let mut all = level.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for p in &level {
            for step in [Process::A, Process::B] {
                let q = p.apply(step)?;
                if seen.insert(q.key(), ()).is_none() {
                    next.push(q);
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pair(k: (i64, i64), l: (i64, i64)) -> ExponentPair {
        ExponentPair::from_ratios(k, l).unwrap()
    }

    #[test]
    fn seeds_contain_literature_pairs() {
        let seeds = seed_pairs();
        let has = |k, l| seeds.iter().any(|p| *p.kappa() == k && *p.lambda() == l);
        assert!(has(ratio(1, 2), ratio(1, 2)));
        assert!(has(ratio(11, 30), ratio(16, 30)));
        assert!(has(ratio(1, 6), ratio(2, 3)));
        assert!(has(ratio(0, 1), ratio(1, 1)));
    }

    #[test]
    fn a_process_values() {
        let a = pair((1, 2), (1, 2)).apply_a().unwrap();
        assert_eq!((a.kappa().clone(), a.lambda().clone()), (ratio(1, 6), ratio(2, 3)));
        assert_eq!(a.word(), &[Process::A]);
        let fixed = pair((0, 1), (1, 1)).apply_a().unwrap();
        assert_eq!((fixed.kappa().clone(), fixed.lambda().clone()), (ratio(0, 1), ratio(1, 1)));
    }

    #[test]
    fn b_process_values() {
        let b = pair((1, 2), (1, 2)).apply_b().unwrap();
        assert_eq!((b.kappa().clone(), b.lambda().clone()), (ratio(0, 1), ratio(1, 1)));
        let c = pair((1, 6), (2, 3)).apply_b().unwrap();
        assert_eq!((c.kappa().clone(), c.lambda().clone()), (ratio(1, 6), ratio(2, 3)));
    }

    #[test]
    fn golden_reports() {
        let r = report(&pair((1, 2), (1, 2)));
        assert_eq!(r.theta_div, ratio(1, 3));
        assert_eq!(r.theta_zeta, ratio(1, 6));
        assert!(!r.beats_one_third);
        let r = report(&pair((11, 30), (16, 30)));
        assert_eq!(r.theta_div, ratio(27, 82));
        assert!(r.beats_one_third);
        assert!(r.nontrivial);
        let r = report(&lindelof_pair());
        assert_eq!(r.theta_div, ratio(1, 4));
        assert!(!report(&pair((0, 1), (1, 1))).nontrivial);
    }

    #[test]
    fn lindelof_corner_needs_hypothetical_mode() {
        assert!(ExponentPair::new(ratio(0, 1), ratio(1, 2), PairMode::Proven).is_err());
        assert!(ExponentPair::new(ratio(0, 1), ratio(1, 2), PairMode::Hypothetical).is_ok());
        assert!(ExponentPair::new(ratio(3, 5), ratio(1, 2), PairMode::Hypothetical).is_err());
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rational("11/30").unwrap(), ratio(11, 30));
        assert_eq!(parse_rational(" 16 / 30 ").unwrap(), ratio(8, 15));
        assert_eq!(parse_rational("1").unwrap(), ratio(1, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn depth_one_from_standard_pair() {
        let out = search_from(&[pair((1, 2), (1, 2))], 1, Objective::ThetaDiv).unwrap();
        assert_eq!(out.best.theta_div, ratio(1, 3));
        assert!(out.best.pair.word().is_empty());
        assert_eq!(out.reached, 3);
        let a = report(&pair((1, 2), (1, 2)).apply_a().unwrap());
        assert_eq!(a.theta_div, ratio(5, 14));
    }

    #[test]
    fn search_depth_cap() {
        assert!(matches!(search_optimal(25, Objective::ThetaDiv), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn frontier_is_non_dominated() {
        let all = reachable(&seed_pairs(), 6).unwrap();
        let front = pareto_frontier(&all);
        for p in &front {
            for q in &all {
                let dominates = q.kappa() <= p.kappa() && q.lambda() <= p.lambda() && q.key() != p.key();
                assert!(!dominates, "{} dominated by {}", p.seed, q.seed);
            }
        }
    }

    fn valid_pair() -> impl Strategy<Value = ExponentPair> {
        (1i64..=60, 0i64..=60, 0i64..=60).prop_filter_map("admissible", |(q, a, b)| {
            let k = ratio(a.min(q), 2 * q);
            let l = ratio(q + b.min(q), 2 * q);
            ExponentPair::new(k, l, PairMode::Proven).ok()
        })
    }

    proptest! {
        #[test]
        fn processes_preserve_invariants(p in valid_pair()) {
            prop_assert!(p.apply_a().is_ok());
            prop_assert!(p.apply_b().is_ok());
        }

        #[test]
        fn b_is_an_involution(p in valid_pair()) {
            let bb = p.apply_b().unwrap().apply_b().unwrap();
            prop_assert_eq!(bb.key(), p.key());
        }

        #[test]
        fn zeta_exponent_is_half_the_divisor_exponent(p in valid_pair()) {
            let r = report(&p);
            prop_assert_eq!(&r.theta_div / ratio(2, 1), r.theta_zeta.clone());
            prop_assert_eq!(r.beats_one_third, r.theta_div < ratio(1, 3));
        }
    }
}
