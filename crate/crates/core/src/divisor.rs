//! Divisor-function tables and elementary evaluators of `Δ(x)` and `Δ*(x)`.

use std::sync::OnceLock;

use crate::error::{invalid, out_of_range, Error, Result};
use crate::precise::DoubleDouble;

/// Euler's constant `γ = -Γ'(1)`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
/// `γ - EULER_GAMMA`, the tail below double precision.
const EULER_GAMMA_LO: f64 = -4.942_915_152_430_645e-18;

/// Largest limit [`sieve_divisors`] will allocate in memory (12 bytes per entry).
pub const DEFAULT_MAX_TABLE_LIMIT: u64 = 100_000_000;
/// Block length of the segmented sieve.
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 22;

/// `d(n)` for `1 <= n <= limit`, with running sums.
///
/// Immutable once built; share it freely between threads.
#[derive(Debug)]
pub struct DivisorTable {
    limit: u64,
    // values[0] is unused and set to 0
    values: Vec<u32>,
    cumulative: Vec<u64>,
    alternating: OnceLock<Vec<i64>>,
}

impl PartialEq for DivisorTable {
    fn eq(&self, other: &Self) -> bool {
        self.limit == other.limit && self.values == other.values
    }
}

/// One evaluation of `Δ(x) = Σ_{n≤x} d(n) - x(log x + 2γ - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DeltaValue {
    pub x: f64,
    pub sum_d: u64,
    pub main_term: f64,
    pub delta: f64,
}

/// Sieves `d(n)` up to `limit` with the default allocation cap.
pub fn sieve_divisors(limit: u64) -> Result<DivisorTable> {
    sieve_divisors_capped(limit, DEFAULT_MAX_TABLE_LIMIT)
}

pub fn sieve_divisors_capped(limit: u64, max_limit: u64) -> Result<DivisorTable> {
    if limit == 0 {
        return Err(invalid!("sieve limit must be at least 1"));
    }
    if limit > max_limit {
        return Err(Error::ResourceLimit(format!(
            "divisor table of {limit} entries exceeds the in-memory cap {max_limit}; \
             use the segmented sieve"
        )));
    }
    let n = limit as usize;
    let mut values = vec![0u32; n + 1];
    for d in 1..=n {
        for m in (d..=n).step_by(d) {
            values[m] += 1;
        }
    }
    Ok(DivisorTable::from_values(values))
}

impl DivisorTable {
    /// Builds a table from `values[1..]`; `values[0]` is ignored.
    pub(crate) fn from_values(mut values: Vec<u32>) -> Self {
        values[0] = 0;
        let mut cumulative = Vec::with_capacity(values.len());
        let mut acc = 0u64;
        for &v in &values {
            acc += v as u64;
            cumulative.push(acc);
        }
        Self { limit: (values.len() - 1) as u64, values, cumulative, alternating: OnceLock::new() }
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// `d(n)`; panics when `n` is 0 or beyond the limit.
    #[inline]
    pub fn d(&self, n: u64) -> u32 {
        assert!(n >= 1 && n <= self.limit, "d({n}) outside table 1..={}", self.limit);
        self.values[n as usize]
    }

    /// `d(1), ..., d(limit)`.
    pub fn values(&self) -> &[u32] {
        &self.values[1..]
    }

    /// `Σ_{n≤m} d(n)` for an integer bound `m <= limit`.
    #[inline]
    pub fn prefix_sum(&self, m: u64) -> u64 {
        self.cumulative[m as usize]
    }

    /// `Σ_{n≤m} (-1)^n d(n)`.
    pub fn alternating_prefix_sum(&self, m: u64) -> i64 {
        let alt = self.alternating.get_or_init(|| {
            let mut acc = 0i64;
            self.values
                .iter()
                .enumerate()
                .map(|(n, &v)| {
                    if n % 2 == 0 {
                        acc += v as i64;
                    } else {
                        acc -= v as i64;
                    }
                    acc
                })
                .collect()
        });
        alt[m as usize]
    }

    fn floor_in_range(&self, x: f64) -> Result<u64> {
        if !(x.is_finite() && x >= 0.0) {
            return Err(invalid!("x must be a non-negative real, got {x}"));
        }
        let m = x.floor();
        if m > self.limit as f64 {
            return Err(out_of_range!("x = {x} exceeds table limit {}", self.limit));
        }
        Ok(m as u64)
    }
}

/// `Σ_{n≤x} d(n)` read from the table.
pub fn divisor_sum(table: &DivisorTable, x: f64) -> Result<u64> {
    Ok(table.prefix_sum(table.floor_in_range(x)?))
}

/// `Σ_{n≤m} d(n) = 2 Σ_{n≤√m} ⌊m/n⌋ - ⌊√m⌋²`, in `O(√m)` without a table.
pub fn divisor_sum_hyperbola(m: u64) -> u64 {
    let r = m.isqrt();
    let s: u64 = (1..=r).map(|n| m / n).sum();
    2 * s - r * r
}

/// `x (log x + 2γ - 1)` in double-double precision; zero at `x = 0`.
pub fn main_term(x: f64) -> DoubleDouble {
    if x == 0.0 {
        return DoubleDouble::from_f64(0.0);
    }
    let gamma = DoubleDouble::new(EULER_GAMMA, EULER_GAMMA_LO);
    let inner = DoubleDouble::ln(x) + gamma.mul_f64(2.0) - DoubleDouble::from_f64(1.0);
    inner.mul_f64(x)
}

fn delta_parts(sum: i128, main: DoubleDouble) -> f64 {
    debug_assert!(sum.unsigned_abs() < 1 << 53, "integer part not exact in f64");
    (DoubleDouble::from_f64(sum as f64) - main).to_f64()
}

/// `Δ(x)` for `x >= 1` via the table.
pub fn delta(table: &DivisorTable, x: f64) -> Result<DeltaValue> {
    if !(x >= 1.0) {
        return Err(invalid!("Δ(x) requires x >= 1, got {x}"));
    }
    let sum_d = divisor_sum(table, x)?;
    let main = main_term(x);
    Ok(DeltaValue { x, sum_d, main_term: main.to_f64(), delta: delta_parts(sum_d as i128, main) })
}

/// The sawtooth `ψ(x) = x - ⌊x⌋ - 1/2`; equals `-1/2` at integers.
#[inline]
pub fn psi(x: f64) -> f64 {
    x - x.floor() - 0.5
}

/// `-2 Σ_{n≤√x} ψ(x/n)`, which differs from `Δ(x)` by a bounded amount.
pub fn delta_via_psi(x: f64) -> Result<f64> {
    if !(x >= 1.0 && x.is_finite()) {
        return Err(invalid!("delta_via_psi requires x >= 1, got {x}"));
    }
    let r = (x.floor() as u64).isqrt();
    let s: crate::precise::CompensatedSum = (1..=r).map(|n| psi(x / n as f64)).collect();
    Ok(-2.0 * s.value())
}

/// `Δ*(x) = -Δ(x) + 2Δ(2x) - Δ(4x)/2`; needs `4x <= limit`.
pub fn delta_star(table: &DivisorTable, x: f64) -> Result<f64> {
    check_delta_star_range(table, x)?;
    let s1 = table.prefix_sum(x.floor() as u64) as i128;
    let s2 = table.prefix_sum((2.0 * x).floor() as u64) as i128;
    let s4 = table.prefix_sum((4.0 * x).floor() as u64) as i128;
    // combine the exact integer parts first, then the three main terms
    let twice_sum = -2 * s1 + 4 * s2 - s4;
    let main = main_term(x).mul_f64(-2.0) + main_term(2.0 * x).mul_f64(4.0) - main_term(4.0 * x);
    Ok(0.5 * delta_parts(twice_sum, main))
}

/// `Δ*(x) = (1/2) Σ_{n≤4x} (-1)^n d(n) - x(log x + 2γ - 1)`.
pub fn delta_star_alternating(table: &DivisorTable, x: f64) -> Result<f64> {
    check_delta_star_range(table, x)?;
    let alt = table.alternating_prefix_sum((4.0 * x).floor() as u64) as i128;
    Ok(0.5 * delta_parts(alt, main_term(x).mul_f64(2.0)))
}

fn check_delta_star_range(table: &DivisorTable, x: f64) -> Result<()> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(invalid!("Δ*(x) requires x >= 0, got {x}"));
    }
    if (4.0 * x).floor() > table.limit as f64 {
        return Err(out_of_range!("Δ*({x}) needs d(n) up to 4x = {}, table limit is {}", 4.0 * x, table.limit));
    }
    Ok(())
}

/// Streams `d(n)` over `[start, end)` in blocks, without holding the full range.
///
/// Each block counts divisor pairs `(q, n/q)` with `q <= √n`, so the cost per
/// block is `O(√end + len · log len)`.
pub struct SegmentedDivisors {
    next: u64,
    end: u64,
    block_len: usize,
}

impl SegmentedDivisors {
    pub fn new(start: u64, end: u64, block_len: usize) -> Result<Self> {
        if start == 0 {
            return Err(invalid!("segmented sieve starts at n >= 1"));
        }
        if block_len == 0 {
            return Err(invalid!("block length must be positive"));
        }
        Ok(Self { next: start, end, block_len })
    }
}

impl Iterator for SegmentedDivisors {
    /// `(first n of the block, d(n) for the block)`
    type Item = (u64, Vec<u32>);

    fn next(&mut self) -> Option<Self::Item> {
        if self.next >= self.end {
            return None;
        }
        let lo = self.next;
        let hi = (lo + self.block_len as u64).min(self.end);
        let mut block = vec![0u32; (hi - lo) as usize];
        let qmax = (hi - 1).isqrt();
        for q in 1..=qmax {
            let sq = q * q;
            let first = if sq >= lo { sq } else { lo.div_ceil(q) * q };
            let mut m = first;
            if m == sq && m < hi {
                block[(m - lo) as usize] += 1;
                m += q;
            }
            while m < hi {
                block[(m - lo) as usize] += 2;
                m += q;
            }
        }
        self.next = hi;
        Some((lo, block))
    }
}

/// `Σ_{n≤x} d(n)` by streaming the segmented sieve.
pub fn divisor_sum_segmented(x: f64, block_len: usize) -> Result<u64> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(invalid!("x must be a non-negative real, got {x}"));
    }
    let m = x.floor() as u64;
    if m == 0 {
        return Ok(0);
    }
    Ok(SegmentedDivisors::new(1, m + 1, block_len)?.map(|(_, b)| b.iter().map(|&v| v as u64).sum::<u64>()).sum())
}

/// `Δ(x)` from the segmented sieve, for `x` beyond any in-memory table.
pub fn delta_segmented(x: f64, block_len: usize) -> Result<DeltaValue> {
    if !(x >= 1.0) {
        return Err(invalid!("Δ(x) requires x >= 1, got {x}"));
    }
    let sum_d = divisor_sum_segmented(x, block_len)?;
    let main = main_term(x);
    Ok(DeltaValue { x, sum_d, main_term: main.to_f64(), delta: delta_parts(sum_d as i128, main) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn shared() -> &'static DivisorTable {
        static TABLE: OnceLock<DivisorTable> = OnceLock::new();
        TABLE.get_or_init(|| sieve_divisors(200_000).unwrap())
    }

    fn trial_division(n: u64) -> u32 {
        (1..=n).filter(|&k| n.is_multiple_of(k)).count() as u32
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn sieve_small_cases() {
        assert_eq!(sieve_divisors(1).unwrap().values(), &[1]);
        let t = sieve_divisors(12).unwrap();
        assert_eq!(t.d(12), 6);
        assert_eq!(t.values(), &[1, 2, 2, 3, 2, 4, 2, 4, 3, 4, 2, 6]);
        assert_eq!(sieve_divisors(997).unwrap().d(997), 2);
    }

    #[test]
    fn sieve_rejects_bad_limits() {
        assert!(matches!(sieve_divisors(0), Err(Error::InvalidArgument(_))));
        assert!(matches!(sieve_divisors_capped(1001, 1000), Err(Error::ResourceLimit(_))));
    }

    #[test]
    fn sieve_matches_trial_division_and_primes() {
        let t = sieve_divisors(3000).unwrap();
        for n in 1..=3000u64 {
            assert_eq!(t.d(n), trial_division(n), "n = {n}");
        }
        for p in [2u64, 3, 5, 7, 11, 2999] {
            assert_eq!(t.d(p), 2);
        }
    }

    #[test]
    fn segmented_blocks_match_full_sieve() {
        let t = sieve_divisors(20_000).unwrap();
        for block_len in [1usize, 7, 1000, 1 << 15] {
            let mut n = 1u64;
            for (lo, block) in SegmentedDivisors::new(1, 20_001, block_len).unwrap() {
                assert_eq!(lo, n);
                for &v in &block {
                    assert_eq!(v, t.d(n), "n = {n}, block {block_len}");
                    n += 1;
                }
            }
            assert_eq!(n, 20_001);
        }
        // an interior window that does not start at 1
        let (lo, block) = SegmentedDivisors::new(12_345, 12_400, 64).unwrap().next().unwrap();
        assert_eq!(lo, 12_345);
        for (i, &v) in block.iter().enumerate() {
            assert_eq!(v, t.d(12_345 + i as u64));
        }
    }

    #[test]
    fn divisor_sum_small_values() {
        let t = sieve_divisors(100).unwrap();
        assert_eq!(divisor_sum(&t, 1.0).unwrap(), 1);
        assert_eq!(divisor_sum(&t, 10.0).unwrap(), 27);
        assert_eq!(divisor_sum(&t, 10.9).unwrap(), 27);
        // brute force count of pairs with mn <= 100
        let brute: u64 = (1..=100u64).map(|m| (1..=100u64).filter(|n| m * n <= 100).count() as u64).sum();
        assert_eq!(divisor_sum(&t, 100.0).unwrap(), brute);
        assert!(matches!(divisor_sum(&t, 101.0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn delta_closed_forms() {
        let t = sieve_divisors(10).unwrap();
        let d1 = delta(&t, 1.0).unwrap();
        assert_eq!(d1.sum_d, 1);
        assert!((d1.delta - (2.0 - 2.0 * EULER_GAMMA)).abs() < 1e-15);
        assert!((d1.delta - 0.845_568_670_196_934).abs() < 1e-12);
        let d2 = delta(&t, 2.0).unwrap();
        let expected = 3.0 - 2.0 * (2f64.ln() + 2.0 * EULER_GAMMA - 1.0);
        assert!((d2.delta - expected).abs() < 1e-14);
        assert!((d2.delta - (d2.sum_d as f64 - d2.main_term)).abs() < 1e-12);
        assert!(matches!(delta(&t, 0.5), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn psi_values() {
        assert_eq!(psi(0.5), 0.0);
        assert_eq!(psi(1.25), -0.25);
        assert_eq!(psi(7.0), -0.5);
        assert_eq!(psi(-0.25), 0.25);
    }

    #[test]
    fn delta_via_psi_small() {
        assert_eq!(delta_via_psi(1.0).unwrap(), 1.0);
        let t = sieve_divisors(100_000).unwrap();
        let mut worst = 0f64;
        for i in 0..400 {
            let x = 10f64 * 1e4f64.powf(i as f64 / 399.0);
            let dev = (delta(&t, x).unwrap().delta - delta_via_psi(x).unwrap()).abs();
            worst = worst.max(dev);
        }
        assert!(worst <= 5.0, "max deviation {worst}");
    }

    #[test]
    fn delta_star_forms_and_small_x() {
        let t = sieve_divisors(4000).unwrap();
        let a = delta_star(&t, 250.0).unwrap();
        let b = delta_star_alternating(&t, 250.0).unwrap();
        assert!((a - b).abs() <= 1e-9 * a.abs().max(b.abs()));
        let expected = -0.5 - 0.25 * (0.25f64.ln() + 2.0 * EULER_GAMMA - 1.0);
        assert!((delta_star(&t, 0.25).unwrap() - expected).abs() < 1e-14);
        assert!((delta_star_alternating(&t, 0.25).unwrap() - expected).abs() < 1e-14);
        assert!(matches!(delta_star(&t, 1000.5), Err(Error::OutOfRange(_))));
        assert!(delta_star(&t, 1000.0).is_ok());
    }

    #[test]
    fn delta_star_steps_at_quarter_integers() {
        let t = sieve_divisors(4000).unwrap();
        for m in [997u64, 1000, 2310, 3600] {
            let at = m as f64 / 4.0;
            let below = at - 1e-9;
            let jump = delta_star(&t, at).unwrap() - delta_star(&t, below).unwrap();
            let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
            let expected = sign * t.d(m) as f64 / 2.0;
            assert!((jump - expected).abs() < 1e-6, "m = {m}: {jump} vs {expected}");
        }
    }

    #[test]
    fn segmented_delta_matches_table() {
        let t = sieve_divisors(50_000).unwrap();
        for x in [1.0, 17.5, 12_345.6, 50_000.0] {
            let a = delta(&t, x).unwrap();
            let b = delta_segmented(x, 1000).unwrap();
            assert_eq!(a, b);
        }
    }

    proptest! {
        #[test]
        fn multiplicative_on_coprime_pairs(m in 1u64..300, n in 1u64..300) {
            prop_assume!(gcd(m, n) == 1);
            let t = shared();
            prop_assert_eq!(t.d(m * n), t.d(m) * t.d(n));
        }

        #[test]
        fn table_and_hyperbola_sums_agree(m in 0u64..200_000) {
            prop_assert_eq!(shared().prefix_sum(m), divisor_sum_hyperbola(m));
        }
    }
}
