//! Error-free transformations and a minimal double-double type.
//!
//! Divisor error terms are small differences of numbers around `x log x`;
//! for `x` near `10^8` a plain `f64` main term loses about `1e-8` absolutely,
//! which is enough to swamp relative comparisons of `Δ*`. The main terms are
//! therefore evaluated in double-double arithmetic.

use std::f64::consts::LN_2;
use std::ops::{Add, Div, Mul, Sub};

const LN_2_LO: f64 = 2.319_046_813_846_299_6e-17;

#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const fn new(hi: f64, lo: f64) -> Self {
        Self { hi, lo }
    }

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (h, l) = two_sum(hi, lo);
        Self { hi: h, lo: l }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        Self::renorm(p, e + self.lo * b)
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Natural logarithm of a positive `f64`, accurate to roughly `1e-30` relative.
    pub fn ln(x: f64) -> Self {
        debug_assert!(x > 0.0 && x.is_finite());
        // x = m * 2^k with m in [sqrt(1/2), sqrt(2))
        let (mut m, mut k) = frexp(x);
        if m < std::f64::consts::FRAC_1_SQRT_2 {
            m *= 2.0;
            k -= 1;
        }
        // ln m = 2 atanh(z), z = (m - 1) / (m + 1), |z| < 0.172
        let num = Self::from_f64(m) - Self::from_f64(1.0);
        let den = Self::from_f64(m) + Self::from_f64(1.0);
        let z = num / den;
        let z2 = z * z;
        let mut term = z;
        let mut acc = z;
        let mut j = 1.0;
        loop {
            term = term * z2;
            j += 2.0;
            let contrib = term / Self::from_f64(j);
            acc = acc + contrib;
            if contrib.hi.abs() <= 1e-34 * acc.hi.abs() {
                break;
            }
        }
        let ln2 = Self::new(LN_2, LN_2_LO);
        acc.mul_f64(2.0) + ln2.mul_f64(k as f64)
    }
}

impl Add for DoubleDouble {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        Self::renorm(s, e + self.lo + o.lo)
    }
}

impl Sub for DoubleDouble {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        self + Self::new(-o.hi, -o.lo)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        Self::renorm(p, e + self.hi * o.lo + self.lo * o.hi)
    }
}

impl Div for DoubleDouble {
    type Output = Self;

    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o.mul_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o.mul_f64(q2);
        let q3 = r.hi / o.hi;
        Self::renorm(q1, q2) + Self::from_f64(q3)
    }
}

/// Splits a positive finite `x` into `m * 2^k` with `m` in `[0.5, 1)`.
fn frexp(x: f64) -> (f64, i32) {
    let bits = x.to_bits();
    let exp = ((bits >> 52) & 0x7ff) as i32;
    if exp == 0 {
        let (m, k) = frexp(x * 2f64.powi(64));
        return (m, k - 64);
    }
    let m = f64::from_bits((bits & !(0x7ff << 52)) | (1022 << 52));
    (m, exp - 1022)
}

/// Neumaier's variant of compensated summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl std::iter::FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = Self::new();
        for x in iter {
            s.add(x);
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_matches_std_and_improves_on_it() {
        for &x in &[0.25, 0.5, 1.0, 2.0, 3.0, 10.0, 1e7 + 0.3, 4e8] {
            let l = DoubleDouble::ln(x);
            assert!((l.to_f64() - x.ln()).abs() <= 2.0 * f64::EPSILON * x.ln().abs().max(1.0));
        }
        assert_eq!(DoubleDouble::ln(1.0).to_f64(), 0.0);
        // ln 4 = 2 ln 2 to double-double precision
        let l4 = DoubleDouble::ln(4.0);
        assert!((l4.hi - 2.0 * LN_2).abs() < 1e-300 || l4.hi == 2.0 * LN_2);
        assert!((l4.lo - 2.0 * LN_2_LO).abs() < 1e-32);
    }

    #[test]
    fn ln_of_scaled_argument_is_additive() {
        let x = 1234567.891;
        let a = DoubleDouble::ln(x);
        let b = DoubleDouble::ln(2.0 * x);
        let diff = b - a - DoubleDouble::new(LN_2, LN_2_LO);
        assert!(diff.to_f64().abs() < 1e-29);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let s: CompensatedSum = [1e16, 1.0, -1e16, 1.0].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }
}
