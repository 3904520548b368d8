//! Certified floating-point arithmetic: every quantity carries a proven
//! absolute error bound, and comparisons only return a directed verdict
//! when the two intervals are disjoint.
//!
//! The model is interval-by-midpoint: a [`CertifiedReal`] `(value, err)`
//! asserts that the true real lies in `[value - err, value + err]`. All
//! operations widen `err` by a closed-form bound derived from the IEEE 754
//! round-to-nearest guarantee `|fl(z) - z| <= u * |fl(z)|` with unit
//! roundoff `u = 2^-53`, plus a small multiplicative slack covering the
//! handful of roundings incurred while evaluating the bound itself.
//!
//! Summation uses Knuth's TwoSum: the running error of each addition is
//! captured *exactly* and accumulated separately, so for `n` terms the
//! rounding contribution to the final bound is `O(u)` relative to the sum
//! of magnitudes instead of the `O(n*u)` of naive recursive summation.
//! The bound is stated in [`CompensatedSum::total`].
//!
//! Comparison soundness needs no directed rounding: rounding to nearest is
//! monotone, so `fl(a) < fl(b)` implies `a < b` for the exactly-computed
//! interval endpoints, which is the only direction a CERTAIN verdict uses.

use thiserror::Error;

/// Unit roundoff of f64: half an epsilon, `2^-53`.
pub const UNIT_ROUNDOFF: f64 = f64::EPSILON / 2.0;

/// Relative error coefficient assumed for libm `ln` on exactly
/// representable arguments: `|computed - true| <= LOG_ERR_COEFF * u * |true|`.
/// Measured libm implementations stay below 1 ulp (2u); 8u leaves a 4x
/// cushion and is still invisible next to the proof margins (>= 3e-2).
pub const LOG_ERR_COEFF: f64 = 8.0;

/// Smallest positive subnormal; guards the rounding model where
/// `u * |result|` underflows.
const TINY: f64 = f64::from_bits(1);

/// Multiplicative slack covering the roundings performed while computing an
/// error bound (each bound is fewer than ten f64 operations on nonnegative
/// quantities, so `(1 + u)^10 < 1 + 64u`).
const ERR_SLACK: f64 = 1.0 + 64.0 * UNIT_ROUNDOFF;

/// Largest integer magnitude exactly representable in f64 (`2^53`).
const EXACT_INT_LIMIT: u64 = 1 << 53;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum NumericsError {
    #[error("log of zero is undefined")]
    LogOfZero,
    #[error("divisor interval contains zero")]
    DivisorContainsZero,
}

/// Inflate an error bound to absorb the roundings of its own evaluation.
fn slacken(e: f64) -> f64 {
    e * ERR_SLACK
}

/// A floating-point value with a certified absolute error bound: the true
/// real is guaranteed to lie in `[value - err, value + err]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertifiedReal {
    value: f64,
    err: f64,
}

impl CertifiedReal {
    pub const ZERO: CertifiedReal = CertifiedReal { value: 0.0, err: 0.0 };

    /// An interval with explicit bound. `err` must be finite and >= 0.
    pub fn new(value: f64, err: f64) -> Self {
        assert!(value.is_finite(), "certified value must be finite");
        assert!(err.is_finite() && err >= 0.0, "error bound must be finite and nonnegative");
        CertifiedReal { value, err }
    }

    /// A value known exactly (zero-width interval).
    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0)
    }

    /// An integer, exactly. Panics beyond `2^53` where f64 loses integers.
    pub fn from_int(k: i64) -> Self {
        assert!(k.unsigned_abs() <= EXACT_INT_LIMIT, "integer {k} not exactly representable");
        Self::exact(k as f64)
    }

    /// The rational `num/den`. Exact when `den` divides `num`; otherwise one
    /// correctly-rounded division, so `err = u * |value|`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        assert!(num.unsigned_abs() <= EXACT_INT_LIMIT && den.unsigned_abs() <= EXACT_INT_LIMIT);
        if num % den == 0 {
            return Self::from_int(num / den);
        }
        let value = num as f64 / den as f64;
        CertifiedReal { value, err: UNIT_ROUNDOFF * value.abs() }
    }

    /// `sqrt(k)` for an integer argument. IEEE sqrt is correctly rounded, so
    /// the bound is one rounding; perfect squares come out exact.
    pub fn sqrt_of(k: u64) -> Self {
        assert!(k <= EXACT_INT_LIMIT, "argument {k} not exactly representable");
        let r = k.isqrt();
        if r * r == k {
            return Self::exact(r as f64);
        }
        let value = (k as f64).sqrt();
        CertifiedReal { value, err: slacken(UNIT_ROUNDOFF * value) }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn err(&self) -> f64 {
        self.err
    }

    /// Certified lower endpoint `value - err` (one rounding; only used for
    /// display and margins, never for verdicts).
    pub fn lower(&self) -> f64 {
        self.value - self.err
    }

    pub fn upper(&self) -> f64 {
        self.value + self.err
    }

    pub fn neg(&self) -> Self {
        CertifiedReal { value: -self.value, err: self.err }
    }

    pub fn add(&self, other: &Self) -> Self {
        let value = self.value + other.value;
        let err = slacken(self.err + other.err + UNIT_ROUNDOFF * value.abs() + TINY);
        CertifiedReal { value, err }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product bound: `|t1*t2 - v1*v2| <= |v1|e2 + |v2|e1 + e1*e2`, plus one
    /// rounding of the computed product.
    pub fn mul(&self, other: &Self) -> Self {
        let value = self.value * other.value;
        let err = slacken(
            self.value.abs() * other.err
                + other.value.abs() * self.err
                + self.err * other.err
                + UNIT_ROUNDOFF * value.abs()
                + TINY,
        );
        CertifiedReal { value, err }
    }

    /// Quotient, defined only when the divisor interval excludes zero.
    ///
    /// For true values `t1 = v1 + d1`, `t2 = v2 + d2` with `|di| <= ei`:
    /// `t1/t2 - v1/v2 = (d1*v2 - v1*d2) / (t2*v2)`, and `|t2| >= |v2| - e2`,
    /// giving `|t1/t2 - v1/v2| <= (e1|v2| + |v1|e2) / (|v2|(|v2| - e2))`.
    pub fn div(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = other.value.abs() - other.err;
        if d <= 0.0 {
            return Err(NumericsError::DivisorContainsZero);
        }
        let value = self.value / other.value;
        let err = slacken(
            (self.err * other.value.abs() + self.value.abs() * other.err) / (other.value.abs() * d)
                + UNIT_ROUNDOFF * value.abs()
                + TINY,
        );
        Ok(CertifiedReal { value, err })
    }
}

/// Outcome of a certified comparison. A CERTAIN verdict means the two
/// intervals are disjoint in the stated direction; touching or overlapping
/// intervals are INDETERMINATE, never coerced either way.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CertainLess,
    CertainGreater,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::CertainLess => "CERTAIN_LESS",
            Verdict::CertainGreater => "CERTAIN_GREATER",
            Verdict::Indeterminate => "INDETERMINATE",
        })
    }
}

/// Compare two certified values. CERTAIN_LESS iff `x` upper endpoint falls
/// strictly below `y` lower endpoint (both evaluated in f64; sound because
/// round-to-nearest is monotone, so the computed endpoints compare `<` only
/// if the exact endpoints do).
pub fn cert_compare(x: &CertifiedReal, y: &CertifiedReal) -> Verdict {
    if x.value + x.err < y.value - y.err {
        Verdict::CertainLess
    } else if x.value - x.err > y.value + y.err {
        Verdict::CertainGreater
    } else {
        Verdict::Indeterminate
    }
}

/// Natural log of a positive integer, certified.
///
/// Arguments up to `2^53` convert to f64 exactly and the bound is
/// [`LOG_ERR_COEFF`] roundoffs relative to the result. Larger arguments add
/// one conversion rounding, which perturbs the log by at most `~1.01u`
/// (d ln = dx/x); 2u covers it.
pub fn log_nat(k: u64) -> Result<CertifiedReal, NumericsError> {
    if k == 0 {
        return Err(NumericsError::LogOfZero);
    }
    if k == 1 {
        return Ok(CertifiedReal::ZERO);
    }
    let value = (k as f64).ln();
    let mut err = LOG_ERR_COEFF * UNIT_ROUNDOFF * value;
    if k > EXACT_INT_LIMIT {
        err += 2.0 * UNIT_ROUNDOFF;
    }
    Ok(CertifiedReal { value, err: slacken(err) })
}

/// Streaming compensated accumulator for certified terms.
///
/// Each `add` runs one TwoSum, captures its rounding error exactly, and
/// folds it into a side accumulator; `total` recombines and bounds what the
/// side accumulator itself may have lost.
#[derive(Debug, Clone)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
    input_err: f64,
    peak: f64,
    count: u64,
}

/// Knuth's TwoSum: `(s, t)` with `s = fl(a + b)` and `a + b = s + t` exactly.
#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let ap = s - b;
    let bp = s - ap;
    let da = a - ap;
    let db = b - bp;
    (s, da + db)
}

impl Default for CompensatedSum {
    fn default() -> Self {
        Self::new()
    }
}

impl CompensatedSum {
    pub fn new() -> Self {
        CompensatedSum { sum: 0.0, comp: 0.0, input_err: 0.0, peak: 0.0, count: 0 }
    }

    #[inline]
    pub fn add(&mut self, term: CertifiedReal) {
        let (s, t) = two_sum(self.sum, term.value);
        self.sum = s;
        self.comp += t;
        self.input_err += term.err;
        self.peak = self.peak.max(s.abs());
        self.count += 1;
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    /// The accumulated sum with a rigorous bound.
    ///
    /// Writing `T` for the exact total of the per-step TwoSum residuals,
    /// `sum + T` equals the exact sum of the term values, so three sources
    /// remain, with `n` terms, `u` the unit roundoff, `peak` the largest
    /// intermediate `|sum|`, and `g = nu/(1-nu)` the standard summation
    /// factor:
    ///   - inherited input bounds: at most `input_err / (1 - g)` (the plain
    ///     nonnegative accumulation of `err_i` underestimates by at most a
    ///     factor `1 - g`);
    ///   - the residual accumulator's own rounding: `|comp - T|` is at most
    ///     `g * (n*u*peak + n*TINY)`, since each residual is at most half an
    ///     ulp of an intermediate sum;
    ///   - the final recombination: one rounding of `sum + comp`.
    pub fn total(&self) -> CertifiedReal {
        match self.count {
            0 => return CertifiedReal::ZERO,
            // Singleton passes through untouched: one TwoSum against zero is
            // exact, and the bound below would needlessly widen it.
            1 => return CertifiedReal { value: self.sum, err: self.input_err },
            _ => {}
        }
        let n = self.count as f64;
        let gn = n * UNIT_ROUNDOFF;
        assert!(gn < 0.25, "summation bound requires n*u < 1/4");
        let gamma = gn / (1.0 - gn);
        let value = self.sum + self.comp;
        let err = slacken(
            self.input_err / (1.0 - gamma)
                + gamma * (n * UNIT_ROUNDOFF * self.peak + n * TINY)
                + UNIT_ROUNDOFF * value.abs()
                + TINY,
        );
        CertifiedReal { value, err }
    }
}

/// Sum certified terms in the given order with compensated accumulation.
pub fn cert_sum(terms: impl IntoIterator<Item = CertifiedReal>) -> CertifiedReal {
    let mut acc = CompensatedSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.total()
}

#[cfg(test)]
mod tests {
    use super::*;

    // 40-digit reference values (mpmath).
    const LN_2: f64 = std::f64::consts::LN_2;
    const LN_252: f64 = 5.529429087511423;
    const MILLION_LN_2: f64 = 693147.1805599453;

    fn contains(x: &CertifiedReal, truth: f64) -> bool {
        (x.value() - truth).abs() <= x.err()
    }

    #[test]
    fn log_of_small_integers() {
        assert_eq!(log_nat(0), Err(NumericsError::LogOfZero));
        assert_eq!(log_nat(1).unwrap(), CertifiedReal::ZERO);
        let l2 = log_nat(2).unwrap();
        assert!(contains(&l2, LN_2));
        assert!(l2.err() < 1e-14);
        assert!(contains(&log_nat(252).unwrap(), LN_252));
    }

    #[test]
    fn log_of_four_is_twice_log_of_two() {
        let l4 = log_nat(4).unwrap();
        let twice = log_nat(2).unwrap().add(&log_nat(2).unwrap());
        assert_eq!(cert_compare(&l4, &twice), Verdict::Indeterminate);
        assert!((l4.value() - twice.value()).abs() <= l4.err() + twice.err());
    }

    #[test]
    fn log_beyond_exact_integer_range() {
        let k = (1u64 << 53) + 1111;
        let l = log_nat(k).unwrap();
        assert!(contains(&l, (k as f64).ln()));
        assert!(l.err() > 2.0 * UNIT_ROUNDOFF);
    }

    #[test]
    fn singleton_sum_is_identity() {
        let term = log_nat(2).unwrap();
        let total = cert_sum([term]);
        assert_eq!(total.value(), term.value());
        assert_eq!(total.err(), term.err());
    }

    #[test]
    fn empty_sum_is_exact_zero() {
        assert_eq!(cert_sum([]), CertifiedReal::ZERO);
    }

    #[test]
    fn million_term_sum_stays_tight() {
        let term = log_nat(2).unwrap();
        let total = cert_sum(std::iter::repeat_n(term, 1_000_000));
        assert!(contains(&total, MILLION_LN_2));
        // compensated: bound stays near u * |sum| + inherited, far below
        // the ~5e-5 a naive n*u*|sum| analysis would force
        assert!(total.err() < 1e-6, "err = {}", total.err());
    }

    #[test]
    fn comparison_directions() {
        let a = CertifiedReal::new(1.0, 0.1);
        let b = CertifiedReal::new(2.0, 0.1);
        assert_eq!(cert_compare(&a, &b), Verdict::CertainLess);
        assert_eq!(cert_compare(&b, &a), Verdict::CertainGreater);
        let c = CertifiedReal::new(1.15, 0.1);
        assert_eq!(cert_compare(&a, &c), Verdict::Indeterminate);
        assert_eq!(cert_compare(&c, &a), Verdict::Indeterminate);
    }

    #[test]
    fn touching_intervals_are_indeterminate() {
        let a = CertifiedReal::new(1.0, 0.5);
        let b = CertifiedReal::new(2.0, 0.5);
        assert_eq!(cert_compare(&a, &b), Verdict::Indeterminate);
    }

    #[test]
    fn widening_degrades_but_never_flips() {
        let a = CertifiedReal::new(1.0, 0.01);
        let b = CertifiedReal::new(2.0, 0.01);
        for w in [0.0, 0.1, 0.4, 0.49, 0.6, 5.0] {
            let aw = CertifiedReal::new(a.value(), a.err() + w);
            if cert_compare(&aw, &b) == Verdict::CertainGreater {
                panic!("widening flipped a verdict");
            }
        }
    }

    #[test]
    fn interval_products_and_quotients() {
        let x = CertifiedReal::new(3.0, 0.125);
        let y = CertifiedReal::new(2.0, 0.0625);
        let p = x.mul(&y);
        // true product ranges over [2.875*1.9375, 3.125*2.0625]
        assert!(p.value() - p.err() <= 2.875 * 1.9375);
        assert!(p.value() + p.err() >= 3.125 * 2.0625);
        let q = x.div(&y).unwrap();
        assert!(q.value() - q.err() <= 2.875 / 2.0625);
        assert!(q.value() + q.err() >= 3.125 / 1.9375);
        let z = CertifiedReal::new(0.01, 0.02);
        assert_eq!(x.div(&z), Err(NumericsError::DivisorContainsZero));
    }

    #[test]
    fn ratio_and_sqrt_constructors() {
        assert_eq!(CertifiedReal::from_ratio(10, 5), CertifiedReal::exact(2.0));
        let third = CertifiedReal::from_ratio(1, 3);
        assert!((third.value() - 1.0 / 3.0).abs() <= third.err());
        assert!(third.err() > 0.0);
        assert_eq!(CertifiedReal::sqrt_of(9), CertifiedReal::exact(3.0));
        let s10 = CertifiedReal::sqrt_of(10);
        assert!(contains(&s10, 3.1622776601683795));
        assert!(s10.err() > 0.0);
    }

    #[test]
    fn two_sum_recovers_exact_residual() {
        let (s, t) = two_sum(1.0, 1e-17);
        assert_eq!(s, 1.0);
        assert_eq!(t, 1e-17);
        let (s, t) = two_sum(0.1, 0.2);
        assert_eq!(s, 0.1 + 0.2);
        assert!(t != 0.0, "0.1 + 0.2 rounds, residual must be captured");
        assert!(t.abs() <= UNIT_ROUNDOFF * s.abs());
    }

    #[test]
    fn alternating_cancellation_keeps_containment() {
        // sum_{k=1..10^5} (-1)^(k+1) * ln(k+1): heavy cancellation
        let mut acc = CompensatedSum::new();
        let mut naive = 0.0f64;
        for k in 1..=100_000u64 {
            let t = log_nat(k + 1).unwrap();
            let signed = if k % 2 == 1 { t } else { t.neg() };
            acc.add(signed);
            naive += signed.value();
        }
        let total = acc.total();
        assert!((total.value() - naive).abs() <= 1e-9 + total.err());
    }
}
