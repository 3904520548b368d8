//! The Chebyshev step functions and the binomial quantities they bound.
//!
//! `theta(x)` sums `ln p` over primes `p <= x`; `psi(x)` sums `ln p` over
//! prime powers `p^m <= x`, equivalently `ln lcm(1..floor(x))`. Both are
//! evaluated as certified sums ([`crate::numerics`]) over exact integer
//! enumerations ([`crate::sieve`]); no floating-point decides *which*
//! terms exist, only their logs.
//!
//! Two evaluation strategies share the same term set:
//!
//! - **Bulk** ([`theta`], [`psi`]): fixed segments sieved independently
//!   (in parallel when a rayon pool is available), one compensated partial
//!   per segment, partials combined in segment order. Results depend on the
//!   segment span but never on thread count.
//! - **Cursors** ([`ThetaCursor`], [`PsiCursor`]): a single accumulator fed
//!   in ascending prime-power order that snapshots the running value at any
//!   nondecreasing sequence of arguments. This is what range scans use; a
//!   full scan to `n` costs one enumeration instead of `n`.
//!
//! Integer arguments everywhere: real inputs are floored first, and roots
//! (`x^(1/m)` in the psi/theta interchange) are exact integer roots, so a
//! term is in or out by integer comparison alone.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use rayon::prelude::*;

use crate::numerics::{cert_sum, log_nat, CertifiedReal, CompensatedSum, Verdict};
use crate::sieve::{segment_bounds, BasePrimes, PrimeScanner, SieveConfig, SieveSegment};

/// Evaluation knobs shared across the crate: sieve segment size and the
/// largest `n` for which exact big-integer binomials are materialized.
#[derive(Debug, Clone, Copy)]
pub struct EvalConfig {
    pub sieve: SieveConfig,
    pub exact_cap: u64,
}

pub const DEFAULT_EXACT_CAP: u64 = 10_000;

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { sieve: SieveConfig::default(), exact_cap: DEFAULT_EXACT_CAP }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ChebyshevError {
    #[error("central binomial coefficient is defined for n >= 1")]
    BinomialIndexZero,
}

/// Largest f64 all of whose integer predecessors are exactly representable.
const MAX_REAL_ARG: f64 = 9_007_199_254_740_992.0; // 2^53

fn floor_arg(x: f64) -> u64 {
    assert!(x.is_finite() && x >= 0.0, "argument must be finite and nonnegative");
    assert!(x <= MAX_REAL_ARG, "argument exceeds exact integer range of f64");
    x.floor() as u64
}

/// Floor of the m-th root, by exact integer arithmetic (`num-integer`
/// guarantees the largest `k` with `k^m <= x`; property-tested in the
/// suite). Never computed through floating point: `8.0f64.powf(1.0/3.0)`
/// style rounding would misclassify perfect powers.
pub fn iroot(x: u64, m: u32) -> u64 {
    assert!(m >= 1);
    x.nth_root(m)
}

/// One term of psi: the prime power `value = prime^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
    pub value: u64,
}

/// Unbounded enumerator of prime powers in strictly ascending value order.
///
/// Plain primes come straight from a [`PrimeScanner`]; higher powers live in
/// a min-heap that is seeded from a second scanner only once the square of a
/// prime falls under the requested bound, so the heap never holds more than
/// pi(sqrt(max argument)) entries.
#[derive(Debug)]
pub struct PrimePowerScanner {
    primes: PrimeScanner,
    squares: PrimeScanner,
    heap: BinaryHeap<Reverse<(u64, u64, u32)>>,
}

impl PrimePowerScanner {
    pub fn new() -> Self {
        PrimePowerScanner {
            primes: PrimeScanner::new(),
            squares: PrimeScanner::new(),
            heap: BinaryHeap::new(),
        }
    }

    /// The next prime power `<= bound`, or None if the next one in value
    /// order exceeds it. Successive bounds must be nondecreasing.
    pub fn next_at_most(&mut self, bound: u64) -> Option<PrimePower> {
        loop {
            let q = self.squares.peek();
            match q.checked_mul(q) {
                Some(sq) if sq <= bound => {
                    self.squares.pop();
                    self.heap.push(Reverse((sq, q, 2)));
                }
                _ => break,
            }
        }
        let p = self.primes.peek();
        let top = self.heap.peek().map(|Reverse(e)| *e);
        match top {
            Some((v, q, m)) if v < p => {
                if v > bound {
                    return None;
                }
                self.heap.pop();
                if let Some(next) = v.checked_mul(q) {
                    self.heap.push(Reverse((next, q, m + 1)));
                }
                Some(PrimePower { prime: q, exponent: m, value: v })
            }
            _ => {
                if p > bound {
                    return None;
                }
                self.primes.pop();
                Some(PrimePower { prime: p, exponent: 1, value: p })
            }
        }
    }
}

impl Default for PrimePowerScanner {
    fn default() -> Self {
        Self::new()
    }
}

/// All prime powers `p^m <= limit`, ascending by value.
pub fn prime_powers_up_to(limit: u64) -> impl Iterator<Item = PrimePower> {
    let mut scanner = PrimePowerScanner::new();
    std::iter::from_fn(move || scanner.next_at_most(limit))
}

/// Running `theta` that can be snapshotted at nondecreasing arguments.
#[derive(Debug)]
pub struct ThetaCursor {
    scanner: PrimeScanner,
    acc: CompensatedSum,
    arg: u64,
}

impl ThetaCursor {
    pub fn new() -> Self {
        ThetaCursor { scanner: PrimeScanner::new(), acc: CompensatedSum::new(), arg: 0 }
    }

    /// `theta(x)`; `x` must not decrease across calls on one cursor.
    pub fn advance_to(&mut self, x: u64) -> CertifiedReal {
        assert!(x >= self.arg, "cursor arguments must be nondecreasing");
        self.arg = x;
        while self.scanner.peek() <= x {
            let p = self.scanner.pop();
            self.acc.add(log_nat(p).expect("prime is positive"));
        }
        self.acc.total()
    }
}

impl Default for ThetaCursor {
    fn default() -> Self {
        Self::new()
    }
}

/// Running `psi`, same contract as [`ThetaCursor`].
#[derive(Debug)]
pub struct PsiCursor {
    scanner: PrimePowerScanner,
    acc: CompensatedSum,
    arg: u64,
}

impl PsiCursor {
    pub fn new() -> Self {
        PsiCursor { scanner: PrimePowerScanner::new(), acc: CompensatedSum::new(), arg: 0 }
    }

    pub fn advance_to(&mut self, x: u64) -> CertifiedReal {
        assert!(x >= self.arg, "cursor arguments must be nondecreasing");
        self.arg = x;
        while let Some(pp) = self.scanner.next_at_most(x) {
            self.acc.add(log_nat(pp.prime).expect("prime is positive"));
        }
        self.acc.total()
    }
}

impl Default for PsiCursor {
    fn default() -> Self {
        Self::new()
    }
}

/// Running `ln k!` snapshotted at nondecreasing `k`.
#[derive(Debug)]
pub struct LogFactorialCursor {
    acc: CompensatedSum,
    k: u64,
}

impl LogFactorialCursor {
    pub fn new() -> Self {
        LogFactorialCursor { acc: CompensatedSum::new(), k: 1 }
    }

    pub fn advance_to(&mut self, k: u64) -> CertifiedReal {
        assert!(k >= 1, "factorial argument must be >= 1");
        assert!(k >= self.k, "cursor arguments must be nondecreasing");
        while self.k < k {
            self.k += 1;
            self.acc.add(log_nat(self.k).expect("argument is positive"));
        }
        self.acc.total()
    }
}

impl Default for LogFactorialCursor {
    fn default() -> Self {
        Self::new()
    }
}

/// All higher prime powers (`m >= 2`) up to `n`, ascending by value.
fn higher_powers(n: u64, base: &mut BasePrimes) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for &p in base.ensure(n.isqrt()) {
        if p * p > n {
            break;
        }
        let mut v = p * p;
        loop {
            out.push((v, p));
            match v.checked_mul(p) {
                Some(next) if next <= n => v = next,
                _ => break,
            }
        }
    }
    if n >= 4 {
        // powers of two come from the scanner's implicit prime 2
        let mut v = 4u64;
        loop {
            out.push((v, 2));
            match v.checked_mul(2) {
                Some(next) if next <= n => v = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

fn add_log(acc: &mut CompensatedSum, p: u64) {
    acc.add(log_nat(p).expect("prime is positive"));
}

/// Shared bulk engine: certified sum of `ln p` over primes (and, when
/// `powers` is given, higher prime powers) up to `n`, one compensated
/// partial per fixed segment, partials combined in segment order. Within a
/// segment, terms are merged in ascending value order, so the result is a
/// function of the segment span alone, never of thread count.
fn bulk_sum(n: u64, cfg: &EvalConfig, powers: Option<&[(u64, u64)]>) -> CertifiedReal {
    let mut base = BasePrimes::new();
    let odd_base: Vec<u64> = base.ensure(n.isqrt()).to_vec();
    let bounds = segment_bounds(0, n + 1, &cfg.sieve);
    let partials: Vec<CertifiedReal> = bounds
        .par_iter()
        .map(|&(lo, hi)| {
            let seg = SieveSegment::sieve_with_primes(lo, hi, &odd_base);
            let mut acc = CompensatedSum::new();
            let extra: &[(u64, u64)] = match powers {
                Some(all) => {
                    let from = all.partition_point(|&(v, _)| v < lo);
                    let to = all.partition_point(|&(v, _)| v < hi);
                    &all[from..to]
                }
                None => &[],
            };
            let mut ei = 0;
            let mut merge_term = |acc: &mut CompensatedSum, value: u64, prime: u64| {
                while ei < extra.len() && extra[ei].0 < value {
                    add_log(acc, extra[ei].1);
                    ei += 1;
                }
                add_log(acc, prime);
            };
            if lo <= 2 && 2 < hi {
                merge_term(&mut acc, 2, 2);
            }
            for p in seg.odd_primes() {
                merge_term(&mut acc, p, p);
            }
            while ei < extra.len() {
                add_log(&mut acc, extra[ei].1);
                ei += 1;
            }
            acc.total()
        })
        .collect();
    cert_sum(partials)
}

fn theta_u64(n: u64, cfg: &EvalConfig) -> CertifiedReal {
    if n < 2 {
        return CertifiedReal::ZERO;
    }
    bulk_sum(n, cfg, None)
}

fn psi_u64(n: u64, cfg: &EvalConfig) -> CertifiedReal {
    if n < 2 {
        return CertifiedReal::ZERO;
    }
    let mut base = BasePrimes::new();
    let powers = higher_powers(n, &mut base);
    bulk_sum(n, cfg, Some(&powers))
}

/// `theta(x) = sum of ln p over primes p <= x`; exactly zero below 2.
pub fn theta(x: f64) -> CertifiedReal {
    theta_with(x, &EvalConfig::default())
}

pub fn theta_with(x: f64, cfg: &EvalConfig) -> CertifiedReal {
    theta_u64(floor_arg(x), cfg)
}

/// `psi(x) = sum of ln p over prime powers p^m <= x`; exactly zero below 2.
pub fn psi(x: f64) -> CertifiedReal {
    psi_with(x, &EvalConfig::default())
}

pub fn psi_with(x: f64, cfg: &EvalConfig) -> CertifiedReal {
    psi_u64(floor_arg(x), cfg)
}

/// `psi` through the interchange `psi(x) = sum_m theta(x^(1/m))`, truncated
/// at the first `m` with `floor(x^(1/m)) < 2`. An independent route used to
/// cross-check the direct enumeration.
pub fn psi_from_theta(x: f64) -> CertifiedReal {
    psi_from_theta_with(x, &EvalConfig::default())
}

pub fn psi_from_theta_with(x: f64, cfg: &EvalConfig) -> CertifiedReal {
    let n = floor_arg(x);
    let mut terms = Vec::new();
    for m in 1.. {
        let r = iroot(n, m);
        if r < 2 {
            break;
        }
        terms.push(theta_u64(r, cfg));
    }
    cert_sum(terms)
}

/// Both step functions at one argument.
#[derive(Debug, Clone, Copy)]
pub struct ChebyshevValue {
    pub x: f64,
    pub theta: CertifiedReal,
    pub psi: CertifiedReal,
}

pub fn chebyshev_value(x: f64, cfg: &EvalConfig) -> ChebyshevValue {
    ChebyshevValue { x, theta: theta_with(x, cfg), psi: psi_with(x, cfg) }
}

/// `ln k!` as a certified sum of `k - 1` logs. O(k); scans should prefer
/// [`LogFactorialCursor`].
pub fn log_factorial(k: u64) -> CertifiedReal {
    LogFactorialCursor::new().advance_to(k.max(1))
}

/// The central binomial coefficient `C(2n, n)`.
///
/// `exact` is populated (via the ratio recurrence, all divisions exact) up
/// to the configured cap; `log_value` always. Below the cap the log comes
/// from the exact integer itself, above it from
/// `ln (2n)! - 2 ln n!`.
#[derive(Debug, Clone)]
pub struct CentralBinomial {
    pub n: u64,
    pub exact: Option<BigUint>,
    pub log_value: CertifiedReal,
}

/// Certified `ln` of an arbitrary-size positive integer: split off the top
/// 64 bits, `x = m * 2^s + r` with `0 <= r < 2^s`, so
/// `ln x in [ln m + s ln 2, ln(m+1) + s ln 2)`, and `ln(1 + 1/m) < 2^-63`
/// widens the bound by under 1.1e-19.
pub fn log_of_biguint(x: &BigUint) -> CertifiedReal {
    use num_traits::ToPrimitive;
    assert!(x.bits() > 0, "log of zero");
    let bits = x.bits();
    if bits <= 63 {
        return log_nat(x.to_u64().unwrap()).expect("nonzero");
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    let r = log_nat(top)
        .expect("top bits nonzero")
        .add(&CertifiedReal::from_int(shift as i64).mul(&log_nat(2).unwrap()));
    CertifiedReal::new(r.value(), r.err() + 1.1e-19)
}

/// One step of the exact ratio recurrence: maps `C(2k, k)` to
/// `C(2(k+1), k+1)` by multiplying with `2(2k+1)` and dividing by `k + 1`;
/// the division is exact (asserted).
pub(crate) fn central_binomial_step(acc: &mut BigUint, k: u64) {
    *acc *= BigUint::from(2 * (2 * k + 1));
    let (q, r) = acc.div_rem(&BigUint::from(k + 1));
    debug_assert!(r == BigUint::ZERO, "ratio recurrence division must be exact");
    *acc = q;
}

/// Exact `C(2n, n)` by iterating [`central_binomial_step`] from `C(2,1) = 2`.
pub(crate) fn central_binomial_exact(n: u64) -> BigUint {
    let mut acc = BigUint::from(2u32);
    for k in 1..n {
        central_binomial_step(&mut acc, k);
    }
    acc
}

pub fn central_binomial(n: u64, cfg: &EvalConfig) -> Result<CentralBinomial, ChebyshevError> {
    if n == 0 {
        return Err(ChebyshevError::BinomialIndexZero);
    }
    if n <= cfg.exact_cap {
        let exact = central_binomial_exact(n);
        let log_value = log_of_biguint(&exact);
        Ok(CentralBinomial { n, exact: Some(exact), log_value })
    } else {
        let two_n = log_factorial(2 * n);
        let one_n = log_factorial(n);
        let log_value = two_n.sub(&one_n).sub(&one_n);
        Ok(CentralBinomial { n, exact: None, log_value })
    }
}

/// The two sides of an identity, each certified, and the comparison in both
/// directions. The identity is *consistent* iff the intervals overlap;
/// a CERTAIN verdict either way refutes it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IdentityId {
    Eq1,
    Eq2,
    Eq3,
}

impl IdentityId {
    pub const ALL: [IdentityId; 3] = [IdentityId::Eq1, IdentityId::Eq2, IdentityId::Eq3];

    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Eq1 => "EQ1",
            IdentityId::Eq2 => "EQ2",
            IdentityId::Eq3 => "EQ3",
        }
    }
}

impl std::fmt::Display for IdentityId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for IdentityId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "EQ1" => Ok(IdentityId::Eq1),
            "EQ2" => Ok(IdentityId::Eq2),
            "EQ3" => Ok(IdentityId::Eq3),
            other => Err(format!("unknown identity {other:?} (expected EQ1, EQ2 or EQ3)")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IdentityCheck {
    pub id: IdentityId,
    pub n: u64,
    pub lhs: CertifiedReal,
    pub rhs: CertifiedReal,
    pub forward: Verdict,
    pub backward: Verdict,
}

impl IdentityCheck {
    pub fn consistent(&self) -> bool {
        self.forward == Verdict::Indeterminate && self.backward == Verdict::Indeterminate
    }
}

/// Table of `theta` and `psi` at every integer `0..=limit`, built by one
/// cursor pass. 32 bytes per entry, so intended for scan ranges, not for
/// one-off large arguments.
#[derive(Debug)]
pub struct ChebyshevTable {
    theta: Vec<CertifiedReal>,
    psi: Vec<CertifiedReal>,
}

impl ChebyshevTable {
    pub fn build(limit: u64) -> Self {
        let n = (limit + 1) as usize;
        let mut theta = Vec::with_capacity(n);
        let mut psi = Vec::with_capacity(n);
        let mut scanner = PrimePowerScanner::new();
        let mut th = CompensatedSum::new();
        let mut ps = CompensatedSum::new();
        for x in 0..=limit {
            while let Some(pp) = scanner.next_at_most(x) {
                let l = log_nat(pp.prime).expect("prime is positive");
                ps.add(l);
                if pp.exponent == 1 {
                    th.add(l);
                }
            }
            theta.push(th.total());
            psi.push(ps.total());
        }
        ChebyshevTable { theta, psi }
    }

    pub fn limit(&self) -> u64 {
        (self.theta.len() - 1) as u64
    }

    pub fn theta_at(&self, x: u64) -> CertifiedReal {
        self.theta[x as usize]
    }

    pub fn psi_at(&self, x: u64) -> CertifiedReal {
        self.psi[x as usize]
    }
}

/// Evaluate both sides of one identity at one `n` using a prebuilt table
/// covering at least `2n`. Sums run in ascending-argument order.
pub fn check_identity_with_table(
    id: IdentityId,
    n: u64,
    table: &ChebyshevTable,
    cfg: &EvalConfig,
) -> IdentityCheck {
    assert!(n >= 1, "identities are indexed from n = 1");
    assert!(table.limit() >= 2 * n, "table too small for 2n");
    let two_n = 2 * n;
    let (lhs, rhs) = match id {
        IdentityId::Eq1 => {
            // ln (2n)! = sum over k >= 1 of psi(2n / k); zero once 2n/k < 2
            let lhs = log_factorial(two_n);
            let rhs = cert_sum((1..=n).rev().map(|k| table.psi_at(two_n / k)));
            (lhs, rhs)
        }
        IdentityId::Eq2 => {
            // psi(2n) - 2 psi(sqrt(2n)) = theta(2n) - theta((2n)^(1/2))
            //                             + theta((2n)^(1/3)) - ...
            let s = iroot(two_n, 2);
            let lhs = table.psi_at(two_n).sub(&table.psi_at(s)).sub(&table.psi_at(s));
            let mut m_max = 1;
            while iroot(two_n, m_max + 1) >= 2 {
                m_max += 1;
            }
            let rhs = cert_sum((1..=m_max).rev().map(|m| {
                let t = table.theta_at(iroot(two_n, m));
                if m % 2 == 1 {
                    t
                } else {
                    t.neg()
                }
            }));
            (lhs, rhs)
        }
        IdentityId::Eq3 => {
            // ln C(2n, n) = psi(2n) - psi(n) + psi(2n/3) - ...
            let lhs = central_binomial(n, cfg).expect("n >= 1").log_value;
            let rhs = cert_sum((1..=n).rev().map(|k| {
                let t = table.psi_at(two_n / k);
                if k % 2 == 1 {
                    t
                } else {
                    t.neg()
                }
            }));
            (lhs, rhs)
        }
    };
    IdentityCheck {
        id,
        n,
        lhs,
        rhs,
        forward: crate::numerics::cert_compare(&lhs, &rhs),
        backward: crate::numerics::cert_compare(&rhs, &lhs),
    }
}

/// One-off identity check; builds a throwaway table to `2n`.
pub fn check_identity(id: IdentityId, n: u64, cfg: &EvalConfig) -> IdentityCheck {
    check_identity_with_table(id, n, &ChebyshevTable::build(2 * n), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath references, 40 digits
    const LN_210: f64 = 5.347107530717469; // theta(10)
    const LN_2520: f64 = 7.832014180505469; // psi(10)
    const LN_60: f64 = 4.0943445622221; // psi(5)
    const LN_720: f64 = 6.579251212010101; // ln 6!
    const LN_20: f64 = 2.995732273553991; // ln C(6,3)
    const THETA_100: f64 = 83.72839039906393;
    const PSI_100: f64 = 94.0453112293574;
    const THETA_1000: f64 = 956.2452651200589;
    const PSI_1000: f64 = 996.6809122471752;

    fn contains(x: &CertifiedReal, truth: f64) -> bool {
        (x.value() - truth).abs() <= x.err() + 1e-12
    }

    #[test]
    fn frozen_point_values() {
        assert!(contains(&theta(10.0), LN_210));
        assert!(contains(&psi(10.0), LN_2520));
        assert!(contains(&psi(5.0), LN_60));
        assert!(contains(&theta(100.0), THETA_100));
        assert!(contains(&psi(100.0), PSI_100));
        assert!(contains(&theta(1000.0), THETA_1000));
        assert!(contains(&psi(1000.0), PSI_1000));
    }

    #[test]
    fn zero_below_two() {
        assert_eq!(theta(1.999), CertifiedReal::ZERO);
        assert_eq!(psi(0.0), CertifiedReal::ZERO);
        assert_eq!(psi(1.0), CertifiedReal::ZERO);
    }

    #[test]
    fn real_arguments_floor() {
        assert_eq!(theta(10.7).value(), theta(10.0).value());
        assert_eq!(psi(10.999).value(), psi(10.0).value());
    }

    #[test]
    fn prime_power_enumeration_order() {
        let got: Vec<u64> = prime_powers_up_to(32).map(|pp| pp.value).collect();
        assert_eq!(got, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32]);
        for pp in prime_powers_up_to(1000) {
            assert!(crate::sieve::is_prime(pp.prime));
            assert_eq!(pp.value, pp.prime.pow(pp.exponent));
        }
    }

    #[test]
    fn integer_roots_are_exact() {
        assert_eq!(iroot(8, 3), 2);
        assert_eq!(iroot(7, 3), 1);
        assert_eq!(iroot(9, 2), 3);
        assert_eq!(iroot(10, 1), 10);
        assert_eq!(iroot(1_000_000_000_000_000_000, 3), 1_000_000);
        assert_eq!(iroot(u64::MAX, 2), 4_294_967_295);
    }

    #[test]
    fn cursor_matches_bulk() {
        let cfg = EvalConfig::default();
        let mut tc = ThetaCursor::new();
        let mut pc = PsiCursor::new();
        for x in [2u64, 3, 10, 97, 98, 1000, 7919] {
            let t = tc.advance_to(x);
            let p = pc.advance_to(x);
            let tb = theta_with(x as f64, &cfg);
            let pb = psi_with(x as f64, &cfg);
            assert!((t.value() - tb.value()).abs() <= t.err() + tb.err());
            assert!((p.value() - pb.value()).abs() <= p.err() + pb.err());
        }
    }

    #[test]
    fn table_matches_cursors() {
        let table = ChebyshevTable::build(500);
        let mut tc = ThetaCursor::new();
        let mut pc = PsiCursor::new();
        for x in 0..=500u64 {
            assert_eq!(table.theta_at(x).value(), tc.advance_to(x).value());
            assert_eq!(table.psi_at(x).value(), pc.advance_to(x).value());
        }
    }

    #[test]
    fn interchange_route_overlaps_direct() {
        for x in [4.0, 10.0, 100.0, 1000.0, 10_000.0] {
            let direct = psi(x);
            let via_theta = psi_from_theta(x);
            assert!(
                (direct.value() - via_theta.value()).abs() <= direct.err() + via_theta.err(),
                "x = {x}"
            );
        }
    }

    #[test]
    fn theta_psi_pointwise_order() {
        let cfg = EvalConfig::default();
        for x in [2.0, 3.0, 4.0, 10.0, 100.0, 1234.0] {
            let v = chebyshev_value(x, &cfg);
            assert!(v.theta.value() - v.theta.err() <= v.psi.value() + v.psi.err());
        }
    }

    #[test]
    fn factorial_logs() {
        assert!(contains(&log_factorial(6), LN_720));
        assert_eq!(log_factorial(1), CertifiedReal::ZERO);
        let mut cursor = LogFactorialCursor::new();
        cursor.advance_to(5);
        assert!(contains(&cursor.advance_to(6), LN_720));
    }

    #[test]
    fn central_binomials_small() {
        let cfg = EvalConfig::default();
        let b1 = central_binomial(1, &cfg).unwrap();
        assert_eq!(b1.exact, Some(BigUint::from(2u32)));
        let b3 = central_binomial(3, &cfg).unwrap();
        assert_eq!(b3.exact, Some(BigUint::from(20u32)));
        assert!(contains(&b3.log_value, LN_20));
        let b5 = central_binomial(5, &cfg).unwrap();
        assert_eq!(b5.exact, Some(BigUint::from(252u32)));
        assert!(matches!(
            central_binomial(0, &cfg),
            Err(ChebyshevError::BinomialIndexZero)
        ));
    }

    #[test]
    fn binomial_routes_agree_across_cap() {
        let low_cap = EvalConfig { exact_cap: 10, ..EvalConfig::default() };
        let exact = central_binomial(30, &EvalConfig::default()).unwrap();
        let approx = central_binomial(30, &low_cap).unwrap();
        assert!(exact.exact.is_some() && approx.exact.is_none());
        let (e, a) = (exact.log_value, approx.log_value);
        assert!((e.value() - a.value()).abs() <= e.err() + a.err());
    }

    #[test]
    fn big_binomial_log_is_contained() {
        // ln C(200, 100) against the exact integer's log
        let cfg = EvalConfig::default();
        let b = central_binomial(100, &cfg).unwrap();
        let exact = b.exact.as_ref().unwrap();
        let direct = log_of_biguint(exact);
        assert!((b.log_value.value() - direct.value()).abs() <= b.log_value.err() + direct.err());
        assert!(b.log_value.err() < 1e-10);
    }

    #[test]
    fn identity_examples() {
        let cfg = EvalConfig::default();
        // ln 720 = psi(6) + psi(3) + psi(2)
        let c1 = check_identity(IdentityId::Eq1, 3, &cfg);
        assert!(c1.consistent(), "EQ1 at n=3: {c1:?}");
        assert!(contains(&c1.lhs, LN_720));
        // psi(10) - 2 psi(3) = theta(10) - theta(3) + theta(2)
        let c2 = check_identity(IdentityId::Eq2, 5, &cfg);
        assert!(c2.consistent(), "EQ2 at n=5: {c2:?}");
        assert!(contains(&c2.lhs, (70.0f64).ln()));
        // ln C(6,3) = psi(6) - psi(3) + psi(2)
        let c3 = check_identity(IdentityId::Eq3, 3, &cfg);
        assert!(c3.consistent(), "EQ3 at n=3: {c3:?}");
        assert!(contains(&c3.lhs, LN_20));
        for n in 1..=50 {
            for id in IdentityId::ALL {
                assert!(check_identity(id, n, &cfg).consistent(), "{id} at n={n}");
            }
        }
    }

    #[test]
    fn segment_size_never_changes_the_truth() {
        for bytes in [16usize, 64, 4096] {
            let cfg = EvalConfig {
                sieve: SieveConfig { segment_bytes: bytes },
                ..EvalConfig::default()
            };
            let p = psi_with(10_000.0, &cfg);
            let q = psi(10_000.0);
            assert!((p.value() - q.value()).abs() <= p.err() + q.err());
        }
    }
}
