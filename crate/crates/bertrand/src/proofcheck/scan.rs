//! Row sources for the inequality scans: one stateful evaluator per check,
//! driven over an ascending range of `n`.
//!
//! Every source keeps monotone cursors ([`PsiCursor`], [`ThetaCursor`],
//! [`LogFactorialCursor`] via [`BinomialCursor`]) so a whole range scan
//! costs a single enumeration of primes and prime powers, not one per `n`.
//! Verdicts come from certified interval gaps; the non-strict checks fall
//! back to exact big-integer comparison when intervals touch (which happens
//! precisely at the small-`n` ties), and the binomial growth checks run on
//! exact integers below the configured cap. A float-certain failure is
//! never re-litigated: sound intervals cannot certify a falsehood.

use num_bigint::BigUint;
use num_traits::One;

use crate::chebyshev::{
    central_binomial_exact, central_binomial_step, iroot, log_of_biguint, prime_powers_up_to,
    EvalConfig, LogFactorialCursor, PsiCursor, ThetaCursor,
};
use crate::numerics::{log_nat, CertifiedReal};
use crate::report::{CheckReport, ReportRow, RowVerdict};
use crate::sieve::{primes_up_to, PrimeScanner};

use super::{CheckId, ProofConstants};

/// `lcm(1..=x)` as an exact integer: the product of `p` over prime powers
/// `p^m <= x`, i.e. `e^psi(x)`.
pub(super) fn exact_lcm(x: u64) -> BigUint {
    let mut acc = BigUint::one();
    for pp in prime_powers_up_to(x) {
        acc *= pp.prime;
    }
    acc
}

/// The primorial of `x`: the product of all primes `<= x`, i.e.
/// `e^theta(x)`.
pub(super) fn primorial(x: u64) -> BigUint {
    let mut acc = BigUint::one();
    for p in primes_up_to(x) {
        acc *= p;
    }
    acc
}

/// Monotone supplier of `C(2n, n)`: exact integer plus its certified log
/// below the cap, log-factorial difference above it.
pub(super) struct BinomialCursor {
    n: u64,
    exact: BigUint,
    cap: u64,
    lf_hi: LogFactorialCursor,
    lf_lo: LogFactorialCursor,
}

impl BinomialCursor {
    pub(super) fn new(cap: u64) -> Self {
        BinomialCursor {
            n: 1,
            exact: BigUint::from(2u32),
            cap,
            lf_hi: LogFactorialCursor::new(),
            lf_lo: LogFactorialCursor::new(),
        }
    }

    /// Certified `ln C(2n, n)` and, when `n` is within the exact cap, the
    /// exact integer. `n` must be nondecreasing across calls.
    pub(super) fn advance_to(&mut self, n: u64) -> (Option<&BigUint>, CertifiedReal) {
        assert!(n >= 1 && n >= self.n, "binomial cursor arguments must be nondecreasing");
        if n <= self.cap {
            while self.n < n {
                central_binomial_step(&mut self.exact, self.n);
                self.n += 1;
            }
            let log = log_of_biguint(&self.exact);
            (Some(&self.exact), log)
        } else {
            // the exact state is left behind for good: n never decreases
            self.n = n;
            let hi = self.lf_hi.advance_to(2 * n);
            let lo = self.lf_lo.advance_to(n);
            (None, hi.sub(&lo).sub(&lo))
        }
    }
}

trait RowSource {
    fn row(&mut self, n: u64) -> ReportRow;
}

fn drive(check: &'static str, from: u64, to: u64, mut src: Box<dyn RowSource>) -> CheckReport {
    assert!(from <= to, "empty scan range");
    let mut rows = Vec::with_capacity((to - from + 1) as usize);
    for n in from..=to {
        rows.push(src.row(n));
    }
    CheckReport::from_inequality_rows(check, from, to, rows)
}

/// Verdict and margin for a strict multi-link claim: every link's gap must
/// be certifiably positive; any certifiably negative gap is a failure.
fn decide_strict(gaps: &[CertifiedReal]) -> (RowVerdict, f64) {
    let mut margin = f64::INFINITY;
    let mut all_pass = true;
    let mut any_fail = false;
    for g in gaps {
        margin = margin.min(g.lower());
        let pass = g.lower() > 0.0;
        if !pass {
            all_pass = false;
        }
        if g.upper() < 0.0 {
            any_fail = true;
        }
    }
    let verdict = if any_fail {
        RowVerdict::CertainFail
    } else if all_pass {
        RowVerdict::CertainPass
    } else {
        RowVerdict::Indeterminate
    };
    (verdict, margin)
}

/// Resolution of one non-strict link: float-certain, or settled exactly.
enum LinkOutcome {
    FloatPass,
    ExactPass,
    Fail,
}

/// Decide one non-strict link. `exact` is consulted only when the interval
/// gap is indeterminate, and must answer the claim `lhs <= rhs` exactly.
fn decide_link(gap: &CertifiedReal, exact: impl FnOnce() -> bool) -> LinkOutcome {
    if gap.lower() > 0.0 {
        LinkOutcome::FloatPass
    } else if gap.upper() < 0.0 {
        LinkOutcome::Fail
    } else if exact() {
        LinkOutcome::ExactPass
    } else {
        LinkOutcome::Fail
    }
}

fn combine_links(raw_margin: f64, outcomes: &[LinkOutcome]) -> (RowVerdict, f64) {
    if outcomes.iter().any(|o| matches!(o, LinkOutcome::Fail)) {
        return (RowVerdict::CertainFail, raw_margin);
    }
    if outcomes.iter().any(|o| matches!(o, LinkOutcome::ExactPass)) {
        // an exact tie contributes a true gap of zero, so clamp the
        // certified lower bound up to it
        (RowVerdict::ExactPass, raw_margin.max(0.0))
    } else {
        (RowVerdict::CertainPass, raw_margin)
    }
}

/// psi(2n) - 2 psi(floor(sqrt(2n))) <= theta(2n) <= psi(2n), non-strict.
struct SandwichSource {
    psi_hi: PsiCursor,
    psi_root: PsiCursor,
    theta_hi: ThetaCursor,
}

impl RowSource for SandwichSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let x = 2 * n;
        let s = iroot(x, 2);
        let psi_x = self.psi_hi.advance_to(x);
        let psi_s = self.psi_root.advance_to(s);
        let theta_x = self.theta_hi.advance_to(x);
        let left = psi_x.sub(&psi_s).sub(&psi_s);
        let g1 = theta_x.sub(&left);
        let g2 = psi_x.sub(&theta_x);
        let outcomes = [
            // lcm(1..2n) <= primorial(2n) * lcm(1..s)^2
            decide_link(&g1, || {
                let ls = exact_lcm(s);
                exact_lcm(x) <= primorial(x) * (&ls * &ls)
            }),
            // primorial(2n) <= lcm(1..2n)
            decide_link(&g2, || primorial(x) <= exact_lcm(x)),
        ];
        let (verdict, margin) = combine_links(g1.lower().min(g2.lower()), &outcomes);
        ReportRow::new(CheckId::Eq4.as_str(), n, &left, &psi_x, verdict, margin)
    }
}

/// psi(2n) - psi(n) <= ln C(2n, n), non-strict.
struct LowerBinomSource {
    psi_hi: PsiCursor,
    psi_lo: PsiCursor,
    bin: BinomialCursor,
}

impl RowSource for LowerBinomSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let lhs = self.psi_hi.advance_to(2 * n).sub(&self.psi_lo.advance_to(n));
        let (exact_n, log_n) = self.bin.advance_to(n);
        let gap = log_n.sub(&lhs);
        let outcome = decide_link(&gap, || {
            // lcm(1..2n) <= C(2n, n) * lcm(1..n)
            let binom = match exact_n {
                Some(b) => b.clone(),
                None => central_binomial_exact(n),
            };
            exact_lcm(2 * n) <= binom * exact_lcm(n)
        });
        let (verdict, margin) = combine_links(gap.lower(), &[outcome]);
        ReportRow::new(CheckId::Eq5.as_str(), n, &lhs, &log_n, verdict, margin)
    }
}

/// 3 C(2n, n) <= C(2n+2, n+1) <= 4 C(2n, n); decided exactly at every `n`
/// (big integers below the cap, the cancelled ratio above it), with
/// margins from the exact per-step ratio `2(2n+1)/(n+1)`.
struct GrowthSource {
    c: ProofConstants,
    bin: BinomialCursor,
}

impl RowSource for GrowthSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let (exact_n, log_n) = self.bin.advance_to(n);
        let verdict = match exact_n {
            Some(cur) => {
                let mut next = cur.clone();
                central_binomial_step(&mut next, n);
                if cur * 3u32 <= next && next <= cur * 4u32 {
                    RowVerdict::ExactPass
                } else {
                    RowVerdict::CertainFail
                }
            }
            None => {
                let mid = 2 * (2 * (n as u128) + 1);
                let unit = (n as u128) + 1;
                if 3 * unit <= mid && mid <= 4 * unit {
                    RowVerdict::ExactPass
                } else {
                    RowVerdict::CertainFail
                }
            }
        };
        // link gaps in the log domain: the step ratio against 3 and 4
        let mid = 4 * n + 2; // 2(2n+1)
        let lo = 3 * (n + 1);
        let hi = 4 * (n + 1);
        let g_lo = if mid == lo {
            0.0
        } else {
            log_nat(mid).unwrap().sub(&log_nat(lo).unwrap()).lower()
        };
        let g_hi = log_nat(hi).unwrap().sub(&log_nat(mid).unwrap()).lower();
        let raw = g_lo.min(g_hi);
        let margin = if verdict == RowVerdict::ExactPass { raw.max(0.0) } else { raw };
        let lhs = self.c.a.add(&log_n);
        let rhs = self.c.b.add(&log_n);
        ReportRow::new(CheckId::Eq6.as_str(), n, &lhs, &rhs, verdict, margin)
    }
}

/// ln C(2n, n) against its linear bound: `< n log 4` (upper) or
/// `> n log 3` (lower), strict; exact `3^n < C(2n,n) < 4^n` below the cap.
struct BinomBoundSource {
    id: CheckId,
    upper: bool,
    c: ProofConstants,
    bin: BinomialCursor,
    pow: BigUint,
    pow_n: u64,
    base: u32,
}

impl BinomBoundSource {
    fn new(upper: bool, cap: u64, c: ProofConstants) -> Self {
        BinomBoundSource {
            id: if upper { CheckId::Eq7Upper } else { CheckId::Eq7Lower },
            upper,
            c,
            bin: BinomialCursor::new(cap),
            pow: BigUint::one(),
            pow_n: 0,
            base: if upper { 4 } else { 3 },
        }
    }
}

impl RowSource for BinomBoundSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let (exact_n, log_n) = self.bin.advance_to(n);
        let coeff = if self.upper { self.c.b } else { self.c.a };
        let bound = coeff.mul(&CertifiedReal::from_int(n as i64));
        let gap = if self.upper { bound.sub(&log_n) } else { log_n.sub(&bound) };
        let raw = gap.lower();
        let (verdict, margin) = match exact_n {
            Some(binom) => {
                while self.pow_n < n {
                    self.pow *= self.base;
                    self.pow_n += 1;
                }
                let holds =
                    if self.upper { *binom < self.pow } else { self.pow < *binom };
                if holds {
                    (RowVerdict::ExactPass, raw.max(0.0))
                } else {
                    (RowVerdict::CertainFail, raw)
                }
            }
            None => decide_strict(std::slice::from_ref(&gap)),
        };
        let (lhs, rhs) = if self.upper { (log_n, bound) } else { (bound, log_n) };
        ReportRow::new(self.id.as_str(), n, &lhs, &rhs, verdict, margin)
    }
}

/// psi(2n) - psi(n) < n log 4, strict.
struct PsiGapUpperSource {
    c: ProofConstants,
    psi_hi: PsiCursor,
    psi_lo: PsiCursor,
}

impl RowSource for PsiGapUpperSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let lhs = self.psi_hi.advance_to(2 * n).sub(&self.psi_lo.advance_to(n));
        let rhs = self.c.b.mul(&CertifiedReal::from_int(n as i64));
        let (verdict, margin) = decide_strict(&[rhs.sub(&lhs)]);
        ReportRow::new(CheckId::Eq8.as_str(), n, &lhs, &rhs, verdict, margin)
    }
}

/// psi(2n) - psi(n) + psi(floor(2n/3)) > n log 3, strict.
struct PsiGapLowerSource {
    c: ProofConstants,
    psi_hi: PsiCursor,
    psi_lo: PsiCursor,
    psi_23: PsiCursor,
}

impl RowSource for PsiGapLowerSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let lhs = self
            .psi_hi
            .advance_to(2 * n)
            .sub(&self.psi_lo.advance_to(n))
            .add(&self.psi_23.advance_to(2 * n / 3));
        let rhs = self.c.a.mul(&CertifiedReal::from_int(n as i64));
        let (verdict, margin) = decide_strict(&[lhs.sub(&rhs)]);
        ReportRow::new(CheckId::Eq9.as_str(), n, &lhs, &rhs, verdict, margin)
    }
}

/// psi(2n) < 2n log 4, strict.
struct PsiDoublingSource {
    c: ProofConstants,
    psi_hi: PsiCursor,
}

impl RowSource for PsiDoublingSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let lhs = self.psi_hi.advance_to(2 * n);
        let rhs = self.c.b.mul(&CertifiedReal::from_int(2 * n as i64));
        let (verdict, margin) = decide_strict(&[rhs.sub(&lhs)]);
        ReportRow::new(CheckId::Eq10.as_str(), n, &lhs, &rhs, verdict, margin)
    }
}

/// The two-link chain
/// `psi(2n) - psi(n) + psi(2n/3)
///    < theta(2n) + 2 psi(sqrt(2n)) - theta(n) + psi(2n/3)
///    < theta(2n) - theta(n) + sqrt(8n) log 4 + (2n/3) log 4`, strict.
struct ChainBoundSource {
    c: ProofConstants,
    psi_hi: PsiCursor,
    psi_lo: PsiCursor,
    psi_23: PsiCursor,
    psi_root: PsiCursor,
    theta_hi: ThetaCursor,
    theta_lo: ThetaCursor,
}

impl RowSource for ChainBoundSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let x = 2 * n;
        let s = iroot(x, 2);
        let psi_x = self.psi_hi.advance_to(x);
        let psi_n = self.psi_lo.advance_to(n);
        let psi_23 = self.psi_23.advance_to(x / 3);
        let psi_s = self.psi_root.advance_to(s);
        let theta_x = self.theta_hi.advance_to(x);
        let theta_n = self.theta_lo.advance_to(n);
        let left = psi_x.sub(&psi_n).add(&psi_23);
        let mid = theta_x.add(&psi_s).add(&psi_s).sub(&theta_n).add(&psi_23);
        let right = theta_x
            .sub(&theta_n)
            .add(&self.c.b.mul(&CertifiedReal::sqrt_of(8 * n)))
            .add(&self.c.b.mul(&CertifiedReal::from_ratio(2 * n as i64, 3)));
        let (verdict, margin) = decide_strict(&[mid.sub(&left), right.sub(&mid)]);
        ReportRow::new(CheckId::Eq11.as_str(), n, &left, &right, verdict, margin)
    }
}

/// theta(2n) - theta(n) > n log 3 - sqrt(8n) log 4 - (2n/3) log 4, strict.
struct ThetaGapSource {
    c: ProofConstants,
    theta_hi: ThetaCursor,
    theta_lo: ThetaCursor,
}

impl RowSource for ThetaGapSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let lhs = self.theta_hi.advance_to(2 * n).sub(&self.theta_lo.advance_to(n));
        let rhs = self.c.theta_gap_bound(n);
        let (verdict, margin) = decide_strict(&[lhs.sub(&rhs)]);
        ReportRow::new(CheckId::Final.as_str(), n, &lhs, &rhs, verdict, margin)
    }
}

/// The constructive conclusion, row-checked: the lower bound is certifiably
/// positive, theta(2n) - theta(n) certifiably exceeds it (so a prime lies
/// in (n, 2n]), and an explicit witness prime confirms it exactly.
struct SoundnessSource {
    c: ProofConstants,
    theta_hi: ThetaCursor,
    theta_lo: ThetaCursor,
    primes: PrimeScanner,
    next_prime: u64,
}

impl RowSource for SoundnessSource {
    fn row(&mut self, n: u64) -> ReportRow {
        let lhs = self.theta_hi.advance_to(2 * n).sub(&self.theta_lo.advance_to(n));
        let rhs = self.c.theta_gap_bound(n);
        while self.next_prime <= n {
            self.next_prime = self.primes.pop();
        }
        let witness_ok = self.next_prime < 2 * n;
        // the claim `rhs > 0` has gap `rhs` itself
        let (gap_verdict, margin) = decide_strict(&[rhs, lhs.sub(&rhs)]);
        let verdict = if witness_ok { gap_verdict } else { RowVerdict::CertainFail };
        ReportRow::new("CHAIN", n, &lhs, &rhs, verdict, margin)
    }
}

pub(super) fn inequality_scan(
    id: CheckId,
    from: u64,
    to: u64,
    cfg: &EvalConfig,
    c: &ProofConstants,
) -> CheckReport {
    let src: Box<dyn RowSource> = match id {
        CheckId::Eq4 => Box::new(SandwichSource {
            psi_hi: PsiCursor::new(),
            psi_root: PsiCursor::new(),
            theta_hi: ThetaCursor::new(),
        }),
        CheckId::Eq5 => Box::new(LowerBinomSource {
            psi_hi: PsiCursor::new(),
            psi_lo: PsiCursor::new(),
            bin: BinomialCursor::new(cfg.exact_cap),
        }),
        CheckId::Eq6 => Box::new(GrowthSource { c: *c, bin: BinomialCursor::new(cfg.exact_cap) }),
        CheckId::Eq7Upper => Box::new(BinomBoundSource::new(true, cfg.exact_cap, *c)),
        CheckId::Eq7Lower => Box::new(BinomBoundSource::new(false, cfg.exact_cap, *c)),
        CheckId::Eq8 => Box::new(PsiGapUpperSource {
            c: *c,
            psi_hi: PsiCursor::new(),
            psi_lo: PsiCursor::new(),
        }),
        CheckId::Eq9 => Box::new(PsiGapLowerSource {
            c: *c,
            psi_hi: PsiCursor::new(),
            psi_lo: PsiCursor::new(),
            psi_23: PsiCursor::new(),
        }),
        CheckId::Eq10 => Box::new(PsiDoublingSource { c: *c, psi_hi: PsiCursor::new() }),
        CheckId::Eq11 => Box::new(ChainBoundSource {
            c: *c,
            psi_hi: PsiCursor::new(),
            psi_lo: PsiCursor::new(),
            psi_23: PsiCursor::new(),
            psi_root: PsiCursor::new(),
            theta_hi: ThetaCursor::new(),
            theta_lo: ThetaCursor::new(),
        }),
        CheckId::Final => Box::new(ThetaGapSource {
            c: *c,
            theta_hi: ThetaCursor::new(),
            theta_lo: ThetaCursor::new(),
        }),
    };
    drive(id.as_str(), from, to, src)
}

pub(super) fn soundness_scan(
    from: u64,
    to: u64,
    _cfg: &EvalConfig,
    c: &ProofConstants,
) -> CheckReport {
    let src = Box::new(SoundnessSource {
        c: *c,
        theta_hi: ThetaCursor::new(),
        theta_lo: ThetaCursor::new(),
        primes: PrimeScanner::new(),
        next_prime: 0,
    });
    drive("CHAIN", from, to, src)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_products_at_small_arguments() {
        assert_eq!(exact_lcm(1), BigUint::one());
        assert_eq!(exact_lcm(10), BigUint::from(2520u32));
        assert_eq!(exact_lcm(8), BigUint::from(840u32));
        assert_eq!(primorial(10), BigUint::from(210u32));
        assert_eq!(primorial(2), BigUint::from(2u32));
        assert_eq!(primorial(1), BigUint::one());
    }

    #[test]
    fn binomial_cursor_crosses_its_cap() {
        let mut cur = BinomialCursor::new(6);
        let (e2, l2) = cur.advance_to(2);
        assert_eq!(e2.cloned(), Some(BigUint::from(6u32)));
        assert!((l2.value() - 6.0f64.ln()).abs() < 1e-12);
        let (e5, _) = cur.advance_to(5);
        assert_eq!(e5.cloned(), Some(BigUint::from(252u32)));
        let (e9, l9) = cur.advance_to(9);
        assert!(e9.is_none());
        // C(18, 9) = 48620
        assert!((l9.value() - 48620.0f64.ln()).abs() < 1e-9);
    }
}
