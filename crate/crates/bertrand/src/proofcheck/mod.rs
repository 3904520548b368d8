//! Machine verification of Bertrand's postulate: for every integer `n >= 2`
//! there is a prime `p` with `n < p < 2n`. (At `n = 1` the open interval
//! `(1, 2)` is empty; the classical closed form `n < p <= 2n` is answered
//! there by `p = 2`.)
//!
//! The argument verified here splits into three certified stages.
//!
//! 1. **Analytic stage.** A family of inequalities relates the Chebyshev
//!    sums `theta` and `psi` to the central binomial coefficient
//!    `C(2n, n)` and to the linear bounds `n log 3` and `n log 4`. Chained
//!    together they force `theta(2n) - theta(n)` above
//!    `n log 3 - sqrt(8n) log 4 - (2n/3) log 4`, a bound that is positive
//!    once `n` is large enough. A positive value of `theta(2n) - theta(n)`
//!    is a sum of logarithms of primes in `(n, 2n]`, so at least one such
//!    prime exists.
//! 2. **Threshold stage.** The bound above is a quadratic in `sqrt(n)` with
//!    one sign change; [`threshold_n`] certifies the exact integer where it
//!    turns positive (505: negative at 505, positive at 506).
//! 3. **Finite stage.** Below the threshold the postulate is checked
//!    directly: [`bertrand_scan`] exhibits a witness prime for every
//!    `n` up to the threshold.
//!
//! Each inequality is scanned over its whole claimed range by
//! [`verify_inequality`], producing one [`ReportRow`] per `n` with a
//! certified verdict and margin. Identities over the same sums are checked
//! by [`verify_identity_range`] and [`verify_identities`]. The induction
//! packaging (base cases, exact growth ratio of `C(2n, n)`, and the linear
//! bounds at every `n`) is [`verify_induction`], and [`verify_all`] runs
//! the complete battery in a fixed, reproducible order.
//!
//! Soundness convention: a row passes only when the claim holds for every
//! real point of the certified intervals (or is settled by exact integer
//! arithmetic); a row fails only when the claim fails for every such
//! point. Anything else is reported indeterminate rather than guessed.

mod scan;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

use crate::chebyshev::{
    central_binomial_exact, check_identity_with_table, log_of_biguint, ChebyshevTable,
    EvalConfig, IdentityId,
};
use crate::numerics::{cert_compare, log_nat, CertifiedReal, Verdict};
use crate::report::{CheckReport, ReportRow, RowVerdict};
use crate::sieve::{is_prime, next_prime_after, PrimeScanner};

/// Smallest scope accepted by [`verify_all`]: the threshold plus one, so the
/// scan window contains at least one `n` settled by the analytic stage.
pub const FULL_VERIFY_MIN_N: u64 = 506;

/// Largest `n` any scan accepts. Keeps `2n`, `8n` and the float images of
/// all integer inputs exactly representable, with room to spare.
pub const MAX_SCAN_N: u64 = 1 << 52;

/// Identities are checked exhaustively up to this bound...
const IDENTITY_EXHAUSTIVE_MAX: u64 = 2000;
/// ...and on a fixed pseudorandom sample above it, capped here.
const IDENTITY_SAMPLE_MAX: u64 = 100_000;
const IDENTITY_SAMPLE_COUNT: u64 = 100;
const IDENTITY_SAMPLE_SEED: u64 = 0x5EED_5EED_5EED_5EED;

/// Cap for [`verify_identity_range`]: the per-range lookup table holds two
/// certified values per integer up to `2 n_end`.
const IDENTITY_SCAN_MAX: u64 = 1_000_000;

/// The two logarithmic constants the whole argument is built from, as
/// certified intervals: `a = log 3` (lower-bound slope) and `b = log 4`
/// (upper-bound slope).
#[derive(Debug, Clone, Copy)]
pub struct ProofConstants {
    pub a: CertifiedReal,
    pub b: CertifiedReal,
}

impl ProofConstants {
    pub fn new() -> Self {
        let a = log_nat(3).expect("log of positive integer");
        let b = log_nat(4).expect("log of positive integer");
        assert_eq!(cert_compare(&a, &b), Verdict::CertainLess, "log 3 < log 4 must certify");
        ProofConstants { a, b }
    }

    /// The slope `a - 2b/3` of the linear part of [`Self::theta_gap_bound`].
    /// Certifiably positive, which is what makes a finite threshold exist.
    pub fn linear_coeff(&self) -> CertifiedReal {
        self.a.sub(&self.b.mul(&CertifiedReal::from_ratio(2, 3)))
    }

    /// The certified lower bound `(a - 2b/3) n - b sqrt(8n)` on
    /// `theta(2n) - theta(n)` delivered by the analytic stage.
    pub fn theta_gap_bound(&self, n: u64) -> CertifiedReal {
        assert!(n <= MAX_SCAN_N, "bound argument out of range");
        self.linear_coeff()
            .mul(&CertifiedReal::from_int(n as i64))
            .sub(&self.b.mul(&CertifiedReal::sqrt_of(8 * n)))
    }
}

impl Default for ProofConstants {
    fn default() -> Self {
        Self::new()
    }
}

/// The scanned inequality checks, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CheckId {
    /// `psi(2n) - 2 psi(floor(sqrt(2n))) <= theta(2n) <= psi(2n)`.
    Eq4,
    /// `psi(2n) - psi(n) <= ln C(2n, n)`.
    Eq5,
    /// `3 C(2n, n) <= C(2n+2, n+1) <= 4 C(2n, n)`.
    Eq6,
    /// `ln C(2n, n) < n log 4` for `n >= 2`.
    Eq7Upper,
    /// `n log 3 < ln C(2n, n)` for `n >= 5`.
    Eq7Lower,
    /// `psi(2n) - psi(n) < n log 4`.
    Eq8,
    /// `psi(2n) - psi(n) + psi(floor(2n/3)) > n log 3`.
    Eq9,
    /// `psi(2n) < 2n log 4`.
    Eq10,
    /// The chain bounding the lower-bound sum by a theta difference plus
    /// explicit error terms.
    Eq11,
    /// `theta(2n) - theta(n) > n log 3 - sqrt(8n) log 4 - (2n/3) log 4`.
    Final,
}

impl CheckId {
    pub const ALL: [CheckId; 10] = [
        CheckId::Eq4,
        CheckId::Eq5,
        CheckId::Eq6,
        CheckId::Eq7Upper,
        CheckId::Eq7Lower,
        CheckId::Eq8,
        CheckId::Eq9,
        CheckId::Eq10,
        CheckId::Eq11,
        CheckId::Final,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckId::Eq4 => "EQ4",
            CheckId::Eq5 => "EQ5",
            CheckId::Eq6 => "EQ6",
            CheckId::Eq7Upper => "EQ7_UPPER",
            CheckId::Eq7Lower => "EQ7_LOWER",
            CheckId::Eq8 => "EQ8",
            CheckId::Eq9 => "EQ9",
            CheckId::Eq10 => "EQ10",
            CheckId::Eq11 => "EQ11",
            CheckId::Final => "FINAL",
        }
    }

    /// Smallest `n` at which the check is claimed to hold.
    pub fn min_n(&self) -> u64 {
        match self {
            CheckId::Eq4 | CheckId::Eq5 | CheckId::Eq6 => 1,
            CheckId::Eq7Upper | CheckId::Eq8 | CheckId::Eq10 => 2,
            CheckId::Eq7Lower | CheckId::Eq9 | CheckId::Eq11 | CheckId::Final => 5,
        }
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckId::ALL
            .iter()
            .copied()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| {
                let valid: Vec<&str> = CheckId::ALL.iter().map(|id| id.as_str()).collect();
                format!("unknown check '{s}' (expected one of {})", valid.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("{check} is only claimed for n >= {min_n}, but the range starts at {n_start}")]
    BelowValidRange { check: &'static str, min_n: u64, n_start: u64 },
    #[error("empty range: n_start = {n_start} exceeds n_end = {n_end}")]
    EmptyRange { n_start: u64, n_end: u64 },
    #[error("range end {n_end} exceeds the supported maximum {max}")]
    RangeTooLarge { n_end: u64, max: u64 },
    #[error("witnesses are defined for n >= 2, got n = {n}")]
    WitnessDomain { n: u64 },
    #[error("{p} is not prime")]
    WitnessNotPrime { p: u64 },
    #[error("prime {p} does not lie strictly between {n} and {}", .n * 2)]
    WitnessOutOfRange { n: u64, p: u64 },
    #[error("no prime strictly between {n} and {}: the postulate is violated", .n * 2)]
    PostulateViolated { n: u64 },
    #[error("scope n_max = {n_max} is too small; this verification needs n_max >= {required}")]
    ScopeTooSmall { n_max: u64, required: u64 },
    #[error("no sign change certified near the estimated threshold {estimate}")]
    ThresholdUndecided { estimate: u64 },
}

fn check_range(n_start: u64, n_end: u64, max: u64) -> Result<(), ProofError> {
    if n_start > n_end {
        return Err(ProofError::EmptyRange { n_start, n_end });
    }
    if n_end > max {
        return Err(ProofError::RangeTooLarge { n_end, max });
    }
    Ok(())
}

/// Scan one inequality over `n_start..=n_end`, refusing ranges that start
/// below the check's claimed domain.
pub fn verify_inequality(
    id: CheckId,
    n_start: u64,
    n_end: u64,
    cfg: &EvalConfig,
) -> Result<CheckReport, ProofError> {
    if n_start < id.min_n() {
        return Err(ProofError::BelowValidRange {
            check: id.as_str(),
            min_n: id.min_n(),
            n_start,
        });
    }
    check_range(n_start, n_end, MAX_SCAN_N)?;
    Ok(verify_inequality_unchecked(id, n_start, n_end, cfg))
}

/// Like [`verify_inequality`] but without the domain guard, so ranges where
/// a check is *expected* to fail can be probed deliberately (the scanner
/// itself stays sound; rows outside the claimed domain simply come back
/// as certified failures). Panics on an empty range.
pub fn verify_inequality_unchecked(
    id: CheckId,
    n_start: u64,
    n_end: u64,
    cfg: &EvalConfig,
) -> CheckReport {
    scan::inequality_scan(id, n_start, n_end, cfg, &ProofConstants::new())
}

/// Row-check the constructive conclusion on `n_start..=n_end`, all above
/// the threshold: the analytic lower bound is certifiably positive, the
/// theta difference certifiably exceeds it, and an explicitly located
/// witness prime in `(n, 2n)` confirms the consequence exactly.
pub fn verify_soundness(
    n_start: u64,
    n_end: u64,
    cfg: &EvalConfig,
) -> Result<CheckReport, ProofError> {
    if n_start < FULL_VERIFY_MIN_N {
        return Err(ProofError::BelowValidRange {
            check: "CHAIN",
            min_n: FULL_VERIFY_MIN_N,
            n_start,
        });
    }
    check_range(n_start, n_end, MAX_SCAN_N)?;
    Ok(scan::soundness_scan(n_start, n_end, cfg, &ProofConstants::new()))
}

fn identity_row(id: IdentityId, n: u64, table: &ChebyshevTable, cfg: &EvalConfig) -> ReportRow {
    let chk = check_identity_with_table(id, n, table, cfg);
    // positive only when the two intervals are disjoint, i.e. the sides
    // certifiably differ; an exact identity must never produce that
    let margin = (chk.lhs.lower() - chk.rhs.upper()).max(chk.rhs.lower() - chk.lhs.upper());
    let verdict = if margin <= 0.0 { RowVerdict::CertainPass } else { RowVerdict::CertainFail };
    ReportRow::new(id.as_str(), n, &chk.lhs, &chk.rhs, verdict, margin)
}

/// Check one summation identity at every `n` in `n_start..=n_end`.
pub fn verify_identity_range(
    id: IdentityId,
    n_start: u64,
    n_end: u64,
    cfg: &EvalConfig,
) -> Result<CheckReport, ProofError> {
    if n_start < 1 {
        return Err(ProofError::BelowValidRange { check: id.as_str(), min_n: 1, n_start });
    }
    check_range(n_start, n_end, IDENTITY_SCAN_MAX)?;
    let table = ChebyshevTable::build(2 * n_end);
    let rows: Vec<ReportRow> =
        (n_start..=n_end).map(|n| identity_row(id, n, &table, cfg)).collect();
    Ok(CheckReport::from_identity_rows(id.as_str(), n_start, n_end, rows))
}

fn split_mix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The deterministic sample of identity arguments drawn from the window
/// above the exhaustive range: sorted, duplicate-free values in
/// `(2000, min(n_max, 100000)]`, at most 100 of them, identical on every
/// run and platform.
pub fn identity_sample_ns(n_max: u64) -> Vec<u64> {
    let hi = n_max.min(IDENTITY_SAMPLE_MAX);
    if hi <= IDENTITY_EXHAUSTIVE_MAX {
        return Vec::new();
    }
    let span = hi - IDENTITY_EXHAUSTIVE_MAX;
    let want = IDENTITY_SAMPLE_COUNT.min(span) as usize;
    let mut picks = BTreeSet::new();
    let mut state = IDENTITY_SAMPLE_SEED;
    while picks.len() < want {
        picks.insert(IDENTITY_EXHAUSTIVE_MAX + 1 + split_mix64(&mut state) % span);
    }
    picks.into_iter().collect()
}

/// Check all three summation identities exhaustively up to
/// `min(n_max, 2000)` plus the fixed sample from [`identity_sample_ns`],
/// sharing one lookup table across the three scans.
pub fn verify_identities(n_max: u64, cfg: &EvalConfig) -> Result<Vec<CheckReport>, ProofError> {
    check_range(1, n_max, IDENTITY_SAMPLE_MAX.max(IDENTITY_EXHAUSTIVE_MAX))?;
    let exhaustive_end = n_max.min(IDENTITY_EXHAUSTIVE_MAX);
    let samples = identity_sample_ns(n_max);
    let top = samples.last().copied().unwrap_or(0).max(exhaustive_end);
    let table = ChebyshevTable::build(2 * top);
    let ns: Vec<u64> = (1..=exhaustive_end).chain(samples.iter().copied()).collect();
    Ok(IdentityId::ALL
        .iter()
        .map(|&id| {
            let rows: Vec<ReportRow> =
                ns.iter().map(|&n| identity_row(id, n, &table, cfg)).collect();
            CheckReport::from_identity_rows(id.as_str(), 1, top, rows)
        })
        .collect())
}

/// The certified sign change of [`ProofConstants::theta_gap_bound`]: the
/// bound is certifiably negative at `n` and certifiably positive at
/// `n + 1`.
#[derive(Debug, Clone, Copy)]
pub struct ThresholdSearch {
    pub n: u64,
    pub at_n: CertifiedReal,
    pub at_next: CertifiedReal,
}

impl ThresholdSearch {
    pub fn row(&self) -> ReportRow {
        let margin = (-self.at_n.upper()).min(self.at_next.lower());
        ReportRow::new(
            "THRESHOLD",
            self.n,
            &self.at_n,
            &self.at_next,
            RowVerdict::CertainPass,
            margin,
        )
    }
}

/// Locate the integer threshold where the analytic lower bound turns
/// positive. The real root of the bound (a quadratic in `sqrt(n)`) is
/// estimated in interval arithmetic, then the sign change is certified
/// directly at the integers around the estimate.
pub fn threshold_n() -> Result<ThresholdSearch, ProofError> {
    let c = ProofConstants::new();
    let denom = c.linear_coeff();
    assert!(denom.lower() > 0.0, "linear slope must certify positive");
    let root = c
        .b
        .mul(&CertifiedReal::sqrt_of(8))
        .div(&denom)
        .expect("denominator certified away from zero");
    let estimate = (root.value() * root.value()).round() as u64;
    for n in estimate.saturating_sub(3)..=estimate + 3 {
        let at_n = c.theta_gap_bound(n);
        let at_next = c.theta_gap_bound(n + 1);
        if at_n.upper() < 0.0 && at_next.lower() > 0.0 {
            return Ok(ThresholdSearch { n, at_n, at_next });
        }
    }
    Err(ProofError::ThresholdUndecided { estimate })
}

/// A verified instance of the postulate: `p` is prime and `n < p < 2n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BertrandWitness {
    pub n: u64,
    pub p: u64,
}

/// Validate a claimed witness from scratch (independent primality test and
/// range check), for cross-checking scan output.
pub fn check_witness(n: u64, p: u64) -> Result<(), ProofError> {
    if n < 2 {
        return Err(ProofError::WitnessDomain { n });
    }
    if !is_prime(p) {
        return Err(ProofError::WitnessNotPrime { p });
    }
    if !(n < p && p < 2 * n) {
        return Err(ProofError::WitnessOutOfRange { n, p });
    }
    Ok(())
}

/// Find the smallest witness prime for one `n >= 2`.
pub fn bertrand_witness(n: u64) -> Result<BertrandWitness, ProofError> {
    if n < 2 {
        return Err(ProofError::WitnessDomain { n });
    }
    if n > MAX_SCAN_N {
        return Err(ProofError::RangeTooLarge { n_end: n, max: MAX_SCAN_N });
    }
    let p = next_prime_after(n);
    if p >= 2 * n {
        return Err(ProofError::PostulateViolated { n });
    }
    Ok(BertrandWitness { n, p })
}

/// Witness primes for every `n` in `2..=n_max`, with one exact report row
/// each.
#[derive(Debug, Clone)]
pub struct BertrandReport {
    pub witnesses: Vec<BertrandWitness>,
    pub report: CheckReport,
}

/// Exhibit the smallest witness prime for every `n` in `2..=n_max` in one
/// forward sweep over the primes. Errors with
/// [`ProofError::PostulateViolated`] at the first `n` lacking a witness
/// (which would disprove the theorem).
pub fn bertrand_scan(n_max: u64) -> Result<BertrandReport, ProofError> {
    if n_max < 2 {
        return Err(ProofError::ScopeTooSmall { n_max, required: 2 });
    }
    check_range(2, n_max, MAX_SCAN_N)?;
    let mut primes = PrimeScanner::starting_at(3);
    let mut p = primes.pop();
    let cap = (n_max - 1) as usize;
    let mut witnesses = Vec::with_capacity(cap);
    let mut rows = Vec::with_capacity(cap);
    for n in 2..=n_max {
        while p <= n {
            p = primes.pop();
        }
        if p >= 2 * n {
            return Err(ProofError::PostulateViolated { n });
        }
        witnesses.push(BertrandWitness { n, p });
        let margin = (p - n).min(2 * n - p) as f64;
        rows.push(ReportRow {
            check_id: "BERTRAND",
            n,
            lhs_value: p as f64,
            lhs_err: 0.0,
            rhs_value: (2 * n) as f64,
            rhs_err: 0.0,
            verdict: RowVerdict::ExactPass,
            margin,
        });
    }
    Ok(BertrandReport {
        witnesses,
        report: CheckReport::from_inequality_rows("BERTRAND", 2, n_max, rows),
    })
}

/// The induction packaging: exact base cases, the exact growth ratio of
/// `C(2n, n)`, and both linear binomial bounds scanned over their full
/// ranges.
#[derive(Debug, Clone)]
pub struct InductionReport {
    pub base_rows: Vec<ReportRow>,
    pub ratio: CheckReport,
    pub eq7_upper: CheckReport,
    pub eq7_lower: CheckReport,
    pub notes: Vec<String>,
    pub overall: RowVerdict,
}

impl InductionReport {
    /// All rows, including the two linear-bound scans.
    pub fn csv_rows(&self) -> impl Iterator<Item = ReportRow> + '_ {
        self.base_rows
            .iter()
            .copied()
            .chain(self.ratio.rows.iter().copied())
            .chain(self.eq7_upper.rows.iter().copied())
            .chain(self.eq7_lower.rows.iter().copied())
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for row in &self.base_rows {
            lines.push(format!(
                "{} n = {}: {} (margin {})",
                row.check_id, row.n, row.verdict, row.margin
            ));
        }
        lines.push(self.ratio.summary());
        lines.push(self.eq7_upper.summary());
        lines.push(self.eq7_lower.summary());
        for note in &self.notes {
            lines.push(format!("note: {note}"));
        }
        lines.push(format!("induction overall: {}", self.overall));
        lines
    }
}

/// Verify the induction that carries the binomial bounds to every `n`:
/// exact base cases (`C(4, 2) = 6 < 16` for the upper bound at `n = 2`,
/// `3^5 = 243 < 252 = C(10, 5)` for the lower at `n = 5`), the exact
/// bracket `3 <= C(2n+2, n+1) / C(2n, n) < 4` at every `n <= n_max`, and
/// both bounds re-checked directly at every `n` in range.
pub fn verify_induction(n_max: u64, cfg: &EvalConfig) -> Result<InductionReport, ProofError> {
    if n_max < 5 {
        return Err(ProofError::ScopeTooSmall { n_max, required: 5 });
    }
    check_range(1, n_max, MAX_SCAN_N)?;
    let c = ProofConstants::new();

    let mut base_rows = Vec::with_capacity(2);
    let n2 = central_binomial_exact(2);
    let lhs_up = log_of_biguint(&n2);
    let rhs_up = c.b.mul(&CertifiedReal::from_int(2));
    let v_up = if n2 < BigUint::from(16u32) {
        RowVerdict::ExactPass
    } else {
        RowVerdict::CertainFail
    };
    let m_up = rhs_up.sub(&lhs_up).lower().max(0.0);
    base_rows.push(ReportRow::new("IND_BASE_UPPER", 2, &lhs_up, &rhs_up, v_up, m_up));

    let n5 = central_binomial_exact(5);
    let lhs_lo = c.a.mul(&CertifiedReal::from_int(5));
    let rhs_lo = log_of_biguint(&n5);
    let v_lo = if BigUint::from(3u32).pow(5) < n5 {
        RowVerdict::ExactPass
    } else {
        RowVerdict::CertainFail
    };
    let m_lo = rhs_lo.sub(&lhs_lo).lower().max(0.0);
    base_rows.push(ReportRow::new("IND_BASE_LOWER", 5, &lhs_lo, &rhs_lo, v_lo, m_lo));

    let three = CertifiedReal::from_int(3);
    let four = CertifiedReal::from_int(4);
    let mut ratio_rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        // C(2n+2, n+1) / C(2n, n) = 2(2n+1) / (n+1), exactly
        let unit = (n as u128) + 1;
        let mid = 2 * (2 * (n as u128) + 1);
        let verdict = if 3 * unit <= mid && mid < 4 * unit {
            RowVerdict::ExactPass
        } else {
            RowVerdict::CertainFail
        };
        let g_lo =
            if n == 1 { 0.0 } else { (((n - 1) as f64) / ((n + 1) as f64)).next_down() };
        let g_hi = (2.0 / ((n + 1) as f64)).next_down();
        let margin = g_lo.min(g_hi).max(0.0);
        ratio_rows.push(ReportRow::new("IND_RATIO", n, &three, &four, verdict, margin));
    }
    let ratio = CheckReport::from_inequality_rows("IND_RATIO", 1, n_max, ratio_rows);

    let eq7_upper = verify_inequality(CheckId::Eq7Upper, 2, n_max, cfg)?;
    let eq7_lower = verify_inequality(CheckId::Eq7Lower, 5, n_max, cfg)?;

    let notes = vec![
        "the n = 2 base value is C(4, 2) = 6; C(2, 1) = 2 is the n = 1 value. Both lie \
         below e^(2 log 4) = 16, so the base case holds with either reading."
            .to_string(),
    ];

    let overall = base_rows
        .iter()
        .map(|r| r.verdict)
        .fold(RowVerdict::ExactPass, RowVerdict::combine)
        .combine(ratio.overall)
        .combine(eq7_upper.overall)
        .combine(eq7_lower.overall);

    Ok(InductionReport { base_rows, ratio, eq7_upper, eq7_lower, notes, overall })
}

/// Everything [`verify_all`] produces, with rows in a fixed order.
#[derive(Debug, Clone)]
pub struct ProofReport {
    pub identities: Vec<CheckReport>,
    pub inequalities: Vec<CheckReport>,
    pub chain: CheckReport,
    pub induction: InductionReport,
    pub threshold: ThresholdSearch,
    pub bertrand: BertrandReport,
    pub n_max: u64,
    pub overall: RowVerdict,
}

impl ProofReport {
    /// Every row in the canonical emission order. The induction's two
    /// linear-bound scans are omitted: the inequality section already
    /// contains those exact rows over the same ranges.
    pub fn csv_rows(&self) -> impl Iterator<Item = ReportRow> + '_ {
        self.identities
            .iter()
            .flat_map(|r| r.rows.iter().copied())
            .chain(self.inequalities.iter().flat_map(|r| r.rows.iter().copied()))
            .chain(self.chain.rows.iter().copied())
            .chain(self.induction.base_rows.iter().copied())
            .chain(self.induction.ratio.rows.iter().copied())
            .chain(std::iter::once(self.threshold.row()))
            .chain(self.bertrand.report.rows.iter().copied())
    }

    pub fn summary_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for r in &self.identities {
            lines.push(r.summary());
        }
        for r in &self.inequalities {
            lines.push(r.summary());
        }
        lines.push(self.chain.summary());
        lines.extend(self.induction.summary_lines());
        let t = self.threshold.row();
        lines.push(format!(
            "THRESHOLD n = {}: {} (bound {} at {}, {} at {})",
            self.threshold.n,
            t.verdict,
            self.threshold.at_n.value(),
            self.threshold.n,
            self.threshold.at_next.value(),
            self.threshold.n + 1,
        ));
        lines.push(self.bertrand.report.summary());
        lines.push(format!("OVERALL: {}", self.overall));
        lines
    }
}

/// Run the complete battery up to `n_max >= 506`: identities (exhaustive
/// plus sampled), every inequality over its full claimed range, the
/// constructive conclusion above the threshold, the induction packaging,
/// the certified threshold, and the explicit finite scan below it.
pub fn verify_all(n_max: u64, cfg: &EvalConfig) -> Result<ProofReport, ProofError> {
    if n_max < FULL_VERIFY_MIN_N {
        return Err(ProofError::ScopeTooSmall { n_max, required: FULL_VERIFY_MIN_N });
    }
    check_range(1, n_max, MAX_SCAN_N)?;

    let identities = verify_identities(n_max, cfg)?;
    let c = ProofConstants::new();
    let inequalities: Vec<CheckReport> = CheckId::ALL
        .iter()
        .map(|&id| scan::inequality_scan(id, id.min_n(), n_max, cfg, &c))
        .collect();
    let threshold = threshold_n()?;
    let chain = scan::soundness_scan(threshold.n + 1, n_max, cfg, &c);
    let induction = verify_induction(n_max, cfg)?;
    let bertrand = bertrand_scan(threshold.n)?;

    let overall = identities
        .iter()
        .chain(inequalities.iter())
        .map(|r| r.overall)
        .fold(RowVerdict::ExactPass, RowVerdict::combine)
        .combine(chain.overall)
        .combine(induction.overall)
        .combine(bertrand.report.overall);

    Ok(ProofReport {
        identities,
        inequalities,
        chain,
        induction,
        threshold,
        bertrand,
        n_max,
        overall,
    })
}
