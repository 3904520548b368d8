//! Row-level result reporting shared by the verification harness and the
//! CLI: one row per checked instance, a four-value verdict vocabulary, and
//! a fixed CSV schema whose rendering is byte-deterministic.
//!
//! Margin semantics by row family:
//!
//! - **Inequality rows**: `margin` is a certified lower bound of the gap in
//!   the claimed direction, so `margin > 0` means the strict claim holds.
//!   Rows decided by exact integer arithmetic report `EXACT_PASS`; an exact
//!   tie in a non-strict claim reports margin `0.0`.
//! - **Identity rows**: `margin` is the separation between the two
//!   certified intervals, `max(lhs.lower - rhs.upper, rhs.lower -
//!   lhs.upper)`; any value `<= 0` means the intervals overlap, which is
//!   consistency. A positive value refutes the identity.
//! - **Evaluation rows** (plain function values): the value goes in the
//!   `lhs` pair, `rhs` is `0, 0`, and `margin` is `0`.
//!
//! Floating-point columns use the shortest round-trip decimal rendering,
//! so a CSV re-parses to exactly the binary values that produced it and
//! two runs with the same inputs emit identical bytes.

use std::borrow::Borrow;
use std::fmt;
use std::io::{self, Write};

use crate::numerics::CertifiedReal;

/// How one checked instance was decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowVerdict {
    /// Certified floating-point intervals decided the claim in its favor.
    CertainPass,
    /// The claim is certainly false (by intervals or by exact integers).
    CertainFail,
    /// Intervals overlap and no exact route applies; no verdict is claimed.
    Indeterminate,
    /// Exact integer arithmetic decided the claim in its favor.
    ExactPass,
}

impl RowVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            RowVerdict::CertainPass => "CERTAIN_PASS",
            RowVerdict::CertainFail => "CERTAIN_FAIL",
            RowVerdict::Indeterminate => "INDETERMINATE",
            RowVerdict::ExactPass => "EXACT_PASS",
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, RowVerdict::CertainPass | RowVerdict::ExactPass)
    }

    /// Severity for aggregation: failures dominate indeterminacy, which
    /// dominates any kind of pass.
    fn severity(&self) -> u8 {
        match self {
            RowVerdict::ExactPass => 0,
            RowVerdict::CertainPass => 1,
            RowVerdict::Indeterminate => 2,
            RowVerdict::CertainFail => 3,
        }
    }

    /// The worse of two verdicts under the severity order.
    pub fn combine(self, other: RowVerdict) -> RowVerdict {
        if other.severity() > self.severity() {
            other
        } else {
            self
        }
    }
}

impl fmt::Display for RowVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One checked instance: the two sides as (value, error-bound) pairs, the
/// verdict, and the margin (see the module docs for per-family semantics).
#[derive(Debug, Clone, Copy)]
pub struct ReportRow {
    pub check_id: &'static str,
    pub n: u64,
    pub lhs_value: f64,
    pub lhs_err: f64,
    pub rhs_value: f64,
    pub rhs_err: f64,
    pub verdict: RowVerdict,
    pub margin: f64,
}

/// Collapse -0.0 to +0.0 so equal values always render identically.
fn canon(x: f64) -> f64 {
    x + 0.0
}

impl ReportRow {
    pub fn new(
        check_id: &'static str,
        n: u64,
        lhs: &CertifiedReal,
        rhs: &CertifiedReal,
        verdict: RowVerdict,
        margin: f64,
    ) -> Self {
        ReportRow {
            check_id,
            n,
            lhs_value: canon(lhs.value()),
            lhs_err: canon(lhs.err()),
            rhs_value: canon(rhs.value()),
            rhs_err: canon(rhs.err()),
            verdict,
            margin: canon(margin),
        }
    }

    /// A row for a plain evaluation (no claim): value on the left, zeros
    /// elsewhere.
    pub fn evaluation(check_id: &'static str, n: u64, value: &CertifiedReal, exact: bool) -> Self {
        ReportRow {
            check_id,
            n,
            lhs_value: canon(value.value()),
            lhs_err: canon(value.err()),
            rhs_value: 0.0,
            rhs_err: 0.0,
            verdict: if exact { RowVerdict::ExactPass } else { RowVerdict::CertainPass },
            margin: 0.0,
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.check_id,
            self.n,
            self.lhs_value,
            self.lhs_err,
            self.rhs_value,
            self.rhs_err,
            self.verdict,
            self.margin
        )
    }
}

/// The fixed CSV schema; the header line is part of the output contract.
pub const CSV_HEADER: &str = "check_id,n,lhs_value,lhs_err,rhs_value,rhs_err,verdict,margin";

/// Stream rows as CSV with the schema header.
pub fn write_csv<W: Write, R: Borrow<ReportRow>>(
    out: &mut W,
    rows: impl IntoIterator<Item = R>,
) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.borrow().csv_line())?;
    }
    Ok(())
}

/// Summary of one check scanned over a contiguous (or sampled) set of `n`.
///
/// `worst_margin`/`worst_n` point at the binding row: the minimum margin
/// for inequality scans (closest to failing low), the maximum for identity
/// scans (closest to interval separation).
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check: &'static str,
    pub n_start: u64,
    pub n_end: u64,
    pub rows: Vec<ReportRow>,
    pub worst_margin: f64,
    pub worst_n: u64,
    pub exact_rows: usize,
    pub overall: RowVerdict,
}

impl CheckReport {
    fn aggregate(check: &'static str, n_start: u64, n_end: u64, rows: Vec<ReportRow>, identity: bool) -> Self {
        assert!(!rows.is_empty(), "a check report needs at least one row");
        let mut overall = RowVerdict::ExactPass;
        let mut worst = &rows[0];
        let mut exact_rows = 0;
        for row in &rows {
            overall = overall.combine(row.verdict);
            if row.verdict == RowVerdict::ExactPass {
                exact_rows += 1;
            }
            let binds = if identity { row.margin > worst.margin } else { row.margin < worst.margin };
            if binds {
                worst = row;
            }
        }
        let (worst_margin, worst_n) = (worst.margin, worst.n);
        CheckReport { check, n_start, n_end, rows, worst_margin, worst_n, exact_rows, overall }
    }

    /// Aggregate inequality rows (binding row = minimum margin).
    pub fn from_inequality_rows(
        check: &'static str,
        n_start: u64,
        n_end: u64,
        rows: Vec<ReportRow>,
    ) -> Self {
        Self::aggregate(check, n_start, n_end, rows, false)
    }

    /// Aggregate identity rows (binding row = maximum margin).
    pub fn from_identity_rows(
        check: &'static str,
        n_start: u64,
        n_end: u64,
        rows: Vec<ReportRow>,
    ) -> Self {
        Self::aggregate(check, n_start, n_end, rows, true)
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        format!(
            "{} n in [{}, {}]: {} ({} rows, {} exact); worst margin {} at n = {}",
            self.check,
            self.n_start,
            self.n_end,
            self.overall,
            self.rows.len(),
            self.exact_rows,
            self.worst_margin,
            self.worst_n
        )
    }

    /// Rows that are not passes, for surfacing findings in text output.
    pub fn offending_rows(&self) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(|r| !r.verdict.is_pass())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cert(v: f64, e: f64) -> CertifiedReal {
        CertifiedReal::new(v, e)
    }

    #[test]
    fn verdict_severity_order() {
        use RowVerdict::*;
        assert_eq!(ExactPass.combine(CertainPass), CertainPass);
        assert_eq!(CertainPass.combine(Indeterminate), Indeterminate);
        assert_eq!(Indeterminate.combine(CertainFail), CertainFail);
        assert_eq!(CertainFail.combine(ExactPass), CertainFail);
        assert!(ExactPass.is_pass() && CertainPass.is_pass());
        assert!(!Indeterminate.is_pass() && !CertainFail.is_pass());
    }

    #[test]
    fn csv_lines_round_trip_values() {
        let row = ReportRow::new(
            "EQ9",
            5,
            &cert(5.529429087511423, 3.5e-15),
            &cert(5.493061443340548, 2.0e-15),
            RowVerdict::CertainPass,
            0.03636764417087485,
        );
        let line = row.csv_line();
        let fields: Vec<&str> = line.split(',').collect();
        assert_eq!(fields.len(), 8);
        assert_eq!(fields[0], "EQ9");
        assert_eq!(fields[1], "5");
        assert_eq!(fields[2].parse::<f64>().unwrap(), 5.529429087511423);
        assert_eq!(fields[3].parse::<f64>().unwrap(), 3.5e-15);
        assert_eq!(fields[6], "CERTAIN_PASS");
        assert_eq!(fields[7].parse::<f64>().unwrap(), 0.03636764417087485);
    }

    #[test]
    fn negative_zero_is_normalized() {
        let row = ReportRow::new(
            "EQ6",
            1,
            &cert(0.0, 0.0),
            &cert(0.0, 0.0),
            RowVerdict::ExactPass,
            -0.0,
        );
        assert!(!row.csv_line().contains("-0"), "{}", row.csv_line());
    }

    #[test]
    fn header_and_streaming_writer() {
        let rows = vec![
            ReportRow::evaluation("THETA", 10, &cert(5.347107530717468, 1e-15), false),
            ReportRow::evaluation("BINOM", 5, &cert(5.529429087511423, 1e-15), true),
        ];
        let mut buf = Vec::new();
        write_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        assert!(lines.next().unwrap().starts_with("THETA,10,"));
        assert!(lines.next().unwrap().ends_with("EXACT_PASS,0"));
        assert_eq!(lines.next(), None);
    }

    #[test]
    fn aggregation_tracks_binding_row() {
        let mk = |n: u64, margin: f64, verdict: RowVerdict| {
            ReportRow::new("EQ8", n, &cert(1.0, 0.0), &cert(2.0, 0.0), verdict, margin)
        };
        let report = CheckReport::from_inequality_rows(
            "EQ8",
            2,
            4,
            vec![
                mk(2, 0.98, RowVerdict::CertainPass),
                mk(3, 0.5, RowVerdict::ExactPass),
                mk(4, 0.7, RowVerdict::CertainPass),
            ],
        );
        assert_eq!(report.worst_n, 3);
        assert_eq!(report.worst_margin, 0.5);
        assert_eq!(report.exact_rows, 1);
        assert_eq!(report.overall, RowVerdict::CertainPass);
        assert_eq!(report.offending_rows().count(), 0);

        let identity = CheckReport::from_identity_rows(
            "EQ1",
            1,
            2,
            vec![mk(1, -3e-16, RowVerdict::CertainPass), mk(2, -9e-16, RowVerdict::CertainPass)],
        );
        assert_eq!(identity.worst_n, 1);
        assert_eq!(identity.worst_margin, -3e-16);
    }
}
