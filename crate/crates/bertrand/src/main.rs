//! Command-line front end: certified Chebyshev sums, identity and
//! inequality scans over ranges of `n`, the threshold certificate, witness
//! scans, and the full verification battery, emitted as text or CSV.
//!
//! Exit codes: 0 when everything passed, 1 on a certified failure, 2 when
//! something could not be decided, 3 on usage or i/o errors.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use bertrand::chebyshev::{
    central_binomial, psi_with, theta_with, ChebyshevError, EvalConfig, IdentityId,
    DEFAULT_EXACT_CAP,
};
use bertrand::proofcheck::{
    bertrand_scan, bertrand_witness, threshold_n, verify_all, verify_identity_range,
    verify_induction, verify_inequality, BertrandReport, CheckId, InductionReport, ProofError,
    ProofReport, ThresholdSearch,
};
use bertrand::report::{write_csv, CheckReport, ReportRow, RowVerdict};
use bertrand::sieve::DEFAULT_SEGMENT_BYTES;

const EXIT_FAIL: u8 = 1;
const EXIT_INDETERMINATE: u8 = 2;
const EXIT_USAGE: u8 = 3;

/// Largest argument the evaluators accept: beyond 2^53 consecutive
/// integers stop being representable in an f64 input.
const MAX_EVAL_ARG: f64 = 9_007_199_254_740_992.0;

#[derive(Parser)]
#[command(
    name = "bertrand",
    version,
    about = "Certified verification of Bertrand's postulate via Chebyshev sums"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    emit: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads for bulk sums (default: all cores)
    #[arg(long, global = true, value_name = "K")]
    threads: Option<usize>,
    /// Sieve segment size in bytes
    #[arg(long, global = true, value_name = "B", default_value_t = DEFAULT_SEGMENT_BYTES)]
    segment_bytes: usize,
    /// Largest n at which C(2n, n) is kept as an exact integer
    #[arg(long, global = true, value_name = "N", default_value_t = DEFAULT_EXACT_CAP)]
    exact_cap: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certified theta(x): the sum of log p over primes p <= x
    Theta { x: f64 },
    /// Certified psi(x): the sum of log p over prime powers p^m <= x
    Psi { x: f64 },
    /// The central binomial coefficient C(2n, n)
    Binom { n: u64 },
    /// Check a summation identity at every n in a range
    Identity {
        #[arg(long)]
        check: IdentityId,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Scan one inequality check over a range of n
    Verify {
        #[arg(long)]
        check: CheckId,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Verify the induction packaging up to n
    Induction {
        #[arg(long)]
        to: u64,
    },
    /// Certify the integer where the analytic lower bound turns positive
    Threshold,
    /// Find the witness prime for one n
    Bertrand { n: u64 },
    /// Exhibit witness primes for every n from 2 up to a bound
    BertrandScan {
        #[arg(long)]
        to: u64,
    },
    /// Run the complete verification battery up to n
    VerifyAll {
        #[arg(long)]
        to: u64,
    },
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Proof(#[from] ProofError),
    #[error(transparent)]
    Eval(#[from] ChebyshevError),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Proof(ProofError::PostulateViolated { .. }) => EXIT_FAIL,
            CliError::Proof(ProofError::ThresholdUndecided { .. }) => EXIT_INDETERMINATE,
            _ => EXIT_USAGE,
        }
    }
}

/// What a subcommand produced, kept structured so CSV emission can stream
/// straight from the owning report.
enum Payload {
    Value { text: Vec<String>, row: ReportRow },
    Witness { text: String, row: ReportRow },
    Report(CheckReport),
    Induction(Box<InductionReport>),
    Threshold(ThresholdSearch),
    Scan(BertrandReport),
    Full(Box<ProofReport>),
}

fn verdict_exit(v: RowVerdict) -> u8 {
    match v {
        RowVerdict::CertainFail => EXIT_FAIL,
        RowVerdict::Indeterminate => EXIT_INDETERMINATE,
        RowVerdict::CertainPass | RowVerdict::ExactPass => 0,
    }
}

fn report_text(report: &CheckReport) -> Vec<String> {
    const SHOW: usize = 20;
    let mut lines = vec![report.summary()];
    let offenders: Vec<&ReportRow> = report.offending_rows().collect();
    for row in offenders.iter().take(SHOW) {
        lines.push(format!("  n = {}: {} (margin {})", row.n, row.verdict, row.margin));
    }
    if offenders.len() > SHOW {
        lines.push(format!("  ... and {} more offending rows", offenders.len() - SHOW));
    }
    lines
}

impl Payload {
    fn exit(&self) -> u8 {
        match self {
            Payload::Value { .. } | Payload::Witness { .. } | Payload::Threshold(_) => 0,
            Payload::Report(r) => verdict_exit(r.overall),
            Payload::Induction(r) => verdict_exit(r.overall),
            Payload::Scan(r) => verdict_exit(r.report.overall),
            Payload::Full(r) => verdict_exit(r.overall),
        }
    }

    fn text_lines(&self) -> Vec<String> {
        match self {
            Payload::Value { text, .. } => text.clone(),
            Payload::Witness { text, .. } => vec![text.clone()],
            Payload::Report(r) => report_text(r),
            Payload::Induction(r) => r.summary_lines(),
            Payload::Threshold(t) => vec![t.n.to_string()],
            Payload::Scan(r) => vec![r.report.summary()],
            Payload::Full(r) => r.summary_lines(),
        }
    }

    fn write<W: Write>(&self, format: Format, w: &mut W) -> io::Result<()> {
        match format {
            Format::Text => {
                for line in self.text_lines() {
                    writeln!(w, "{line}")?;
                }
                Ok(())
            }
            Format::Csv => match self {
                Payload::Value { row, .. } | Payload::Witness { row, .. } => {
                    write_csv(w, std::iter::once(row))
                }
                Payload::Report(r) => write_csv(w, r.rows.iter()),
                Payload::Induction(r) => write_csv(w, r.csv_rows()),
                Payload::Threshold(t) => write_csv(w, std::iter::once(t.row())),
                Payload::Scan(r) => write_csv(w, r.report.rows.iter()),
                Payload::Full(r) => write_csv(w, r.csv_rows()),
            },
        }
    }
}

fn eval_arg(x: f64) -> Result<f64, CliError> {
    if !(0.0..=MAX_EVAL_ARG).contains(&x) {
        return Err(CliError::Usage(format!(
            "argument must be a finite value in [0, 2^53], got {x}"
        )));
    }
    Ok(x)
}

fn dispatch(cmd: &Cmd, cfg: &EvalConfig) -> Result<Payload, CliError> {
    match *cmd {
        Cmd::Theta { x } => {
            let x = eval_arg(x)?;
            let v = theta_with(x, cfg);
            Ok(Payload::Value {
                text: vec![format!("theta({x}) = {} (err {})", v.value(), v.err())],
                row: ReportRow::evaluation("THETA", x.floor() as u64, &v, false),
            })
        }
        Cmd::Psi { x } => {
            let x = eval_arg(x)?;
            let v = psi_with(x, cfg);
            Ok(Payload::Value {
                text: vec![format!("psi({x}) = {} (err {})", v.value(), v.err())],
                row: ReportRow::evaluation("PSI", x.floor() as u64, &v, false),
            })
        }
        Cmd::Binom { n } => {
            let bin = central_binomial(n, cfg)?;
            let mut text = Vec::new();
            if let Some(exact) = &bin.exact {
                text.push(format!("C({}, {}) = {}", 2 * n, n, exact));
            }
            text.push(format!(
                "ln C({}, {}) = {} (err {})",
                2 * n,
                n,
                bin.log_value.value(),
                bin.log_value.err()
            ));
            let row = ReportRow::evaluation("BINOM", n, &bin.log_value, bin.exact.is_some());
            Ok(Payload::Value { text, row })
        }
        Cmd::Identity { check, from, to } => {
            Ok(Payload::Report(verify_identity_range(check, from, to, cfg)?))
        }
        Cmd::Verify { check, from, to } => {
            Ok(Payload::Report(verify_inequality(check, from, to, cfg)?))
        }
        Cmd::Induction { to } => Ok(Payload::Induction(Box::new(verify_induction(to, cfg)?))),
        Cmd::Threshold => Ok(Payload::Threshold(threshold_n()?)),
        Cmd::Bertrand { n } => {
            let w = bertrand_witness(n)?;
            let row = ReportRow {
                check_id: "BERTRAND",
                n: w.n,
                lhs_value: w.p as f64,
                lhs_err: 0.0,
                rhs_value: (2 * w.n) as f64,
                rhs_err: 0.0,
                verdict: RowVerdict::ExactPass,
                margin: (w.p - w.n).min(2 * w.n - w.p) as f64,
            };
            Ok(Payload::Witness {
                text: format!("n = {}: witness prime {} ({} < {} < {})", w.n, w.p, w.n, w.p, 2 * w.n),
                row,
            })
        }
        Cmd::BertrandScan { to } => Ok(Payload::Scan(bertrand_scan(to)?)),
        Cmd::VerifyAll { to } => Ok(Payload::Full(Box::new(verify_all(to, cfg)?))),
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    if let Some(k) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build_global()
            .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    }
    if cli.segment_bytes < 64 {
        return Err(CliError::Usage("--segment-bytes must be at least 64".into()));
    }
    let mut cfg = EvalConfig::default();
    cfg.sieve.segment_bytes = cli.segment_bytes;
    cfg.exact_cap = cli.exact_cap;

    let payload = dispatch(&cli.cmd, &cfg)?;
    match &cli.out {
        Some(path) => {
            let mut w = BufWriter::with_capacity(1 << 16, File::create(path)?);
            payload.write(cli.emit, &mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = io::stdout();
            let mut w = BufWriter::with_capacity(1 << 16, stdout.lock());
            payload.write(cli.emit, &mut w)?;
            w.flush()?;
        }
    }
    Ok(payload.exit())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
