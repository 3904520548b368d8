//! End-to-end tests of the command-line interface: argument validation,
//! exit codes, text rendering, the CSV schema, and byte-for-byte output
//! determinism across thread counts and sieve segment sizes.

use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_bertrand");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn CLI")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no exit code")
}

#[test]
fn theta_prints_certified_value() {
    let out = run(&["theta", "10"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("5.3471"), "got: {text}");
    assert!(text.contains("err"), "got: {text}");
}

#[test]
fn scientific_notation_arguments_are_accepted() {
    let out = run(&["psi", "1e6"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("999586.59"), "got: {}", stdout_of(&out));
}

#[test]
fn threshold_prints_exactly_the_integer() {
    let out = run(&["threshold"]);
    assert_eq!(exit_code(&out), 0);
    assert_eq!(stdout_of(&out), "505\n");
}

#[test]
fn binom_prints_exact_integer_below_cap() {
    let out = run(&["binom", "20"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("C(40, 20) = 137846528820"), "got: {text}");
    assert!(text.contains("ln C(40, 20)"), "got: {text}");
}

#[test]
fn witness_lookup_reports_the_prime() {
    let out = run(&["bertrand", "505"]);
    assert_eq!(exit_code(&out), 0);
    assert!(stdout_of(&out).contains("509"));
}

#[test]
fn usage_errors_exit_3() {
    assert_eq!(exit_code(&run(&["verify", "--check", "EQ7_LOWER", "--from", "2", "--to", "4"])), 3);
    assert_eq!(exit_code(&run(&["bertrand", "1"])), 3);
    assert_eq!(exit_code(&run(&["theta", "--", "-1"])), 3);
    assert_eq!(exit_code(&run(&["theta", "nonsense"])), 3);
    assert_eq!(exit_code(&run(&["--no-such-flag"])), 3);
    assert_eq!(exit_code(&run(&["verify", "--check", "EQ1", "--from", "1", "--to", "5"])), 3);
    assert_eq!(exit_code(&run(&["verify-all", "--to", "505"])), 3);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(exit_code(&run(&["--help"])), 0);
    assert_eq!(exit_code(&run(&["--version"])), 0);
}

#[test]
fn csv_header_is_the_exact_contract() {
    let out = run(&["verify", "--check", "EQ9", "--from", "5", "--to", "12", "--emit", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("check_id,n,lhs_value,lhs_err,rhs_value,rhs_err,verdict,margin")
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 8);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 8);
        assert_eq!(cols[0], "EQ9");
        assert_eq!(cols[6], "CERTAIN_PASS");
        assert!(cols[7].parse::<f64>().unwrap() > 0.0);
    }
}

#[test]
fn csv_floats_round_trip_exactly() {
    let out = run(&["verify-all", "--to", "506", "--emit", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        for idx in [2, 3, 4, 5, 7] {
            let value: f64 = cols[idx].parse().unwrap_or_else(|_| {
                panic!("column {idx} of {line:?} is not a float")
            });
            assert_eq!(format!("{value}"), cols[idx], "column {idx} of {line:?}");
        }
    }
}

#[test]
fn full_battery_emits_row_families_in_fixed_order() {
    let out = run(&["verify-all", "--to", "506", "--emit", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    let mut families = Vec::new();
    for line in text.lines().skip(1) {
        let id = line.split(',').next().unwrap();
        if families.last() != Some(&id) {
            families.push(id);
        }
    }
    assert_eq!(
        families,
        [
            "EQ1", "EQ2", "EQ3", "EQ4", "EQ5", "EQ6", "EQ7_UPPER", "EQ7_LOWER", "EQ8", "EQ9",
            "EQ10", "EQ11", "FINAL", "CHAIN", "IND_BASE_UPPER", "IND_BASE_LOWER", "IND_RATIO",
            "THRESHOLD", "BERTRAND"
        ]
    );
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("scan.csv");
    let direct = run(&["bertrand-scan", "--to", "40", "--emit", "csv"]);
    assert_eq!(exit_code(&direct), 0);
    let filed = run(&["bertrand-scan", "--to", "40", "--emit", "csv", "--out", path.to_str().unwrap()]);
    assert_eq!(exit_code(&filed), 0);
    assert!(stdout_of(&filed).is_empty());
    let written = std::fs::read(&path).unwrap();
    assert_eq!(written, direct.stdout);
}

#[test]
fn identity_scan_passes_and_reports_overlap_margins() {
    let out = run(&["identity", "--check", "EQ1", "--from", "1", "--to", "30", "--emit", "csv"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    for line in text.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        assert_eq!(cols[6], "CERTAIN_PASS");
        assert!(cols[7].parse::<f64>().unwrap() <= 0.0);
    }
}

#[test]
fn induction_text_carries_the_base_case_note() {
    let out = run(&["induction", "--to", "10"]);
    assert_eq!(exit_code(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("note:"), "got: {text}");
    assert!(text.contains("IND_BASE_UPPER"), "got: {text}");
    // everything below the exact cap is settled by integer arithmetic
    assert!(text.contains("induction overall: EXACT_PASS"), "got: {text}");
}

#[test]
fn bulk_sum_is_deterministic_across_thread_counts() {
    let one = run(&["theta", "2e7", "--threads", "1"]);
    let four = run(&["theta", "2e7", "--threads", "4"]);
    assert_eq!(exit_code(&one), 0);
    assert_eq!(exit_code(&four), 0);
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn segment_size_changes_bounds_but_not_containment() {
    fn interval(args: &[&str]) -> (f64, f64) {
        let out = run(args);
        assert_eq!(exit_code(&out), 0);
        let text = stdout_of(&out);
        let cols: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
        (cols[2].parse().unwrap(), cols[3].parse().unwrap())
    }
    // a different segmentation is a different (still sound) error budget,
    // so assert certified overlap rather than byte equality...
    let (v1, e1) = interval(&["psi", "1e6", "--segment-bytes", "4096", "--emit", "csv"]);
    let (v2, e2) = interval(&["psi", "1e6", "--emit", "csv"]);
    assert!(v1 - e1 <= v2 + e2 && v2 - e2 <= v1 + e1);
    // ...while identical flags reproduce identical bytes
    let a = run(&["psi", "1e6", "--segment-bytes", "4096", "--emit", "csv"]);
    let b = run(&["psi", "1e6", "--segment-bytes", "4096", "--emit", "csv"]);
    assert_eq!(a.stdout, b.stdout);
}
