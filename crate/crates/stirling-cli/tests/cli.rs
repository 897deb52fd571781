//! End-to-end tests of the `stirling` binary: output formats, default
//! values, JSON round-trips, and exit codes.

use std::collections::BTreeMap;
use std::process::{Command, Output};

use serde::{Deserialize, Serialize};

fn stirling(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stirling"))
        .args(args)
        .output()
        .expect("binary spawns")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is utf-8")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is utf-8")
}

#[derive(Serialize, Deserialize)]
struct CoeffSingleJson {
    k: usize,
    formula: String,
    value: String,
    decimal: String,
    agree: bool,
}

#[derive(Serialize, Deserialize)]
struct CoeffAllJson {
    k: usize,
    values: BTreeMap<String, String>,
    agree: bool,
}

#[derive(Serialize, Deserialize)]
struct TableRowJson {
    k: usize,
    formula: String,
    value: String,
    decimal: String,
    agree: bool,
}

#[test]
fn coeff_single_formula_prints_the_fraction() {
    let out = stirling(&["coeff", "1", "--formula", "theorem1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "1/12");
}

#[test]
fn coeff_negative_value_keeps_sign_in_numerator() {
    let out = stirling(&["coeff", "3", "--formula", "recurrence"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "-139/51840");
}

#[test]
fn coeff_accepts_the_short_formula_alias() {
    let full = stirling(&["coeff", "2", "--formula", "brassesco_mendez"]);
    let alias = stirling(&["coeff", "2", "--formula", "bm"]);
    assert!(full.status.success());
    assert!(alias.status.success());
    assert_eq!(stdout(&full), stdout(&alias));
    assert_eq!(stdout(&full).trim(), "1/288");
}

#[test]
fn coeff_decimal_format_takes_a_digit_count() {
    let out = stirling(&[
        "coeff",
        "1",
        "--formula",
        "recurrence",
        "--format",
        "decimal:20",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).trim().starts_with("0.08333333333333333333"));
}

#[test]
fn coeff_all_reports_every_formula() {
    let out = stirling(&["coeff", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for name in [
        "recurrence",
        "comtet",
        "brassesco_mendez",
        "theorem1",
        "corollary",
        "potential",
    ] {
        assert!(text.contains(name), "missing {name} in:\n{text}");
    }
    assert_eq!(text.matches("1/288").count(), 6);
    assert!(text.contains("agree: true"));
}

#[test]
fn coeff_all_json_round_trips_byte_identically() {
    let out = stirling(&["coeff", "0", "--format", "json"]);
    assert!(out.status.success());
    let raw = stdout(&out);
    let line = raw.trim_end();
    let parsed: CoeffAllJson = serde_json::from_str(line).expect("valid json");
    assert_eq!(parsed.k, 0);
    assert!(parsed.agree);
    assert_eq!(parsed.values.len(), 6);
    assert!(parsed.values.values().all(|v| v == "1"));
    assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
}

#[test]
fn coeff_single_json_round_trips_byte_identically() {
    let out = stirling(&["coeff", "3", "--formula", "comtet", "--format", "json"]);
    assert!(out.status.success());
    let raw = stdout(&out);
    let line = raw.trim_end();
    let parsed: CoeffSingleJson = serde_json::from_str(line).expect("valid json");
    assert_eq!(parsed.k, 3);
    assert_eq!(parsed.formula, "comtet");
    assert_eq!(parsed.value, "-139/51840");
    assert_eq!(parsed.decimal, "-0.00268132716049");
    assert!(parsed.agree);
    assert_eq!(serde_json::to_string(&parsed).unwrap(), line);
}

#[test]
fn table_csv_has_header_and_one_row_per_index() {
    let out = stirling(&["table", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert_eq!(lines[0], "k,value,decimal,agree");
    assert_eq!(lines[1], "0,1,1,true");
    assert_eq!(lines[3], "2,1/288,0.00347222222222,true");
}

#[test]
fn table_json_round_trips_and_agrees_everywhere() {
    let out = stirling(&["table", "12", "--format", "json"]);
    assert!(out.status.success());
    let raw = stdout(&out);
    let line = raw.trim_end();
    let rows: Vec<TableRowJson> = serde_json::from_str(line).expect("valid json");
    assert_eq!(rows.len(), 13);
    assert!(rows.iter().all(|r| r.agree));
    assert!(rows.iter().all(|r| r.formula == "recurrence"));
    assert_eq!(rows[3].value, "-139/51840");
    assert_eq!(serde_json::to_string(&rows).unwrap(), line);
}

#[test]
fn table_defaults_to_twelve_rows_of_csv() {
    let out = stirling(&["table"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 14);
}

#[test]
fn verify_accepts_the_default_range() {
    let out = stirling(&["verify"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("all six formulas agree"));
}

#[test]
fn verify_zero_is_trivially_consistent() {
    let out = stirling(&["verify", "0"]);
    assert!(out.status.success());
}

#[test]
fn corrupted_table_read_fails_verification_and_names_the_formula() {
    let out = stirling(&["verify", "5", "--corrupt", "s3:4:1"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("disagreeing formulas: brassesco_mendez"));
}

#[test]
fn approx_reports_the_known_error_profile() {
    let out = stirling(&["approx", "10", "--terms", "5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("exact     = 3628800"));
    assert!(text.contains("rel_error = 7.78608e-9"));
    assert_eq!(text.lines().count(), 10);
}

#[test]
fn approx_rejects_a_precision_that_cannot_hold_the_terms() {
    let out = stirling(&["approx", "10", "--terms", "20", "--precision", "10"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("term 8"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["coeff", "1", "--formula", "euler"][..],
        &["coeff", "1", "--format", "yaml"][..],
        &["coeff", "1", "--format", "decimal:0"][..],
        &["approx", "10", "--terms", "0"][..],
        &["approx", "0"][..],
        &["approx", "10", "--precision", "9"][..],
        &["verify", "3", "--corrupt", "s9:1:1"][..],
        &["verify", "3", "--corrupt", "s2:1"][..],
        &["verify", "3", "--corrupt", "s2:1:1:0"][..],
        &["bench", "2", "--reps", "0"][..],
    ] {
        let out = stirling(args);
        assert_eq!(out.status.code(), Some(2), "args: {args:?}");
    }
}

#[test]
fn bench_emits_one_record_per_formula_and_index() {
    let out = stirling(&["bench", "0", "--reps", "1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 7, "header plus six records:\n{text}");
    assert_eq!(
        lines[0].split_whitespace().collect::<Vec<_>>(),
        vec!["formula", "k", "best", "digits"]
    );
    for line in &lines[1..] {
        let fields: Vec<&str> = line.split_whitespace().collect();
        assert_eq!(fields.len(), 4, "record: {line}");
        assert!(
            [
                "recurrence",
                "comtet",
                "brassesco_mendez",
                "theorem1",
                "corollary",
                "potential"
            ]
            .contains(&fields[0]),
            "unknown formula in record: {line}"
        );
        assert_eq!(fields[1], "0");
        assert!(fields[3].parse::<usize>().is_ok(), "digits column: {line}");
    }
}

#[test]
fn bench_covers_the_requested_range() {
    let out = stirling(&["bench", "8", "--reps", "1"]);
    assert!(out.status.success());
    let records = stdout(&out).lines().count() - 1;
    assert_eq!(records, 54);
}
