use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lefschetz-kit")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["inject", "--a", "2", "--d", "3", "--n-range", "5..8", "--seeds", "1,2", "--no-timing"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["witness", "--n", "6", "--d", "3", "--seeds", "4", "--no-timing"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn report_envelope() {
    let v = json(&["paths", "--n", "5", "--d", "3"]);
    assert_eq!(v["schema"], "lefschetz-kit/1");
    assert_eq!(v["query"], "paths");
    assert_eq!(v["result"][0]["a"], "1");
    assert_eq!(v["result"][0]["t"], "1");
    assert!(v["timing_ms"].is_u64());
    assert_eq!(v["seeds"], serde_json::json!([1]));
}

#[test]
fn csv_carries_the_json_rows() {
    for args in [
        vec!["inject", "--a", "2", "--d", "3", "--n-range", "5..9", "--seeds", "1,2"],
        vec!["hilbert", "--n", "5", "--a", "3"],
        vec!["paths", "--n-range", "4..9", "--d-range", "2..3"],
        vec!["froberg", "--n", "5", "--a", "2"],
    ] {
        let v = json(&args);
        let rows = v["result"].as_array().unwrap();
        let mut with_csv = args.clone();
        with_csv.extend(["--format", "csv"]);
        let out = run(&with_csv);
        let mut r = csv::Reader::from_reader(&out.stdout[..]);
        let header: Vec<String> = r.headers().unwrap().iter().map(String::from).collect();
        let records: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
        assert_eq!(records.len(), rows.len());
        for (rec, row) in records.iter().zip(rows) {
            for (k, field) in header.iter().zip(rec.iter()) {
                let expect = match &row[k] {
                    Value::Null => String::new(),
                    Value::String(s) => s.clone(),
                    other => other.to_string(),
                };
                assert_eq!(field, expect, "{args:?} column {k}");
            }
        }
    }
}

#[test]
fn flip_of_squares_injectivity_at_seven() {
    let v = json(&["inject", "--a", "2", "--d", "3", "--n-range", "5..9", "--seeds", "1,2"]);
    let verdicts: Vec<bool> = v["result"].as_array().unwrap().iter().map(|r| r["injective"].as_bool().unwrap()).collect();
    assert_eq!(verdicts, [false, false, true, true, true]);
}

#[test]
fn witness_reports_both_checks_per_seed() {
    let v = json(&["witness", "--d", "3", "--n", "6", "--seeds", "1,2,3"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    for r in rows {
        assert_eq!(r["congruence_ok"], true);
        assert_eq!(r["nonmembership_ok"], true);
        assert!(r["Q_terms"].is_array() && r["Qprime_terms"].is_array());
    }
}

#[test]
fn sweep_matches_single_queries() {
    let v = json(&["sweep", "--a", "2", "--d-range", "3..4", "--n-range", "6..8", "--no-timing"]);
    let rows = v["result"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    for r in rows {
        let (n, d) = (r["n"].as_u64().unwrap().to_string(), r["d"].as_u64().unwrap().to_string());
        let single = json(&["inject", "--a", "2", "--d", &d, "--n", &n]);
        assert_eq!(single["result"][0], *r);
    }
}

#[test]
fn table_output_has_a_header() {
    let out = run(&["hilbert", "--n", "3", "--a", "2", "--format", "table"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().next().unwrap().starts_with("n  a  d"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("lefschetz-kit-{}.json", std::process::id()));
    let out = run(&["paths", "--n", "6", "--d", "3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["result"][0]["a"], "8");
    std::fs::remove_file(path).ok();
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["paths", "--n", "5", "--d", "3"]).status.code(), Some(0));
    // invalid input
    assert_eq!(run(&["witness", "--n", "9", "--d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["inject", "--a", "2", "--d", "3"]).status.code(), Some(2));
    assert_eq!(run(&["paths", "--n", "5", "--d", "3", "--boundary", "edge"]).status.code(), Some(2));
    assert_eq!(run(&["wlp", "--n", "4", "--a", "2", "--field", "prime:15"]).status.code(), Some(2));
    assert_eq!(run(&["inject", "--a", "2", "--d", "3", "--n", "7", "--seeds", ""]).status.code(), Some(2));
    // guard refusals
    assert_eq!(run(&["wlp", "--n", "40", "--a", "5"]).status.code(), Some(3));
    assert_eq!(run(&["witness", "--n", "30", "--d", "12"]).status.code(), Some(3));
    // the touch convention misses the closed form but is not a finding
    assert_eq!(run(&["paths", "--n", "6", "--d", "3", "--boundary", "touch"]).status.code(), Some(0));
}

#[test]
fn conjecture_columns() {
    let v = json(&["paths", "--n", "6", "--d", "3", "--conjecture", "--field", "rational"]);
    let r = &v["result"][0];
    assert_eq!((r["exact_dim"].as_u64(), r["agrees"].as_bool()), (Some(8), Some(true)));
}
