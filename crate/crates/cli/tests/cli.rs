use std::process::{Command, Output};

use serde_json::Value;

fn primsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = primsum(&all);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn first_value(doc: &Value) -> f64 {
    doc["records"][0]["value"].as_str().unwrap().parse().unwrap()
}

#[test]
fn table_single_row_csv() {
    let out = primsum(&["table", "--kmax", "2", "--digits", "5", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "k,s_k,t_k,s_prime_k,sigma_k,h_k\n2,1.11313,1.40678,1.39943,1.14037,1.04466\n"
    );
}

#[test]
fn table_json_round_trips() {
    let doc = json(&["table", "--kmax", "3"]);
    assert_eq!(doc["meta"]["precision"], 30);
    let records = doc["records"].as_array().unwrap();
    assert_eq!(records.len(), 10);
    assert_eq!(records[0]["kind"], "table_row");
    assert_eq!(records[0]["name"], "s_k");
    assert_eq!(records[9]["k"], 3);
    assert_eq!(records[9]["name"], "h_k");
    let text = serde_json::to_string(&doc).unwrap();
    let again: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc, again);
}

#[test]
fn eval_targets() {
    assert!((first_value(&json(&["eval", "f", "--k", "1", "--h", "0"])) - 1.636616).abs() < 1e-6);
    assert!((first_value(&json(&["eval", "P", "--s", "2"])) - 0.452247).abs() < 1e-6);
    assert!(first_value(&json(&["eval", "D", "--k", "2", "--h", "81"])) > 0.0);
    let pk = first_value(&json(&["eval", "Pk", "--k", "2", "--s", "2", "--digits", "12"]));
    // (P(2)^2 + P(4))/2
    assert!((pk - 0.1407604343).abs() < 1e-9, "{pk}");
}

#[test]
fn roots() {
    assert_eq!(first_value(&json(&["roots", "hinf"])), 0.803524);
    assert_eq!(first_value(&json(&["roots", "hk", "--k", "2", "--digits", "5"])), 1.04466);
    assert_eq!(first_value(&json(&["roots", "sigma", "--k", "9", "--digits", "5"])), 1.00964);
}

#[test]
fn csv_and_json_carry_the_same_payload() {
    let doc = json(&["eval", "P", "--s", "1.5", "--digits", "15"]);
    let out = primsum(&["eval", "P", "--s", "1.5", "--digits", "15", "--format", "csv"]);
    let mut reader = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = reader.headers().unwrap().clone();
    assert_eq!(&headers, vec!["kind", "name", "k", "value", "err_bound", "status"]);
    let row = reader.records().next().unwrap().unwrap();
    assert_eq!(&row[3], doc["records"][0]["value"].as_str().unwrap());
    assert_eq!(&row[4], doc["records"][0]["err_bound"].as_str().unwrap());
}

#[test]
fn display_digits_do_not_change_the_value() {
    let a = first_value(&json(&["eval", "P", "--s", "3", "--digits", "4"]));
    let b = first_value(&json(&["eval", "P", "--s", "3", "--digits", "12"]));
    assert!((a - b).abs() <= 0.5e-4);
}

#[test]
fn verify_envelope_passes() {
    let out = primsum(&["verify", "envelope"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("envelope: 7 pass, 0 fail, 0 report"));
}

#[test]
fn verify_orderings_reports_k2() {
    let doc = json(&["verify", "orderings"]);
    let records = doc["records"].as_array().unwrap();
    let count = |s: &str| records.iter().filter(|r| r["status"] == s).count();
    assert_eq!((count("pass"), count("report"), count("fail")), (18, 1, 0));
    let report = records.iter().find(|r| r["status"] == "report").unwrap();
    assert_eq!(report["k"], 2);
}

#[test]
fn verify_theorem2_and_oracle() {
    let out = primsum(&["verify", "theorem2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let out = primsum(&["verify", "oracle", "--limit", "100000"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn usage_errors_exit_3() {
    for args in [
        vec!["bogus"],
        vec!["roots", "sk"],
        vec!["roots", "nope", "--k", "2"],
        vec!["verify", "nope"],
        vec!["table", "--kmax", "21"],
        vec!["eval", "P", "--s", "0.5"],
        vec!["eval", "f", "--k", "1"],
        vec!["--precision", "10", "eval", "P", "--s", "2"],
        vec!["table", "--format", "xml"],
    ] {
        assert_eq!(primsum(&args).status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn help_exits_zero() {
    assert_eq!(primsum(&["--help"]).status.code(), Some(0));
    assert_eq!(primsum(&["--version"]).status.code(), Some(0));
}
