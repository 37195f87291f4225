use std::process::{Command, Output};

use serde_json::Value;

fn etaq(args: &[&str]) -> Output {
    etaq_env(args, &[])
}

fn etaq_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_etaq"));
    cmd.args(args);
    for key in [
        "ETAQ_JSON",
        "ETAQ_PRECISION",
        "ETAQ_SCAN_HORIZON",
        "ETAQ_REFUTE_HORIZON",
    ] {
        cmd.env_remove(key);
    }
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap().trim_end().to_string()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    serde_json::from_str(&stdout(&etaq(&full))).unwrap()
}

fn no_numbers(v: &Value) -> bool {
    match v {
        Value::Number(_) => false,
        Value::Array(a) => a.iter().all(no_numbers),
        Value::Object(m) => m.values().all(no_numbers),
        _ => true,
    }
}

#[test]
fn expand_examples() {
    assert_eq!(stdout(&etaq(&["expand", "-s", "1^-1", "-n", "5"])), "1 1 2 3 5");
    assert_eq!(stdout(&etaq(&["expand", "-s", "1^1", "-n", "3"])), "1 -1 -1");
    assert_eq!(stdout(&etaq(&["expand", "-s", "1^-1", "--index", "0"])), "1");
    assert_eq!(stdout(&etaq(&["expand", "-s", "1^-1", "--index", "100"])), "190569292");
    assert_eq!(
        stdout(&etaq(&["expand", "-s", "1^-1", "-n", "10", "--start", "7"])),
        "15 22 30"
    );
    assert_eq!(
        stdout(&etaq(&["expand", "-s", "1^-1", "-n", "10", "-m", "5"])),
        "1 1 2 3 0 2 1 0 2 0"
    );
}

#[test]
fn record_shape() {
    let v = json(&["expand", "-s", "1^-1 2^-1", "-n", "4"]);
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["command", "parameters", "results", "spec", "version"]);
    assert_eq!(v["command"], "expand");
    assert_eq!(v["spec"], "1^-1 2^-1");
    assert_eq!(v["parameters"]["precision"], "4");
    assert_eq!(v["results"]["coefficients"], serde_json::json!(["1", "1", "3", "4"]));
    assert!(no_numbers(&v));
}

#[test]
fn scan_example() {
    let v = json(&["scan", "-s", "1^-1 2^-1", "--horizon", "10000"]);
    let c = v["results"]["candidates"].as_array().unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!((c[0]["ell"].as_str(), c[0]["a"].as_str()), (Some("3"), Some("2")));
    assert_eq!(c[0]["status"], "empirical");
    assert_eq!(v["results"]["exhaustive"], true);
    assert!(no_numbers(&v));
}

#[test]
fn odd_part_count_needs_a_cap() {
    let o = etaq(&["scan", "-s", "1^-3", "--horizon", "2000"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&["scan", "-s", "1^-3", "--horizon", "2000", "--cap", "11"]);
    assert_eq!(v["results"]["exhaustive"], false);
    assert_eq!(v["parameters"]["cap"], "11");
}

#[test]
fn classify_example() {
    let v = json(&["classify", "--from", "2", "--to", "12"]);
    let rows = v["results"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 11);
    let found: Vec<(String, String, String)> = rows
        .iter()
        .flat_map(|r| {
            r["entries"].as_array().unwrap().iter().map(move |e| {
                (
                    r["n"].as_str().unwrap().to_string(),
                    e["ell"].as_str().unwrap().to_string(),
                    e["a"].as_str().unwrap().to_string(),
                )
            })
        })
        .collect();
    let expect: Vec<(String, String, String)> = [(2, 3, 2), (5, 5, 4), (7, 7, 5), (10, 5, 4), (11, 11, 6)]
        .iter()
        .map(|(n, l, a)| (n.to_string(), l.to_string(), a.to_string()))
        .collect();
    assert_eq!(found, expect);
}

#[test]
fn classify_csv() {
    let out = stdout(&etaq(&["classify", "--from", "2", "--to", "5", "--csv"]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(
        lines,
        [
            "N,ell,a,status,route",
            "2,3,2,empirical,EmpiricalOnly",
            "5,5,4,certified,DivisorReduction"
        ]
    );
    assert_eq!(
        etaq(&["--json", "classify", "--from", "2", "--to", "5", "--csv"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn certify_refutes_with_checkable_witness() {
    let v = json(&["certify", "-s", "1^-1 2^-1", "-l", "7", "-a", "0"]);
    assert_eq!(v["results"]["route"], "Refuted");
    let n: u64 = v["results"]["witness"]["n"].as_str().unwrap().parse().unwrap();
    let residue: i64 = v["results"]["witness"]["residue"].as_str().unwrap().parse().unwrap();
    // re-read the coefficient through expand
    let c: i64 = stdout(&etaq(&["expand", "-s", "1^-1 2^-1", "--index", &(7 * n).to_string()]))
        .parse()
        .unwrap();
    assert_eq!(c.rem_euclid(7), residue);
    assert_ne!(residue, 0);
}

#[test]
fn refute_and_audit() {
    let v = json(&["refute", "-s", "1^-1 2^-1", "-l", "5", "-a", "2"]);
    assert_eq!(v["results"]["witness"]["residue"], "3");
    let v = json(&[
        "audit",
        "-s",
        "1^-1 1^-1",
        "--from",
        "11",
        "--to",
        "23",
        "--horizon",
        "2000",
    ]);
    let entries = v["results"]["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 5);
    assert!(entries.iter().all(|e| e["anomalies"].as_array().unwrap().is_empty()));
}

#[test]
fn theta_cycle_and_filtration() {
    let v = json(&["theta-cycle", "--form", "delta", "-l", "5"]);
    assert_eq!(
        v["results"]["filtrations"],
        serde_json::json!(["12", "18", "24", "30", "12"])
    );
    assert_eq!(v["results"]["case_label"], "II");
    assert_eq!(v["results"]["stable"], true);
    assert_eq!(stdout(&etaq(&["filtration", "--form", "delta", "-l", "5"])), "12");
    assert_eq!(stdout(&etaq(&["filtration", "--form", "E4", "-l", "5"])), "0");
    assert_eq!(stdout(&etaq(&["filtration", "--form", "E6", "-l", "7"])), "0");
    assert_eq!(
        stdout(&etaq(&["filtration", "--form", "F", "-s", "1^-2", "-l", "5"])),
        "24"
    );
}

#[test]
fn form_errors_are_usage_errors() {
    // E4 = 1 mod 5, so theta E4 vanishes
    assert_eq!(etaq(&["theta-cycle", "--form", "E4", "-l", "5"]).status.code(), Some(2));
    assert_eq!(
        etaq(&["filtration", "--form", "F", "-s", "1^-1 2^-1", "-l", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(etaq(&["filtration", "--form", "F", "-l", "5"]).status.code(), Some(2));
    assert_eq!(
        etaq(&["filtration", "--form", "zeta", "-l", "5"]).status.code(),
        Some(2)
    );
}

#[test]
fn exit_codes() {
    let bad_spec = etaq(&["expand", "-s", "1^x"]);
    assert_eq!(bad_spec.status.code(), Some(2));
    assert!(!bad_spec.stderr.is_empty());
    assert_eq!(
        etaq(&["certify", "-s", "1^-1", "-l", "9", "-a", "0"]).status.code(),
        Some(2)
    );
    assert_eq!(
        etaq(&["refute", "-s", "1^-1", "-l", "5", "-a", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(etaq(&["frobnicate"]).status.code(), Some(2));
    let short = etaq(&["certify", "-s", "1^-1 2^-1", "-l", "13", "-a", "5", "--horizon", "20"]);
    assert_eq!(short.status.code(), Some(3));
    // the refuted-but-valid outcome is still exit 0
    assert_eq!(
        etaq(&["certify", "-s", "1^-1 2^-1", "-l", "13", "-a", "5"])
            .status
            .code(),
        Some(0)
    );
}

#[test]
fn environment_defaults_and_flag_precedence() {
    let o = etaq_env(&["expand", "-s", "1^-1"], &[("ETAQ_PRECISION", "4")]);
    assert_eq!(stdout(&o), "1 1 2 3");
    let o = etaq_env(&["expand", "-s", "1^-1", "-n", "6"], &[("ETAQ_PRECISION", "4")]);
    assert_eq!(stdout(&o), "1 1 2 3 5 7");
    let o = etaq_env(&["scan", "-s", "1^-1 22^-1"], &[("ETAQ_SCAN_HORIZON", "500")]);
    assert_eq!(o.status.code(), Some(3));
    let o = etaq_env(
        &["scan", "-s", "1^-1 22^-1", "--horizon", "2000"],
        &[("ETAQ_SCAN_HORIZON", "500")],
    );
    assert!(o.status.success());
    let o = etaq_env(&["expand", "-s", "1^-1", "-n", "2"], &[("ETAQ_JSON", "true")]);
    assert!(stdout(&o).starts_with('{'));
    let v = json(&["refute", "-s", "1^-1", "-l", "5", "-a", "4"]);
    assert_eq!(v["parameters"]["horizon"], "100000");
}

#[test]
fn output_is_deterministic() {
    for args in [
        vec!["--json", "classify", "--from", "2", "--to", "15"],
        vec![
            "--json",
            "audit",
            "-s",
            "1^-1 2^-1",
            "--from",
            "7",
            "--to",
            "31",
            "--horizon",
            "2000",
        ],
        vec!["--json", "scan", "-s", "1^-1 6^-1", "--primes", "2,3,5,7,11,13"],
    ] {
        let a = etaq(&args);
        let b = etaq(&args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout);
    }
}
