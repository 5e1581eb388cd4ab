use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ikcheck")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn yang_baxter_samples() {
    let o = run(&["check-yb", "--samples", "20", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("20/20 pass"), "{}", stdout(&o));
}

#[test]
fn exact_r_export_has_nineteen_symbolic_entries() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = run(&["build-r", "--s0", "1", "--s1", "0", "--backend", "exact", "--export", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let j = read_json(&path);
    assert_eq!(j["rows"], 9);
    assert_eq!(j["cols"], 9);
    let entries = j["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 19);
    for e in entries {
        let v = e["value"].as_str().unwrap();
        assert!(v.starts_with('(') && v.contains(")/("), "{v}");
    }
}

#[test]
fn numeric_values_are_decimal_string_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let o = run(&["export", "r", "--backend", "numeric", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let j = read_json(&path);
    let v = &j["entries"][0]["value"];
    let pair = v.as_array().unwrap();
    assert_eq!(pair.len(), 2);
    assert!(pair[0].as_str().unwrap().parse::<f64>().is_ok());
}

#[test]
fn spectrum_at_a_given_point() {
    let o = run(&["spectrum", "--zeta", "0.5+0.1i"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    for m in ["x5", "x3", "x1"] {
        assert!(s.contains(m), "{s}");
    }
}

#[test]
fn reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let oa = run(&["check-rll", "--samples", "2", "--seed", "5", "--output", a.to_str().unwrap()]);
    let ob = run(&["check-rll", "--samples", "2", "--seed", "5", "--output", b.to_str().unwrap()]);
    assert_eq!(oa.stdout, ob.stdout);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(read_json(&a)["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn config_file_and_flag_override() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"s0": 3, "s1": 1, "samples": 3, "seed": 2}"#).unwrap();
    let o = run(&["check-yb", "--config", cfg.to_str().unwrap(), "--samples", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("convention (3, 1)"), "{s}");
    assert!(s.contains("1/1 pass"), "{s}");
}

#[test]
fn configuration_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"frobnicate": 1}"#).unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["check-yb", "--s0", "2", "--s1", "-1"],
        vec!["check-yb", "--precision", "30"],
        vec!["spectrum", "--backend", "exact"],
        vec!["transfer", "--sites", "8"],
        vec!["export", "r"],
        vec!["spectrum", "--zeta", "abc"],
        vec!["check-yb", "--config", cfg.to_str().unwrap()],
        vec!["no-such-command"],
    ];
    for args in cases {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn check_failures_exit_with_three() {
    let o = run(&["check-yb", "--samples", "1", "--tol", "1e-300"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn exact_commands() {
    for args in [
        vec!["factorize"],
        vec!["decompose"],
        vec!["check-gauge", "--s0", "5", "--s1", "2"],
        vec!["check-serre"],
        vec!["check-series", "--order", "4"],
        vec!["hamiltonian", "--backend", "exact", "--sites", "2"],
    ] {
        let o = run(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
    }
}

#[test]
fn chain_commands() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let o = run(&["transfer", "--sites", "3", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&path)["rows"], 27);
    let o = run(&["hamiltonian", "--sites", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("identity shift"));
}

#[test]
fn l_operator_images() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("l.json");
    let o = run(&["build-l", "check", "--nf", "6", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("L[2][2]"));
    assert_eq!(read_json(&path)["rows"], 21);
    let o = run(&["build-l", "sigma", "--backend", "numeric"]);
    assert_eq!(o.status.code(), Some(0));
}
