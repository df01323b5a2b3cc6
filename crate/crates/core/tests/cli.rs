use std::process::{Command, Output};

use tempfile::TempDir;

fn hamcycle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hamcycle"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn fuzz_verify_exits_zero() {
    let o = hamcycle(&["verify", "--n", "5", "--fuzz", "2000", "--seed", "42"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("violations=0"), "{text}");
    assert!(text.contains("rows=24000"), "{text}");
}

#[test]
fn pentagon_check_prints_both_equality_ratios() {
    let o = hamcycle(&["pentagon", "--n", "5", "--check"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("min_ratio=0.27639320225"), "{text}");
    assert!(text.contains("max_ratio=0.72360679774"), "{text}");
}

#[test]
fn sequence_table_row_two_is_three_quarters() {
    let o = hamcycle(&["sequence", "--terms", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let row = text.lines().find(|l| l.starts_with("2,")).unwrap();
    assert_eq!(row.split(',').nth(1), Some("3/4"));
    assert_eq!(text.lines().count(), 12);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify", "--nope"],
        vec!["frobnicate"],
        vec!["verify"],
        vec!["verify", "--n", "7", "--trials", "3"],
        vec!["gen", "--dim", "4"],
        vec!["identity", "--pairing", "5", "--trials", "1"],
        vec!["iterate", "--cycle", "0,1,1,2,3"],
        vec!["sequence", "--terms", "1"],
        vec!["optimize", "--objective", "sideways"],
    ] {
        let o = hamcycle(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty(), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn gen_then_verify_and_identity_round_trip() {
    let dir = TempDir::new().unwrap();
    let quad = dir.path().join("quad.txt");
    let q = quad.to_str().unwrap();
    let o = hamcycle(&["gen", "--n", "4", "--seed", "7", "--mode", "rational", "--out", q]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&quad).unwrap();
    assert!(text.starts_with("points 4 dim 2 mode rational\n"));

    let v = hamcycle(&["verify", "--in", q, "--json"]);
    assert_eq!(v.status.code(), Some(0));
    let rows: Vec<serde_json::Value> = stdout(&v).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 3);
    for r in &rows {
        for key in ["config_id", "cycle", "wE", "wD", "wK", "ratio", "verdict"] {
            assert!(r.get(key).is_some(), "{key} missing in {r}");
        }
    }

    let i = hamcycle(&["identity", "--in", q]);
    assert_eq!(i.status.code(), Some(0));
    let text = stdout(&i);
    assert!(text.starts_with("pairing l1^2 l2^2 l3^2 l4^2 l5^2 l6^2 4r^2 lhs rhs residual verdict\n"));
    assert_eq!(text.lines().filter(|l| l.ends_with(" 0/1 holds")).count(), 3, "{text}");
}

#[test]
fn degenerate_input_exits_three() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("same.txt");
    std::fs::write(&path, "points 5 dim 2 mode float\n1 1\n1 1\n1 1\n1 1\n1 1\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(hamcycle(&["verify", "--in", p]).status.code(), Some(3));
    assert_eq!(hamcycle(&["iterate", "--in", p]).status.code(), Some(3));
}

#[test]
fn rational_mode_rejects_inexact_tokens() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("tenth.txt");
    std::fs::write(&path, "points 4 dim 2 mode float\n0.1 0\n1 0\n1 1\n0 1\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(hamcycle(&["verify", "--in", p]).status.code(), Some(0));
    let o = hamcycle(&["verify", "--in", p, "--mode", "rational"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn iterate_csv_and_json() {
    let o = hamcycle(&["iterate", "--seed", "5", "--steps", "30", "--mode", "rational"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("level,d,e,resA,resB,resC\n"));
    assert_eq!(text.lines().count(), 32);
    let first = text.lines().nth(1).unwrap();
    assert!(first.ends_with(",0/1,0/1,0/1"), "{first}");

    let j = hamcycle(&["iterate", "--seed", "5", "--steps", "3", "--json"]);
    let rows: Vec<serde_json::Value> = stdout(&j).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[0].get("resA").is_some());
}

#[test]
fn optimize_json_fields() {
    let o = hamcycle(&["optimize", "--n", "5", "--objective", "max", "--restarts", "4", "--budget", "100", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    for key in ["n", "dim", "objective_kind", "value", "bound", "witness_points", "cycle", "restarts", "sweeps"] {
        assert!(v.get(key).is_some(), "{key} missing in {v}");
    }
    assert_eq!(v["witness_points"].as_array().unwrap().len(), 5);
}

#[test]
fn conjecture_table_lists_each_n() {
    let o = hamcycle(&["optimize", "--conjecture", "4-6", "--restarts", "2", "--budget", "50"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 4, "{text}");
    assert!(text.lines().nth(3).unwrap().contains("conjecture"));
}

#[test]
fn identity_fuzz_summary() {
    let o = hamcycle(&["identity", "--fuzz", "500", "--dim", "3", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["checks"], 1500);
    assert_eq!(v["failures"], 0);
    assert_eq!(v["inequality_violations"], 0);
}

#[test]
fn help_goes_to_stdout_with_exit_zero() {
    let o = hamcycle(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verify"));
}
