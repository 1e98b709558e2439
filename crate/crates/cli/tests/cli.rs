use std::process::{Command, Output};

use superh_core::{Cell, Report, Status};

fn superh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superh")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Report, String) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = superh(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report = serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, text)
}

fn int(c: Option<&Cell>) -> i64 {
    match c {
        Some(Cell::Int(i)) => *i,
        other => panic!("expected an integer, got {other:?}"),
    }
}

#[test]
fn json_round_trips_exactly() {
    for args in [
        &["dims", "-m", "2", "-n", "1", "-k", "0..3"][..],
        &["integrate", "x1^2*xg1*xg2 + 1", "-m", "3", "-n", "1"],
        &["decompose", "-m", "2", "-n", "1", "-k", "2"],
        &["branch", "-m", "3", "-n", "1", "-k", "3"],
        &["check", "windows", "-m", "2", "-n", "1"],
        &["fischer", "-m", "2", "-n", "1", "-k", "4"],
    ] {
        let (report, text) = json(args);
        let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
        assert_eq!(again, text, "{args:?}");
    }
}

#[test]
fn dims_table() {
    let (r, _) = json(&["dims", "-m", "2", "-n", "1", "-k", "0..3"]);
    let row = &r.rows[2];
    assert_eq!(int(row.get("H")), 7);
    assert_eq!(int(row.get("L")), 6);
    assert_eq!(row.get("window"), Some(&Cell::Bool(true)));
    let (r, _) = json(&["dims", "-m", "3", "-n", "0", "-k", "2"]);
    assert_eq!((int(r.rows[0].get("H")), int(r.rows[0].get("L"))), (5, 5));
}

#[test]
fn integrals_agree() {
    let out = superh(&["integrate", "1", "-m", "3", "-n", "1"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.matches("2 * pi^0").count(), 2, "{text}");
    let out = superh(&["integrate", "x1^2", "-m", "2", "-n", "0"]);
    assert!(String::from_utf8(out.stdout).unwrap().contains("1 * pi^1"));
    let (r, _) = json(&["integrate", "xg1", "-m", "2", "-n", "1"]);
    assert!(r.rows.iter().all(|row| matches!(row.get("value"), Some(Cell::Scaled(s)) if s.is_zero())));
}

#[test]
fn decompose_and_branch() {
    let (r, _) = json(&["decompose", "-m", "2", "-n", "1", "-k", "2"]);
    let dims: Vec<i64> = r.rows.iter().map(|row| int(row.get("dim"))).collect();
    assert_eq!(dims, vec![2, 4, 1]);

    let (r, _) = json(&["branch", "-m", "2", "-n", "1", "-k", "2"]);
    let ls: Vec<(i64, i64)> = r.rows.iter().map(|row| (int(row.get("l")), int(row.get("dim")))).collect();
    assert_eq!(ls, vec![(1, 3), (2, 3)]);
    assert!(r.rows.iter().all(|row| row.get("verified") == Some(&Cell::Bool(true))));

    let (r, _) = json(&["branch", "-m", "3", "-n", "1", "-k", "3"]);
    assert_eq!(r.rows[0].get("rule"), Some(&Cell::Text("not completely reducible".into())));
}

#[test]
fn checks_pass() {
    let out = superh(&["check", "sl2", "-m", "2", "-n", "1", "-k", "6"]);
    assert_eq!(out.status.code(), Some(0));

    let (r, _) = json(&["check", "windows", "-m", "2", "-n", "1"]);
    assert_eq!(r.status, Status::Pass);
    let ks: Vec<i64> = r.rows.iter().map(|row| int(row.get("k"))).collect();
    assert_eq!(ks, vec![2]);

    let (r, _) = json(&["check", "irreducibility", "-m", "3", "-n", "1", "-k", "6"]);
    assert_eq!(r.status, Status::Pass);
    assert!(r.rows.iter().all(|row| row.get("irreducible") == Some(&Cell::Bool(true))));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| superh(args).status.code();
    assert_eq!(code(&["dims", "-m", "2", "-n", "1", "-k", "2"]), Some(0));
    assert_eq!(code(&["dims", "-m", "2..x", "-n", "1"]), Some(2));
    assert_eq!(code(&["dims", "-m", "3..1", "-n", "1"]), Some(2));
    assert_eq!(code(&["check", "nonsense", "-m", "2", "-n", "1"]), Some(2));
    assert_eq!(code(&["check", "windows", "-m", "1", "-n", "1"]), Some(2));
    assert_eq!(code(&["integrate", "x1^", "-m", "2", "-n", "0"]), Some(2));
    assert_eq!(code(&["integrate", "x5", "-m", "2", "-n", "0"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
}

#[test]
fn thread_cap_is_honoured() {
    let out = Command::new(env!("CARGO_BIN_EXE_superh"))
        .args(["check", "branching", "-m", "2", "-n", "1", "-k", "3"])
        .env("SUPERH_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_superh"))
        .args(["dims", "-m", "2", "-n", "1"])
        .env("SUPERH_THREADS", "many")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
