use std::process::Command;

use tpnil::cli::{parse_json, render_json};

fn tpnil(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tpnil"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_codes() {
    assert_eq!(tpnil(&["verify", "--k", "2", "--max-i", "12"]).0, 0);
    let (code, _, err) = tpnil(&["verify", "--k", "1", "--max-i", "4"]);
    assert_eq!(code, 2);
    assert!(err.contains("at least 2"), "{err}");
    assert_eq!(tpnil(&["tp", "--p", "6", "--k", "3", "--j", "1"]).0, 2);
    assert_eq!(tpnil(&["verdict", "--p", "1", "--k", "3"]).0, 2);
    assert_eq!(tpnil(&["homology", "--k", "2", "--i", "4..1"]).0, 2);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    for args in [
        vec!["homology", "--k", "3", "--i", "1..6", "--format", "json"],
        vec!["verify", "--k", "3", "--max-i", "7", "--format", "json"],
        vec![
            "tp",
            "--p",
            "2",
            "--k",
            "3",
            "--j",
            "1",
            "--truncate",
            "10",
            "--format",
            "json",
        ],
        vec!["verdict", "--p", "3", "--k", "9", "--format", "json"],
    ] {
        let (code, first, _) = tpnil(&args);
        assert_eq!(code, 0);
        let mut parallel = args.clone();
        parallel.extend(["--jobs", "4"]);
        let (_, second, _) = tpnil(&parallel);
        assert_eq!(first, second, "output differs for {args:?}");
        let parsed = parse_json(&first).unwrap();
        assert_eq!(render_json(&parsed), first);
    }
}

#[test]
fn homology_json_contents() {
    let (_, out, _) = tpnil(&["homology", "--k", "2", "--i", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let groups = &v["homology"][0]["groups"];
    assert_eq!(groups[1]["group"]["torsion"], serde_json::json!(["2"]));
    assert_eq!(groups[2]["group"]["rank"], 0);
    assert_eq!(v["homology"][0]["basis_sizes"], serde_json::json!([0, 1, 1]));
}

#[test]
fn tp_json_exponents() {
    let (_, out, _) = tpnil(&[
        "tp",
        "--p",
        "2",
        "--k",
        "4",
        "--j",
        "1",
        "--truncate",
        "8",
        "--format",
        "json",
    ]);
    let report = parse_json(&out).unwrap().tp.unwrap();
    assert_eq!(report.exponents(), vec![0, 1, 0, 2, 0, 1, 0, 2]);
    assert!(report.truncated);
}

#[test]
fn writes_to_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verdict.json");
    let (code, stdout, _) = tpnil(&[
        "verdict",
        "--p",
        "2",
        "--k",
        "3",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let out = parse_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let v = out.verdict.unwrap();
    assert!(!v.integral_iso && !v.p_inverted_iso);
}

#[test]
fn selftest_passes() {
    let (code, out, _) = tpnil(&["selftest"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.ends_with("selftest: PASS\n"));
}
