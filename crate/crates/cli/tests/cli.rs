use std::process::{Command, Output};

fn swtorus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swtorus"))
        .args(args)
        .env_remove("SWTORUS_CATALOG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn alex_trefoil() {
    let o = swtorus(&["alex", "--knot", "trefoil"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("symmetric: t^-1 - 1 + t"), "{s}");
    assert!(s.contains("genus if fibred: 1"));
}

#[test]
fn alex_json_is_parseable() {
    let o = swtorus(&["alex", "--knot", "figure-eight", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "alex");
    assert_eq!(v["result"]["symmetric_text"], "-t^-1 + 3 - t");
    assert_eq!(v["result"]["span"], 2);
}

#[test]
fn alex_axis_family() {
    let o = swtorus(&["alex", "--braid", "1 1 1 1", "--axis"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("axis polynomial: -1 + x*s^2*t^2"));
}

#[test]
fn bad_braid_fails_cleanly() {
    let o = swtorus(&["alex", "--braid", "1 0"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("zero letter"));
}

#[test]
fn link_closure_without_axis_is_rejected() {
    let o = swtorus(&["alex", "--braid", "1 1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sw_unknot_is_independent_of_q() {
    for q in ["1", "4", "7"] {
        let o = swtorus(&["sw", "--knot", "unknot", "--q", q, "--n", "3"]);
        assert!(o.status.success());
        let s = stdout(&o);
        assert!(s.contains("invariant: xi^-2 - 2 + xi^2"), "{s}");
        assert!(s.contains("family not distinguished"));
    }
}

#[test]
fn sw_trefoil_max_divisibility() {
    let o = swtorus(&["sw", "--knot", "trefoil", "--q", "3", "--n", "3"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("max divisibility: 6"));
}

#[test]
fn sw_rejects_zero_q() {
    let o = swtorus(&["sw", "--knot", "trefoil", "--q", "0", "--n", "1"]);
    assert!(!o.status.success());
}

#[test]
fn distinguish_exit_codes() {
    let o = swtorus(&["distinguish", "--knot", "trefoil", "--q", "1..5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: pairwise distinct"));
    let o = swtorus(&["distinguish", "--knot", "unknot", "--q", "1..3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("verdict: not distinguished"));
}

#[test]
fn non_monic_polynomial_warns() {
    let poly = r#"{"vars":["t"],"terms":[{"e":[0],"c":2},{"e":[1],"c":-3},{"e":[2],"c":2}]}"#;
    let o = swtorus(&["distinguish", "--alex-json", poly, "--q", "1..3"]);
    let s = stdout(&o);
    assert!(s.contains("warning:") && s.contains("monic"), "{s}");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sw", "--knot", "T25", "--q", "2", "--n", "5", "--format", "json",
    ];
    assert_eq!(swtorus(&args).stdout, swtorus(&args).stdout);
}

#[test]
fn user_catalog_via_env_and_flag() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("knots.json");
    std::fs::write(
        &path,
        r#"[{"name": "T34", "braid": "1 2 1 2 1 2 1 2", "notes": "torus knot"}]"#,
    )
    .unwrap();
    let o = swtorus(&["catalog", "list", "--file", path.to_str().unwrap()]);
    assert!(stdout(&o).contains("T34\t"));
    let o = Command::new(env!("CARGO_BIN_EXE_swtorus"))
        .args(["alex", "--knot", "T34"])
        .env("SWTORUS_CATALOG", &path)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("symmetric: t^-3 - t^-2 + 1 - t^2 + t^3"));
}

#[test]
fn malformed_catalog_reports_line() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        "[\n {\"name\": \"a\", \"braid\": \"1 1 1\"},\n {\"name\": \"a\", \"braid\": \"1 1 1\"}\n]",
    )
    .unwrap();
    let o = swtorus(&["catalog", "list", "--file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn assemble_with_e1_piece_matches_sw() {
    // E(1) minus a fiber has invariant 1, so n = 1 is recovered.
    let piece = r#"{"vars":["F"],"terms":[{"e":[0],"c":1}]}"#;
    let a = swtorus(&[
        "assemble", "--knot", "trefoil", "--q", "2", "--piece", piece,
    ]);
    let b = swtorus(&["sw", "--knot", "trefoil", "--q", "2", "--n", "1"]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    let line = |o: &Output| {
        stdout(o)
            .lines()
            .find(|l| l.starts_with("invariant:"))
            .unwrap()
            .to_string()
    };
    assert_eq!(line(&a), line(&b));
}
