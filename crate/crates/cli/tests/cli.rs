use std::path::PathBuf;
use std::process::{Command, Output};

fn instance(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "instances", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbit-decide"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reachable_exits_zero() {
    let o = run(&["--input", &instance("quarter_turn.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "REACHABLE n=2");
}

#[test]
fn invariant_circle_reports_bound() {
    let o = run(&[
        "--input",
        &instance("invariant_circle.json"),
        "--oracle-check",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(
        stdout(&o).starts_with("NOT_REACHABLE N*="),
        "{}",
        stdout(&o)
    );
}

#[test]
fn qe_limit_gives_unknown() {
    let o = run(&["--input", &instance("cubic_target.json")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stdout(&o).contains("qe degree limit 2 exceeded at projection step"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn json_verdict_has_witness_and_timing() {
    let o = run(&[
        "--input",
        &instance("dense_rotation_quadrant.json"),
        "--json",
        "--baker-exponent",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"], "REACHABLE");
    assert_eq!(v["witness_n"], 4);
    assert_eq!(v["baker_exponent_used"], 4);
    assert!(v["elapsed_ms"].as_f64().is_some());
}

#[test]
fn set_sources_and_trace() {
    let o = run(&["--input", &instance("invariant_plane.json"), "--trace"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("path: semialgebraic-to-semialgebraic"));
}

#[test]
fn parse_errors_name_the_field() {
    let dir = std::env::temp_dir().join(format!("orbit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    let text = std::fs::read_to_string(instance("quarter_turn.json"))
        .unwrap()
        .replace("\"-1\", \"0\"]", "\"-1\"]");
    std::fs::write(&bad, text).unwrap();
    let o = run(&["--input", bad.to_str().unwrap()]);
    assert!(o.status.code().unwrap() > 2);
    assert!(
        String::from_utf8_lossy(&o.stderr).contains("matrix[0]"),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn usage_errors_exit_above_two() {
    assert!(run(&["--bogus"]).status.code().unwrap() > 2);
    assert!(
        run(&["--input", "/nonexistent/instance.json"])
            .status
            .code()
            .unwrap()
            > 2
    );
}
