use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-cke"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Set `UPDATE_GOLDEN=1` to rewrite the expected files.
fn check_golden(args: &[&str], file: &str) {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let path = golden(file);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, &out.stdout).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap();
    assert_eq!(String::from_utf8(out.stdout).unwrap(), expected, "{file}");
}

#[test]
fn analyze_golden() {
    check_golden(&["analyze", "--fixture", "d5b"], "analyze-d5b.json");
    check_golden(&["analyze", "--fixture", "d6"], "analyze-d6.json");
}

#[test]
fn cke_golden_five_dimensional() {
    check_golden(&["cke", "--fixture", "d5b"], "cke-d5b.json");
}

#[test]
fn cke_golden_six_dimensional() {
    check_golden(&["cke", "--fixture", "d6"], "cke-d6.json");
}

#[test]
fn cke_golden_four_dimensional() {
    check_golden(&["cke", "--fixture", "d19"], "cke-d19.json");
}

#[test]
fn cke_golden_nine_rays() {
    check_golden(&["cke", "--fixture", "remark-5d"], "cke-remark-5d.json");
}

#[test]
fn scan_and_fixture_listing() {
    check_golden(&["scan", "--max-dim", "5"], "scan-5.txt");
    check_golden(&["fixtures"], "fixtures.txt");
}

#[test]
fn bundle_flags_and_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["analyze", "--m", "3", "--r", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let doc: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["polytope"]["volume"], "4039/45");
    assert_eq!(doc["classification"], "not-KE");
}

#[test]
fn reports_are_deterministic() {
    let a = run(&["cke", "--fixture", "d19"]);
    let b = run(&["cke", "--fixture", "d19"]);
    assert_eq!(a.stdout, b.stdout);
}

fn job_file(dir: &tempfile::TempDir, text: &str) -> String {
    let path = dir.path().join("job.json");
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn malformed_rays_exit_one_with_violations() {
    let dir = tempfile::tempdir().unwrap();
    let job = job_file(
        &dir,
        r#"{"fan": {"dim": 2, "rays": [[2, 0], [0, 1], [0, 0, 1]], "label": "bad"}}"#,
    );
    let out = run(&["analyze", "--job", &job]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("invalid fan"), "{err}");
    assert!(err.lines().count() >= 3, "{err}");
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let job = job_file(&dir, "{ not json");
    assert_eq!(run(&["analyze", "--job", &job]).status.code(), Some(1));
    let job = job_file(&dir, r#"{"bundle": {"m": 1, "r": 1}, "colour": "red"}"#);
    assert_eq!(run(&["analyze", "--job", &job]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--fixture", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["analyze", "--job", "/nonexistent/job.json"]).status.code(), Some(1));
    assert_eq!(run(&["cke", "--fixture", "d5b", "--window", "(3/4,1/4)"]).status.code(), Some(1));
}

#[test]
fn unbounded_polytope_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // the rays lie in one quadrant
    let job = job_file(&dir, r#"{"fan": {"dim": 2, "rays": [[1, 0], [0, 1], [1, 1]], "label": "cone"}}"#);
    let out = run(&["analyze", "--job", &job]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn inconclusive_classification_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    // without the transform the moments are not along e₁
    let job = job_file(&dir, r#"{"bundle": {"m": 3, "r": 1}, "parametrized": [4, 7], "coordinate": 1}"#);
    let out = run(&["cke", "--job", &job]);
    assert_eq!(out.status.code(), Some(2));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["classification"], "inconclusive");
    assert!(doc["orbits"][0]["status"].as_str().unwrap().starts_with("reduction failed"));
}

#[test]
fn decisive_negative_exits_zero() {
    let out = run(&["cke", "--m", "1", "--r", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["classification"], "reductive-no-cKE-found");
}
