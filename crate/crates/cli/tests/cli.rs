use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sheaf-forge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gb_and_member() {
    let o = run(&["gb", &data("cubes.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("x^3") && stdout(&o).contains("y^3"));
    let o = run(&["member", &data("cubes.txt"), "--poly", "x^2*y^2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not a member"));
}

#[test]
fn malformed_input_is_a_positioned_usage_error() {
    let o = run(&["gb", &data("bad_caret.txt")]);
    assert_eq!(o.status.code(), Some(2));
    let err = stderr(&o);
    assert!(err.contains("line 2, column 10"), "{err}");
    assert!(err.contains("ideal: x^^2"));
    let o = run(&["member", &data("cubes.txt"), "--poly", "x^^2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column 3"), "{}", stderr(&o));
}

#[test]
fn bad_arguments_exit_with_usage_code() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["gb"]).status.code(), Some(2));
    assert_eq!(run(&["gb", "/nonexistent/file"]).status.code(), Some(2));
    assert_eq!(run(&["canonical", "--n", "2", "--center", "sphere"]).status.code(), Some(2));
    assert_eq!(run(&["gb", &data("cubes.txt"), "--order", "sideways"]).status.code(), Some(2));
}

#[test]
fn classify_writes_json() {
    let dir = std::env::temp_dir().join(format!("sheaf-forge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("classify.json");
    let o = run(&["classify", &data("rem33.txt"), "--at", "0,0", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["corank_at_point"], 2);
    assert_eq!(v["thm12_hypotheses_hold"], false);
    assert!(v["thm12_consistent"].is_null());
}

#[test]
fn torsion_and_linspace() {
    let o = run(&["torsion", &data("cusp.txt")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("torsion-free"));
    let o = run(&["linspace", &data("rem33.txt")]);
    assert!(stdout(&o).contains("linear false"), "{}", stdout(&o));
}

#[test]
fn blowup_chain_and_canonical() {
    let o = run(&["blowup", "--n", "2", "--center", "origin", "--sheaf", &data("cubes.txt"), "--op", "chain"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("strict: x^2*y^2"));
    let o = run(&["blowup", "--n", "2", "--sheaf", &data("cubes.txt"), "--op", "pushforward"]);
    assert!(stdout(&o).contains("x^2*y"));
    let o = run(&["blowup", "--n", "3", "--sheaf", &data("cubes.txt"), "--op", "pT"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["canonical", "--n", "3", "--center", "origin"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).matches("multiplicity 2").count(), 3);
}

#[test]
fn verify_paper_subset_report() {
    let dir = std::env::temp_dir().join(format!("sheaf-forge-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let o = run(&["verify-paper", "--only", "rem-4.2", "--json", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    let checks = v["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["anchor"] == "Rem 4.2" && c["status"] == "PASS"));
}
