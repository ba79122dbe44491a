use std::path::PathBuf;
use std::process::{Command, Output};

fn data(f: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(f)
}

fn cosmoform(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cosmoform")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn star_has_eleven_tubes() {
    let o = cosmoform(&["tubes", data("k13.json").to_str().unwrap()]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("11 tubes\n"));
}

#[test]
fn canonical_check_on_p3() {
    let o = cosmoform(&["canonical", data("p3.txt").to_str().unwrap(), "--rep", "both", "--check"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stdout(&o).contains("equality: true, 2 + 8 terms"));
}

#[test]
fn evaluate_single_edge() {
    let o = cosmoform(&["evaluate", data("single_edge.json").to_str().unwrap(), "--rep", "a", "--at", "1/3,1/3,1/3"]);
    assert_eq!(stdout(&o), "27/4\n");
    let o = cosmoform(&["evaluate", "single edge", "--rep", "both", "--at", "1/2,1/4,1/4"]);
    assert_eq!(stdout(&o), "A: 64/9\nB: 64/9\n");
}

#[test]
fn library_names_are_accepted() {
    let o = cosmoform(&["tubes", "P3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 6);
}

#[test]
fn verify_p3_reports_boundary_cells() {
    let o = cosmoform(&["verify", data("p3.txt").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert!(out.contains("8 boundary cells"));
    assert!(out.ends_with("all properties pass\n"));
}

#[test]
fn verify_double_edge_in_multigraph_mode() {
    let path = data("double_edge.txt");
    let o = cosmoform(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("parallel") || stderr(&o).contains("multigraph"), "{}", stderr(&o));
    let o = cosmoform(&["verify", path.to_str().unwrap(), "--multigraph"]);
    assert!(o.status.success(), "{}", stdout(&o));
}

#[test]
fn exit_codes() {
    let o = cosmoform(&["evaluate", "single edge", "--at", "2,-2,1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("tube {e}"));
    let o = cosmoform(&["evaluate", "single edge", "--at", "1,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = cosmoform(&["tubings", "C4", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let o = cosmoform(&["tubes", "/nonexistent/graph.json"]);
    assert_eq!(o.status.code(), Some(3));
    let o = cosmoform(&["tubes", data("p3.txt").to_str().unwrap(), "-o", "/nonexistent/dir/out.json"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = cosmoform(&["canonical", "K13", "--check", "--format", "json", "-o", p.to_str().unwrap()]);
        assert!(o.status.success());
        assert!(o.stdout.is_empty());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn latex_rendering() {
    let o = cosmoform(&["canonical", "single edge", "--rep", "a", "--format", "latex"]);
    let out = stdout(&o);
    assert!(out.contains("\\frac{2}{x_{\\{v\\}} \\, x_{\\{w\\}} \\, x_{\\{e\\}}}"), "{out}");
    let o = cosmoform(&["dual", "K13", "--format", "latex"]);
    assert!(stdout(&o).contains("\\frac{1}{2}(0,1,0,0,1,0,0)"));
}

#[test]
fn seeds_are_reproducible() {
    let run = |seed: &str| stdout(&cosmoform(&["verify", "single edge", "--seed", seed, "--format", "json"]));
    assert_eq!(run("7"), run("7"));
}
