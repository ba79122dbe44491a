//! JSON outputs compared byte for byte with files in `tests/golden`.
//! Set `UPDATE_GOLDEN=1` to rewrite them.

use std::path::PathBuf;
use std::process::Command;

const GRAPHS: [(&str, &str, bool); 6] = [
    ("single_edge", "single_edge.json", false),
    ("p3", "p3.txt", false),
    ("k13", "k13.json", false),
    ("triangle", "triangle.txt", false),
    ("p4", "p4.txt", false),
    ("double_edge", "double_edge.txt", true),
];

const COMMANDS: [(&str, &[&str]); 6] = [
    ("tubes", &["tubes"]),
    ("tubings", &["tubings"]),
    ("dual", &["dual"]),
    ("triangulate", &["triangulate"]),
    ("boundary", &["triangulate", "--boundary"]),
    ("canonical", &["canonical", "--rep", "both", "--check"]),
];

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn run(args: &[&str], graph: &str, multigraph: bool) -> String {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cosmoform"));
    cmd.args(&args[..1]).arg(dir("data").join(graph)).args(&args[1..]).args(["--format", "json"]);
    if multigraph {
        cmd.arg("--multigraph");
    }
    let out = cmd.output().unwrap();
    assert!(out.status.success(), "{args:?} {graph}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn json_outputs_match_goldens() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatches = Vec::new();
    for (name, file, multigraph) in GRAPHS {
        for (cmd, args) in COMMANDS {
            let got = run(args, file, multigraph);
            let path = dir("golden").join(format!("{name}.{cmd}.json"));
            if update {
                std::fs::write(&path, &got).unwrap();
                continue;
            }
            let want = std::fs::read_to_string(&path).unwrap_or_default();
            if got != want {
                mismatches.push(path.display().to_string());
            }
        }
    }
    assert!(mismatches.is_empty(), "outputs differ from {mismatches:#?}");
}

#[test]
fn goldens_hold_the_worked_examples() {
    let read = |f: &str| -> serde_json::Value {
        serde_json::from_str(&std::fs::read_to_string(dir("golden").join(f)).unwrap()).unwrap()
    };
    assert_eq!(read("k13.tubes.json")["count"], 11);
    assert_eq!(read("p3.tubings.json")["maximal_count"], 2);
    assert_eq!(read("p3.boundary.json")["cells"].as_array().unwrap().len(), 8);
    let c = read("single_edge.canonical.json");
    assert_eq!(c["forms"][0]["terms"][0]["num"], "2");
    assert_eq!(c["forms"][0]["terms"][0]["tubes"], serde_json::json!(["{v}", "{w}", "{e}"]));
    assert_eq!(c["check"]["equal"], true);
    assert_eq!(read("p3.canonical.json")["check"]["terms_b"], 8);
    assert_eq!(read("double_edge.tubes.json")["graph"]["multigraph"], true);
}
