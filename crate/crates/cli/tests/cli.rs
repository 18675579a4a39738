use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cellrep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cellrep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = cellrep(&all);
    (o.status.code().unwrap(), serde_json::from_slice(&o.stdout).expect("json report"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn full_suite_passes_with_a_stable_schema() {
    let (code, r) = json(&["run-suite", "full"]);
    assert_eq!(code, 0);
    assert_eq!(r["schema"], 1);
    let results = r["results"].as_array().unwrap();
    assert_eq!(results.len(), 11);
    assert!(results.iter().all(|c| c["passed"] == true));
    for input in r["inputs"].as_array().unwrap() {
        assert_eq!(input["sha256"].as_str().unwrap().len(), 64);
    }
    assert!(!r["certificates"].as_array().unwrap().is_empty());
}

#[test]
fn smoke_suite_and_unknown_suite() {
    let (code, r) = json(&["run-suite", "smoke"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"].as_array().unwrap().len(), 4);
    assert_eq!(cellrep(&["run-suite", "nope"]).status.code(), Some(2));
}

#[test]
fn usage_and_input_errors_exit_with_two() {
    assert_eq!(cellrep(&["frobnicate"]).status.code(), Some(2));
    let o = cellrep(&["cells", "/nonexistent/table.tbl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    let bad = scratch("bad.tbl");
    std::fs::write(&bad, "objects: i\ngens: e:i->i\nid i = e\ne * e = e\ne * e = e\n").unwrap();
    let o = cellrep(&["validate", bad.to_str().unwrap()]);
    assert_ne!(o.status.code(), Some(0));
}

#[test]
fn cells_of_a2() {
    let o = cellrep(&["cells", "a2-soergel.tbl"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("sts"), "{text}");
}

#[test]
fn decorated_principal_diagram_writes_dot() {
    let path = scratch("a2-principal.dot");
    let _ = std::fs::remove_file(&path);
    let o = cellrep(&["--dot", path.to_str().unwrap(), "diagram", "a2-soergel.tbl", "--principal", "--decorated"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("label"));
}

#[test]
fn goodness_search_finds_a_witness() {
    let (code, r) = json(&["goodness", "b2-soergel.tbl", "--cell", "sts", "--search"]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn apex_of_a_non_transitive_rep_fails() {
    assert_eq!(cellrep(&["apex", "a2-hidden.rep"]).status.code(), Some(1));
}

#[test]
fn verify_a2_precondition() {
    assert_eq!(cellrep(&["verify-a2", "--a", "1", "--b", "T"]).status.code(), Some(0));
    assert_eq!(cellrep(&["verify-a2", "--a", "1", "--b", "1-T"]).status.code(), Some(0));
    assert_eq!(cellrep(&["verify-a2", "--a", "1", "--b", "1"]).status.code(), Some(1));
    assert_eq!(cellrep(&["verify-a2", "--a", "1", "--b", "x"]).status.code(), Some(2));
}

#[test]
fn verify_zigzag() {
    assert_eq!(cellrep(&["verify-zigzag"]).status.code(), Some(0));
    assert_eq!(cellrep(&["verify-zigzag", "--alg", "kx2.alg"]).status.code(), Some(0));
    assert_eq!(cellrep(&["verify-zigzag", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn built_output_parses_back() {
    let o = cellrep(&["build", "ca", "--dims", "zigzag2.dims"]);
    assert_eq!(o.status.code(), Some(0));
    let path = scratch("ca.tbl");
    let text = stdout(&o);
    let table: String = text.lines().take_while(|l| !l.starts_with("PASS") && !l.starts_with("FAIL")).map(|l| format!("{l}\n")).collect();
    std::fs::write(&path, table).unwrap();
    assert_eq!(cellrep(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn build_bipartite_and_signature() {
    let o = cellrep(&["build", "bipartite", "--dims", "zigzag2.dims", "--graph", "bipartite5.graph"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("M_v1"));
    assert_eq!(cellrep(&["build", "sig", "--dims", "zigzag2.dims", "--dimvec", "1,0"]).status.code(), Some(0));
    assert_eq!(cellrep(&["build", "da", "--dims", "kx2.dims", "--module", "1,1;1,1"]).status.code(), Some(2));
}
