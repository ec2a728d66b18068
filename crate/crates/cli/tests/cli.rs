use std::path::PathBuf;
use std::process::{Command, Output};

fn ainf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ainf")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn sample(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "instances", name].iter().collect();
    p.to_str().unwrap().to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ainf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn basis_table() {
    let o = ainf(&["basis", "--operad", "ainf", "--arity", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "degree 0: 5\ndegree -1: 5\ndegree -2: 1\ntotal: 11\n");
    let o = ainf(&["basis", "--operad", "ainf", "--arity", "5", "--degree", "-1"]);
    assert_eq!(stdout(&o), "degree -1: 21\ntotal: 21\n");
}

#[test]
fn hu_basis_needs_a_unit_bound() {
    let o = ainf(&["basis", "--operad", "ainf-hu", "--arity", "2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ainf(&["basis", "--operad", "ainf-hu", "--arity", "2", "--max-units", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("\n") && stdout(&o).contains("total:"));
}

#[test]
fn differential_of_a_generator() {
    let o = ainf(&["diff", "--operad", "ainf", "--element", "m3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "-m2(·,m2(·,·)) + m2(m2(·,·),·)");
    let o = ainf(&["diff", "--operad", "ainf", "--element", "m2(·"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_suites() {
    let o = ainf(&["verify", "--suite", "anchors"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("anchors.ainf.m3"));
    let o = ainf(&["verify", "--suite", "dsq", "--arity-max", "4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\"dsq.ainf.m4\""));
    assert!(!stdout(&o).contains("timing"));
    assert_eq!(ainf(&["verify", "--suite", "nothing"]).status.code(), Some(2));
}

#[test]
fn check_sample_instances() {
    for kind in ["ainf", "hu-algebra", "unitality"] {
        let o = ainf(&["check", "--instance", &sample("dual.json"), "--as", kind]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
    }
    for kind in ["morphism", "hu-morphism", "unitality"] {
        let o = ainf(&["check", "--instance", &sample("swap.json"), "--as", kind]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
    }
    let o = ainf(&["check", "--instance", &sample("dual.json"), "--as", "morphism"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn failing_checks_exit_one() {
    let text = std::fs::read_to_string(sample("dual.json")).unwrap();
    let bad = text.replace(r#"{"in": ["x", "1"], "out": "x", "coef": "1"}"#, r#"{"in": ["x", "1"], "out": "x", "coef": "2"}"#);
    assert_ne!(bad, text);
    let path = scratch("bad.json");
    std::fs::write(&path, bad).unwrap();
    let o = ainf(&["check", "--instance", path.to_str().unwrap(), "--as", "ainf"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL") || stdout(&o).contains("fail"));
}

#[test]
fn malformed_instances_exit_two() {
    let path = scratch("broken.json");
    std::fs::write(&path, r#"{"ring": "Q", "module": [{"name": "1", "degree": 0}], "operations": {"m_2": [{"in": ["1"], "out": "y", "coef": "1"}]}}"#).unwrap();
    let o = ainf(&["check", "--instance", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("operations.m_2[0]"), "{err}");
    assert_eq!(ainf(&["check", "--instance", "/nonexistent.json"]).status.code(), Some(2));
}

#[test]
fn compose_round_trip() {
    let out = scratch("gh.json");
    let swap = sample("swap.json");
    let o = ainf(&["compose", "--g", &swap, "--h", &swap, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    for kind in ["morphism", "hu-morphism"] {
        let o = ainf(&["check", "--instance", out.to_str().unwrap(), "--as", kind]);
        assert_eq!(o.status.code(), Some(0), "{kind}: {}", stdout(&o));
    }
    let hu = scratch("gh-hu.json");
    let o = ainf(&["compose", "--g", &swap, "--h", &swap, "--out", hu.to_str().unwrap(), "--hu"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ainf(&["check", "--instance", hu.to_str().unwrap(), "--as", "hu-morphism"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ainf(&["compose", "--g", &sample("dual.json"), "--h", &swap, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
