use std::path::PathBuf;
use std::process::{Command, Output};

fn braidcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_braidcert")).args(args).output().unwrap()
}

fn asset(rel: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join(rel).to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn entropy_reports_verdicts() {
    let out = braidcert(&["entropy", "-n", "3", "1 -2", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "POSITIVE");
    assert!((v["estimate"].as_f64().unwrap() - 0.962424).abs() < 1e-3);

    let out = braidcert(&["entropy", "-n", "3", "1 2"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().any(|l| l.starts_with("verdict") && l.ends_with("ZERO")));

    let out = braidcert(&["entropy", "-n", "3", "-1 -1 2 2"]);
    assert!(out.status.success(), "leading hyphen words parse");
}

#[test]
fn perm_prints_cycles() {
    let out = braidcert(&["perm", "-n", "4", "1 2 3 1 2 1"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("(1 4)(2 3)"), "{text}");
    assert!(text.contains("pure          false"));
}

#[test]
fn analyze_json_and_exit_status() {
    let out = braidcert(&["analyze", "-n", "4", "-g", "1", "-g", "3", "--structure", "DISJOINT_TWISTS", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["perm_image"]["order"], 4);
    assert_eq!(v["verdict"]["dlen_sandwich"]["status"], "PASS");
    assert_eq!(v["kernel"]["linking_rank"], 2);
}

#[test]
fn certify_is_deterministic() {
    let spec = asset("specs/b5_unsolvable.json");
    let a = braidcert(&["certify", &spec]);
    let b = braidcert(&["certify", &spec]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["entropy"]["search"]["status"], "FOUND");
    assert_eq!(v["entropy"]["search"]["generator_word"], "rot s1 s1");
}

#[test]
fn exhausted_search_on_unsolvable_image_exits_2() {
    let out = braidcert(&["analyze", "-n", "5", "-g", "1 2 3 4", "-g", "1", "--max-len", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).contains("! image is not solvable"));
}

#[test]
fn tree_center_emits_json() {
    let out = braidcert(&["tree-center", &asset("trees/spider.txt")]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), r#"{"kind":"VERTEX","id":0}"#);
    let out = braidcert(&["tree-center", &asset("trees/path4.txt")]);
    assert_eq!(stdout(&out).trim(), r#"{"kind":"EDGE_MIDPOINT","u":2,"v":3}"#);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(braidcert(&["analyze", "-n", "3"]).status.code(), Some(1));
    assert_eq!(braidcert(&["entropy", "-n", "3", "7"]).status.code(), Some(1));
    assert_eq!(braidcert(&["certify", "/nonexistent/spec.json"]).status.code(), Some(1));
    let spec = asset("specs/b3_cyclic.json");
    let out = braidcert(&["certify", &spec, "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("yaml"));
    assert_eq!(braidcert(&["--help"]).status.code(), Some(0));
}
