use std::process::{Command, Output};

use serde_json::Value;

fn ggs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ggs"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn invariants_text() {
    let o = ggs(&["invariants", "--p", "3", "--e", "1,2"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("e'  = (2)"), "{s}");
    assert!(s.contains("= (0,1,1)"), "{s}");
    assert!(s.contains("t = 2"), "{s}");
}

#[test]
fn constant_tuple_is_a_usage_error() {
    let o = ggs(&["invariants", "--p", "3", "--e", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("constant defining tuples are excluded"));
}

#[test]
fn parse_error_reports_position() {
    let o = ggs(&["index", "--p", "3", "--e", "1,x", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position 2"));
}

#[test]
fn index_json_shape() {
    let o = ggs(&["--json", "index", "--p", "3", "--e", "1,2", "--series", "derived", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["command"], "index");
    assert_eq!(v["input"]["p"], 3);
    assert_eq!(v["input"]["e"], serde_json::json!([1, 2]));
    assert_eq!(v["results"][0]["log"], 16);
    assert_eq!(v["results"][0]["index"], "43046721");
    assert_eq!(v["verdict"], "pass");
    assert!(v["version"].is_string());
}

#[test]
fn stabilizer_index_text() {
    let o = ggs(&["index", "--p", "5", "--e", "1,0,0,1", "--series", "stabilizer", "--n", "3"]);
    assert!(stdout(&o).contains("= 25"));
}

#[test]
fn isomorphism_outcomes() {
    let o = ggs(&["isomorphic", "--p", "3", "--e", "1,2", "--d", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("λ=2 μ=1"));
    let o = ggs(&["isomorphic", "--p", "5", "--e", "1,0,0,0", "--d", "1,1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not isomorphic"));
    let o = ggs(&["isomorphic", "--p", "3", "--e", "1,2", "--d", "2,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn portrait_depth_limit() {
    let o = ggs(&["portrait", "--p", "3", "--e", "1,2", "--word", "b a b^-1", "--depth", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("AtLevel(2)"));
    let o = ggs(&["portrait", "--p", "3", "--e", "1,2", "--word", "b", "--depth", "7"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let o = ggs(&["verify", "--p", "3", "--e", "1,2", "--checks", "derived,stabilizers"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ggs(&["verify", "--p", "5", "--e", "0,1,1,0", "--checks", "branching"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ggs(&["verify", "--p", "3", "--e", "1,2", "--level", "2", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_over_corpus() {
    let dir = std::env::temp_dir().join(format!("ggs-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("corpus.txt");
    std::fs::write(&path, "# two tuples\np=3, e=1,2\np=3, e=0,1\n").unwrap();
    let o = ggs(&["--json", "sweep", "--corpus", path.to_str().unwrap(), "--checks", "derived"]);
    std::fs::remove_dir_all(&dir).ok();
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
    let o = ggs(&["sweep"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_unknown_commands() {
    assert_eq!(ggs(&["--help"]).status.code(), Some(0));
    assert_eq!(ggs(&["frobnicate"]).status.code(), Some(2));
}
