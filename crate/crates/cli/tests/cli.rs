use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn wsweave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wsweave")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).display().to_string()
}

#[test]
fn feasible_examples() {
    let out = wsweave(&["feasible", "-k", "3", "-n", "6", "-l", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "wsweave/1");
    assert_eq!(v["orientation"], "counterclockwise");
    assert_eq!(v["payload"]["d"], 2);
    assert_eq!(v["payload"]["c"], 1);
    assert_eq!(wsweave(&["feasible", "-k", "2", "-n", "5", "-l", "1"]).status.code(), Some(1));
}

#[test]
fn generate_golden() {
    let out = wsweave(&["generate", "-k", "3", "-n", "6", "-l", "3", "--order", "3,2,1", "--format", "text"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "123 124 125 126 145 156 234 245 345 456");
    assert_eq!(wsweave(&["generate", "-k", "2", "-n", "5", "-l", "1"]).status.code(), Some(1));
}

#[test]
fn seedless_output_is_byte_identical() {
    let args = ["pipeline", "-k", "3", "-n", "6", "-l", "3", "--seedless"];
    let (a, b) = (wsweave(&args), wsweave(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(json(&a).get("timing_ms").is_none());
    assert!(json(&wsweave(&["pipeline", "-k", "3", "-n", "6", "-l", "3"])).get("timing_ms").is_some());
}

#[test]
fn seedless_rejects_first_only() {
    let out = wsweave(&["oracle", "-k", "2", "-n", "6", "--first", "--seedless"]);
    assert_eq!(out.status.code(), Some(3));
    let out = wsweave(&["oracle", "-k", "2", "-n", "6", "--seedless"]);
    assert_eq!(json(&out)["payload"]["count"], 14);
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = path(dir.path(), "good.json");
    assert_eq!(wsweave(&["generate", "-k", "3", "-n", "6", "-l", "3", "--out", &good]).status.code(), Some(0));
    assert_eq!(wsweave(&["verify", "-i", &good, "-l", "3"]).status.code(), Some(0));
    // Symmetric under +3 but not under +1.
    assert_eq!(wsweave(&["verify", "-i", &good, "-l", "1"]).status.code(), Some(2));
    let out = wsweave(&["verify", "--collection", "13 24", "-n", "4", "-k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["payload"]["valid"], false);
    let partial = wsweave(&["verify", "--collection", "12 23 34 14", "-n", "4", "-k", "2"]);
    assert_eq!(partial.status.code(), Some(2));
}

#[test]
fn malformed_input() {
    let dir = tempfile::tempdir().unwrap();
    let bad = path(dir.path(), "bad.json");
    std::fs::write(&bad, r#"{"n": 6, "k": 3, "members": [[1,2,3],[1,2,3]]}"#).unwrap();
    assert_eq!(wsweave(&["verify", "-i", &bad]).status.code(), Some(3));
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(wsweave(&["tiling", "-i", &bad]).status.code(), Some(3));
    std::fs::write(&bad, r#"{"schema": "wsweave/0", "tool_version": "0", "orientation": "counterclockwise", "kind": "collection", "input": {}, "payload": {}}"#).unwrap();
    assert_eq!(wsweave(&["render", "-i", &bad]).status.code(), Some(3));
    assert_eq!(wsweave(&["generate", "-k", "3"]).status.code(), Some(3));
    assert_eq!(wsweave(&["nonsense"]).status.code(), Some(3));
}

#[test]
fn chain_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let d = path(dir.path(), "d.json");
    let g = path(dir.path(), "g.json");
    let s = path(dir.path(), "s.json");
    let w = path(dir.path(), "w.json");
    assert_eq!(wsweave(&["generate", "-k", "3", "-n", "6", "-l", "3", "--out", &d]).status.code(), Some(0));
    let cl = wsweave(&["cliques", "-i", &d]);
    assert_eq!(json(&cl)["payload"].as_array().unwrap().len(), 9);
    let t = wsweave(&["tiling", "-i", &d, "-l", "3"]);
    assert_eq!(json(&t)["certificates"]["rotation"]["status"], "symmetric");
    let dual = wsweave(&["dual", "-i", &d, "-l", "3", "--out", &g]);
    assert_eq!(dual.status.code(), Some(0));
    let out = wsweave(&["tshift", "-i", &g, "-l", "3", "--out", &s]);
    assert_eq!(out.status.code(), Some(0));
    let shifted: Value = serde_json::from_str(&std::fs::read_to_string(&s).unwrap()).unwrap();
    assert_eq!(shifted["certificates"]["rank_after"], 2);
    assert_eq!(wsweave(&["weave", "-i", &d, "-l", "3", "--out", &w]).status.code(), Some(0));
    let woven: Value = serde_json::from_str(&std::fs::read_to_string(&w).unwrap()).unwrap();
    assert_eq!(woven["certificates"]["braid"], "s1 s2 s1 s2 s1 s2 s1 s2 s1 s2 s1 s2");
    for (file, marker) in [(&d, "face"), (&g, "vertex"), (&s, "vertex"), (&w, "tick")] {
        let svg = wsweave(&["render", "-i", file]);
        assert_eq!(svg.status.code(), Some(0));
        assert!(String::from_utf8_lossy(&svg.stdout).contains(&format!("class=\"{marker}")));
    }
    let tikz = wsweave(&["render", "-i", &w, "--format", "tikz", "--layer-colors", "#000000,#ff0000"]);
    let text = String::from_utf8_lossy(&tikz.stdout);
    assert_eq!(text.lines().filter(|l| l.contains("% tick")).count(), 12);
    assert!(text.contains("red,255;green,0;blue,0"));
}

#[test]
fn sweeps() {
    let out = wsweave(&["pipeline", "--sweep", "1..3,4..7,1..6", "--seedless"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["certificates"]["failed"], 0);
    assert!(v["payload"].as_array().unwrap().iter().any(|r| r["feasible"] == false));
    let out = wsweave(&["oracle", "--sweep", "1..3,3..7,1..6", "--seedless"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["certificates"]["disagreements"], 0);
    assert_eq!(wsweave(&["pipeline", "--sweep", "1..3"]).status.code(), Some(3));
}

#[test]
fn format_is_checked() {
    assert_eq!(wsweave(&["tiling", "-k", "3", "-n", "6", "-l", "3", "--format", "svg"]).status.code(), Some(3));
}
