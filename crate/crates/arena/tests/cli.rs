use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn arena(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_arena")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn simulate_single_and_batch() {
    let out = arena(&["simulate", "--hider", "connected", "--seeker", "random:42", "--turns", "2000"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"]["verdict"], "all_invariants_held");
    assert_eq!(v["turns_played"], 2000);

    let out = arena(&["simulate", "--hider", "k-cycle:4", "--seeker", "random", "--seeds", "8", "--turns", "300"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["passed"], 8);
}

#[test]
fn forcing_seeker_reports_its_trap() {
    let out = arena(&["simulate", "--hider", "random:3", "--seeker", "indep:2", "--turns", "500"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"]["verdict"], "seeker_trap");
}

#[test]
fn bad_usage_exits_with_two() {
    assert_eq!(arena(&["simulate", "--hider", "nope", "--seeker", "random"]).status.code(), Some(2));
    assert_eq!(arena(&["simulate", "--hider", "connected"]).status.code(), Some(2));
    assert_eq!(
        arena(&["simulate", "--hider", "connected", "--seeker", "random", "--monitors", "bogus"]).status.code(),
        Some(2)
    );
    assert_eq!(arena(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn saved_matches_replay() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("match.json");
    let p = path.to_str().unwrap();
    let out = arena(&["simulate", "--hider", "bipartite", "--seeker", "random:5", "--turns", "400", "--save", p]);
    assert_eq!(out.status.code(), Some(0));
    let first = json(&out);

    let out = arena(&["replay", p]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["verdict"], first["verdict"]);

    let out = arena(&["replay", p, "--hider", "sensitive:star"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["verdict"]["verdict"], "violation");
}

#[test]
fn malformed_transcripts_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    let dup =
        r#"{"window_cap":4096,"moves":[{"t":0,"e":[0,1],"c":"green"},{"t":1,"e":[0,1],"c":"red"}],"final_window":2}"#;
    std::fs::write(&path, dup).unwrap();
    let out = arena(&["replay", path.to_str().unwrap(), "--hider", "connected"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("malformed"));

    std::fs::write(&path, r#"{"window_cap":4096,"moves":[],"final_window":0}"#).unwrap();
    let out = arena(&["replay", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["moves"], 0);
}

#[test]
fn solvers() {
    let out = arena(&["solve"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let games = v.as_array().unwrap();
    assert_eq!(games.len(), 3);
    assert!(games.iter().all(|g| g["winner"] == "hider"));
    assert_eq!(games[1]["hand_policy"]["pass"], true);

    let out = arena(&["verify-appendix"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["pass"], true);

    let out = arena(&["classical", "--property", "connected", "--n", "4", "--shuffle-seed", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["result"], "Elusive");
    assert_eq!(v["shuffled"]["agrees"], true);

    let out = arena(&["classical", "--property", "trivial", "--n", "4"]);
    assert_eq!(json(&out)["result"], "NotElusive");
    assert_eq!(arena(&["classical", "--property", "connected", "--n", "7"]).status.code(), Some(2));
}

#[test]
fn s0_commands() {
    let out = arena(&["s0", "rigidity", "--m", "10", "--flip", "x0x2"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["result"], "non_isomorphic");
    assert_eq!(arena(&["s0", "rigidity", "--flip", "ax0"]).status.code(), Some(2));

    let out = arena(&["s0", "reduce", "1011", "--graph"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["report"]["pass"], true);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    std::fs::write(&path, v["graph"].to_string()).unwrap();
    let out = arena(&["s0", "check", path.to_str().unwrap(), "--threshold", "0"]);
    assert_eq!(out.status.code(), Some(0));

    let out = arena(&["s0", "reduce", "1001"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["report"]["pass"], false);
}

#[test]
fn interactive_seeker() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_arena"))
        .args(["play", "--side", "seeker", "--hider", "connected"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0 0\n0 1\n1 0\nquit\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let log = String::from_utf8_lossy(&out.stderr);
    assert!(log.contains("expected two distinct vertices"));
    assert!(log.contains("green"));
    assert!(log.contains("already green"));
    let t = json(&out);
    assert_eq!(t["moves"].as_array().unwrap().len(), 1);
}

#[test]
fn interactive_hider() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_arena"))
        .args(["play", "--side", "hider", "--seeker", "one-white:0-1", "--universe", "3", "--property", "nonempty"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"r\nmaybe\nr\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let log = String::from_utf8_lossy(&out.stderr);
    assert!(log.contains("answer g or r"));
    assert_eq!(json(&out)["moves"].as_array().unwrap().len(), 2);
}
