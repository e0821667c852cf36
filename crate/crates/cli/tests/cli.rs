use std::fs;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_polyrank");

fn polyrank(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn gen_writes_graph_and_poset_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("d.json");
    let o = polyrank(&["gen", "D:2,2,2", "--out", g.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).trim(), "graph: 3 vertices, 6 edges");
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&g).unwrap()).unwrap();
    assert_eq!(v["edges"].as_array().unwrap().len(), 6);

    let p = dir.path().join("w.json");
    let o = polyrank(&["gen", "W:1,1,0,1", "--out", p.to_str().unwrap()]);
    // s + t + p + q + 3 elements
    assert!(stdout(&o).starts_with("poset: 6 elements"), "{}", stdout(&o));

    let o = polyrank(&["gen", "B:1;p=1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stderr(&o).starts_with("graph: "));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("edges").is_some());
}

#[test]
fn gen_reports_parse_positions() {
    let o = polyrank(&["gen", "D:2,x,2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("position"), "{}", stderr(&o));
}

#[test]
fn compute_from_expressions_and_files() {
    let rank = |e: &str| stdout(&polyrank(&["compute", e, "--what", "rank"])).trim().to_string();
    assert_eq!(rank("indep:D:1,1,1"), "3");
    assert_eq!(rank("base:B:1,2;p=1"), "2");

    let o = polyrank(&["compute", "base:A:4", "--what", "facets", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["inequalities"].as_array().unwrap().len(), 4);

    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("p.json");
    let o = polyrank(&["gen", "D:2,2,2", "--as", "base", "--out", f.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = polyrank(&["compute", f.to_str().unwrap(), "--what", "rank", "--format", "csv"]);
    assert_eq!(stdout(&o), "rank\n3\n");

    let o = polyrank(&["compute", "cube:3", "--what", "vertices", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn rank_of_a_point_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pt.json");
    fs::write(&f, r#"{"ambient_dim": 2, "vertices": [[1, 1]]}"#).unwrap();
    let o = polyrank(&["compute", f.to_str().unwrap(), "--what", "rank"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("rank undefined"));
    let o = polyrank(&["compute", f.to_str().unwrap(), "--what", "dim"]);
    assert_eq!(stdout(&o).trim(), "0");
}

#[test]
fn equiv_verdicts_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = dir.path().join("w.json");
    let o = polyrank(&["equiv", "base:D:2,2,2", "edge:KM:2,2,2", "--witness", w.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("equivalent"));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&w).unwrap()).unwrap();
    assert!(v["matrix"].is_array());

    let o = polyrank(&["equiv", "cube:2", "indep:A:2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "not_equivalent");
}

#[test]
fn equiv_gate_is_inconclusive() {
    let o = polyrank(&["equiv", "cube:8", "base:U:A:2|A:2|A:2|A:2|A:2|A:2|A:2|A:2"]);
    assert_eq!(o.status.code(), Some(3), "{}{}", stdout(&o), stderr(&o));
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let o = polyrank(&["verify", "base-edge-equivalence", "--bound", "s=1", "--format", "json", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["instances_checked"], 1);

    assert_eq!(polyrank(&["verify", "no-such-suite"]).status.code(), Some(2));
    assert_eq!(polyrank(&["verify", "rank-axioms", "--bound", "bogus=1"]).status.code(), Some(2));
    assert_eq!(polyrank(&["verify", "rank-axioms", "--bound", "subsets=100000000"]).status.code(), Some(3));
    assert_eq!(polyrank(&["verify", "rank-axioms", "--bound", "subsets"]).status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let run = || {
        let o = polyrank(&["verify", "unimodular-invariance", "--bound", "maps=20", "--seed", "9", "--format", "json"]);
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v["runtime_seconds"] = serde_json::Value::Null;
        v
    };
    assert_eq!(run(), run());
}

#[test]
fn instances_replay_as_commands() {
    let o = polyrank(&["verify", "base-edge-equivalence", "--bound", "s=2", "--format", "csv"]);
    let csv = stdout(&o);
    let instance = csv
        .lines()
        .skip(1)
        .filter_map(|l| l.split('"').nth(1))
        .find(|i| i.starts_with("polyrank equiv"))
        .expect("an instance row");
    let cmd = instance.replacen("polyrank", BIN, 1);
    let r = Command::new("sh").arg("-c").arg(&cmd).output().unwrap();
    assert_eq!(r.status.code(), Some(0), "{cmd}: {}", stderr(&r));
}

#[test]
fn list_suites_names_every_suite() {
    let o = stdout(&polyrank(&["list-suites"]));
    for id in ["facet-descriptions", "ear-monotonicity", "rank-three-relations", "witness-soundness"] {
        assert!(o.contains(id), "{id}");
    }
}
