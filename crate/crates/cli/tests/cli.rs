use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stanley-lab"))
        .args(args)
        .env_remove("STANLEY_LAB_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("JSON on stdout")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_path() {
    let o = run(&["analyze", "path:3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["result"];
    assert_eq!(r["n"], 3);
    assert_eq!(r["components"], 1);
    assert_eq!(r["bipartite"], true);
    assert_eq!(r["tree"], true);
    assert_eq!(r["p"], 1);
    assert_eq!(r["analytic_spread"], 2);
    assert_eq!(r["sdepth_lower_bounds"]["power"], 2);

    let table = stdout(&run(&["analyze", "path:3"]));
    assert!(table.contains("p            1"), "{table}");
}

#[test]
fn reports_embed_version_and_invocation() {
    let v = json(&run(&["analyze", "cycle:3", "--format", "json"]));
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    let inv: Vec<&str> = v["invocation"].as_array().unwrap().iter().map(|x| x.as_str().unwrap()).collect();
    assert_eq!(&inv[1..], ["analyze", "cycle:3", "--format", "json"]);
}

#[test]
fn construct_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("p3.json");
    let o = run(&["construct", "--graph", "path:3", "--k", "2", "--kind", "power", "--out", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));

    let o = run(&["verify", path_str(&cert), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["result"];
    assert_eq!(r["valid"], true);
    assert_eq!(r["sdepth"], 2);
}

#[test]
fn tampered_certificate_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    assert_eq!(run(&["construct", "--graph", "path:3", "--k", "2", "--out", path_str(&cert)]).status.code(), Some(0));
    let mut v: Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    let removed = v["decomposition"]["spaces"].as_array_mut().unwrap().remove(0);
    std::fs::write(&cert, v.to_string()).unwrap();

    let o = run(&["verify", path_str(&cert), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let r = &json(&o)["result"];
    assert_eq!(r["valid"], false);
    assert_eq!(r["violation"], "uncovered");
    // The corner of the removed space is the first monomial it alone covered.
    assert_eq!(r["witness"], removed["u"]);
}

#[test]
fn construct_output_is_deterministic_and_reparses() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = run(&["construct", "--graph", "cycle:3+path:2", "--k", "2", "--kind", "layer", "--out", path_str(out)]);
        assert_eq!(o.status.code(), Some(0));
    }
    let decomposition = |p: &Path| -> Value {
        serde_json::from_str::<Value>(&std::fs::read_to_string(p).unwrap()).unwrap()["decomposition"].clone()
    };
    assert_eq!(decomposition(&a), decomposition(&b));
    let d = decomposition(&a);
    let bare = dir.path().join("bare.json");
    std::fs::write(&bare, serde_json::to_string(&d).unwrap()).unwrap();
    assert_eq!(run(&["verify", path_str(&bare)]).status.code(), Some(0));
}

#[test]
fn graph_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    std::fs::write(&g, r#"{"n":4,"edges":[[1,2],[2,3],[3,4],[1,4]]}"#).unwrap();
    let r = &json(&run(&["analyze", path_str(&g), "--format", "json"]))["result"];
    assert_eq!(r["graph"].to_string(), r#"{"edges":[[1,2],[1,4],[2,3],[3,4]],"n":4}"#);
    assert_eq!(r["p"], 1);
}

#[test]
fn sdepth_and_depth_of_a_module_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    std::fs::write(&m, r#"{"n":2,"lower_gens":[[1,1]],"upper_gens":[[0,0]]}"#).unwrap();
    let r = &json(&run(&["sdepth", "--module", path_str(&m), "--format", "json"]))["result"];
    assert_eq!((r["value"].as_u64(), r["exact"].as_bool()), (Some(1), Some(true)));
    let r = &json(&run(&["depth", "--module", path_str(&m), "--format", "json"]))["result"];
    assert_eq!(r["depth"], 1);
}

#[test]
fn sdepth_targets_and_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("s.json");
    let o =
        run(&["sdepth", "--graph", "cycle:3", "--kind", "power", "--target", "1", "--certificate", path_str(&cert)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["verify", path_str(&cert)]).status.code(), Some(0));
    assert_eq!(run(&["sdepth", "--graph", "cycle:3", "--k", "1", "--target", "2"]).status.code(), Some(1));
}

#[test]
fn budget_exhaustion_exits_3() {
    let o = run(&["sdepth", "--graph", "cycle:4", "--kind", "power", "--k", "2", "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_stanley-lab"))
        .args(["sdepth", "--graph", "cycle:4", "--kind", "power", "--k", "2"])
        .env("STANLEY_LAB_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn input_errors_exit_2() {
    assert_eq!(run(&["analyze", "wheel:5"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "/nonexistent/cert.json"]).status.code(), Some(2));
    assert_eq!(run(&["question", "--graph", "cycle:3"]).status.code(), Some(2));
    assert_eq!(run(&["construct", "--graph", "empty:3", "--k", "1"]).status.code(), Some(2));
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn depth_against_closed_form() {
    let o = run(&["depth", "--graph", "cycle:3", "--k", "2", "--trung", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["result"];
    assert_eq!((r["depth"].as_u64(), r["trung"].as_u64()), (Some(0), Some(0)));
}

#[test]
fn certify_and_question() {
    let o = run(&["certify", "--graph", "path:3", "--k", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports = json(&o)["result"].as_array().unwrap().clone();
    assert!(reports.iter().all(|r| r["verdict"] == "holds"));

    let o = run(&["question", "--graph", "cycle:4", "--k", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"][0]["verdict"], "evidence-for");
}

#[test]
fn sweep_is_independent_of_jobs() {
    let a = json(&run(&["sweep", "--max-n", "3", "--max-k", "2", "--jobs", "1", "--format", "json"]));
    let b = json(&run(&["sweep", "--max-n", "3", "--max-k", "2", "--jobs", "3", "--format", "json"]));
    assert_eq!(a["result"], b["result"]);
    assert!(a["result"].as_array().unwrap().iter().all(|r| r["verdict"] == "holds"));
}
