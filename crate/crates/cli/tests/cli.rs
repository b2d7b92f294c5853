use dimer_core::dimer::WeightSystem;
use dimer_core::json::GraphFile;
use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn dimers(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimers")).args(args).output().expect("run dimers")
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn scratch(name: &str, contents: &[u8]) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("dimers-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn theta_partition_both() {
    let out = dimers(&["partition", "suite:theta", "--method", "both"]);
    let v = json(&out);
    assert_eq!(v["oracle"], "3/1");
    assert_eq!(v["pfaffian"], "3/1");
    assert_eq!(v["agree"], true);
}

#[test]
fn float_output() {
    let v = json(&dimers(&["partition", "suite:theta", "--method", "oracle", "--float"]));
    assert_eq!(v["oracle"], 3.0);
}

#[test]
fn torus_has_four_classes() {
    let v = json(&dimers(&["kasteleyn", "suite:torus-2v", "--list-classes", "--arf"]));
    assert_eq!(v["class_count"], 4);
    let arfs: Vec<i64> = v["classes"].as_array().unwrap().iter().map(|c| c["arf"].as_i64().unwrap()).collect();
    assert_eq!(arfs.iter().filter(|&&a| a == -1).count(), 1);
    assert_eq!(arfs.iter().filter(|&&a| a == 1).count(), 3);
}

#[test]
fn empty_graph_partition_is_one() {
    let path = scratch("empty.json", br#"{"vertices":[],"half_edges":[],"rotations":{}}"#);
    let v = json(&dimers(&["partition", path.to_str().unwrap()]));
    assert_eq!(v["oracle"], "1/1");
    assert_eq!(v["pfaffian"], "1/1");
}

#[test]
fn class_resolved_partition() {
    let zero = json(&dimers(&["partition", "suite:torus-2v", "--alpha", "00"]));
    assert_eq!(zero["agree"], true);
    let mut total = 0;
    for a in ["00", "01", "10", "11"] {
        let v = json(&dimers(&["partition", "suite:torus-2v", "--alpha", a, "--method", "oracle"]));
        total += v["oracle"].as_str().unwrap().trim_end_matches("/1").parse::<i64>().unwrap();
    }
    assert_eq!(total, 4);
}

#[test]
fn exit_codes() {
    assert_eq!(dimers(&["partition", "/nonexistent/graph.json"]).status.code(), Some(1));
    assert_eq!(dimers(&["info", "suite:no-such-graph"]).status.code(), Some(1));
    let bad = scratch("bad.json", b"{\"vertices\": [");
    assert_eq!(dimers(&["info", bad.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(dimers(&["partition", "suite:torus-2v", "--alpha", "0"]).status.code(), Some(1));
    let four = json(&dimers(&["suite", "four-cycle"]));
    let path = scratch("four.json", four.to_string().as_bytes());
    assert_eq!(dimers(&["heights", path.to_str().unwrap(), "--d0", "99"]).status.code(), Some(1));
    assert_eq!(dimers(&["glue", "suite:theta", "--map", "u:v"]).status.code(), Some(2));
}

#[test]
fn matchings_with_boundary() {
    let v = json(&dimers(&["matchings", "suite:annulus-ladder", "--boundary", ""]));
    let none = v["count"].as_u64().unwrap();
    let all = json(&dimers(&["matchings", "suite:annulus-ladder"]))["count"].as_u64().unwrap();
    assert!(none <= all);
    assert_eq!(dimers(&["matchings", "suite:theta", "--boundary", "u"]).status.code(), Some(1));
}

#[test]
fn cut_then_glue_round_trip() {
    let cut = dimers(&["cut", "suite:theta", "--edges", "e0+", "--t", "1/3"]);
    let v = json(&cut);
    let pairs = &v["regluing"][0]["pairs"];
    let map = format!("{}:{}", pairs[0][0].as_str().unwrap(), pairs[0][1].as_str().unwrap());
    let path = scratch("cut.json", &cut.stdout);
    let p = path.to_str().unwrap();
    let check = json(&dimers(&["qft", p, "--glue-check", "--closed", "--map", &map]));
    assert_eq!(check["glue_check"]["holds"], true);
    let glued = dimers(&["glue", p, "--closed", "--map", &map]);
    let glued_path = scratch("glued.json", &glued.stdout);
    let z = json(&dimers(&["partition", glued_path.to_str().unwrap()]));
    assert_eq!(z["oracle"], "3/1");
}

#[test]
fn fermionic_matches_vector() {
    let v = json(&dimers(&["qft", "suite:edge-disk", "--vector", "--fermionic"]));
    assert_eq!(v["vector"]["amplitudes"], v["fermionic"]["coefficients"]);
}

#[test]
fn heights_measure_check() {
    let v = json(&dimers(&["heights", "suite:annulus-ladder", "--measure-check"]));
    assert_eq!(v["measure_check"]["holds"], true);
    assert!(!v["heights"].as_array().unwrap().is_empty());
    let g = dimer_core::suite::triangle();
    let text = GraphFile::from_graph(&g, &WeightSystem::unit(&g)).to_string_pretty();
    let tri = scratch("triangle.json", text.as_bytes());
    assert_eq!(dimers(&["heights", tri.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    let a = dimers(&["kasteleyn", "suite:genus2", "--list-classes", "--forms"]);
    let b = dimers(&["kasteleyn", "suite:genus2", "--list-classes", "--forms"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_single_check() {
    let out = dimers(&["verify", "--only", "3"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("PASS"));
    assert_eq!(dimers(&["verify", "--only", "42"]).status.code(), Some(1));
}
