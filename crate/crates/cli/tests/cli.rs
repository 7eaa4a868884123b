use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> String {
    format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn edgereg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_edgereg")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("invalid JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)))
}

#[test]
fn reg_of_two_triangles_cubed() {
    let out = edgereg(&["reg", "--graph", &data("c3c3.json"), "--power", "3", "--field", "q", "--output", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["reg"], 7);
    assert_eq!(v["field"], "q");
}

#[test]
fn reg_depends_on_the_field() {
    let f2 = edgereg(&["reg", "--graph", &data("dk16.json"), "--field", "f2", "--output", "json"]);
    let q = edgereg(&["reg", "--graph", &data("dk16.json"), "--field", "q", "--output", "json"]);
    assert_eq!(json_of(&f2)["reg"], 5);
    assert_eq!(json_of(&q)["reg"], 4);
}

#[test]
fn input_errors_exit_2() {
    let out = edgereg(&["reg", "--ideal", &data("unit.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unit ideal"));
    assert_eq!(edgereg(&["reg", "--graph", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(edgereg(&["reg", "--ideal", &data("quadric.json"), "--field", "f4"]).status.code(), Some(2));
    assert_eq!(edgereg(&["verify", "no-such-scenario"]).status.code(), Some(2));
    assert_eq!(edgereg(&["closure", "--ideal", &data("quadric.json")]).status.code(), Some(2));
}

#[test]
fn closure_reports_extra_generators() {
    let out = edgereg(&["closure", "--graph", &data("c3c3.json"), "--power", "3", "--output", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["extra_count"], 1);
    assert_eq!(v["extra"][0]["exponent"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    assert_eq!(v["normal"], false);
    assert_eq!(v["chain"]["power_in_closure"], true);
    assert_eq!(v["chain"]["closure_in_symbolic"], true);

    let out = edgereg(&["closure", "--graph", &data("c6.json"), "--power", "4", "--output", "json"]);
    let v = json_of(&out);
    assert_eq!(v["extra_count"], 0);
    assert_eq!(v["normal"], true);
}

#[test]
fn symbolic_square_of_triangle() {
    let out = edgereg(&["symbolic", "--graph", &data("c3.json"), "--power", "2", "--output", "json"]);
    let v = json_of(&out);
    let gens = v["ideal"]["gens"].as_array().unwrap();
    // x1x2x3 absorbs the three mixed products of edges
    assert_eq!(gens.len(), 4);
    assert!(gens.contains(&serde_json::json!([1, 1, 1])));
}

#[test]
fn intermediate_ideals_with_regularity() {
    let out =
        edgereg(&["intermediate", "--graph", &data("c3c3.json"), "--power", "3", "--field", "f2", "--output", "json"]);
    let v = json_of(&out);
    assert_eq!(v["count"], 2);
    for item in v["ideals"].as_array().unwrap() {
        assert_eq!(item["reg"], 7);
    }
}

#[test]
fn degree_complex_and_homology() {
    let out =
        edgereg(&["degree-complex", "--graph", &data("c3.json"), "--power", "2", "--a", "1,1,0", "--output", "json"]);
    let v = json_of(&out);
    assert_eq!(v["facets"], serde_json::json!([[1], [2]]));

    let f2 = json_of(&edgereg(&["homology", "--complex", &data("rp2.json"), "--field", "f2", "--output", "json"]));
    let q = json_of(&edgereg(&["homology", "--complex", &data("rp2.json"), "--field", "q", "--output", "json"]));
    let dim = |v: &Value, d: i64| {
        v["homology"].as_array().unwrap().iter().find(|h| h["degree"] == d).unwrap()["dim"].as_u64().unwrap()
    };
    assert_eq!((dim(&f2, 1), dim(&f2, 2)), (1, 1));
    assert_eq!((dim(&q, 1), dim(&q, 2)), (0, 0));
    assert_eq!(f2["euler_consistent"], true);
}

#[test]
fn verify_passes_and_is_deterministic() {
    let a = edgereg(&["verify", "rigidity-c3c3-s3", "--output", "json", "--threads", "1"]);
    let b = edgereg(&["verify", "rigidity-c3c3-s3", "--output", "json", "--threads", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_of(&a)["pass"], true);
}

#[test]
fn verify_filters_by_field() {
    let out = edgereg(&["verify", "char-dependence-s1", "--field", "f2", "--output", "json"]);
    assert!(out.status.success());
    let v = json_of(&out);
    let results = v["results"].as_array().unwrap();
    assert_eq!(results.len(), 1);
    assert_eq!(results[0]["computed"], 7);
}

#[test]
fn verify_mismatch_exits_1() {
    let out = edgereg(&["verify", "--file", &data("wrong-c3.json"), "--output", "json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json_of(&out);
    assert_eq!(v["pass"], false);
    assert_eq!(v["results"][0]["computed"], 2);
}

#[test]
fn slow_scenarios_need_the_flag() {
    let out = edgereg(&["verify", "char-dependence-s2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--allow-slow"));
}

#[test]
fn list_scenarios_as_json() {
    let v = json_of(&edgereg(&["list-scenarios", "--output", "json"]));
    assert!(v.as_array().unwrap().len() >= 6);
}
