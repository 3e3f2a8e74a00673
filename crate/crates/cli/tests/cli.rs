use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn toric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric"))
        .args(args)
        .current_dir(root())
        .env_remove("TORIC_BOX_RADIUS")
        .output()
        .expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json report")
}

#[test]
fn classify_weighted_plane() {
    let o = toric(&["classify", "fixtures/ex-3.290.json"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["result"];
    assert_eq!(r["flags"]["complete"], true);
    assert_eq!(r["flags"]["simplicial"], true);
    assert_eq!(r["flags"]["regular"], false);
    assert_eq!(r["picard"]["index"], "6");
}

#[test]
fn picard_routes_agree() {
    let o = toric(&["picard", "ex-1.100a"]);
    assert_eq!(o.status.code(), Some(0));
    let r = &json(&o)["result"];
    assert_eq!(r["routes_agree"], true);
    assert_eq!(r["polytopes"]["group"], "Z/2");
}

#[test]
fn serre_grothendieck_passes_on_p2() {
    let o = toric(&["sg-verify", "fixtures/p2.json", "--shifts", "0", "--range", "-5..5"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "PASS");
}

#[test]
fn irrelevant_ideal_gives_the_whole_sheaf() {
    let o = toric(&[
        "sheaf-eq",
        "fixtures/p2.json",
        "--a",
        "fixtures/p2-irrelevant.mod.json",
        "--b",
        "fixtures/p2-whole.mod.json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["verdict"], "EQUAL");
}

#[test]
fn saturate_irrelevant() {
    let o = toric(&["saturate", "p2", "--module", "fixtures/p2-irrelevant.mod.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["saturation"]["groebner_basis"][0], "1");
}

#[test]
fn cohomology_of_p1() {
    let o = toric(&["cohomology", "p1", "--shifts", "0", "--twist", "-3"]);
    assert_eq!(o.status.code(), Some(0));
    let row = &json(&o)["result"]["rows"][0];
    assert_eq!(row["sheaf"], serde_json::json!([0, 2]));
    assert_eq!(row["stable"], true);
}

#[test]
fn bad_inputs_exit_with_two() {
    let dir = std::env::temp_dir();
    let p = dir.join(format!("toric-cli-bad-{}.json", std::process::id()));
    std::fs::write(
        &p,
        r#"{"schema_version": 1, "ambient_dim": 2, "rays": [[1, 0], [0, 1], [-1, -1]], "max_cones": [[0, 9]]}"#,
    )
    .unwrap();
    let o = toric(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
    assert_eq!(toric(&["classify", "no-such-fan"]).status.code(), Some(2));
    assert_eq!(toric(&["cohomology", "p2", "--twist", "1:2"]).status.code(), Some(2));
    assert_eq!(toric(&["frobnicate"]).status.code(), Some(2));
    std::fs::remove_file(p).ok();
}

#[test]
fn non_primitive_rays_warn() {
    let p = std::env::temp_dir().join(format!("toric-cli-np-{}.json", std::process::id()));
    std::fs::write(
        &p,
        r#"{"schema_version": 1, "ambient_dim": 1, "rays": [[2], [-1]], "max_cones": [[0], [1]]}"#,
    )
    .unwrap();
    let o = toric(&["classify", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("normalized to [1]"));
    std::fs::remove_file(p).ok();
}

#[test]
fn reports_are_deterministic() {
    let a = toric(&["charts", "fixtures/hirzebruch-a.json"]);
    let b = toric(&["charts", "fixtures/hirzebruch-a.json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let t = toric(&["--format", "text", "charts", "hirzebruch-a"]);
    assert!(String::from_utf8_lossy(&t.stdout).contains("verdict: isomorphic"));
}

#[test]
fn fixtures_are_listed() {
    let o = toric(&["fixtures"]);
    let names: Vec<String> = json(&o)["result"]["fixtures"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["name"].as_str().unwrap().to_string())
        .collect();
    for n in ["p2", "p1", "hirzebruch-a", "ex-1.100a", "ex-1.100b", "ex-1.230", "ex-1.400a", "ex-1.400b", "ex-3.290"] {
        assert!(names.iter().any(|x| x == n), "{n}");
    }
}
