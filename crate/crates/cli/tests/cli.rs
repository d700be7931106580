use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;

fn deldec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deldec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn square_lattice_has_one_cell_mod_translation() {
    let dir = tempdir().unwrap();
    let form = write(dir.path(), "identity2.json", "[[1, 0], [0, 1]]");
    let out = deldec(&["del", "--form", &form, "--mod-translation"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let cells = v["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 1);
    assert_eq!(cells[0]["vertices"], serde_json::json!([[0, 0], [0, 1], [1, 0], [1, 1]]));
    assert_eq!(v["form"], serde_json::json!([["1", "0"], ["0", "1"]]));
}

#[test]
fn full_star_and_output_file() {
    let dir = tempdir().unwrap();
    let form = write(dir.path(), "a2.json", r#"[["2", "-1"], ["-1", "2"]]"#);
    let target = dir.path().join("star.json");
    let out = deldec(&["del", "--form", &form, "--output", target.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(v["cells"].as_array().unwrap().len(), 6);
    assert_eq!(v["orbit_reps"].as_array().unwrap().len(), 2);
    let again = deldec(&["del", "--form", &form]);
    assert_eq!(String::from_utf8(again.stdout).unwrap(), fs::read_to_string(&target).unwrap());
}

#[test]
fn verify_dim2_reports_the_fusion() {
    let out = deldec(&["verify", "--suite", "dim2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v[0]["suite"], "dim2");
    assert_eq!(v[0]["pass"], true);
    let details: Vec<&str> = v[0]["details"].as_array().unwrap().iter().map(|d| d.as_str().unwrap()).collect();
    assert!(details.iter().any(|d| d.contains("σ5 = σ1 ∪ σ2")));
}

#[test]
fn verify_all_passes_in_suite_order() {
    let out = deldec(&["verify", "--suite", "all"]);
    assert_eq!(out.status.code(), Some(0));
    let names: Vec<String> = json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["suite"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(names, ["dim2", "dim3", "dim4", "faces", "tables", "theorem"]);
}

#[test]
fn faces_report() {
    let out = deldec(&["faces"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let faces = v.as_array().unwrap();
    assert_eq!(faces.len(), 64);
    let count = |k: &str, x: &str| faces.iter().filter(|f| f[k] == x).count();
    assert_eq!(count("orbit", "BF"), 48);
    assert_eq!(count("orbit", "RT"), 16);
    assert_eq!(count("shape", "triangle"), 32);
    assert_eq!(count("type", "III"), 16);
    assert!(faces.iter().any(|f| f["dropped"] == serde_json::json!([[1, 3, "+"], [1, 4, "+"], [3, 4, "-"]])
        && f["orbit"] == "RT"));
}

#[test]
fn tables_reproduce() {
    for which in ["1", "2"] {
        let out = deldec(&["tables", "--which", which]);
        assert_eq!(out.status.code(), Some(0));
        let v = json(&out);
        assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
        assert_eq!(v["expected"].as_array().unwrap().len(), 24);
    }
    assert_eq!(deldec(&["tables", "--which", "3"]).status.code(), Some(2));
}

#[test]
fn catalog_sample_and_fuse() {
    let list = deldec(&["catalog", "list"]);
    let names = String::from_utf8(list.stdout).unwrap();
    assert!(names.lines().any(|l| l == "dim4.W0"));
    let show = json(&deldec(&["catalog", "show", "dim2.V1"]));
    assert_eq!(show["generators"][2]["label"], "e12");
    assert_eq!(deldec(&["catalog", "show", "dim9.X"]).status.code(), Some(2));

    let s = json(&deldec(&["sample", "--cone", "dim2.V1", "--weights", "1,1/2,3"]));
    assert_eq!(s, serde_json::json!([["4", "-3"], ["-3", "7/2"]]));
    assert_eq!(deldec(&["sample", "--cone", "dim2.V1", "--weights", "1,0,1"]).status.code(), Some(2));

    let f = json(&deldec(&["fuse", "--coarse", "dim4.V1capV2", "--fine", "dim4.V1"]));
    assert_eq!(f["fusions"].as_array().unwrap().len(), 6);
    assert_eq!(f["unchanged"].as_array().unwrap().len(), 12);
    assert_eq!(f["volume_conserved"], true);
    assert_eq!(deldec(&["fuse", "--coarse", "dim4.V1", "--fine", "dim4.V1capV2"]).status.code(), Some(2));
}

#[test]
fn generation_of_cells() {
    let dir = tempdir().unwrap();
    let form = write(dir.path(), "f.json", "[[1, 0], [0, 1]]");
    let cell = write(dir.path(), "c.json", r#"{"vertices": [[0, 0], [1, 0], [0, 1], [1, 1]]}"#);
    let t = json(&deldec(&["gen", "--cell", &cell, "--form", &form]));
    assert_eq!(t["totally_generating"], true);
    assert_eq!(t["nilpotency"], "unknown");
    let pieces = write(
        dir.path(),
        "p.json",
        r#"[{"vertices": [[0, 0], [1, 0], [1, 1]]}, {"vertices": [[0, 0], [0, 1], [1, 1]]}]"#,
    );
    let s = json(&deldec(&["gen", "--cell", &cell, "--form", &form, "--pieces", &pieces]));
    assert_eq!(s["simplicially_generating"], true);
    assert_eq!(s["nilpotency"], "1");

    let not_delaunay = write(dir.path(), "n.json", r#"{"vertices": [[0, 0], [1, 0], [1, 2]]}"#);
    assert_eq!(deldec(&["gen", "--cell", &not_delaunay, "--form", &form]).status.code(), Some(2));
}

#[test]
fn malformed_input_exits_two_with_location() {
    let dir = tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "[[1, 0],\n [0 1]]");
    let out = deldec(&["del", "--form", &bad]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("bad.json") && err.contains("line 2"), "{err}");
    let asym = write(dir.path(), "asym.json", "[[1, 2], [0, 1]]");
    assert_eq!(deldec(&["del", "--form", &asym]).status.code(), Some(2));
    assert_eq!(deldec(&["del", "--form", "/nonexistent.json"]).status.code(), Some(2));
    assert_eq!(deldec(&["del", "--bogus"]).status.code(), Some(2));
}
