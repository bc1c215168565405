use std::process::{Command, Output};

use nsres::complex::DifferentialMatrix;
use nsres::symbolic::SymbolicMatrix;
use serde_json::Value;

fn nsres(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nsres"))
        .args(args)
        .env("NSRES_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = nsres(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

#[test]
fn apery_json() {
    let v = json(&["apery", "4", "5", "7", "--format", "json"]);
    assert_eq!(v["m"], 4);
    assert_eq!(v["apery"], serde_json::json!([5, 10, 7]));
    assert_eq!(v["med"], false);
    assert_eq!(v["schema"], "nsres/1");
}

#[test]
fn betti_line() {
    assert_eq!(stdout(&["betti", "4", "5", "6", "7", "--steps", "4"]), "1 4 12 36 108\n");
    assert_eq!(
        stdout(&["betti", "4", "5", "7", "--steps", "3", "--method", "oracle", "--field", "fp:32003"]),
        "1 3 6 12\n"
    );
}

#[test]
fn golod_line() {
    assert_eq!(stdout(&["golod", "4", "5", "7", "--steps", "10"]), "Golod through degree 10: true\n");
    assert_eq!(stdout(&["golod", "4", "5", "6", "--steps", "10"]), "Golod through degree 10: false\n");
    let v = json(&["golod", "4", "5", "6", "7", "--steps", "5", "--format", "json"]);
    assert_eq!(v["equal_through"], 5);
    assert_eq!(v["lhs"], v["rhs"]);
}

#[test]
fn exit_codes() {
    assert_eq!(nsres(&["apery", "4", "6"]).status.code(), Some(1));
    assert_eq!(nsres(&["m4", "5", "6", "7"]).status.code(), Some(1));
    assert_eq!(nsres(&["apery"]).status.code(), Some(2));
    assert_eq!(nsres(&["frobnicate", "3"]).status.code(), Some(2));
    assert_eq!(nsres(&["betti", "4", "5", "--field", "fp:10"]).status.code(), Some(2));
    assert_eq!(nsres(&["apery", "4", "5", "--format", "dot"]).status.code(), Some(1));
}

#[test]
fn kunz_outputs() {
    let dot = stdout(&["kunz", "4", "5", "7", "--format", "dot"]);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("1 -> 2;"));
    assert_eq!(stdout(&["same-face", "4,5,7", "4,13,31"]), "true\n");
    assert_eq!(stdout(&["same-face", "4,5,7", "4,5,6"]), "false\n");
    let v = json(&["kunz", "4", "5", "7", "--format", "json"]);
    assert_eq!(v["face"], "{(1,1)}");
}

#[test]
fn ideal_text() {
    let out = stdout(&["ideal", "4", "5", "7"]);
    assert_eq!(out.lines().count(), 6);
    assert!(out.contains("x_1^2 - x_2"));
}

#[test]
fn latex_matrices() {
    let tex = stdout(&["m4", "4", "5", "7", "--steps", "2", "--symbolic", "--format", "latex"]);
    for tok in ["blockarray", "x_1^2", "-y^{b_{12}}", "x_1y^{b_{33}}"] {
        assert!(tex.contains(tok), "{tok}");
    }
    let tex = stdout(&["m4", "4", "9", "--steps", "2", "--symbolic", "--format", "latex"]);
    assert!(tex.contains("x_1^3"));
}

#[test]
fn json_matrices_parse_back() {
    let v = json(&["resolve", "4", "5", "7", "--steps", "2", "--format", "json"]);
    assert_eq!(v["complex"], true);
    let mats: Vec<DifferentialMatrix> = serde_json::from_value(v["differentials"].clone()).unwrap();
    assert_eq!(mats.len(), 2);
    assert_eq!(mats[1].ncols(), 12);
    let v = json(&["resolve", "4", "5", "7", "--steps", "2", "--symbolic", "--format", "json"]);
    let mats: Vec<SymbolicMatrix> = serde_json::from_value(v["differentials"].clone()).unwrap();
    assert_eq!(mats[1], nsres::apery_resolution::symbolic_differential(4, 2).unwrap());
}

#[test]
fn homology_and_graded() {
    let out = stdout(&["homology", "4", "5", "7", "--steps", "2"]);
    assert!(out.starts_with("H_0 (degrees <= 20): 1 in degree 0\n"));
    assert!(out.contains("H_2 (degrees <= 40): 0"));
    let v = json(&["grm", "5", "6", "19", "--format", "json"]);
    assert_eq!(v["generators"].as_array().unwrap().len(), 4);
    let h: Vec<u64> = serde_json::from_value(v["hilbert"].clone()).unwrap();
    assert_eq!(h[..6], [1, 3, 3, 4, 5, 5]);
    assert_eq!(stdout(&["koszul", "4", "5", "6", "7"]), "linear resolution through step 3 and degree 6: true\n");
}

#[test]
fn output_is_deterministic() {
    let args = ["m4", "4", "13", "31", "--steps", "3", "--format", "json"];
    assert_eq!(stdout(&args), stdout(&args));
}
