use std::{fs, path::Path, process::Command};

use serde_json::Value;
use tempfile::TempDir;

const K3: &str = r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"], ["a", "c"]]}"#;
const P3: &str = r#"{"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}"#;

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

/// Exit status and stdout.
fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_gammacx")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap())
}

#[test]
fn census_on_k3_and_p3() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.json", K3);
    let (code, v) = json(&["census", "--graph", &k3]);
    assert_eq!(code, 0);
    let r = &v["result"][0];
    assert_eq!((r["collections"].as_u64(), r["complexes"].as_u64()), (Some(1), Some(1)));
    assert_eq!(r["euler"], serde_json::json!([0]));
    let p3 = write(&dir, "p3.json", P3);
    let (code, v) = json(&["census", "--graph", &p3]);
    assert_eq!(code, 0);
    assert_eq!(v["result"][0]["collections"].as_u64(), Some(3));
}

#[test]
fn input_errors_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        r#"{"vertices": ["a", "b"], "edges": [["a", "b", "c"]]}"#,
        r#"{"vertices": ["a", "b"], "edges": [["a", "x"]]}"#,
        r#"{"vertices": ["a", "b"], "edges": [["a", "a"]]}"#,
        r#"{"vertices": ["a", "b"], "edges": "a-b"}"#,
        "not json",
    ];
    for (i, text) in cases.iter().enumerate() {
        let g = write(&dir, &format!("g{i}.json"), text);
        assert_eq!(run(&["graph-info", "--graph", &g]).0, 2, "{text}");
    }
    let p3 = write(&dir, "p3.json", P3);
    assert_eq!(run(&["blowup-build", "--graph", &p3, "--collection", "9"]).0, 2);
    assert_eq!(run(&["blowup-build", "--graph", &p3, "--collection", "a | a^-1 b c"]).0, 2);
    assert_eq!(run(&["metric-straighten", "--graph", &p3, "--t", "1.5"]).0, 2);
    assert_eq!(run(&["graph-info"]).0, 2);
    assert_eq!(run(&["graph-info", "--graph", "/nonexistent/graph.json"]).0, 2);
}

#[test]
fn blowup_build_and_dot() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.json", P3);
    let (code, v) = json(&["blowup-build", "--graph", &p3, "--collection", "a c | a^-1 c^-1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["f_vector"], serde_json::json!([2, 5, 3]));
    assert_eq!(v["result"]["betti"], serde_json::json!([1, 3, 2]));
    let (code, dot) = run(&["blowup-build", "--graph", &p3, "--collection", "1", "--format", "dot"]);
    assert_eq!(code, 0);
    assert!(dot.starts_with("digraph blowup {"));
    assert_eq!(dot.matches("->").count(), 5);
}

#[test]
fn verification_commands_pass_on_p3() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.json", P3);
    for cmd in ["blowup-verify", "tori-verify", "audit"] {
        let (code, v) = json(&[cmd, "--graph", &p3]);
        assert_eq!(code, 0, "{cmd}");
        assert_eq!(v["passed"], Value::Bool(true));
    }
    let (_, v) = json(&["audit", "--graph", &p3, "--collection", "a c | a^-1 c^-1"]);
    let central = &v["result"][0]["central_decomposition"];
    assert_eq!(central["complement_f_vector"], serde_json::json!([2, 3]));
    assert_eq!(central["center"], serde_json::json!(["b"]));
}

#[test]
fn structures_round_trip_and_defects_exit_with_one() {
    let dir = TempDir::new().unwrap();
    let f3 = write(&dir, "f3.json", r#"{"vertices": ["a", "b", "w"], "edges": [["a", "b"]]}"#);
    let sel = "b w | b^-1 w^-1";
    let (code, v) = json(&["metric-random", "--graph", &f3, "--collection", sel, "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["rectilinear"], Value::Bool(false));
    let mut structure = v["result"]["structure"].clone();
    let s = write(&dir, "s.json", &structure.to_string());
    assert_eq!(run(&["metric-validate", "--graph", &f3, "--collection", sel, "--structure", &s]).0, 0);
    let (code, v) = json(&["metric-straighten", "--graph", &f3, "--collection", sel, "--structure", &s]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["steps"].as_array().unwrap().len(), 5);
    assert_eq!(v["result"]["steps"][4]["rectilinear"], Value::Bool(true));

    // shear the P0-a square differently from the b-a square
    for cube in structure["cubes"].as_array_mut().unwrap() {
        if cube["labels"][0] == "P0" {
            let u = cube["shear"][0][0].as_f64().unwrap();
            cube["shear"][0][0] = Value::from(u + 0.1);
        }
    }
    let bad = write(&dir, "bad.json", &structure.to_string());
    let (code, v) = json(&["metric-validate", "--graph", &f3, "--collection", sel, "--structure", &bad]);
    assert_eq!(code, 1);
    let codes: Vec<&str> = v["result"]["defects"].as_array().unwrap().iter().map(|d| d["check"].as_str().unwrap()).collect();
    assert!(codes.contains(&"angle_condition"), "{codes:?}");
    assert_eq!(run(&["metric-straighten", "--graph", &f3, "--collection", sel, "--structure", &bad]).0, 1);
}

#[test]
fn out_flag_writes_the_report_and_prints_a_summary() {
    let dir = TempDir::new().unwrap();
    let k3 = write(&dir, "k3.json", K3);
    let out = dir.path().join("report.json");
    let (code, stdout) = run(&["census", "--graph", &k3, "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.starts_with("census PASS"));
    let v: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["config"]["seed"].as_u64(), Some(0));
    assert!(v["config"]["order"].is_string());
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.json", P3);
    for args in [
        vec!["census", "--graph", p3.as_str()],
        vec!["metric-random", "--graph", p3.as_str(), "--collection", "1", "--seed", "42"],
        vec!["audit", "--graph", p3.as_str()],
    ] {
        let a = run(&args).1;
        let b = run(&args).1;
        assert_eq!(a, b);
        assert!(Path::new(&p3).exists());
    }
}
