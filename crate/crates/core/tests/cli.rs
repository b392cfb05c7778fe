use std::fs;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;
use toric_mirror::cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("toric-mirror").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let (code, out, err) = call(&a);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn scratch(tag: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("toric-mirror-{tag}-{}", std::process::id()));
    let _ = fs::remove_dir_all(&d);
    fs::create_dir_all(&d).unwrap();
    d
}

#[test]
fn betti_square_text() {
    let (code, out, _) = call(&["betti", "--builtin", "square"]);
    assert_eq!(code, 0);
    assert!(out.contains("b = (1, 2, 1)"), "{out}");
    assert!(out.contains("[0, 1]") && out.contains("[1, 0]"), "{out}");
}

#[test]
fn analyze_reports_normals_in_order() {
    let v = json(&["analyze", "--builtin", "square"]);
    let normals: Vec<Value> = v["halfspaces"].as_array().unwrap().iter().map(|h| h["normal"].clone()).collect();
    assert_eq!(serde_json::to_string(&normals).unwrap(), "[[1,0],[0,1],[-1,0],[0,-1]]");
    assert_eq!(v["area"], "4");
}

#[test]
fn symmetries_of_g2() {
    let v = json(&["symmetries", "--builtin", "g2"]);
    assert_eq!(v["reflections"].as_array().unwrap().len(), 6);
    assert_eq!(v["maximal_group"]["order"], 12);
    assert_eq!(v["maximal_group"]["case"], "2-1");
}

#[test]
fn verify_json_is_deterministic() {
    let a = call(&["verify", "--builtin", "g2", "--format", "json"]);
    let b = call(&["verify", "--builtin", "g2", "--format", "json"]);
    assert_eq!(a, b);
    let v: Value = serde_json::from_str(&a.1).unwrap();
    assert_eq!(v["isomorphism"], true);
    assert_eq!(v["case"], "2-1");
    assert_eq!(v["n"], 2);
    assert_eq!(v["pd_shortcut_agrees"], true);
}

#[test]
fn square_axis_coefficient() {
    let v = json(&["verify", "--builtin", "square", "--group", "reflection:1"]);
    assert_eq!(v["case"], "1-1");
    assert_eq!(v["coefficients"]["c"]["E1"]["s"], "2");
}

#[test]
fn rootdemo_every_type() {
    for t in ["A2", "B2", "C2", "G2"] {
        let v = json(&["rootdemo", "--type", t]);
        assert_eq!(v["isomorphism"], true, "{t}");
    }
    let v = json(&["rootdemo", "--type", "G2"]);
    let diff = v["reference_diff"].as_array().unwrap();
    assert_eq!(diff.len(), 24);
    assert!(diff.iter().all(|d| d["match"] == true));
}

#[test]
fn rootdemo_offset_keeps_coefficients() {
    let a = json(&["rootdemo", "--type", "G2"]);
    let b = json(&["rootdemo", "--type", "G2", "--offset", "-6"]);
    assert_eq!(a["coefficients"], b["coefficients"]);
    let (code, _, _) = call(&["rootdemo", "--type", "G2", "--offset", "1"]);
    assert_eq!(code, 2);
}

#[test]
fn input_errors_exit_two() {
    let d = scratch("bad");
    let cases = [
        ("float.json", r#"{"name": "f", "vertices": [[0.5, 0], [0, 1], [-1, -1]]}"#),
        ("concave.json", r#"{"name": "c", "vertices": [[2, 0], [0, 1], [-2, 0], [0, 2]]}"#),
        ("outside.json", r#"{"name": "o", "vertices": [[1, 1], [2, 1], [1, 2]]}"#),
        ("garbage.json", "not json"),
    ];
    for (file, body) in cases {
        let path = d.join(file);
        fs::write(&path, body).unwrap();
        let (code, _, err) = call(&["betti", "--input", path.to_str().unwrap()]);
        assert_eq!(code, 2, "{file}: {err}");
        assert!(err.starts_with("error:"), "{err}");
    }
    let (code, _, _) = call(&["betti", "--builtin", "nope"]);
    assert_eq!(code, 2);
}

#[test]
fn non_symmetry_exit_two() {
    let (code, _, err) = call(&["verify", "--builtin", "asym", "--group", "matrix:1,0,0,-1"]);
    assert_eq!(code, 2);
    assert!(err.contains("not a symmetry"), "{err}");
    let (code, _, _) = call(&["verify", "--builtin", "asym"]);
    assert_eq!(code, 2);
    let (code, _, _) = call(&["verify", "--builtin", "square", "--group", "reflection:9"]);
    assert_eq!(code, 2);
}

#[test]
fn rational_input_and_output_file() {
    let d = scratch("io");
    let input = d.join("kite.json");
    fs::write(
        &input,
        r#"{"name": "kite", "vertices": [["3/2", 0], [0, "5/3"], ["-3/2", 0], [0, "-5/3"]]}"#,
    )
    .unwrap();
    let out = d.join("report.json");
    let (code, stdout, err) = call(&[
        "verify",
        "--input",
        input.to_str().unwrap(),
        "--group",
        "auto",
        "--format",
        "json",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(v["polygon"], "kite");
    assert_eq!(v["isomorphism"], true);
}

#[test]
fn halfspace_input() {
    let d = scratch("hs");
    let input = d.join("hs.json");
    fs::write(
        &input,
        r#"{"name": "p1p1", "halfspaces": [
            {"normal": [1, 0], "offset": -1}, {"normal": [0, 1], "offset": "-1/2"},
            {"normal": [-1, 0], "offset": -1}, {"normal": [0, -1], "offset": "-1/2"}]}"#,
    )
    .unwrap();
    let (code, out, err) = call(&["betti", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("b = (1, 2, 1)"));
}

#[test]
fn batch_directory() {
    let d = scratch("batch");
    for name in ["square", "hexagon"] {
        let p = toric_mirror::builtins::builtin(name).unwrap();
        let v = toric_mirror::geometry::polygon_vertices_json(name, &p);
        fs::write(d.join(format!("{name}.json")), v.to_string()).unwrap();
    }
    fs::write(d.join("notes.txt"), "ignored").unwrap();
    let (code, out, err) = call(&["verify", "--input-dir", d.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code, 0, "{err}");
    let v: Value = serde_json::from_str(&out).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), 2);
    assert!(arr.iter().all(|r| r["isomorphism"] == true));

    fs::write(d.join("zz-broken.json"), "{}").unwrap();
    let (code, out, _) = call(&["verify", "--input-dir", d.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_toric-mirror");
    let ok = Command::new(bin).args(["verify", "--builtin", "hexagon"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("2-2"));
    let bad = Command::new(bin).args(["verify", "--builtin", "asym", "--group", "matrix:0,1,1,0"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    let help = Command::new(bin).arg("--help").output().unwrap();
    assert_eq!(help.status.code(), Some(0));
    for sub in ["analyze", "betti", "symmetries", "verify", "rootdemo"] {
        assert!(String::from_utf8_lossy(&help.stdout).contains(sub), "{sub}");
    }
}
