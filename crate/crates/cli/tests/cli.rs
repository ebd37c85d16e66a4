use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Stdio};

use serde_json::{json, Value};
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", self.stdout))
    }
}

fn protoshape(args: &[&str], env: &[(&str, &str)], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_protoshape"));
    cmd.args(args).env_remove("PROTOSHAPE_MAX_POINTS").stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().expect("stdin is piped");
    pipe.write_all(stdin.unwrap_or("").as_bytes()).expect("write stdin");
    drop(pipe);
    let out = child.wait_with_output().expect("binary finishes");
    Run { code: out.status.code().expect("exit code"), stdout: String::from_utf8(out.stdout).expect("utf-8") }
}

fn run(args: &[&str]) -> Run {
    protoshape(args, &[], None)
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, contents).expect("write temp file");
    path
}

fn generated(dir: &TempDir, name: &str) -> PathBuf {
    let r = run(&["generate", "--name", name]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    write(dir, &format!("{}.json", name.replace([':', ','], "_")), &r.stdout)
}

fn p(path: &Path) -> &str {
    path.to_str().expect("utf-8 path")
}

fn verdict<'a>(report: &'a Value, name: &str) -> &'a str {
    report["verdicts"]
        .as_array()
        .expect("verdict list")
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name}"))["status"]
        .as_str()
        .expect("status string")
}

fn schema() -> jsonschema::JSONSchema {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/schemas/report.schema.json")).expect("schema file");
    let schema: Value = serde_json::from_str(&text).expect("schema is JSON");
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, doc: &Value) {
    if let Err(errors) = schema.validate(doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("schema violations {msgs:?} in {doc}");
    }
}

const NOT_A_TOPOLOGY: &str = r#"{"format_version": "1", "points": ["a", "b", "c"], "opens": [[], ["a", "b", "c"], ["a"], ["b"]]}"#;

#[test]
fn compare_four_circle() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "4circle");
    let r = run(&["compare", p(&x)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report = r.json();
    let sig = &report["details"]["signatures"];
    assert_eq!(sig["mccord"]["betti"], json!([1, 1, 0]));
    assert_eq!(sig["shape"]["betti"], json!([1, 0, 0]));
    assert_eq!(sig["qsh"]["betti"], json!([1, 1, 0]));
    assert_eq!(verdict(&report, "qsh_equals_mccord"), "pass");
    assert_eq!(verdict(&report, "shape_equals_qsh"), "noted");
    assert_eq!(report["admissibility"], "all-covers");
    assert_eq!(report["max_degree"], 2);
}

#[test]
fn compare_discrete_three() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "discrete:3");
    let report = run(&["compare", p(&x)]).json();
    for name in ["mccord", "shape", "qsh"] {
        assert_eq!(report["details"]["signatures"][name]["betti"], json!([3, 0, 0]), "{name}");
    }
    assert_eq!(verdict(&report, "shape_equals_qsh"), "pass");
}

#[test]
fn hypercheck_cech_four_circle_depth_three() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "4circle");
    let r = run(&["hypercheck", "--kind", "cech", "--depth", "3", p(&x)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report = r.json();
    let levels = report["details"]["levels"].as_array().unwrap();
    assert_eq!(levels.len(), 3);
    for l in levels {
        assert_eq!(l["covering"], true);
        assert_eq!(l["bijective"], true);
        assert_eq!(l["matching_points"], l["piece_points"]);
    }
    assert_eq!(report["details"]["pieces"][0], 4);
}

#[test]
fn hypercheck_mccord_reports_pointwise_witness() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "sierpinski");
    let r = run(&["hypercheck", "--kind", "mccord", p(&x)]);
    assert_eq!(r.code, 1, "{}", r.stdout);
    let report = r.json();
    assert_eq!(report["status"], "verification_failed");
    assert_eq!(verdict(&report, "level_0_covers"), "pass");
    assert_eq!(verdict(&report, "level_1_covering"), "fail");
    let level1 = &report["details"]["levels"][0];
    assert_eq!(level1["matching_points"], 5);
    assert_eq!(level1["piece_points"], 4);
    assert!(level1["uncovered"].is_object());
}

#[test]
fn signature_commands_on_spheres() {
    let dir = TempDir::new().unwrap();
    let s2 = generated(&dir, "sphere:2");
    for cmd in ["mccord", "qsh"] {
        let report = run(&[cmd, p(&s2)]).json();
        assert_eq!(report["details"]["homology"]["betti"], json!([1, 0, 1]), "{cmd}");
    }
    let shape = run(&["shape", p(&s2)]).json();
    assert_eq!(shape["details"]["homology"]["betti"], json!([1, 0, 0]));
    let deeper = run(&["mccord", "--max-degree", "3", p(&s2)]).json();
    assert_eq!(deeper["details"]["homology"]["betti"], json!([1, 0, 1, 0]));
    assert_eq!(deeper["details"]["complex"]["depth"], 4);
}

#[test]
fn nerve_of_a_cover_file() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "4circle");
    let cover = write(&dir, "cover.json", r#"{"format_version": "1", "labels": ["L", "R"], "members": [["a", "b", "c"], ["a", "c", "d"]]}"#);
    let r = run(&["nerve", "--cover", p(&cover), p(&x)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report = r.json();
    assert_eq!(report["details"]["homology"]["betti"], json!([1, 0, 0]));
    assert_eq!(report["details"]["cover"]["labels"], json!(["L", "R"]));
    assert!(report["cover_digest"].as_str().unwrap().starts_with("sha256:"));

    let finest = run(&["nerve", p(&x)]).json();
    assert_eq!(finest["details"]["homology"]["betti"], json!([1, 0, 0]));
    assert!(finest.get("cover_digest").is_none());

    let not_covering = write(&dir, "bad.json", r#"{"format_version": "1", "members": [["a"], ["c"]]}"#);
    let bad = run(&["nerve", "--cover", p(&not_covering), p(&x)]);
    assert_eq!(bad.code, 2);
    assert_eq!(bad.json()["error"]["kind"], "invalid_cover");
}

#[test]
fn analyze_two_components() {
    let doc = r#"{"format_version": "1", "points": ["x", "y", "z"], "preorder": [["x", "y"]]}"#;
    let r = protoshape(&["analyze", "--stdio"], &[], Some(doc));
    assert_eq!(r.code, 0, "{}", r.stdout);
    let report = r.json();
    let d = &report["details"];
    assert_eq!(d["preorder"], json!([["x", "y"]]));
    assert_eq!(d["components"], json!([["x", "y"], ["z"]]));
    assert_eq!(d["open_partitions"], 2);
    assert_eq!(d["partition_maximum"], json!([["x", "y"], ["z"]]));
    assert_eq!(verdict(&report, "partitions_have_maximum"), "pass");
    assert_eq!(verdict(&report, "maximum_is_components"), "pass");
}

#[test]
fn validate_verdicts_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "sierpinski");
    let ok = run(&["validate", p(&x)]);
    assert_eq!(ok.code, 0);
    assert_eq!(ok.json()["details"]["open_sets"], 3);

    let bad = write(&dir, "bad.json", NOT_A_TOPOLOGY);
    let r = run(&["validate", p(&bad)]);
    assert_eq!(r.code, 1, "{}", r.stdout);
    assert_eq!(verdict(&r.json(), "topology"), "fail");

    // the same file is an input error for the analysis commands
    let r = run(&["mccord", p(&bad)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], "invalid_space");
}

#[test]
fn input_errors_exit_two_with_error_object() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("garbage.json", "{not json", "parse"),
        ("version.json", r#"{"format_version": "2", "points": [], "opens": [[]]}"#, "parse"),
        ("two.json", r#"{"format_version": "1", "points": ["a"], "opens": [[], ["a"]], "preorder": []}"#, "parse"),
        ("unknown.json", r#"{"format_version": "1", "points": ["a"], "preorder": [["a", "q"]]}"#, "invalid_space"),
    ];
    for (name, text, kind) in cases {
        let path = write(&dir, name, text);
        let r = run(&["shape", p(&path)]);
        assert_eq!(r.code, 2, "{name}: {}", r.stdout);
        assert_eq!(r.json()["error"]["kind"], kind, "{name}");
    }
    let missing = run(&["qsh", "/nonexistent/space.json"]);
    assert_eq!(missing.code, 2);
    assert_eq!(missing.json()["error"]["kind"], "io");
    let unknown = run(&["generate", "--name", "torus"]);
    assert_eq!(unknown.code, 2);
    assert_eq!(unknown.json()["error"]["kind"], "usage");
}

#[test]
fn point_cap_from_environment() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "discrete:5");
    let capped = protoshape(&["mccord", p(&x)], &[("PROTOSHAPE_MAX_POINTS", "4")], None);
    assert_eq!(capped.code, 2);
    assert_eq!(capped.json()["error"]["kind"], "too_large");
    let fine = protoshape(&["mccord", p(&x)], &[("PROTOSHAPE_MAX_POINTS", "5")], None);
    assert_eq!(fine.code, 0);
    // validate ignores the cap
    let v = protoshape(&["validate", p(&x)], &[("PROTOSHAPE_MAX_POINTS", "1")], None);
    assert_eq!(v.code, 0);
    let junk = protoshape(&["mccord", p(&x)], &[("PROTOSHAPE_MAX_POINTS", "many")], None);
    assert_eq!(junk.code, 2);
    assert_eq!(junk.json()["error"]["kind"], "config");

    let big = generated(&dir, "discrete:13");
    let r = run(&["analyze", p(&big)]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["kind"], "too_large");
}

#[test]
fn stdio_matches_file_input() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "random:7,5");
    let text = std::fs::read_to_string(&x).unwrap();
    let from_file = run(&["compare", p(&x)]);
    let from_stdin = protoshape(&["compare", "--stdio"], &[], Some(&text));
    assert_eq!(from_file.stdout, from_stdin.stdout);
}

#[test]
fn human_summary() {
    let dir = TempDir::new().unwrap();
    let x = generated(&dir, "4circle");
    let r = run(&["compare", "--human", p(&x)]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.starts_with("compare: ok\n"), "{}", r.stdout);
    assert!(r.stdout.contains("[pass] qsh_equals_mccord"));
    assert!(r.stdout.contains("[note] shape_equals_qsh"));
}

fn every_command(dir: &TempDir) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for name in ["4circle", "sierpinski", "sphere:1", "random:3,5"] {
        let x = generated(dir, name);
        let x = p(&x).to_string();
        for cmd in ["validate", "analyze", "mccord", "nerve", "shape", "qsh", "compare"] {
            out.push(vec![cmd.to_string(), x.clone()]);
        }
        for kind in ["cech", "mccord"] {
            out.push(vec!["hypercheck".into(), "--kind".into(), kind.into(), x.clone()]);
        }
    }
    out.push(vec!["generate".into(), "--name".into(), "sphere:2".into()]);
    out.push(vec!["generate".into(), "--name".into(), "nothing".into()]);
    let bad = write(dir, "bad.json", NOT_A_TOPOLOGY);
    out.push(vec!["validate".into(), p(&bad).into()]);
    out.push(vec!["compare".into(), p(&bad).into()]);
    out
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    for args in every_command(&dir) {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = run(&args);
        let second = run(&args);
        assert_eq!(first.stdout, second.stdout, "{args:?}");
        assert_eq!(first.code, second.code, "{args:?}");
    }
}

#[test]
fn every_output_matches_the_schema() {
    let dir = TempDir::new().unwrap();
    let schema = schema();
    for args in every_command(&dir) {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        assert_valid(&schema, &run(&args).json());
    }
    assert!(!schema.is_valid(&json!({ "format_version": "1", "command": "compare" })));
}

#[test]
fn generated_documents_round_trip() {
    let dir = TempDir::new().unwrap();
    for name in ["4circle", "discrete:2", "sierpinski", "sphere:2", "random:11,6"] {
        let x = generated(&dir, name);
        let doc: Value = serde_json::from_str(&std::fs::read_to_string(&x).unwrap()).unwrap();
        assert_eq!(doc["name"], name);
        let v = run(&["validate", p(&x)]).json();
        assert_eq!(v["details"]["min_open"], doc["min_open"], "{name}");
    }
}
