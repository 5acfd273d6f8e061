use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torusforge"))
        .args(args)
        .env_remove("TORUSFORGE_BOUND_GL")
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn count_both_methods() {
    let out = run(&["count", "--n", "3", "--q", "2", "--algebra", "gl", "--method", "both"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["total"], 64);
    assert_eq!(v["enumerated_total"], 64);
    let sizes: Vec<u64> = v["classes"].as_array().unwrap().iter().map(|c| c["class_size"].as_u64().unwrap()).collect();
    assert_eq!(sizes, vec![8, 28, 28]);
    assert_eq!(v["classes"][0]["type"], serde_json::json!([3]));
    assert_eq!(v["classes"][0]["normalizer"], 21);
}

#[test]
fn count_formula_only_is_exact() {
    let out = run(&["count", "--n", "6", "--q", "9"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("\"total\": 42391158275216203514294433201"));
    assert!(!text.contains("enumerated_total"));
}

#[test]
fn count_sl_in_characteristic_two_is_unsupported() {
    let out = run(&["count", "--n", "2", "--q", "2", "--algebra", "sl"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("characteristic 2"));
}

#[test]
fn bound_exceeded_exit_code() {
    let out = run(&["count", "--n", "2", "--q", "3", "--method", "enumerate", "--bound-gl", "10"]);
    assert_eq!(code(&out), 3);
    let env = Command::new(env!("CARGO_BIN_EXE_torusforge"))
        .args(["classes", "--n", "2", "--q", "3", "--verify"])
        .env("TORUSFORGE_BOUND_GL", "10")
        .output()
        .unwrap();
    assert_eq!(code(&env), 3);
}

#[test]
fn bad_input_exit_code() {
    assert_eq!(code(&run(&["count", "--n", "2", "--q", "6"])), 4);
    assert_eq!(code(&run(&["count", "--n", "2"])), 4);
    assert_eq!(code(&run(&["torus", "build", "--type", "2,0", "--q", "2"])), 4);
    assert_eq!(code(&run(&["verify", "--suite", "nope"])), 4);
    assert_eq!(code(&run(&["torus", "check", "/nonexistent/file.json"])), 4);
}

#[test]
fn classes_rows() {
    let out = run(&["classes", "--n", "2", "--q", "3", "--format", "csv", "--verify"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "type,normalizer,class_size,normalizer_bruteforce\n2,16,3,16\n\"1,1\",8,6,8\n");
    let v = json_of(&run(&["classes", "--n", "4", "--q", "2"]));
    assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    let v = json_of(&run(&["classes", "--n", "1", "--q", "5"]));
    assert_eq!(v["classes"], serde_json::json!([{"type":[1],"normalizer":4,"class_size":1}]));
}

#[test]
fn torus_build_division() {
    let out = run(&["torus", "build", "--type", "2", "--q", "2"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["field"], serde_json::json!({"p":2,"ell":1,"modulus":[0,1]}));
    let rows: Vec<&Value> = v["basis"].as_array().unwrap().iter().map(|m| &m["rows"]).collect();
    assert_eq!(rows, vec![&serde_json::json!([[[1],[0]],[[0],[1]]]), &serde_json::json!([[[0],[1]],[[1],[1]]])]);
    assert_eq!(v["type"], serde_json::json!([2]));
    assert_eq!(v["t3_mode"], "exhaustive");
}

#[test]
fn torus_check_rejects_nilpotent_span() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("nil.json");
    std::fs::write(&path, r#"{"field":{"p":3,"ell":1},"n":2,"basis":[{"rows":[[[0],[1]],[[0],[0]]]}]}"#).unwrap();
    let out = run(&["torus", "check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("T3 violated"));
}

#[test]
fn torus_check_and_canonicalize_conjugated_split_torus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("split.json");
    // U^{-1} D U for U = [[1,1],[0,1]] over GF(3)
    std::fs::write(
        &path,
        r#"{"field":{"p":3,"ell":1},"n":2,"basis":[{"rows":[[[1],[0]],[[0],[1]]]},{"rows":[[[1],[1]],[[0],[0]]]}]}"#,
    )
    .unwrap();
    let out = run(&["torus", "check", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["type"], serde_json::json!([1, 1]));
    assert_eq!(v["maximal"], true);
    assert!(v["canonicalizer"]["rows"].is_array());

    let out = run(&["torus", "canonicalize", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    let canon = json_of(&run(&["torus", "build", "--type", "1,1", "--q", "3"]));
    assert_eq!(v["canonical"]["basis"], canon["basis"]);
}

#[test]
fn verify_suites() {
    let out = run(&["verify", "--suite", "cayley", "--n-max", "8"]);
    assert_eq!(code(&out), 0);
    let v = json_of(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);

    let out = run(&["verify", "--suite", "winter", "--n", "2", "--q", "3", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("9/9 self-centralizing and Cartan"));

    let out = run(&["verify", "--suite", "nilpotent-remark", "--n", "2", "--q", "3", "--format", "text"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().contains("nilpotent count 9, maximal tori 9"));
}

#[test]
fn identical_config_gives_identical_bytes() {
    let args = ["count", "--n", "3", "--q", "3", "--method", "both", "--seed", "5"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["count", "--n", "2", "--q", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["total"], 4);
}
