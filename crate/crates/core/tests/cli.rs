use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_convex-cyclic"));
    cmd.env_remove("CONVEX_CYCLIC_LOG");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn schema_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name)
}

fn assert_valid(schema: &str, text: &str) {
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(schema_path(schema)).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let instance: Value = serde_json::from_str(text).expect("output is JSON");
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{schema}: {errors:?}\n{text}");
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

const DIAG_NEG: &str = r#"{"field":"real","rows":[[-2,0],[0,-3]]}"#;

#[test]
fn analyze_diagonal_negative_real() {
    let out = run(&["analyze", "--input", DIAG_NEG]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_valid("verdict.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["is_convex_cyclic"], Value::Bool(true));
}

#[test]
fn analyze_canonical_form_input() {
    let form = r#"{"blocks":[{"type":"diag","value":[0,2]},{"type":"diag","value":[0,-2]}]}"#;
    let out = run(&["analyze", "--input", form]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_valid("verdict.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["is_convex_cyclic"], Value::Bool(false));
    assert_eq!(v["failed_conditions"][0]["code"], "ConjugatePair");
}

#[test]
fn analyze_reads_files_and_writes_output() {
    let dir = std::env::temp_dir().join(format!("convex-cyclic-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("m.json");
    let output = dir.join("verdict.json");
    std::fs::write(&input, DIAG_NEG).unwrap();
    let out = run(&["analyze", "--input", input.to_str().unwrap(), "--output", output.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_valid("verdict.schema.json", &std::fs::read_to_string(&output).unwrap());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn analyze_reads_stdin() {
    use std::io::Write;
    let mut child = bin()
        .arg("analyze")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(DIAG_NEG.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_valid("verdict.schema.json", &stdout(&out));
}

#[test]
fn interpolate_value_at_minus_two() {
    let problem = r#"{"real_nodes":[{"x":-2.0,"targets":[7.0]}],"complex_nodes":[]}"#;
    assert_valid("interpolation_problem.schema.json", problem);
    let out = run(&["interpolate", "--input", problem]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_valid("interpolation_certificate.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "Feasible");
    let coeffs: Vec<f64> = serde_json::from_value(v["polynomial"]["coeffs"].clone()).unwrap();
    let value: f64 = coeffs.iter().rev().fold(0.0, |acc, c| acc * -2.0 + c);
    assert!((value - 7.0).abs() <= 1e-8);
}

#[test]
fn interpolate_documented_problem_shape() {
    let problem = r#"{"real_nodes":[{"x":-2.0,"targets":[7.0]}],"complex_nodes":[{"z":[0,2],"targets":[[3,1],[0,0]]}],"max_degree":200,"residual_tol":1e-8}"#;
    assert_valid("interpolation_problem.schema.json", problem);
    let out = run(&["interpolate", "--input", problem]);
    let text = stdout(&out);
    assert_valid("interpolation_certificate.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "Feasible", "{text}");
}

#[test]
fn interpolate_disk_node_is_infeasible_necessary() {
    let problem = r#"{"real_nodes":[],"complex_nodes":[{"z":[0.5,0.1],"targets":[[5,0]]}]}"#;
    let out = run(&["interpolate", "--input", problem]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_valid("interpolation_certificate.schema.json", &text);
    assert!(text.contains("InfeasibleNecessary"));
}

#[test]
fn interpolate_cap_exits_three() {
    let problem = r#"{"real_nodes":[{"x":-1.2,"targets":[-7.0,3.0,9.0]}],"complex_nodes":[]}"#;
    let out = run(&["interpolate", "--max-degree", "3", "--input", problem]);
    assert_eq!(out.status.code(), Some(3));
    let text = stdout(&out);
    assert_valid("interpolation_certificate.schema.json", &text);
    assert!(text.contains("InfeasibleAtCap"));
}

#[test]
fn interpolate_invalid_problem_exits_two() {
    let problem = r#"{"real_nodes":[],"complex_nodes":[]}"#;
    let out = run(&["interpolate", "--input", problem]);
    assert_eq!(out.status.code(), Some(2));
    assert_valid("error.schema.json", stderr(&out).trim());
}

#[test]
fn peak_certificate_and_precondition() {
    let out = run(&["peak", "--input", r#"{"nodes":[[2,0],[0,1.5],[-1,1]]}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_valid("peaking_certificate.schema.json", &stdout(&out));

    let out = run(&["peak", "--input", r#"{"nodes":[[0.5,0]]}"#]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert_valid("error.schema.json", err.trim());
    assert!(err.contains("PreconditionViolated"));
}

#[test]
fn orbit_csv() {
    let input = r#"{"matrix":{"field":"complex","rows":[[[0,2],[0,0]],[[0,0],[0,-2]]]},"start":[1,1]}"#;
    let out = run(&["orbit", "--horizon", "3", "--input", input]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "n,re0,im0,re1,im1");
    let last: Vec<f64> = lines[4].split(',').skip(1).map(|v| v.parse().unwrap()).collect();
    assert_eq!(last, vec![0.0, -8.0, 0.0, 8.0]);
}

#[test]
fn density_report() {
    let input = format!(r#"{{"matrix":{DIAG_NEG},"start":[1,1],"functionals":5}}"#);
    let out = run(&["density", "--seed", "3", "--input", &input]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert_valid("density_report.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["coverage"]["fraction"].as_f64(), Some(1.0));
    assert_eq!(v["growth"]["witnessed"].as_u64(), Some(5));
}

#[test]
fn selftest_report_subset() {
    let out = run(&["selftest", "--only", "3,5"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_valid("selftest_report.schema.json", &text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn malformed_json_exits_one() {
    let out = run(&["analyze", "--input", "{not json"]);
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert_valid("error.schema.json", err.trim());
    assert!(err.contains("ParseError"));
}

#[test]
fn missing_file_and_bad_flag_exit_one() {
    let out = run(&["analyze", "--input", "/nonexistent/matrix.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("IoError"));
    assert_eq!(run(&["analyze", "--no-such-flag"]).status.code(), Some(1));
}

#[test]
fn help_documents_flags_and_environment() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    for flag in ["--input", "--output", "--seed", "--tol", "--max-degree", "--horizon", "--threshold", "--budget", "CONVEX_CYCLIC_LOG"] {
        assert!(text.contains(flag), "help lacks {flag}");
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let input = format!(r#"{{"matrix":{DIAG_NEG},"start":[1,1],"functionals":4}}"#);
    let a = run(&["density", "--seed", "11", "--input", &input]);
    let b = run(&["density", "--seed", "11", "--input", &input]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["density", "--seed", "12", "--input", &input]);
    assert_eq!(c.status.code(), Some(0));
}
