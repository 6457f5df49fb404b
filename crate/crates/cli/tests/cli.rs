use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn inose(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_inose"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn json(args: &[&str], stdin: &str) -> Value {
    let out = inose(args, stdin);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn good_curve() {
    let v = json(&["analyze-curve"], r#"{"p": 5, "a": 1, "b": 1}"#);
    assert_eq!(v["type"], "I0");
    assert_eq!(v["good"], true);
    assert_eq!(v["semistability_defect"], 1);
}

#[test]
fn additive_curve_and_rational_inputs() {
    let v = json(&["analyze-curve"], r#"{"p": 5, "a": "25", "b": 125}"#);
    assert_eq!(v["type"], "I*0");
    assert_eq!(v["twist_class_needed"], "ramified-quadratic");
    let v = json(&["analyze-curve"], r#"{"p": 7, "a": "1/7", "b": 0.5}"#);
    assert_eq!(v["input"]["a"], "1/7");
    assert_eq!(v["input"]["b"], "1/2");
}

#[test]
fn si_with_full_ramification() {
    let v = json(&["analyze-si"], r#"{"p": 5, "a": 0, "b_m1": 5, "b_0": 0, "b_1": 1}"#);
    assert_eq!(v["f_total"], 6);
    assert_eq!(v["e_kprime"], 2);
    assert_eq!(v["fixed_points"].as_array().unwrap().len(), 8);
    assert_eq!(v["fibers"]["w"], serde_json::json!(["IV*", "IV*"]));
}

#[test]
fn si_from_k3_coefficients() {
    // y^2 = x^3 + t^5 (1 + t^2), i.e. (a, b_m1, b_0, b_1) = (0, 1, 0, 1).
    let b = r#"[0, 0, 0, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0]"#;
    let v = json(
        &["analyze-si"],
        &format!(r#"{{"p": 5, "A": [0, 0, 0, 0, 0, 0, 0, 0, 0], "B": {b}}}"#),
    );
    assert_eq!(v["f_total"], 1);
    assert_eq!(v["potentially_good"], true);
}

#[test]
fn kummer_needs_quadratic() {
    let v = json(&["analyze-kummer"], r#"{"p": 5, "c1": [1, 1], "c2": [25, 125]}"#);
    assert_eq!(v["verdict"], "needs-quadratic");
    let v = json(&["analyze-kummer"], r#"{"p": 5, "c1": [25, 125], "c2": [50, 125]}"#);
    assert_eq!(v["verdict"], "good-after-matched-ramified-quadratic-twist");
}

#[test]
fn bounds_and_config() {
    let v = json(&["bounds"], "");
    assert_eq!(v["torsion_bound_22_3"], "3^484");
    assert_eq!(v["composite_le"], "10^484");
    assert_eq!(v["composite_le_holds"], true);
    let v = json(&["show-config"], "");
    assert_eq!(v["labels"].as_array().unwrap().len(), 24);
    assert_eq!(v["d0"]["kodaira"], "IV*");
    assert_eq!(v["fibration"]["passes"], true);
}

#[test]
fn text_format() {
    let out = inose(&["analyze-curve", "--format", "text"], r#"{"p": 5, "a": 1, "b": 1}"#);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l == "type: I0"));
    assert!(text.lines().any(|l| l == "valuations.discriminant: 0"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str], stdin: &str| inose(args, stdin).status.code();
    assert_eq!(code(&["analyze-curve"], "{"), Some(2));
    assert_eq!(code(&["analyze-curve"], r#"{"p": 5, "a": "x", "b": 1}"#), Some(2));
    assert_eq!(code(&["analyze-curve"], r#"{"p": 5, "a": 0, "b": 0}"#), Some(2));
    assert_eq!(
        code(&["analyze-kummer"], r#"{"p": 5, "c1": [1, 1, 1], "c2": [1, 1]}"#),
        Some(2)
    );
    assert_eq!(
        code(&["analyze-curve", "--input", "/nonexistent/file.json"], ""),
        Some(2)
    );
    assert_eq!(code(&["analyze-curve"], r#"{"p": 3, "a": 1, "b": 1}"#), Some(4));
    assert_eq!(code(&["analyze-curve"], r#"{"p": 4, "a": 1, "b": 1}"#), Some(2));
    let deep = r#"{"p": 5, "a": "1/390625", "b_m1": 1, "b_0": "1/9765625", "b_1": 1}"#;
    assert_eq!(
        code(&["analyze-si", "--precision", "8", "--max-precision", "8"], deep),
        Some(3)
    );
    assert_eq!(code(&["analyze-si"], deep), Some(0));
}

#[test]
fn output_is_deterministic() {
    let input = r#"{"p": 7, "a": -3, "b_m1": 1, "b_0": 2, "b_1": 1}"#;
    let a = inose(&["analyze-si"], input);
    let b = inose(&["analyze-si"], input);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn quick_selftest_passes() {
    let v = json(&["selftest", "--quick", "--seed", "7"], "");
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 9);
}
