use std::path::PathBuf;
use std::process::{Command, Output};

use bisurf_core::classify::SurfaceType;
use bisurf_core::fixtures::{expected_hilbert, type_example_gens, RUNNING_EXAMPLE_QUARTIC};
use bisurf_core::XPoly;
use serde_json::Value;

fn write_input(name: &str, body: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn lines_input(name: &str, gens: &[&str]) -> PathBuf {
    write_input(name, &(gens.join("\n") + "\n"))
}

fn bisurf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisurf"))
        .args(args)
        .env_remove("BISURF_WINDOW")
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn report_on_running_example() {
    let path = lines_input("report5a.txt", &type_example_gens(SurfaceType::T5a));
    let out = bisurf(&["report", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["type"], "5a");
    assert_eq!(v["valid"], true);
    assert_eq!(v["basepoint_free"], true);
    let reduced = XPoly::parse(v["implicit"]["reduced"].as_str().unwrap()).unwrap();
    assert!(reduced.is_scalar_multiple_of(&XPoly::parse(RUNNING_EXAMPLE_QUARTIC).unwrap()));
    assert_eq!(v["singular_lines"].as_array().unwrap().len(), 3);
    assert_eq!(v["dual"]["consistent"], true);
    assert_eq!(v["betti"]["2"]["(-2,-2)"], 1);
}

#[test]
fn report_is_deterministic_and_format_independent() {
    let gens = type_example_gens(SurfaceType::T3);
    let text = lines_input("det3.txt", &gens);
    let quoted: Vec<String> = gens.iter().map(|g| format!("\"{g}\"")).collect();
    let json = write_input("det3.json", &format!("{{\"generators\": [{}]}}", quoted.join(", ")));
    let a = bisurf(&["report", text.to_str().unwrap()]);
    let b = bisurf(&["report", text.to_str().unwrap()]);
    let c = bisurf(&["report", json.to_str().unwrap()]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn check_reports_basepoints_but_succeeds() {
    let path = lines_input("bp.txt", &["s^2*u", "s*t*u", "t^2*u", "s*t*v"]);
    let out = bisurf(&["check", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["basepoint_free"], false);
    assert!(v["witness"].is_string());
}

#[test]
fn basepoint_free_only_commands_exit_4() {
    let path = lines_input("bp2.txt", &["s^2*u", "s^2*v", "s*t*u", "s*t*v"]);
    for cmd in ["classify", "implicitize", "report"] {
        let out = bisurf(&[cmd, path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(4), "{cmd}");
    }
}

#[test]
fn parse_errors_exit_2() {
    let path = lines_input("bad.txt", &["s^2*u + u^2*s", "t^2*u", "s^2*v", "t^2*v"]);
    let out = bisurf(&["classify", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bihomogeneous"));
    let syntax = lines_input("bad2.txt", &["s^2*x", "t^2*u", "s^2*v", "t^2*v"]);
    assert_eq!(bisurf(&["check", syntax.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn invalid_ideals_exit_3() {
    let dependent = lines_input("dep.txt", &["s^2*u", "t^2*u", "s^2*u + t^2*u", "t^2*v"]);
    assert_eq!(bisurf(&["check", dependent.to_str().unwrap()]).status.code(), Some(3));
    let wrong = lines_input("wrong.txt", &["s*u", "t^2*u", "s^2*v", "t^2*v"]);
    assert_eq!(bisurf(&["check", wrong.to_str().unwrap()]).status.code(), Some(3));
    let three = lines_input("three.txt", &["s^2*u", "t^2*u", "s^2*v"]);
    assert_eq!(bisurf(&["check", three.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn hilbert_type6() {
    let path = lines_input("h6.txt", &type_example_gens(SurfaceType::T6));
    let out = bisurf(&["hilbert", "--json", "--imax", "5", "--jmax", "4", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    let table: Vec<Vec<usize>> = serde_json::from_value(v).unwrap();
    assert_eq!(table, expected_hilbert(SurfaceType::T6));
}

#[test]
fn tiny_window_is_reported() {
    let path = lines_input("w.txt", &type_example_gens(SurfaceType::T1));
    let out = bisurf(&["betti", "--window", "3,2", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let env = Command::new(env!("CARGO_BIN_EXE_bisurf"))
        .args(["betti", path.to_str().unwrap()])
        .env("BISURF_WINDOW", "3,2")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(1));
    assert_eq!(bisurf(&["betti", path.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn text_commands_run() {
    let path = lines_input("t5b.txt", &type_example_gens(SurfaceType::T5b));
    let p = path.to_str().unwrap();
    let run = |args: &[&str]| {
        let out = bisurf(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        String::from_utf8(out.stdout).unwrap()
    };
    assert!(run(&["classify", p]).contains("type: 5b"));
    assert!(run(&["betti", p]).starts_with("F1: (-2,-1)^4"));
    assert!(run(&["resolve", p]).contains("d1: F1 -> F0"));
    assert!(run(&["implicitize", "--oracle", p]).contains("oracle: agrees"));
    assert_eq!(run(&["singular", p]).lines().count(), 2);
    assert!(run(&["dual", p]).contains("consistent: true"));
}
