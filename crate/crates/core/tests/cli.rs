use std::process::Command;

use permgrid::cli::run;
use permgrid::grid::BuiltinGrid;
use serde_json::Value;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("permgrid").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn decode_worked_example() {
    let (code, out, _) = call(&["decode", "--grid", "g1", "--word", "bacddb"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "234165");
    let (_, out, _) = call(&["--format", "json", "decode", "--grid", "g1", "--word", "bacddb"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["permutation"], "234165");
}

#[test]
fn decode_from_grid_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g1.txt");
    std::fs::write(&path, BuiltinGrid::G1.spec().to_text()).unwrap();
    let (code, out, _) = call(&["decode", "--grid-file", path.to_str().unwrap(), "--word", "bacddb"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "234165");
}

#[test]
fn gf_text_and_json() {
    let (code, out, _) = call(&["gf", "--name", "f", "--terms", "6"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1 2 6 22 88 363");
    let (_, out, _) = call(&["--format", "json", "gf", "--name", "S", "--terms", "6"]);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.to_string().contains("\"4\":2"), "{v}");
}

#[test]
fn enumerate_csv_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = ["--format", "csv", "enumerate", "--max-len", "6", "--cache-dir", cache];
    let (code, first, _) = call(&args);
    assert_eq!(code, 0);
    assert_eq!(first, "length,count\n1,1\n2,2\n3,6\n4,22\n5,88\n6,363\n");
    assert!(std::fs::read_dir(dir.path()).unwrap().next().is_some());
    let (_, second, _) = call(&args);
    assert_eq!(first, second);
}

#[test]
fn language_counts() {
    let (code, out, _) = call(&["--format", "json", "language", "--name", "L1", "--count-to", "5"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert!(v.to_string().contains("66"), "{v}");
}

#[test]
fn solve_matches_gf() {
    let (_, solved, _) = call(&["solve", "--terms", "8"]);
    let (_, closed, _) = call(&["gf", "--name", "f", "--terms", "8"]);
    assert_eq!(solved, closed);
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(call(&["bogus"]).0, 1);
    assert_eq!(call(&["decode", "--grid", "g4", "--word", "a"]).0, 1);
    let (code, _, err) = call(&["decode", "--grid", "g1", "--word", "bz"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error:"), "{err}");
    assert_eq!(call(&["--jobs", "0", "gf", "--name", "f"]).0, 1);
}

#[test]
fn help_exits_zero() {
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}

#[test]
fn jobs_do_not_change_output() {
    let (_, one, _) = call(&["--jobs", "1", "simples", "--max-len", "7"]);
    let (_, two, _) = call(&["--jobs", "2", "simples", "--max-len", "7"]);
    assert_eq!(one, two);
    assert!(one.contains("2413 3142"));
}

#[test]
fn binary_verify_quick() {
    let output = Command::new(env!("CARGO_BIN_EXE_permgrid"))
        .args(["--format", "json", "verify", "--quick"])
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&output.stdout).unwrap();
    assert_eq!(v["overall_pass"], true);
    assert!(v["checks"].as_array().unwrap().len() >= 12);
}
