//! End-to-end runs of the installed binary: output shapes, determinism,
//! and the exit-code contract.

use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclespace"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclespace"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

#[test]
fn levels_matches_expected_rows() {
    let out = run(&["levels", "--m", "3", "--N", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("S_0\t1\t0"));
    assert!(text.contains("S_1\t4\t1-4"));
    assert!(text.contains("S_2\t4\t5-8"));
    assert!(text.contains("total\t9"));
}

#[test]
fn levels_is_byte_deterministic() {
    let a = run(&["levels", "--m", "5", "--N", "3", "--one-based"]);
    let b = run(&["levels", "--m", "5", "--N", "3", "--one-based"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn unsupported_modulus_exits_2() {
    let out = run(&["levels", "--m", "6", "--N", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn budget_exceeded_exits_3() {
    let out = run_env(&["spectrum", "--m", "5", "--N", "3"], "CYCLESPACE_MAX_VERTICES", "10");
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn verify_passes_on_small_cases() {
    for (m, n) in [("3", "1"), ("4", "4"), ("5", "2")] {
        let out = run(&["verify", "--m", m, "--N", n]);
        assert_eq!(out.status.code(), Some(0), "m={m} N={n}");
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(!text.contains("FAIL"), "m={m} N={n}:\n{text}");
    }
}

#[test]
fn ssl_k_out_of_range_exits_2() {
    let out = run(&["ssl", "--m", "5", "--N", "4", "--K", "99"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ssl_small_run_writes_deterministic_outputs() {
    let dir_a = std::env::temp_dir().join("cyclespace_cli_a");
    let dir_b = std::env::temp_dir().join("cyclespace_cli_b");
    for dir in [&dir_a, &dir_b] {
        let out = run(&[
            "ssl",
            "--m",
            "3",
            "--N",
            "2",
            "--K",
            "1",
            "--emit",
            "fig3,fig5",
            "--format",
            "json",
            "--out",
            dir.to_str().unwrap(),
        ]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    }
    for name in ["report.json", "fig3.txt", "fig5.txt"] {
        let a = std::fs::read(dir_a.join(name)).unwrap();
        let b = std::fs::read(dir_b.join(name)).unwrap();
        assert_eq!(a, b, "{name} differs between identical runs");
    }
}

#[test]
fn ssl_flagship_prints_ten_class_rows() {
    let dir = std::env::temp_dir().join("cyclespace_cli_flagship");
    let out = run(&[
        "ssl", "--m", "5", "--N", "4", "--K", "3", "--one-based",
        "--out", dir.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let class_rows: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("S_{"))
        .collect();
    assert_eq!(class_rows.len(), 10, "{text}");
    assert!(text.contains("S_{0,0}\t1 (6)\t0\t1,9,29,92,93,121"));
    assert!(text.contains("S_{3,0}\t18 (1)\t-1\t63-80"));
    // the report CSV has one row per spectrum entry
    let csv = std::fs::read_to_string(dir.join("report.csv")).unwrap();
    assert_eq!(csv.lines().count(), 122);
}

#[test]
fn spaces_json_to_file() {
    let path = std::env::temp_dir().join("cyclespace_spaces.json");
    let out = run(&["spaces", "--m", "4", "--N", "2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["m"], 4);
    let spaces = doc["spaces"].as_array().unwrap();
    // the (0,0) chain space has dimension 2(N-r)+1 = 5
    assert!(spaces
        .iter()
        .any(|s| s["params"] == "p=0 q=0" && s["v_dim"] == 5));
}

#[test]
fn spectrum_csv_shape() {
    let path = std::env::temp_dir().join("cyclespace_eigencatalog.csv");
    let out = run(&[
        "spectrum",
        "--m",
        "3",
        "--N",
        "2",
        "--one-based",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(Path::new(&path)).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    assert_eq!(lines[0], "index,coords,adjacency_eigenvalue,laplacian_eigenvalue");
    // frequency (0,0) carries adjacency eigenvalue 2N = 4, Laplacian 0
    assert!(lines[1].starts_with("1,0 0,4.00000000000e0,0"));
}
