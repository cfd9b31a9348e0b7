use std::io::Write;
use std::process::{Command, Output, Stdio};

use qfano::FormalBasket;

const CASE1_FILE: &str = "\
# P[-1..-5] = (0, 1, 0, 1, 0)
P[-1] = 0
P[-2] = 1
P[-3] = 0
P[-4] = 1
P[-5] = 0
max_index = 30
require_feasible = true
";

fn qfano(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qfano"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn temp_file(name: &str, text: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("qfano-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn compute_case1_json() {
    let o = qfano(&[
        "compute",
        "--basket",
        "9x(1,2),(1,3),(1,7)",
        "--p1",
        "0",
        "--max-m",
        "12",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["anti_k3"], "1/42");
    assert_eq!(v["cartier_index"], 42);
    assert_eq!(v["mhat0"], 6);
    let profile: Vec<&str> = v["plurigenera"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_str().unwrap())
        .collect();
    assert_eq!(
        profile,
        ["0/1", "1/1", "0/1", "1/1", "0/1", "2/1", "2/1", "4/1", "4/1", "6/1", "6/1", "9/1"]
    );
    assert_eq!(v["feasibility"]["feasible"], true);
}

#[test]
fn compute_projective_space() {
    let o = qfano(&[
        "compute", "--basket", "", "--p1", "35", "--max-m", "2", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["anti_k3"], "64/1");
    assert_eq!(v["plurigenera"], serde_json::json!(["35/1", "165/1"]));
}

#[test]
fn default_max_m_is_one_period() {
    let o = qfano(&[
        "compute",
        "--basket",
        "(1,2),(1,3)",
        "--p1",
        "1",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_m"], 12);
    let o = qfano(&[
        "compute",
        "--basket",
        "9x(1,2),(1,3),(1,7)",
        "--p1",
        "0",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["max_m"], 84);
}

#[test]
fn infeasible_basket_exits_zero_with_flags() {
    let o = qfano(&[
        "compute", "--basket", "(1,2)", "--p1", "0", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["feasibility"]["feasible"], false);
    assert_eq!(v["feasibility"]["k3_positive"], false);
}

#[test]
fn json_basket_round_trips() {
    for (basket, p1) in [
        ("9x(1,2),(1,3),(1,7)", "0"),
        ("(3,7),(2,5),(1,2)", "4"),
        ("", "2"),
        ("(4,9), 2 x (2,5)", "1"),
    ] {
        let o = qfano(&[
            "compute", "--basket", basket, "--p1", p1, "--max-m", "3", "--format", "json",
        ]);
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let emitted = v["basket"].as_str().unwrap();
        let p1: u32 = p1.parse().unwrap();
        assert_eq!(
            FormalBasket::parse(emitted, p1).unwrap(),
            FormalBasket::parse(basket, p1).unwrap()
        );
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        qfano(&["compute", "--basket", "(2,4)", "--p1", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qfano(&["compute", "--basket", "(1,2", "--p1", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qfano(&["compute", "--p1", "0"]).status.code(), Some(2));
    assert_eq!(
        qfano(&["enumerate", "/nonexistent/constraints.txt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qfano(&["bound", "--dim", "4", "--r", "2", "--mhat0", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(qfano(&["verify", "case9"]).status.code(), Some(2));
    let bad = temp_file("bad.txt", "P[-1] = zero\n");
    let o = qfano(&["enumerate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn enumerate_case1_file() {
    let path = temp_file("case1.txt", CASE1_FILE);
    let o = qfano(&["enumerate", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 1);
    assert_eq!(v["baskets"][0]["basket"], "9x(1,2),(1,3),(1,7)");
    assert_eq!(v["baskets"][0]["p1"], 0);
}

#[test]
fn enumerate_count_only_and_empty() {
    let path = temp_file("gorenstein.txt", "P[-1] = 35\nmax_index = 1\np1_max = 40\n");
    let o = qfano(&["enumerate", path.to_str().unwrap(), "--count-only"]);
    assert_eq!(stdout(&o), "1\n");
    let path = temp_file("none.txt", "P[-1] = 0\nP[-2] = 100\nmax_index = 5\n");
    let o = qfano(&["enumerate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "");
}

#[test]
fn enumerate_reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qfano"))
        .args(["enumerate", "-", "--count-only"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(CASE1_FILE.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn thread_variable() {
    let path = temp_file("threads.txt", "sum_bound = 10\np1_max = 3\nP[-2] >= 6\n");
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_qfano"))
            .args(["enumerate", path.to_str().unwrap()])
            .env("QFANO_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let four = run("4");
    assert_eq!(one.status.code(), Some(0));
    assert!(!one.stdout.is_empty());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("0").status.code(), Some(2));
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn bound_examples() {
    let o = qfano(&[
        "bound", "--dim", "3", "--mhat0", "8", "--r", "5", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m_min"], 32);
    assert_eq!(v["theorem"], "Thm3");
    let o = qfano(&["bound", "--standard", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m_min"], 6);
    assert_eq!(v["theorem"], "Standard");
    let o = qfano(&[
        "bound", "--dim", "1", "--r", "3", "--mhat0", "8", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["m_min"], 20);
    assert_eq!(v["reider"], 16);
    let o = qfano(&["bound", "--dim", "2", "--r", "1", "--mhat0", "3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unsupported"));
}

#[test]
fn bound_from_basket() {
    let o = qfano(&[
        "bound",
        "--dim",
        "3",
        "--basket",
        "9x(1,2),(1,3),(1,7)",
        "--p1",
        "0",
        "--genus",
        "zero",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["case"]["mhat0"], 6);
    assert_eq!(v["case"]["r"], 42);
    assert_eq!(v["m_min"], 24);
}

#[test]
fn verify_suites_pass() {
    for suite in ["case1", "theorem8", "standard", "duality"] {
        let o = qfano(&["verify", suite]);
        assert_eq!(o.status.code(), Some(0), "{suite}: {}", stdout(&o));
        assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
    }
    let o = qfano(&["verify", "case1", "--format", "csv"]);
    assert!(stdout(&o).starts_with("check,passed,detail\n"));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let path = temp_file("det.txt", "sum_bound = 12\np1_max = 3\n");
    for args in [
        vec!["enumerate", path.to_str().unwrap()],
        vec![
            "compute",
            "--basket",
            "3x(1,2),(2,5)",
            "--p1",
            "2",
            "--format",
            "json",
        ],
        vec![
            "compute",
            "--basket",
            "(1,4),(1,3)",
            "--p1",
            "1",
            "--format",
            "csv",
        ],
        vec!["bound", "--dim", "2", "--r", "7", "--mhat0", "3"],
    ] {
        let a = qfano(&args);
        let b = qfano(&args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
