use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const ALTERNATING_C4: &str = "ecg 1\n4 4\n0 1 0\n0 3 1\n1 2 1\n2 3 0\n";

fn rainbow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .env("ECG_COLOR", "0")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn solve_alternating_c4() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.ecg", ALTERNATING_C4);
    let o = rainbow(&["solve", s(&f)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("size 1\n"));
}

#[test]
fn solve_with_tiny_budget_is_unknown() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("ecg 1\n8 28\n");
    let mut c = 0;
    for u in 0..8 {
        for v in u + 1..8 {
            text += &format!("{u} {v} {}\n", c % 3);
            c += 1;
        }
    }
    let f = write(&dir, "k8.ecg", &text);
    let o = rainbow(&["solve", s(&f), "--budget", "1"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn verify_with_unmet_size_hypothesis_exits_zero() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.ecg", ALTERNATING_C4);
    let o = rainbow(&["verify", s(&f), "--theorem", "proper", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("theorem=proper m=1 hyp=0 "), "{out}");
    assert!(out.contains("hypotheses unmet"));
}

#[test]
fn verify_rainbow_triangle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "k3.ecg", "ecg 1\n3 3\n0 1 0\n0 2 1\n1 2 2\n");
    let o = rainbow(&["verify", s(&f), "--theorem", "q1", "--m", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("theorem=q1 m=1 hyp=1 concl=1 k=1 max=1\n"));
}

#[test]
fn hunt_exhaustive_small() {
    let o = rainbow(&["hunt", "--mode", "exhaustive", "--n-max", "3", "--colors-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("counterexample=none"));
}

#[test]
fn hunt_plus_one_finds_counterexample_and_writes_it() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("artifacts");
    let o = rainbow(&[
        "hunt",
        "--mode",
        "exhaustive",
        "--n-max",
        "3",
        "--colors-max",
        "3",
        "--plus-one",
        "--out-dir",
        s(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let names: Vec<String> = std::fs::read_dir(&out)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(
        names.iter().any(|n| n.starts_with("cex_") && n.ends_with(".ecg")),
        "{names:?}"
    );
}

#[test]
fn hunt_random_is_reproducible_across_jobs() {
    let args = |jobs: &'static str| {
        rainbow(&[
            "hunt", "--mode", "random", "--trials", "100", "--seed", "5", "--n-max", "8", "--jobs", jobs,
        ])
    };
    let a = args("1");
    let b = args("8");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn check_properties() {
    let dir = TempDir::new().unwrap();
    let tri = write(&dir, "tri.ecg", "ecg 1\n3 3\n0 1 0\n0 2 0\n1 2 1\n");
    assert_eq!(
        rainbow(&["check", s(&tri), "--property", "triangle-free"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        rainbow(&["check", s(&tri), "--property", "c4-free"]).status.code(),
        Some(0)
    );
    assert_eq!(
        rainbow(&["check", s(&tri), "--property", "proper"]).status.code(),
        Some(1)
    );
    assert_eq!(
        rainbow(&["check", s(&tri), "--property", "star-forest"]).status.code(),
        Some(0)
    );
}

#[test]
fn reduce_writes_star_forests() {
    let dir = TempDir::new().unwrap();
    let p4 = write(&dir, "p4.ecg", "ecg 1\n4 3\n0 1 0\n1 2 0\n2 3 0\n");
    let out = dir.path().join("r.ecg");
    let o = rainbow(&["reduce", s(&p4), "-o", s(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "ecg 1\n4 2\n0 1 0\n2 3 0\n");
    assert_eq!(
        rainbow(&["check", s(&out), "--property", "star-forest"]).status.code(),
        Some(0)
    );
}

#[test]
fn greedy_general_reduces_first_and_writes_trace() {
    let dir = TempDir::new().unwrap();
    let p4 = write(&dir, "p4.ecg", "ecg 1\n4 3\n0 1 0\n1 2 0\n2 3 0\n");
    let trace = dir.path().join("t.txt");
    let o = rainbow(&["greedy", s(&p4), "--mode", "general", "--m", "1", "--trace", s(&trace)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("star forests"));
    assert!(stdout(&o).contains("k 1\n"));
    assert!(std::fs::read_to_string(&trace)
        .unwrap()
        .starts_with("peel general m=1 k=1\n"));
}

#[test]
fn gen_is_deterministic() {
    let args = ["gen", "--kind", "proper", "--n", "9", "--p", "0.4", "--seed", "11"];
    let a = rainbow(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, rainbow(&args).stdout);
    assert!(stdout(&a).starts_with("ecg 1\n9 "));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.ecg", "ecg 1\n2 1\n1 0 7\n");
    let o = rainbow(&["solve", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
    assert_eq!(rainbow(&["solve", "/nonexistent/file.ecg"]).status.code(), Some(2));
    assert_eq!(rainbow(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(rainbow(&["solve", s(&bad), "--wat"]).status.code(), Some(2));
    assert_eq!(
        rainbow(&["check", s(&bad), "--property", "planar"]).status.code(),
        Some(2)
    );
}

#[test]
fn color_toggle() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c4.ecg", ALTERNATING_C4);
    let plain = rainbow(&["check", s(&f), "--property", "proper"]);
    assert!(!stdout(&plain).contains('\x1b'));
    let colored = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(["check", s(&f), "--property", "proper"])
        .env("ECG_COLOR", "1")
        .output()
        .unwrap();
    assert!(String::from_utf8_lossy(&colored.stdout).contains("\x1b[32m"));
}
