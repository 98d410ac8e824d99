//! End-to-end runs of the `muposet` binary.

use std::path::Path;
use std::process::{Command, Output};

fn muposet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_muposet"))
        .args(args)
        .env_remove("MUPOSET_CACHE")
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = muposet(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn mu_values() {
    assert_eq!(stdout(&["mu", "2413"]).trim(), "-3");
    assert_eq!(stdout(&["mu", "25314"]).trim(), "4");
    assert_eq!(stdout(&["mu", "--from", "2413", "2413"]).trim(), "1");
    assert_eq!(stdout(&["mu", "--from", "1", "2413"]).trim(), "-3");
    for method in ["recursive", "chains", "auto"] {
        assert_eq!(stdout(&["mu", "--method", method, "3142"]).trim(), "-3", "{method}");
    }
}

#[test]
fn balloons_and_sequence() {
    assert_eq!(stdout(&["balloon", "21"]).trim(), "264315");
    assert_eq!(stdout(&["balloon", "--unwrap", "264315"]).trim(), "21");
    assert_eq!(stdout(&["balloon", "--unwrap", "2413"]).trim(), "not-a-balloon");
    assert_eq!(stdout(&["balloon", "--alpha", "2413", "--at", "2,2", "21"]).trim(), "264315");
    assert_eq!(stdout(&["sequence", "8"]).trim(), "28463517  mu=-6");
}

#[test]
fn reductions_list_fifteen() {
    let text = stdout(&["reductions", "25314"]);
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().all(|l| l.ends_with(" proper") || l.ends_with(" improper")));
}

#[test]
fn theorem_checks_pass() {
    for args in [
        ["verify", "thm5.1", "--max-len", "8"],
        ["verify", "thm4.1", "--max-len", "13"],
        ["verify", "thm6.2", "--max-len", "4"],
    ] {
        let text = stdout(&args);
        assert!(text.contains("verified (theorem)"), "{args:?}\n{text}");
    }
}

#[test]
fn unknown_check_is_a_usage_error() {
    assert_eq!(muposet(&["verify", "thm9.9"]).status.code(), Some(2));
}

#[test]
fn conjecture_report() {
    let text = stdout(&["conjecture", "7.2", "--max-len", "3"]);
    assert!(text.contains("(conjecture)"), "{text}");
}

#[test]
fn sweep_maxima() {
    let text = stdout(&["sweep", "--len", "4"]);
    assert!(text.contains("n=4 max=3 witness=2413"), "{text}");
    let text = stdout(&["sweep", "--len", "5"]);
    assert!(text.contains("n=5 max=6"), "{text}");
    assert!(!text.contains("VIOLATED"));
}

#[test]
fn sweep_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("mu.csv");
    stdout(&["sweep", "--len", "4", "--out", path.to_str().unwrap()]);
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().next(), Some("perm,mu"));
    assert!(text.lines().any(|l| l == "2413,-3"), "{text}");
}

#[test]
fn cache_file_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cache.txt");
    let out = Command::new(env!("CARGO_BIN_EXE_muposet"))
        .args(["mu", "25314"])
        .env("MUPOSET_CACHE", &path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(Path::new(&path).exists());
    assert!(!std::fs::read_to_string(&path).unwrap().is_empty());
    assert_eq!(stdout(&["--cache", path.to_str().unwrap(), "mu", "25314"]).trim(), "4");
}

#[test]
fn exports() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("h.dot");
    stdout(&["export", "hasse", "12", "--dot", dot.to_str().unwrap()]);
    let text = std::fs::read_to_string(&dot).unwrap();
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("->").count(), 1);
    assert!(text.contains("\"1\" -> \"12\""));

    let csv = dir.path().join("p.csv");
    stdout(&["export", "plot", "--sequence", "8", "--csv", csv.to_str().unwrap()]);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "index,value");
    assert_eq!(lines.len(), 9);
    assert_eq!(lines[1], "1,2");
}

#[test]
fn bad_permutation_exits_two() {
    assert_eq!(muposet(&["mu", "2213"]).status.code(), Some(2));
    assert_eq!(muposet(&["balloon", "abc"]).status.code(), Some(2));
    assert_eq!(muposet(&["mu", "--method", "chains", "--from", "1", "21"]).status.code(), Some(2));
}
