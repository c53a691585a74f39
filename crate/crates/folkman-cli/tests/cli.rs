//! End-to-end tests of the command-line surface and its exit codes.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_folkman"))
}

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

#[test]
fn props_reports_graph_invariants() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("graphs.g6");
    // K2 and the 5-cycle
    fs::write(&file, "A_\nDhc\n").unwrap();
    let out = bin().arg("props").arg(&file).output().unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("n=2 e=1 omega=2 alpha=1 chi=2"), "{text}");
    assert!(text.contains("n=5 e=5 omega=2 alpha=2 chi=3"), "{text}");
}

#[test]
fn arrow_prints_witness_colorings() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k2.g6");
    fs::write(&file, "A_\n").unwrap();
    let out = bin()
        .args(["arrow"])
        .arg(&file)
        .args(["--tuple", "2,2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("false witness="), "{text}");

    let out = bin()
        .args(["arrow"])
        .arg(&file)
        .args(["--uni", "2,6"])
        .output()
        .unwrap();
    assert!(stdout_of(&out).contains("true"));
}

#[test]
fn brute_finds_the_pentagon() {
    let out = bin()
        .args(["brute", "--tuple", "2,2", "--q", "3", "--nmax", "7"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = stdout_of(&out);
    assert!(text.contains("value=5 extremal=1"), "{text}");
    assert!(text.contains("Dhc"), "{text}"); // canonical form of C5
}

#[test]
fn base_extend_closure_compose_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let seeds = dir.path().join("seeds.g6");
    let maximal = dir.path().join("maximal.g6");
    let plus = dir.path().join("plus.g6");

    let out = bin()
        .args(["base", "--m", "3", "--p", "6", "--q", "7", "--n", "6", "--plus-t", "6", "--out"])
        .arg(&seeds)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&seeds).unwrap().lines().count(), 2);

    let out = bin()
        .args(["extend", "--in"])
        .arg(&seeds)
        .args(["--k", "2", "--m", "4", "--p", "6", "--q", "7", "--out"])
        .arg(&maximal)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&maximal).unwrap().lines().count(), 2);

    let out = bin()
        .args(["closure", "--in"])
        .arg(&maximal)
        .args(["--m", "4", "--p", "6", "--q", "7", "--plus-t", "6", "--out"])
        .arg(&plus)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(fs::read_to_string(&plus).unwrap().lines().count(), 13);

    let out = bin()
        .args(["subsets"])
        .arg(&seeds)
        .args(["--t", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());

    let out = bin()
        .args(["plus-kt"])
        .arg(&plus)
        .args(["--t", "6"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(!stdout_of(&out).contains("false"));
}

#[test]
fn run_verify_and_report_agree_on_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("run");
    let out = bin()
        .args(["run", "--schedule"])
        .arg(repo_path("schedules/wfv-8-6-7.cfg"))
        .args(["--until", "wHn(4)(6)(7)(8)", "--out-dir"])
        .arg(&out_dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let manifest = out_dir.join("manifest.txt");
    let out = bin()
        .args(["verify", "--manifest"])
        .arg(&manifest)
        .arg("--expected")
        .arg(repo_path("expected/wfv-8-6-7.counts"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("0 failed"));

    // a corrupted expectation makes verify exit nonzero
    let bad = dir.path().join("bad.counts");
    fs::write(&bad, "wHn(4)(6)(7)(8), any, 3, 13\n").unwrap();
    let out = bin()
        .args(["verify", "--manifest"])
        .arg(&manifest)
        .arg("--expected")
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout_of(&out).contains("FAIL"));

    let out = bin()
        .args(["report", "--manifests"])
        .arg(&manifest)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(stdout_of(&out).contains("INCOMPLETE"));
}

#[test]
fn lift_verifies_the_join() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c5.g6");
    fs::write(&file, "Dhc\n").unwrap();
    let out = bin()
        .args(["lift"])
        .arg(&file)
        .args(["--t", "1", "--m", "3", "--p", "2", "--q", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());

    // C5 is not in H~(4|2; 4), so the lift must refuse
    let out = bin()
        .args(["lift"])
        .arg(&file)
        .args(["--t", "1", "--m", "4", "--p", "2", "--q", "4"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_2() {
    let out = bin().args(["arrow", "nofile.g6"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1)); // runtime error: missing tuple selector

    let out = bin().args(["no-such-command"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));

    let out = bin().args(["brute", "--tuple", "2,2"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2)); // missing required args
}
