//! End-to-end runs of the bundled schedules at default (non-extended)
//! scale, checked against the bundled expected counts.

use std::path::{Path, PathBuf};

use folkman_core::pipeline::{
    parse_expected, run_schedule, verify_tables, RunOptions, Schedule,
};

fn repo_path(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..").join(rel)
}

fn load_schedule(name: &str) -> Schedule {
    let text = std::fs::read_to_string(repo_path(&format!("schedules/{name}.cfg"))).unwrap();
    Schedule::parse(&text).unwrap()
}

fn counts_of(manifest: &folkman_core::pipeline::Manifest, id: &str) -> usize {
    manifest.record(id).unwrap_or_else(|| panic!("stage {id} missing")).output_count
}

#[test]
fn bundled_schedules_parse() {
    for name in ["wfv-8-6-7", "wfv-9-6-8", "wfv-10-6-9", "wfv-11-6-10"] {
        let s = load_schedule(name);
        assert_eq!(s.name, name);
        assert_eq!(s.stages.len(), 22);
    }
}

#[test]
fn default_run_reproduces_the_early_counts() {
    let schedule = load_schedule("wfv-8-6-7");
    let dir = tempfile::tempdir().unwrap();
    let opts = RunOptions::new(dir.path());
    let manifest = run_schedule(&schedule, &opts).unwrap();

    assert_eq!(counts_of(&manifest, "a0-base"), 2);
    assert_eq!(counts_of(&manifest, "a1-max"), 2);
    assert_eq!(counts_of(&manifest, "a1-plus"), 13);
    assert_eq!(counts_of(&manifest, "a2-max"), 8);
    assert_eq!(counts_of(&manifest, "a2-plus"), 324);
    assert_eq!(counts_of(&manifest, "b0-base"), 1);
    assert_eq!(counts_of(&manifest, "b1-max"), 1);
    assert_eq!(counts_of(&manifest, "b1-plus"), 3);
    assert_eq!(counts_of(&manifest, "b2-max"), 2);
    assert_eq!(counts_of(&manifest, "b2-plus"), 22);
    assert_eq!(counts_of(&manifest, "b3-max"), 5);
    assert_eq!(counts_of(&manifest, "b3-plus"), 468);

    // extended stages were skipped
    assert!(manifest.record("a3-max").is_none());
    assert_eq!(manifest.records.len(), 12);

    // and the bundled table agrees on every run row
    let rows = parse_expected(
        &std::fs::read_to_string(repo_path("expected/wfv-8-6-7.counts")).unwrap(),
    )
    .unwrap();
    let report = verify_tables(&manifest, &rows);
    assert!(!report.failed(), "{}", report.render());
    assert_eq!(report.rows.iter().filter(|r| r.complete()).count(), 7);
}

#[test]
fn until_label_truncates_after_its_class() {
    let schedule = load_schedule("wfv-8-6-7");
    let dir = tempfile::tempdir().unwrap();
    let mut opts = RunOptions::new(dir.path());
    opts.until_label = Some("wHn(5)(6)(7)(10)".to_string());
    let manifest = run_schedule(&schedule, &opts).unwrap();
    assert_eq!(manifest.records.len(), 5);
    assert_eq!(counts_of(&manifest, "a2-plus"), 324);
    assert!(manifest.record("b0-base").is_none());
}

#[test]
fn resumed_runs_reuse_matching_stages() {
    let schedule = load_schedule("wfv-8-6-7");
    let dir = tempfile::tempdir().unwrap();
    let mut opts = RunOptions::new(dir.path());
    opts.until_label = Some("wHn(4)(6)(7)(8)".to_string());
    let first = run_schedule(&schedule, &opts).unwrap();

    opts.resume = true;
    let second = run_schedule(&schedule, &opts).unwrap();
    assert_eq!(first.records.len(), second.records.len());
    for (a, b) in first.records.iter().zip(&second.records) {
        assert_eq!(a.sha256, b.sha256);
        assert_eq!(a.wall_ms, b.wall_ms, "stage {} was recomputed", a.id);
    }

    // a corrupted stage file forces recomputation, restoring its contents
    let target = dir.path().join(&first.records[0].file);
    std::fs::write(&target, b"@\n").unwrap();
    let third = run_schedule(&schedule, &opts).unwrap();
    assert_eq!(third.records[0].sha256, first.records[0].sha256);
    assert_eq!(
        folkman_core::pipeline::sha256_file(&target).unwrap(),
        first.records[0].sha256
    );
}

#[test]
fn stage_files_have_identical_checksums_across_runs() {
    let schedule = load_schedule("wfv-8-6-7");
    let mut shas: Vec<Vec<String>> = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().unwrap();
        let mut opts = RunOptions::new(dir.path());
        opts.until_label = Some("wHn(5)(6)(7)(10)".to_string());
        let manifest = run_schedule(&schedule, &opts).unwrap();
        shas.push(manifest.records.iter().map(|r| r.sha256.clone()).collect());
    }
    assert_eq!(shas[0], shas[1]);
}
