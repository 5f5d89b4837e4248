// Copyright 2026 The icgate Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::Command;

fn run(args: &[&str]) {
    let o = Command::new(env!("CARGO_BIN_EXE_icgate")).args(args).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

fn data_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out: Vec<(String, Vec<u8>)> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "manifest.json")
        .map(|p| (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap()))
        .collect();
    out.sort();
    out
}

fn assert_replay_identical(args: &[&str]) {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first");
    let second = dir.path().join("second");
    let mut full = vec!["--out", first.to_str().unwrap()];
    full.extend_from_slice(args);
    run(&full);
    let manifest = first.join("manifest.json");
    run(&["--out", second.to_str().unwrap(), "replay", manifest.to_str().unwrap()]);
    let a = data_files(&first);
    assert!(!a.is_empty());
    assert_eq!(a, data_files(&second), "{args:?}");
}

#[test]
fn optimize_replays_byte_identically() {
    assert_replay_identical(&[
        "optimize",
        "--carbons",
        "1",
        "--target",
        "hadamard",
        "--seed",
        "9",
        "--generations",
        "4",
        "--population",
        "16",
    ]);
}

#[test]
fn optimize_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let out = dir.path().join(threads);
        let o = Command::new(env!("CARGO_BIN_EXE_icgate"))
            .env("PULSE_THREADS", threads)
            .args(["--out", out.to_str().unwrap(), "optimize", "--carbons", "1", "--target", "cnot"])
            .args(["--seed", "4", "--generations", "3", "--population", "20"])
            .output()
            .unwrap();
        assert!(o.status.success());
        outputs.push(data_files(&out));
    }
    assert_eq!(outputs[0], outputs[1]);
}

#[test]
fn scans_and_reports_replay_byte_identically() {
    assert_replay_identical(&[
        "scan",
        "hadamard",
        "--carbons",
        "1",
        "--sequence",
        "ref-hadamard",
        "--cleanup",
        "simulated",
    ]);
    assert_replay_identical(&["scan", "fid", "--carbons", "1", "--state", "flipped"]);
    assert_replay_identical(&["scan", "spectrum", "--manifold", "plus", "--carbons", "1"]);
    assert_replay_identical(&["scan", "theta", "--carbons", "1", "--gate", "ref-cnot"]);
    assert_replay_identical(&["scan", "trajectory", "--carbons", "1", "--sequence", "ref-cnot"]);
    assert_replay_identical(&["verify", "--sequence", "ccrot-n6-a", "--target", "ccrot:1:180"]);
    assert_replay_identical(&["report"]);
}
