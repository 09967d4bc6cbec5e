//! End-to-end checks of the binary: exit codes, artifact round-trips, tamper
//! detection and byte-level determinism.

use std::path::Path;
use std::process::{Command, Output};

fn linfram(args: &[&str], out_dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linfram"))
        .args(args)
        .arg("--out")
        .arg(out_dir)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn density_exact_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(
        &["density", "exact", "--pattern", "[[0],[1],[3]]"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("3/5"));
    assert!(dir.path().join("manifest.json").exists());

    let cert = dir.path().join("density_exact.json");
    let verify = linfram(&["verify", "--certificate", cert.to_str().unwrap()], dir.path());
    assert_eq!(code(&verify), 0, "{verify:?}");
}

#[test]
fn usage_error_is_64() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(&["density", "exact"], dir.path());
    assert_eq!(code(&out), 64);
    let nonsense = linfram(&["frobnicate"], dir.path());
    assert_eq!(code(&nonsense), 64);
}

#[test]
fn malformed_json_is_65() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(&["density", "exact", "--pattern", "not json"], dir.path());
    assert_eq!(code(&out), 65);

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{").unwrap();
    let out = linfram(&["verify", "--certificate", bad.to_str().unwrap()], dir.path());
    assert_eq!(code(&out), 65);
}

#[test]
fn tampered_colouring_fails_verification_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(
        &["colour", "build", "--baton", "1,1", "--m", "3", "--n", "1"],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let path = dir.path().join("colouring.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();

    // Swap in a stricter forbidden space: two points at distance 1 cannot be
    // avoided by this colouring's classes.
    v["forbidden"]["baton"]["gaps"] = serde_json::json!(["1"]);
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let verify = linfram(&["verify", "--certificate", path.to_str().unwrap()], dir.path());
    assert_eq!(code(&verify), 2, "{verify:?}");
}

#[test]
fn tampered_partition_fails_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(
        &[
            "colour",
            "partition",
            "--pattern",
            "[[0],[1],[2],[3],[4],[5]]",
            "--parts",
            "3",
            "--period",
            "6",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let path = dir.path().join("partition.json");
    let mut v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    v["certificate"]["parts"] = serde_json::json!([0, 0, 0, 0, 0, 0]);
    std::fs::write(&path, serde_json::to_string_pretty(&v).unwrap()).unwrap();
    let verify = linfram(&["verify", "--certificate", path.to_str().unwrap()], dir.path());
    assert_eq!(code(&verify), 2, "{verify:?}");
}

#[test]
fn same_seed_gives_byte_identical_artifacts() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for dir in [&a, &b] {
        let out = linfram(
            &[
                "colour", "build", "--baton", "1,1", "--m", "3", "--n", "2", "--seed", "7",
            ],
            dir.path(),
        );
        assert_eq!(code(&out), 0, "{out:?}");
    }
    let fa = std::fs::read(a.path().join("colouring.json")).unwrap();
    let fb = std::fs::read(b.path().join("colouring.json")).unwrap();
    assert_eq!(fa, fb);
}

#[test]
fn geo_find_artifact_replays() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(
        &[
            "geo",
            "find",
            "--n",
            "2",
            "--q",
            "1/16",
            "--len",
            "4",
            "--oracle-kind",
            "random",
            "--seed",
            "3",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let cert = dir.path().join("geo_find.json");
    let verify = linfram(&["verify", "--certificate", cert.to_str().unwrap()], dir.path());
    assert_eq!(code(&verify), 0, "{verify:?}");

    // Corrupt one returned coordinate: replay must fail.
    let json = std::fs::read_to_string(&cert).unwrap();
    let tampered = json.replacen("\"colour\": 0", "\"colour\": 1", 1);
    if tampered != json {
        std::fs::write(&cert, tampered).unwrap();
        let verify = linfram(&["verify", "--certificate", cert.to_str().unwrap()], dir.path());
        assert_eq!(code(&verify), 2, "{verify:?}");
    }
}

#[test]
fn bkm_degenerate_routing() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(&["alpha", "bkm", "--k", "1", "--m", "2", "--n", "3"], dir.path());
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("alpha = 3"));
}

#[test]
fn chi_report_command() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(
        &[
            "chi", "report", "--baton", "1", "--n", "3", "--m-list", "2",
        ],
        dir.path(),
    );
    assert_eq!(code(&out), 0, "{out:?}");
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("8 .. 8"), "{stdout}");
}

#[test]
fn json_flag_echoes_artifact() {
    let dir = tempfile::tempdir().unwrap();
    let out = linfram(
        &["geo", "prefix", "--q", "1/2", "--len", "3", "--json"],
        dir.path(),
    );
    assert_eq!(code(&out), 0);
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("\"kind\": \"geo_prefix\""));
    assert!(stdout.contains("\"7/4\""));
}
