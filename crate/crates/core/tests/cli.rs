//! Runs the `lamlab` binary end to end.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lamlab::io::{read_lam_str, read_survey};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lamlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    fs::read_to_string(p).unwrap()
}

#[test]
fn classify_matches_golden_files() {
    for (t, s, file) in [
        ("0", "1/2", "classify_0_1-2.txt"),
        ("1/12", "7/12", "classify_1-12_7-12.txt"),
        ("0", "1/3", "classify_0_1-3.txt"),
    ] {
        let o = run(&["classify", "--t", t, "--s", s]);
        assert_eq!(o.status.code(), Some(0));
        assert_eq!(stdout(&o), golden(file), "{t},{s}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--t", "0"]).status.code(), Some(1));
    let o = run(&["classify", "--t", "1/0", "--s", "1/2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
    // crossing chords
    assert_eq!(run(&["classify", "--t", "0", "--s", "1/6"]).status.code(), Some(2));
}

#[test]
fn pullback_file_feeds_render_compat_and_intervals() {
    let dir = tempfile::tempdir().unwrap();
    let lam = dir.path().join("k1.lam");
    let lam_s = lam.to_str().unwrap();
    let o = run(&["pullback", "--t", "1/12", "--s", "7/12", "--depth", "2", "--out", lam_s]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&lam).unwrap();
    assert!(text.starts_with("LAM d=3 depth=2 count=26 source=pullback(1/12-5/12,7/12-11/12)\n"));
    assert_eq!(read_lam_str(&text).unwrap().len(), 26);

    let o = run(&["compat", lam_s, "--t", "1/12", "--s", "7/12"]);
    assert_eq!(stdout(&o), "compatible\n");
    let o = run(&["intervals", lam_s]);
    assert_eq!(stdout(&o), "[1/12, 1/12] u [7/12, 7/12]\n");

    let svg = dir.path().join("k1.svg");
    let svg_s = svg.to_str().unwrap();
    assert_eq!(run(&["render", lam_s, "--svg", svg_s]).status.code(), Some(0));
    let first = fs::read_to_string(&svg).unwrap();
    assert_eq!(first.matches("<path").count(), 26);
    run(&["render", lam_s, "--svg", svg_s]);
    assert_eq!(fs::read_to_string(&svg).unwrap(), first);

    fs::write(&lam, "LAM d=3 depth=none count=2 source=x\n0/1-1/2\n1/4-3/4\n").unwrap();
    let o = run(&["render", lam_s, "--svg", svg_s]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));
}

#[test]
fn survey_writes_csv_and_raster() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("s.csv");
    let svg = dir.path().join("s.svg");
    let o = run(&["survey", "--grid", "6", "--out", csv.to_str().unwrap(), "--raster", svg.to_str().unwrap()]);
    assert_eq!(stdout(&o), "grid 6 valid 24 weak 22 strong 2 weak_fraction 11/12\n");
    let rows = read_survey(fs::read_to_string(&csv).unwrap().as_bytes()).unwrap();
    assert_eq!(rows.len(), 24);
    assert_eq!(fs::read_to_string(&svg).unwrap().matches("<rect").count(), 36);
}

#[test]
fn probes_regressions() {
    let o = run(&["friends", "--k1", "1/12,7/12", "--k2", "5/12,11/12", "--depth", "3"]);
    assert_eq!(
        stdout(&o),
        "obstruction at depth 3: 1/4-11/12 crosses leaf 1/324-161/324 of the pullback of 1/12-5/12,7/12-11/12\n"
    );
    let o = run(&["--json", "prime", "--t", "1/12", "--s", "7/12", "--depth", "6"]);
    assert_eq!(stdout(&o), "{\"kind\":\"candidate_regular\",\"depth\":6,\"candidates_tried\":3}\n");
}

#[test]
fn output_is_reproducible() {
    for args in [
        &["orbit", "--angle", "5/26"][..],
        &["--json", "classify", "--t", "1/12", "--s", "7/12"],
        &["gap", "--chord", "0-1/3", "--period", "3"],
        &["prime", "--t", "0", "--s", "1/2", "--depth", "2"],
    ] {
        let a = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(stdout(&a), stdout(&run(args)), "{args:?}");
    }
}
