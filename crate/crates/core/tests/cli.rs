mod common;

use std::path::Path;
use std::process::{Command, Output};

use common::figure_two_files;
use tempmotif::cli::RunRecord;

fn tempmotif(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tempmotif")).args(args).env_remove("TEMPMOTIF_THREADS").output().expect("binary runs")
}

fn run_args<'a>(cmd: &'a str, edges: &'a Path, colors: &'a Path, rest: &[&'a str]) -> Vec<&'a str> {
    let mut v = vec![cmd, "--graph", edges.to_str().unwrap(), "--colors", colors.to_str().unwrap()];
    v.extend_from_slice(rest);
    v
}

#[test]
fn extract_then_verify_round_trips() {
    let (dir, edges, colors) = figure_two_files();
    let out = tempmotif(&run_args("extract", &edges, &colors, &["--problem", "pathmotif", "--motif", "1,1,2,3", "--format", "json"]));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rec: RunRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec.decision, tempmotif::Decision::Yes);
    let witness = rec.witness.clone().unwrap();
    assert_eq!(witness.len(), 3);
    assert!(rec.timings.total >= 0.0 && rec.timings.sieve >= 0.0);

    let path = dir.path().join("run.json");
    std::fs::write(&path, &out.stdout).unwrap();
    let verify = tempmotif(&run_args("verify", &edges, &colors, &["--problem", "pathmotif", "--motif", "1,1,2,3", "--witness", path.to_str().unwrap()]));
    assert_eq!(verify.status.code(), Some(0), "{}", String::from_utf8_lossy(&verify.stdout));

    // the same path against another motif is rejected
    let wrong = tempmotif(&run_args("verify", &edges, &colors, &["--problem", "pathmotif", "--motif", "1,1,3,4", "--witness", path.to_str().unwrap()]));
    assert_eq!(wrong.status.code(), Some(1));
}

#[test]
fn optimum_reports_raw_timestamps() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("g.edges");
    let colors = dir.path().join("g.colors");
    std::fs::write(&edges, "a b 100\nb c 7000\nc d 250\nb d 9000\n").unwrap();
    std::fs::write(&colors, "a 1\nb 2\nc 3\nd 3\n").unwrap();
    let out = tempmotif(&run_args("optimum", &edges, &colors, &["--problem", "pathmotif", "--motif", "1,2,3", "--format", "json"]));
    assert_eq!(out.status.code(), Some(0));
    let rec: RunRecord = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rec.graph.t, 4);
    assert_eq!(rec.optimum_ts, Some(7000));
    assert_eq!(rec.witness.unwrap(), vec![("a".into(), "b".into(), 100), ("b".into(), "c".into(), 7000)]);
}

#[test]
fn no_exits_one() {
    let (_dir, edges, colors) = figure_two_files();
    let out = tempmotif(&run_args("decide", &edges, &colors, &["--problem", "pathmotif", "--motif", "2,2,3"]));
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(1), "{text}");
    assert!(text.contains("decision: NO"));
}

#[test]
fn usage_errors_name_the_flag() {
    let (_dir, edges, colors) = figure_two_files();
    let cases: [(&[&str], &str); 5] = [
        (&["--problem", "k-temppath", "--k", "0"], "--k"),
        (&["--problem", "pathmotif"], "--motif"),
        (&["--problem", "pathmotif", "--motif", "1,2", "--field-bits", "12"], "--field-bits"),
        (&["--problem", "sd-colorfulpath", "--source", "u9", "--dest", "u2", "--k", "1"], "--source"),
        (&["--problem", "nosuch", "--k", "2"], "--problem"),
    ];
    for (rest, flag) in cases {
        let out = tempmotif(&run_args("decide", &edges, &colors, rest));
        let err = String::from_utf8_lossy(&out.stderr);
        assert_eq!(out.status.code(), Some(2), "{rest:?}: {err}");
        assert!(err.contains(flag), "{rest:?}: {err}");
    }
}

#[test]
fn malformed_input_names_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("bad.edges");
    std::fs::write(&edges, "a b 1\nb c x\n").unwrap();
    let out = tempmotif(&["decide", "--problem", "k-temppath", "--k", "2", "--graph", edges.to_str().unwrap()]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert_eq!(out.status.code(), Some(2));
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn memory_cap_is_a_budget_failure() {
    let (_dir, edges, colors) = figure_two_files();
    let out = tempmotif(&run_args("decide", &edges, &colors, &["--problem", "pathmotif", "--motif", "1,1,2,3", "--memory-cap-words", "10"]));
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn thread_variable_applies_only_without_flag() {
    let (_dir, edges, colors) = figure_two_files();
    let base = run_args("decide", &edges, &colors, &["--problem", "pathmotif", "--motif", "1,1,2,3", "--format", "json"]);
    let bin = env!("CARGO_BIN_EXE_tempmotif");
    let from_env = Command::new(bin).args(&base).env("TEMPMOTIF_THREADS", "3").output().unwrap();
    let rec: RunRecord = serde_json::from_slice(&from_env.stdout).unwrap();
    assert_eq!(rec.config.threads, 3);
    let mut flagged = base.clone();
    flagged.extend(["--threads", "2"]);
    let from_flag = Command::new(bin).args(&flagged).env("TEMPMOTIF_THREADS", "3").output().unwrap();
    let rec2: RunRecord = serde_json::from_slice(&from_flag.stdout).unwrap();
    assert_eq!(rec2.config.threads, 2);
    assert_eq!(rec.checksum, rec2.checksum);
}

#[test]
fn gen_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for name in ["a", "b"] {
        let prefix = dir.path().join(name);
        let out = tempmotif(&[
            "gen", "--family", "powerlaw", "--n", "300", "--d", "6", "--alpha", "-1.5", "--t", "30", "--colors-range", "5",
            "--plant", "2", "--plant-motif", "1,2,3", "--seed", "4", "--out", prefix.to_str().unwrap(),
        ]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        files.push(["edges", "colors", "planted"].map(|ext| std::fs::read(prefix.with_extension(ext)).unwrap()));
    }
    assert_eq!(files[0], files[1]);
    assert!(!files[0][2].is_empty());
}

#[test]
fn gen_rejects_infeasible_degree() {
    let dir = tempfile::tempdir().unwrap();
    let out = tempmotif(&["gen", "--n", "5", "--d", "3", "--t", "4", "--out", dir.path().join("x").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bench_prints_versioned_csv() {
    let out = tempmotif(&["bench", "--suite", "timestamps", "--sizes", "5,10", "--n", "60", "--d", "4", "--k", "3", "--repeats", "1"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(tempmotif::bench::CSV_VERSION));
    assert_eq!(lines.next(), Some(tempmotif::bench::CSV_COLUMNS));
    assert_eq!(lines.count(), 4);
}
