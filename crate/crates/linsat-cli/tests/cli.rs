//! End-to-end checks of the `linsat` binary: subcommand behavior, formats,
//! determinism, and exit codes.

use std::path::Path;
use std::process::{Command, Output};

fn linsat(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linsat"))
        .args(args)
        .current_dir(dir)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn generate_is_deterministic_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["generate", "--q", "5", "--n", "4", "--m", "6", "--r", "2", "--seed", "9"];
    let a = linsat(&args, dir.path());
    let b = linsat(&args, dir.path());
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("linsat 5 4 6\n"));
}

#[test]
fn generate_accepts_manifest_with_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("gen.txt"),
        "q = 3\nn = 3\nm = 4\nr = 1\nseed = 2\nkind = random\n",
    )
    .unwrap();
    let from_manifest = linsat(&["generate", "--config", "gen.txt"], dir.path());
    assert!(from_manifest.status.success());
    assert!(stdout(&from_manifest).starts_with("linsat 3 3 4\n"));

    let overridden = linsat(&["generate", "--config", "gen.txt", "--m", "6"], dir.path());
    assert!(stdout(&overridden).starts_with("linsat 3 3 6\n"));
}

#[test]
fn planted_instance_solves_to_full_satisfaction() {
    let dir = tempfile::tempdir().unwrap();
    let gen = linsat(
        &[
            "generate", "--q", "4", "--n", "4", "--m", "8", "--r", "2", "--seed", "3",
            "--kind", "planted", "-o", "inst.linsat", "--assignment-out", "x.txt",
        ],
        dir.path(),
    );
    assert!(gen.status.success());
    // the instance file carries the planted assignment as a comment
    let text = std::fs::read_to_string(dir.path().join("inst.linsat")).unwrap();
    assert!(text.starts_with("# planted assignment: "));
    let x = std::fs::read_to_string(dir.path().join("x.txt")).unwrap();
    assert_eq!(x.trim().split(' ').count(), 4);

    let solve = linsat(&["solve", "--algo", "brute", "inst.linsat"], dir.path());
    assert!(solve.status.success());
    let record: serde_json::Value = serde_json::from_str(stdout(&solve).trim()).unwrap();
    assert_eq!(record["satisfied"], 8);
    assert_eq!(record["ratio_fraction"], "1");
}

#[test]
fn solve_csv_format_has_header() {
    let dir = tempfile::tempdir().unwrap();
    linsat(
        &["generate", "--q", "2", "--n", "3", "--m", "5", "--r", "1", "-o", "i.linsat"],
        dir.path(),
    );
    let out = linsat(
        &["solve", "--algo", "ce", "--format", "csv", "i.linsat"],
        dir.path(),
    );
    let body = stdout(&out);
    let mut lines = body.lines();
    assert_eq!(
        lines.next().unwrap(),
        "algorithm,seed,iterations,satisfied,constraints,ratio_fraction,ratio_decimal,assignment,wall_time_ms"
    );
    assert!(lines.next().unwrap().starts_with("ce,,,"));
}

#[test]
fn reduce_then_verify_reports_all_equal() {
    let dir = tempfile::tempdir().unwrap();
    linsat(
        &["generate", "--q", "3", "--n", "3", "--m", "4", "--r", "1", "--seed", "21", "-o", "o.linsat"],
        dir.path(),
    );
    let red = linsat(&["reduce", "--r", "2", "o.linsat", "-o", "r.linsat"], dir.path());
    assert!(red.status.success());
    let reduced = std::fs::read_to_string(dir.path().join("r.linsat")).unwrap();
    assert!(reduced.starts_with("linsat 3 3 8\n")); // 4 * C(2,1)

    let verify = linsat(
        &["verify-reduction", "o.linsat", "r.linsat", "--all"],
        dir.path(),
    );
    assert!(verify.status.success());
    let body = stdout(&verify);
    let mut lines = body.lines();
    assert_eq!(lines.next().unwrap(), "assignment,mu,predicted,actual,equal");
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 27); // 3^3 assignments
    assert!(rows.iter().all(|row| row.ends_with(",true")));
}

#[test]
fn reduce_with_r1_is_identity() {
    let dir = tempfile::tempdir().unwrap();
    linsat(
        &["generate", "--q", "7", "--n", "2", "--m", "5", "--r", "1", "--seed", "8", "-o", "o.linsat"],
        dir.path(),
    );
    linsat(&["reduce", "--r", "1", "o.linsat", "-o", "same.linsat"], dir.path());
    let a = std::fs::read_to_string(dir.path().join("o.linsat")).unwrap();
    let b = std::fs::read_to_string(dir.path().join("same.linsat")).unwrap();
    assert_eq!(a, b);
}

#[test]
fn verify_reduction_accepts_assignment_file() {
    let dir = tempfile::tempdir().unwrap();
    linsat(
        &["generate", "--q", "5", "--n", "3", "--m", "3", "--r", "1", "--seed", "4", "-o", "o.linsat"],
        dir.path(),
    );
    linsat(&["reduce", "--r", "3", "o.linsat", "-o", "r.linsat"], dir.path());
    std::fs::write(dir.path().join("xs.txt"), "0 0 0\n1 2 3\n4 4 4\n").unwrap();
    let verify = linsat(
        &["verify-reduction", "o.linsat", "r.linsat", "--assignments", "xs.txt"],
        dir.path(),
    );
    assert!(verify.status.success());
    assert_eq!(stdout(&verify).lines().count(), 4);
}

#[test]
fn analyze_semicircle_emits_expected_grid() {
    let dir = tempfile::tempdir().unwrap();
    let out = linsat(
        &["analyze", "semicircle", "--r-over-q", "1/2", "--steps", "3"],
        dir.path(),
    );
    assert!(out.status.success());
    let body = stdout(&out);
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(lines[0], "ell_over_m,alpha_dqi,hardness_wall,saturated");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("0,0.5"));
    assert_eq!(lines[2], "0.5,1,0.5,true");
    assert_eq!(lines[3], "1,1,0.5,true");
}

#[test]
fn analyze_prange_prints_scalar() {
    let dir = tempfile::tempdir().unwrap();
    let out = linsat(
        &["analyze", "prange", "--n-over-m", "0.1", "--r-over-q", "0.5"],
        dir.path(),
    );
    assert_eq!(stdout(&out).trim(), "0.55");
}

#[test]
fn exit_codes_distinguish_failure_classes() {
    let dir = tempfile::tempdir().unwrap();
    // usage: unknown flag value
    let usage = linsat(&["solve", "--algo", "bogus", "x.linsat"], dir.path());
    assert_eq!(usage.status.code(), Some(2));
    // io: missing file
    let io = linsat(&["solve", "--algo", "ce", "missing.linsat"], dir.path());
    assert_eq!(io.status.code(), Some(3));
    let err: serde_json::Value =
        serde_json::from_str(String::from_utf8(io.stderr).unwrap().trim()).unwrap();
    assert_eq!(err["error"], "io");
    // module: invariant violation in the input
    std::fs::write(dir.path().join("bad.linsat"), "linsat 2 1 1\n1 | 0 1\n").unwrap();
    let module = linsat(&["solve", "--algo", "ce", "bad.linsat"], dir.path());
    assert_eq!(module.status.code(), Some(4));
    // module: not a prime power
    let field = linsat(&["generate", "--q", "6", "--n", "2", "--m", "2", "--r", "1"], dir.path());
    assert_eq!(field.status.code(), Some(4));
}

#[test]
fn bench_writes_records_summary_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bench.txt"),
        "seed = 1\nq = 5\nn = 6\nm = 20\nr = 2\nkinds = random\nalgos = random, ce\ninstances = 2\n",
    )
    .unwrap();
    let out = linsat(
        &["bench", "--manifest", "bench.txt", "--out-dir", "out"],
        dir.path(),
    );
    assert!(out.status.success());
    let records = std::fs::read_to_string(dir.path().join("out/records.jsonl")).unwrap();
    assert_eq!(records.lines().count(), 4);
    let summary = std::fs::read_to_string(dir.path().join("out/summary.csv")).unwrap();
    assert!(summary.starts_with("kind,algorithm,samples,mean_ratio,stddev_ratio\n"));
    let manifest: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("out/run_manifest.json")).unwrap())
            .unwrap();
    assert_eq!(manifest["command"], "bench");
    assert!(manifest["input_hashes"].as_object().unwrap().len() == 1);
    assert!(dir.path().join("out/instances/random-0000.linsat").exists());
}

#[test]
fn bench_summary_shows_ce_at_or_above_baseline() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bench.txt"),
        "seed = 5\nq = 5\nn = 10\nm = 50\nr = 2\nkinds = random\nalgos = random, ce\ninstances = 10\n",
    )
    .unwrap();
    let out = linsat(
        &["bench", "--manifest", "bench.txt", "--out-dir", "out"],
        dir.path(),
    );
    assert!(out.status.success());
    let summary = std::fs::read_to_string(dir.path().join("out/summary.csv")).unwrap();
    let mean_of = |algo: &str| -> f64 {
        summary
            .lines()
            .find(|l| l.starts_with(&format!("random,{},", algo)))
            .unwrap()
            .split(',')
            .nth(3)
            .unwrap()
            .parse()
            .unwrap()
    };
    let ce = mean_of("ce");
    let random = mean_of("random");
    // the greedy's floor is r/q = 0.4 per instance, so also in the mean
    assert!(ce >= 0.4, "ce mean {}", ce);
    assert!(ce >= random, "ce {} below random {}", ce, random);
}

#[test]
fn bench_honors_out_dir_env_var() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(
        dir.path().join("bench.txt"),
        "seed = 1\nq = 3\nn = 3\nm = 6\nr = 1\nkinds = random\nalgos = ce\ninstances = 1\n",
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_linsat"))
        .args(["bench", "--manifest", "bench.txt"])
        .env("LINSAT_OUT_DIR", dir.path().join("envout"))
        .current_dir(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("envout/summary.csv").exists());
}
