//! Black-box tests of the command-line binary: exit codes, report format,
//! CSV output, stdin input, environment validation, and byte determinism.

use std::io::Write;
use std::process::{Command, Output, Stdio};

const BIN: &str = env!("CARGO_BIN_EXE_kappa-forge");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().unwrap()
}

fn write_spec(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn analyze_reports_and_succeeds() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "p.json",
        r#"{"leading":"1","roots":[["1",3],["2",2],["3",3]]}"#,
    );
    let out = run(&["analyze", &spec, "--kappa", "2/3"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("kappa-forge-report/1\n"));
    assert!(text.contains("command: analyze\n"));
    assert!(text.contains("ladder-class: critical-step-3\n"));
    assert!(text.contains("z-nt: 2\n"));
    assert!(text.contains("trivial-multiplicity-2: 1 distinct zeroes"));
    assert!(text.contains("trivial-multiplicity-5: 2 distinct zeroes"));
}

#[test]
fn analyze_accepts_negative_kappa_and_stdin() {
    let mut child = Command::new(BIN)
        .args(["analyze", "-", "--kappa", "-3/7"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"coeffs":["0","-1","0","1"]}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("kappa: -3/7\n"));
    assert!(text.contains("z-nt: 4\n"));
}

#[test]
fn verify_pass_and_falsified_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let real_rooted = write_spec(
        &dir,
        "rr.json",
        r#"{"leading":"1","roots":[["-13",4],["-10",1],["15",1],["20",3]]}"#,
    );
    let out = run(&["verify", &real_rooted, "--theorem", "2.1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: pass\n"));
    assert!(text.contains("result-sweep-monotone: pass"));

    // the counterexample family violates the real-count guess at the top step
    let family = write_spec(&dir, "family.json", r#"{"coeffs":["-16","12","0","3","1"]}"#);
    let out = run(&["verify", &family, "--theorem", "conjecture1"]);
    assert_eq!(code(&out), 1);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("verdict: falsified\n"));
}

#[test]
fn verify_interval_claims_take_hyphenated_endpoints() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "p.json", r#"{"coeffs":["2","2","1","1/3"]}"#);
    let out = run(&[
        "verify", &spec, "--theorem", "A.1", "--kappa", "1", "--interval", "-1/2", "1/2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&[
        "verify", &spec, "--theorem", "A.3", "--kappa", "1", "--interval", "-1/2", "1/2",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "p.json", r#"{"coeffs":["1","0","1"]}"#);
    // malformed rational
    assert_eq!(code(&run(&["analyze", &spec, "--kappa", "x"])), 2);
    // unknown claim id
    assert_eq!(code(&run(&["verify", &spec, "--theorem", "9.9"])), 2);
    // unknown subcommand (clap)
    assert_eq!(code(&run(&["frobnicate"])), 2);
    // malformed polynomial file
    let bad = write_spec(&dir, "bad.json", "not json");
    assert_eq!(code(&run(&["analyze", &bad, "--kappa", "1/2"])), 2);
    // both encodings at once
    let both = write_spec(
        &dir,
        "both.json",
        r#"{"coeffs":["1"],"leading":"1","roots":[["0",1]]}"#,
    );
    assert_eq!(code(&run(&["analyze", &both, "--kappa", "1/2"])), 2);
}

#[test]
fn precondition_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    // degree 1: nothing to analyze
    let linear = write_spec(&dir, "lin.json", r#"{"coeffs":["1","2"]}"#);
    assert_eq!(code(&run(&["analyze", &linear, "--kappa", "1/2"])), 3);
    // coefficients-only input where the claim needs the zeroes
    let coeffs = write_spec(&dir, "c.json", r#"{"coeffs":["1","0","1"]}"#);
    assert_eq!(code(&run(&["verify", &coeffs, "--theorem", "4.1"])), 3);
    // missing --kappa for a claim that needs it
    assert_eq!(code(&run(&["verify", &coeffs, "--theorem", "3.1"])), 3);
}

#[test]
fn io_errors_exit_4() {
    assert_eq!(
        code(&run(&["analyze", "/no/such/file.json", "--kappa", "1/2"])),
        4
    );
}

#[test]
fn thread_cap_env_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "p.json", r#"{"coeffs":["1","0","1"]}"#);
    for bad in ["0", "-1", "many"] {
        let out = Command::new(BIN)
            .args(["analyze", &spec, "--kappa", "1/2"])
            .env("KAPPA_FORGE_THREADS", bad)
            .output()
            .unwrap();
        assert_eq!(code(&out), 2, "KAPPA_FORGE_THREADS={bad}");
    }
    let out = Command::new(BIN)
        .args(["analyze", &spec, "--kappa", "1/2"])
        .env("KAPPA_FORGE_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn sample_r_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "p.json", r#"{"leading":"1","roots":[["0",1],["1",1]]}"#);
    let csv = dir.path().join("r.csv");
    let out = run(&[
        "sample-r", &spec, "--from", "-1", "--to", "1", "--points", "5",
        "--out", csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "x,R");
    assert_eq!(lines.len(), 6);
    // p' vanishes at 1/2: that sample is a pole
    assert_eq!(lines[4], "1/2,pole");
    assert_eq!(lines[3], "0,0");
    assert_eq!(lines[1], "-1,4/9");
    let report = String::from_utf8(out.stdout).unwrap();
    assert!(report.contains("poles: 1\n"));
    assert!(report.contains("csv-digest: "));
}

#[test]
fn sample_r_decimal_rendering() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(&dir, "p.json", r#"{"leading":"1","roots":[["0",1],["1",1]]}"#);
    let csv = dir.path().join("r.csv");
    let out = run(&[
        "sample-r", &spec, "--from", "-1", "--to", "0", "--points", "3",
        "--out", csv.to_str().unwrap(), "--decimal", "4",
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("-1.0000,0.4444"));
}

#[test]
fn search_exit_codes_and_determinism() {
    let clean = run(&["search", "--conjecture", "2", "--trials", "20", "--seed", "7"]);
    assert_eq!(code(&clean), 0, "{}", String::from_utf8_lossy(&clean.stderr));
    let again = run(&["search", "--conjecture", "2", "--trials", "20", "--seed", "7"]);
    assert_eq!(clean.stdout, again.stdout, "same seed must give identical bytes");

    let hit = run(&[
        "search", "--conjecture", "1", "--trials", "5", "--seed", "7",
        "--inject-family", "2",
    ]);
    assert_eq!(code(&hit), 1);
    let text = String::from_utf8(hit.stdout).unwrap();
    assert!(text.contains("violations: "));

    assert_eq!(code(&run(&["search", "--conjecture", "9", "--trials", "1", "--seed", "0"])), 2);
    assert_eq!(code(&run(&["search", "--conjecture", "2", "--trials", "0", "--seed", "0"])), 2);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(
        &dir,
        "p.json",
        r#"{"leading":"1","roots":[["-13",4],["-10",1],["15",1],["20",3]]}"#,
    );
    let a = run(&["analyze", &spec, "--kappa", "9/10"]);
    let b = run(&["analyze", &spec, "--kappa", "9/10"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
}
