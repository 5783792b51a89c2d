//! Golden-file tests: fixed invocations must reproduce frozen output bytes,
//! and failures must use the documented exit codes with one diagnostic record
//! on stderr.

use std::path::PathBuf;
use std::process::{Command, Output};

fn data(file: &str) -> PathBuf {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.extend(["tests", "data", file]);
    p
}

fn bfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bfree")).args(args).output().expect("spawn bfree")
}

fn run_ok(args: &[&str]) -> String {
    let out = bfree(args);
    assert!(
        out.status.success(),
        "exit {:?}, stderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 stdout")
}

fn family_arg(file: &str) -> String {
    data(file).display().to_string()
}

#[test]
fn measure_exact_rational() {
    let out = run_ok(&["measure", "--family", &family_arg("f49.json"), "--pattern", "10"]);
    assert_eq!(
        out,
        "{\"K\":2,\"cmd\":\"measure\",\"exact\":true,\"family\":\"3288c00a88ea86e1\",\"hi\":\"5/18\",\"hi_f64\":0.2777777777777778,\"lo\":\"5/18\",\"lo_f64\":0.2777777777777778,\"method\":\"nu_B\",\"pattern\":\"10\",\"seed\":null,\"seq\":0}\n"
    );
}

#[test]
fn measure_signed_pattern() {
    let out = run_ok(&["measure", "--family", &family_arg("roots23.json"), "--pattern", "+-"]);
    assert_eq!(
        out,
        "{\"K\":2,\"cmd\":\"measure\",\"exact\":true,\"family\":\"2b57c7de6169cb80\",\"hi\":\"7/72\",\"hi_f64\":0.09722222222222222,\"lo\":\"7/72\",\"lo_f64\":0.09722222222222222,\"method\":\"nu_M\",\"pattern\":\"+-\",\"seed\":null,\"seq\":0}\n"
    );
}

#[test]
fn entropy_exact_finite() {
    let out = run_ok(&["entropy", "--family", &family_arg("f4925.json")]);
    assert_eq!(
        out,
        "{\"K\":3,\"cmd\":\"entropy\",\"exact\":true,\"family\":\"bd176b33db61da3c\",\"hi\":\"16/25\",\"hi_f64\":0.64,\"lo\":\"16/25\",\"lo_f64\":0.64,\"method\":\"truncated-product\",\"seed\":null,\"seq\":0}\n"
    );
}

#[test]
fn admissible_reports_violated_modulus() {
    let out =
        run_ok(&["admissible", "--family", &family_arg("squarefree_small.json"), "--pattern", "1111"]);
    assert_eq!(
        out,
        "{\"admissible\":false,\"cmd\":\"admissible\",\"family\":\"db7867bdb02be0b3\",\"method\":\"residue-count\",\"pattern\":\"1111\",\"seed\":null,\"seq\":0,\"violated_modulus\":4}\n"
    );
    let out = run_ok(&["admissible", "--family", &family_arg("f49.json"), "--pattern", "1*1"]);
    assert!(out.contains("\"admissible\":true"));
    assert!(out.contains("\"violated_modulus\":null"));
}

#[test]
fn sieve_hex_bitstream() {
    let out = run_ok(&[
        "sieve", "--family", &family_arg("f49.json"), "--lo", "1", "--hi", "13", "--hex",
    ]);
    assert!(out.contains("\"eta_hex\":\"7706\""));
}

#[test]
fn sieve_mu_records() {
    let out = run_ok(&[
        "sieve", "--family", &family_arg("moebius.json"), "--lo", "1", "--hi", "11", "--mu",
    ]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 10);
    // the classical Moebius prefix 1,-1,-1,0,-1,1,-1,0,0,1
    let mus: Vec<i64> = lines
        .iter()
        .map(|l| {
            let v: serde_json::Value = serde_json::from_str(l).unwrap();
            v["mu"].as_i64().unwrap()
        })
        .collect();
    assert_eq!(mus, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
}

#[test]
fn twins_and_gamma() {
    let out = run_ok(&["twins", "--family", &family_arg("f2.json"), "--gap", "1", "--N", "10"]);
    assert!(out.contains("\"count\":0"));
    let out = run_ok(&["gamma", "--family", &family_arg("f2.json"), "--n", "10", "--method", "dp"]);
    assert!(out.contains("\"count\":\"63\""));
    let brute =
        run_ok(&["gamma", "--family", &family_arg("f2.json"), "--n", "10", "--method", "brute"]);
    assert!(brute.contains("\"count\":\"63\""));
}

#[test]
fn chowla_even_exponents_match_reference() {
    let out = run_ok(&[
        "chowla", "--family", &family_arg("roots23.json"),
        "--shifts", "0,1", "--exponents", "2,2", "--N", "72",
    ]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["value"], "7/18");
    assert_eq!(v["reference"]["lo"], "7/18");
    assert_eq!(v["reference"]["exact"], true);
}

#[test]
fn bias_and_nuprime_orbit() {
    let out = run_ok(&["bias", "--family", &family_arg("roots23.json")]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["lo"], "1/2");
    assert_eq!(v["exact"], true);
    assert_eq!(v["sigma_lo"], "5/6");
    let out = run_ok(&[
        "nuprime", "--family", &family_arg("roots23.json"),
        "--pattern", "+", "--method", "orbit", "--N", "60",
    ]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["estimate"], "1/2");
}

#[test]
fn identical_config_identical_bytes() {
    let args = [
        "bernoulli", "--roots-sweep", "10,100", "--m", "2", "--samples", "20000", "--seed", "9",
    ];
    let a = run_ok(&args);
    let b = run_ok(&args);
    assert_eq!(a, b);
    // thread count changes nothing
    let mut with_threads = args.to_vec();
    with_threads.extend(["--threads", "1"]);
    let c = run_ok(&with_threads);
    assert_eq!(a, c);
}

#[test]
fn csv_export() {
    let out = run_ok(&["bernoulli", "--roots-sweep", "10", "--m", "1", "--format", "csv"]);
    let mut lines = out.lines();
    let header = lines.next().unwrap();
    assert_eq!(
        header,
        "X,cmd,deviation,deviation_f64,error,exact,family,label,m,method,samples,seed,seq,sigma_f64,sigma_hi,sigma_lo"
    );
    let row = lines.next().unwrap();
    assert!(row.contains("1/14"), "row = {row}");
}

#[test]
fn exit_codes() {
    // validation: non-coprime family
    let out = bfree(&["entropy", "--family", &family_arg("bad_noncoprime.json")]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(diag["error"], "validation");
    assert!(diag["message"].as_str().unwrap().contains('4'));

    // validation: malformed family file
    let out = bfree(&["entropy", "--family", &family_arg("bad_malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let diag: serde_json::Value =
        serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim()).unwrap();
    assert_eq!(diag["error"], "validation");

    // budget: brute force over the cap
    let out = bfree(&["gamma", "--family", &family_arg("f2.json"), "--n", "25", "--method", "brute"]);
    assert_eq!(out.status.code(), Some(3));

    // unsupported: Monte Carlo sampling with divergent Sigma
    let out = bfree(&[
        "nuprime", "--family", &family_arg("moebius.json"),
        "--pattern", "+", "--method", "mc", "--samples", "10", "--seed", "1",
    ]);
    assert_eq!(out.status.code(), Some(4));

    // validation: randomized subcommand without a seed
    let out = bfree(&[
        "recover", "--family", &family_arg("f49.json"), "--K", "2", "--window", "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn recover_summary_counts() {
    let out = run_ok(&[
        "recover", "--family", &family_arg("f49.json"),
        "--K", "2", "--window", "200", "--trials", "5", "--seed", "77",
    ]);
    let last = out.lines().last().unwrap();
    let v: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(v["method"], "summary");
    assert_eq!(v["contains_true_trials"], 5);
}
