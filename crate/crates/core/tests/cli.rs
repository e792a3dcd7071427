//! End-to-end checks of the command-line surface and its exit-code contract.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cubic-weyl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gauss_both_mode_agrees() {
    let out = run(&["gauss", "1", "0", "4", "--mode", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("closed:"), "{text}");
    assert!(text.contains("brute value:"), "{text}");
    let diff_line = text
        .lines()
        .find(|l| l.starts_with("abs diff:"))
        .expect("diff printed");
    let diff: f64 = diff_line.trim_start_matches("abs diff:").trim().parse().unwrap();
    assert!(diff < 1e-9);
}

#[test]
fn gauss_vanishing_case() {
    let out = run(&["gauss", "1", "0", "6"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("closed: 0"), "{text}");
}

#[test]
fn gauss_invalid_modulus_is_usage_error() {
    let out = run(&["gauss", "1", "0", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gauss_noncoprime_falls_back() {
    let out = run(&["gauss", "2", "0", "4", "--mode", "both"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("falling back"), "{text}");
    assert!(text.contains("brute value:"), "{text}");
}

#[test]
fn weylsum_values() {
    let out = run(&["weylsum", "1", "5", "5", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let abs_line = text.lines().find(|l| l.starts_with("|S| =")).unwrap();
    let abs: f64 = abs_line
        .split_whitespace()
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!(abs < 1e-12, "{text}");

    let out = run(&["weylsum", "1", "9", "9", "0"]);
    let text = stdout(&out);
    assert!(text.contains("7.59626"), "{text}");

    let out = run(&["weylsum", "1", "4", "10", "0"]);
    assert!(out.status.success());

    let out = run(&["weylsum", "2", "4", "10", "0"]);
    assert_eq!(out.status.code(), Some(2), "gcd(a, q) > 1 is a usage error");
}

#[test]
fn verify_reciprocity_passes() {
    let out = run(&["verify", "reciprocity", "--cap", "99"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("reciprocity"), "{text}");
    assert!(text.lines().any(|l| l.contains(" 0") && l.contains("reciprocity")));
}

#[test]
fn verify_all_small_cap() {
    let out = run(&["verify", "all", "--cap", "30", "--seed", "5"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    for name in [
        "gauss-oracle",
        "gauss-magnitude",
        "gauss-vanishing",
        "gauss-multiplicativity",
        "gauss-doubling",
        "weyl-differencing",
        "d-partition",
        "short-approx",
        "congruence-count",
        "reciprocity",
        "poisson",
    ] {
        assert!(text.contains(name), "missing suite {name} in:\n{text}");
    }
}

#[test]
fn sweep_roundtrip_and_determinism() {
    let dir = std::env::temp_dir();
    let cfg_path = dir.join(format!("cubic-weyl-sweep-{}.cfg", std::process::id()));
    std::fs::write(
        &cfg_path,
        "q_list = 5, 9, 25\ntheta = 1.0\na_samples = 4\ngamma_list = 0\nseed = 11\n",
    )
    .unwrap();
    let out1 = run(&["sweep", "--config", cfg_path.to_str().unwrap()]);
    assert!(out1.status.success());
    let csv1 = stdout(&out1);
    assert!(csv1.starts_with("q,N,a,gamma,abs_sum,ratio,weyl_bound,exponent\n"));
    assert!(csv1.ends_with('\n'));
    assert!(!csv1.contains('\r'));

    let out2 = run(&["sweep", "--config", cfg_path.to_str().unwrap()]);
    assert_eq!(csv1, stdout(&out2), "identical config must give identical bytes");

    // --out writes the same bytes to a file
    let csv_path = dir.join(format!("cubic-weyl-sweep-{}.csv", std::process::id()));
    let out3 = run(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out3.status.success());
    assert_eq!(csv1, std::fs::read_to_string(&csv_path).unwrap());

    // seed override changes the sampled rows
    let out4 = run(&[
        "sweep",
        "--config",
        cfg_path.to_str().unwrap(),
        "--seed",
        "999",
    ]);
    assert!(out4.status.success());
    assert_ne!(csv1, stdout(&out4));

    let _ = std::fs::remove_file(cfg_path);
    let _ = std::fs::remove_file(csv_path);
}

#[test]
fn trace_emits_stable_json() {
    let out = run(&["trace", "1", "125", "26", "0"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(parsed["q"], "125");
    assert_eq!(parsed["q0"], "125");
    assert_eq!(parsed["b"], "3");
    assert_eq!(parsed["congruence_ok"], true);
    assert_eq!(parsed["t_identity_ok"], true);

    let out2 = run(&["trace", "1", "125", "26", "0"]);
    assert_eq!(text, stdout(&out2));

    let out = run(&["trace", "5", "125", "26", "0"]);
    assert_eq!(out.status.code(), Some(2), "gcd(a, q) > 1 rejected");
}

#[test]
fn unknown_flag_is_usage_error() {
    let out = run(&["weylsum", "1", "9", "9", "0", "--definitely-not-a-flag"]);
    assert_eq!(out.status.code(), Some(2));
}
