use std::process::Command;

use hdccic::cli::run;
use proptest::prelude::*;
use serde_json::Value;

fn bin(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hdccic")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn gdof_example() {
    let (code, stdout) = bin(&["gdof", "--topology", "sym", "--alpha", "0.55", "--beta", "2"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(format!("{:.6}", v["d"].as_f64().unwrap()), "0.666667");
    assert_eq!(format!("{:.6}", v["gamma_star"].as_f64().unwrap()), "0.259259");
    for key in ["d", "gamma_star", "active_branch", "d_nocoop", "d_ideal"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
}

#[test]
fn negative_alpha_is_a_flag_error() {
    assert_eq!(bin(&["gdof", "--topology", "sym", "--alpha", "-1", "--beta", "2"]).0, 2);
    assert_eq!(bin(&["gdof", "--topology", "sym", "--alpha", "nan", "--beta", "2"]).0, 2);
    assert_eq!(bin(&["region-map", "--topology", "z", "--alpha-range", "-1:1:0.5", "--beta-range", "0:1:0.5"]).0, 2);
}

#[test]
fn z_audit_passes() {
    let (code, stdout) = bin(&["audit", "--topology", "z"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("worst gap ≤ 4.507"), "{stdout}");
}

#[test]
fn single_point_verbs_emit_json() {
    for argv in [
        vec!["regime", "--topology", "s", "--alpha", "1.5", "--beta", "3"],
        vec!["regime", "--topology", "sym", "--alpha", "3", "--beta", "4", "--snr-db", "40"],
        vec!["bounds", "--topology", "sym", "--alpha", "3", "--beta", "4", "--snr-db", "40", "--gamma", "0.25"],
        vec!["inner", "--topology", "s", "--alpha", "0.5", "--beta", "3", "--snr-db", "60"],
    ] {
        let out = run(&argv);
        assert_eq!(out.code, 0, "{argv:?}: {}", out.stderr);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert!(v.is_object());
    }
    let out = run(["bounds", "--topology", "sym", "--alpha", "3", "--beta", "4", "--snr-db", "40"]);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    for key in ["cs_bits", "dt_bits", "pv_bits", "min_bits", "gamma"] {
        assert!(v[key].is_number(), "{key}");
    }
}

#[test]
fn region_map_csv() {
    let out = run(["region-map", "--topology", "s", "--alpha-range", "0:4:1", "--beta-range", "0:6:2"]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "alpha,beta,region,d,d_nocoop,d_ideal,coop");
    assert_eq!(lines.len(), 1 + 5 * 4);
}

#[test]
fn out_flag_writes_the_document() {
    let path = std::env::temp_dir().join(format!("hdccic-cli-{}.csv", std::process::id()));
    let argv = ["gap-sweep", "--topology", "z", "--alpha", "3", "--beta", "4", "--snr-range", "20:40:10"];
    let direct = run(argv);
    let p = path.to_str().unwrap();
    let redirected = run(argv.iter().copied().chain(["--out", p]));
    assert_eq!(redirected.code, 0);
    assert!(redirected.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), direct.stdout);
    std::fs::remove_file(path).unwrap();
}

#[test]
fn lda_trace_dump() {
    let out = run(["lda-verify", "--levels", "4:1:8", "--trace", "--seed", "3"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let first = out.stdout.lines().next().unwrap();
    let fields: Vec<&str> = first.split(',').collect();
    assert_eq!(fields[..2], ["0", "PTx"]);
    assert_eq!(fields[2].len(), 8);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identical_argv_gives_identical_bytes(
        a in 0.0f64..4.0, b in 0.0f64..6.0, db in 0.0f64..80.0, t in prop_oneof![Just("sym"), Just("z"), Just("s")], seed in any::<u64>()
    ) {
        let (a, b, db, seed) = (a.to_string(), b.to_string(), db.to_string(), seed.to_string());
        for argv in [
            vec!["gdof", "--topology", t, "--alpha", &a, "--beta", &b],
            vec!["inner", "--topology", t, "--alpha", &a, "--beta", &b, "--snr-db", &db, "--optimize"],
            vec!["bounds", "--topology", t, "--alpha", &a, "--beta", &b, "--snr-db", &db],
            vec!["lda-verify", "--seed", &seed, "--format", "json"],
        ] {
            let first = run(&argv);
            prop_assert_eq!(first.code, 0);
            prop_assert_eq!(first, run(&argv));
        }
    }
}
