use std::process::{Command, Output};

use dirichlet_lab::presets::PresetId;
use dirichlet_lab::report::reports_from_json;
use dirichlet_lab::verify::{Verdict, VerificationReport};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dirichlet-lab"))
        .args(args)
        .env_remove("DIRICHLET_LAB_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

#[test]
fn phi_wintner_json_has_four_checkpoints() {
    let out = run(&["verify", "phi-wintner", "--limit", "1000000", "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["checkpoints"].as_array().unwrap().len(), 4);
    assert_eq!(v["verdict"], "pass");
    for key in ["kind", "alpha", "coefficient", "paper_anchor"] {
        assert!(v["law"].get(key).is_some(), "law.{key} missing");
    }
    for key in ["x", "measured", "predicted", "deviation"] {
        assert!(v["checkpoints"][0].get(key).is_some());
    }
    assert!(v["tolerances"].is_object());
    let report = VerificationReport::from_json(&text).unwrap();
    assert!(report.final_deviation() < 1e-3);
}

#[test]
fn every_preset_round_trips() {
    for preset in PresetId::ALL {
        let out = run(&["verify", preset.as_str(), "--format", "json"]);
        assert_eq!(code(&out), 0, "{preset}");
        let text = stdout(&out);
        let text = text.trim_end();
        if text.starts_with('[') {
            let reports = reports_from_json(text).unwrap();
            assert_eq!(dirichlet_lab::report::reports_to_json(&reports).unwrap(), text);
        } else {
            let report = VerificationReport::from_json(text).unwrap();
            assert_eq!(report.to_json().unwrap(), text, "{preset}");
        }
    }
}

#[test]
fn all_presets_in_one_batch() {
    let out = run(&["verify", "all", "--format", "json", "--limit", "100000"]);
    assert_eq!(code(&out), 0);
    let reports = reports_from_json(&stdout(&out)).unwrap();
    assert_eq!(reports.len(), 9);
    assert!(reports.iter().all(|r| r.verdict == Verdict::Pass));
}

#[test]
fn csv_and_json_carry_identical_numbers() {
    for preset in ["phi-wintner", "logmean-sigma", "kronecker-sigma-k"] {
        let json = stdout(&run(&["verify", preset, "--format", "json", "--limit", "1e5"]));
        let csv = stdout(&run(&["verify", preset, "--format", "csv", "--limit", "1e5"]));
        assert!(csv.starts_with("x,measured,predicted,deviation\r\n"));
        let mut rows = 0;
        for line in csv.split("\r\n").filter(|l| !l.is_empty() && !l.starts_with('x')) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 4);
            assert!(json.contains(&format!("\"x\": {}", fields[0])));
            for (key, value) in ["measured", "predicted", "deviation"].iter().zip(&fields[1..]) {
                assert!(json.contains(&format!("\"{key}\": {value}")), "{preset}: {key} {value}");
            }
            rows += 1;
        }
        assert!(rows >= 3);
    }
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "phi-wintner", "--limit", "1e5", "--tol", "1e-12"]);
    assert_eq!(code(&out), 2);
    assert!(stdout(&out).contains("fail"));

    // sum 1/n^1 diverges, so the Wintner hypothesis does not hold.
    let out = run(&[
        "verify", "custom", "--law", "wintner", "--g", "unit", "--s", "0", "--limit", "1e5",
    ]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));

    let out = run(&[
        "verify", "custom", "--law", "wintner", "--g", "mobius", "--s", "1", "--limit", "1e5",
    ]);
    assert_eq!(code(&out), 0);
}

#[test]
fn usage_errors_exit_64() {
    for args in [
        &["bogus"][..],
        &["verify", "phi-wintner", "--limit", "ten"],
        &["verify", "no-such-preset"],
        &["verify", "custom"],
        &["verify", "custom", "--law", "logmean", "--g", "mu"],
        &["gen", "--fn", "tau"],
        &["gen", "--fn", "phi", "--k", "2"],
        &["verify", "phi-wintner", "--checkpoints", "10,100"],
        &["verify", "phi-wintner", "--tol", "-1"],
        &["constants"],
        &["constants", "--zeta", "1"],
        &["sum", "--fn", "phi"],
    ] {
        assert_eq!(code(&run(args)), 64, "{args:?}");
    }
    assert_eq!(code(&run(&["--help"])), 0);
    assert_eq!(code(&run(&["--version"])), 0);
}

#[test]
fn overflow_exits_70() {
    let out = run(&["gen", "--fn", "id:21", "--limit", "10"]);
    assert_eq!(code(&out), 70);
    assert!(String::from_utf8_lossy(&out.stderr).contains("overflow"));
}

#[test]
fn constants_output() {
    let out = run(&["constants", "--zeta", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains(&format!("{}", std::f64::consts::PI.powi(2) / 6.0)));
    assert!(text.contains("error bound: 0\n"));

    let v: Value = serde_json::from_str(&stdout(&run(&[
        "constants",
        "--gamma",
        "--tol",
        "1e-10",
        "--format",
        "json",
    ])))
    .unwrap();
    assert!((v["value"].as_f64().unwrap() - 0.577_215_664_901_532_9).abs() < 1e-10);
    assert!(v["error_bound"].as_f64().unwrap() <= 1e-10);
    assert_eq!(v["method"], "series-with-tail");
}

#[test]
fn sigma_series_reaches_zeta2_zeta3() {
    let target = 1.977_304_350_297_296;
    for extra in [&[][..], &["--abel"]] {
        let mut args = vec![
            "sum", "--fn", "sigma", "--k", "1", "--s", "3", "--x", "1000000", "--format", "json",
        ];
        args.extend_from_slice(extra);
        let v: Value = serde_json::from_str(&stdout(&run(&args))).unwrap();
        assert!((v["value"].as_f64().unwrap() - target).abs() < 1e-3);
    }
}

#[test]
fn limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_dirichlet-lab"))
        .args(["verify", "phi-wintner", "--format", "json"])
        .env("DIRICHLET_LAB_LIMIT", "100000")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let cps = v["checkpoints"].as_array().unwrap();
    assert_eq!(cps.len(), 3);
    assert_eq!(cps[2]["x"], 100_000);

    let out = run(&[
        "verify",
        "phi-wintner",
        "--checkpoints",
        "100,1000,5000,20000",
        "--limit",
        "20000",
        "--format",
        "json",
    ]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["checkpoints"].as_array().unwrap().len(), 4);
}

#[test]
fn tables_and_convolutions() {
    let csv = stdout(&run(&["gen", "--fn", "phi", "--limit", "10", "--format", "csv"]));
    assert_eq!(
        csv,
        "n,value\r\n1,1\r\n2,1\r\n3,2\r\n4,2\r\n5,4\r\n6,2\r\n7,6\r\n8,4\r\n9,6\r\n10,4\r\n"
    );

    let v: Value = serde_json::from_str(&stdout(&run(&[
        "gen", "--fn", "mu", "--limit", "6", "--format", "json",
    ])))
    .unwrap();
    assert_eq!(v["values"], serde_json::json!([1, -1, -1, 0, -1, 1]));

    let out = stdout(&run(&[
        "convolve", "--fn", "id", "--with", "mobius", "--limit", "12", "--x", "12",
    ]));
    assert_eq!(out.trim(), "(id:1)*(mobius)(12) = 4");

    let series = stdout(&run(&["series", "--fn", "mobius", "--s", "2", "--limit", "1e4"]));
    let last = series.trim_end().lines().last().unwrap();
    let value: f64 = last.split(',').nth(1).unwrap().parse().unwrap();
    assert!((value - 6.0 / std::f64::consts::PI.powi(2)).abs() < 1e-3);
}

#[test]
fn out_dir_receives_one_file_pair_per_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().to_str().unwrap();
    let out = run(&[
        "verify",
        "kronecker-sigma-k",
        "--limit",
        "1e5",
        "--format",
        "text",
        "--out-dir",
        path,
    ]);
    assert_eq!(code(&out), 0);
    for i in 1..=3 {
        let json = std::fs::read_to_string(dir.path().join(format!("kronecker-sigma-k-{i}.json"))).unwrap();
        VerificationReport::from_json(&json).unwrap();
        assert!(dir.path().join(format!("kronecker-sigma-k-{i}.csv")).exists());
    }
}
