use serde_json::Value;
use std::process::{Command, Output};

fn ads2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ads2"))
        .args(args)
        .env_remove("ADS2_THREADS")
        .output()
        .expect("spawn ads2")
}

fn json_ok(args: &[&str]) -> Value {
    let out = ads2(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).expect("stdout is JSON");
    assert_eq!(v["schema"], 1);
    v
}

fn omegas(v: &Value) -> Vec<f64> {
    v["result"]["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["omega_or_nu"].as_f64().unwrap())
        .collect()
}

#[test]
fn dirichlet_spectrum_is_lambda_plus_n() {
    let v = json_ok(&["spectrum", "--lambda", "0.75", "--bc", "dirichlet"]);
    let w = omegas(&v);
    for (n, w) in w.iter().take(8).enumerate() {
        assert!((w - (0.75 + n as f64)).abs() < 1e-8, "n = {n}: {w}");
    }
    let v = json_ok(&["spectrum", "--lambda", "2", "--bc", "dirichlet"]);
    let w = omegas(&v);
    for (n, w) in w.iter().take(8).enumerate() {
        assert!((w - (2.0 + n as f64)).abs() < 1e-8, "n = {n}: {w}");
    }
}

#[test]
fn robin_at_lambda_one_has_one_negative_eigenvalue() {
    let v = json_ok(&["spectrum", "--lambda", "1", "--bc", "robin", "--alpha", "2"]);
    let neg: Vec<&Value> = v["result"]["eigenvalues"].as_array().unwrap().iter().filter(|e| e["negative"] == true).collect();
    assert_eq!(neg.len(), 1);
    let modes = json_ok(&["negative-modes", "--alpha", "2"]);
    let nu = modes["result"]["modes"][0]["nu"].as_f64().unwrap();
    assert!((neg[0]["omega_or_nu"].as_f64().unwrap() - nu).abs() < 1e-8);
}

#[test]
fn every_subcommand_emits_schema_one() {
    let cases: &[&[&str]] = &[
        &["spectrum", "--lambda", "1.25", "--bc", "neumann", "--hi", "30"],
        &["modes", "--lambda", "0.9", "--family", "iii", "--count", "3", "--samples", "5"],
        &["classify", "--lambda", "0.75", "--bc", "mixed0"],
        &["invariance", "--lambda", "0.75", "--bc", "neumann", "--random", "3"],
        &["map-u", "--lambda", "0.8", "--random", "2"],
        &["flux", "--lambda", "0.9", "--bc", "neumann", "--beta", "0.2"],
        &["negative-modes", "--alpha", "1"],
        &["fock-check", "--lambda", "0.75", "--family", "mixed", "--modes", "4", "--max-occupation", "4"],
        &["rayleigh", "--a", "1", "--k-min", "3", "--k-max", "5"],
        &["table1"],
    ];
    for args in cases {
        let v = json_ok(args);
        assert_eq!(v["command"], args[0]);
        assert!(!v["result"].is_null(), "{args:?}");
        let mut csv_args = args.to_vec();
        csv_args.extend(["--format", "csv"]);
        let out = ads2(&csv_args);
        assert_eq!(out.status.code(), Some(0), "{csv_args:?}");
        let text = String::from_utf8(out.stdout).unwrap();
        let mut lines = text.lines();
        assert!(lines.next().unwrap().starts_with("schema,"), "{csv_args:?}");
        assert!(lines.all(|l| l.starts_with("1,")), "{csv_args:?}");
    }
}

#[test]
fn classify_and_flux_agree_on_neumann() {
    let v = json_ok(&["classify", "--lambda", "1.25", "--bc", "neumann"]);
    assert_eq!(v["result"]["symbol"], "F+_{1-lambda}");
    assert_eq!(v["result"]["label"]["unitary"], false);
    let f = json_ok(&["flux", "--lambda", "1.25", "--bc", "neumann"]);
    let beta = f["result"]["killing_beta"]["beta"].as_f64().unwrap();
    assert!((beta - (1.0 - 1.25) / (3.0 - 2.5)).abs() < 1e-10);
    assert_eq!(f["result"]["equivalence"]["all_equivalent"], true);
}

#[test]
fn scan_resolution_warning_exits_two() {
    let out = ads2(&["spectrum", "--lambda", "0.75", "--bc", "dirichlet", "--lo", "0", "--hi", "30", "--grid-points", "5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["warnings"].as_array().unwrap().len(), 1);
}

#[test]
fn errors_exit_one_with_diagnostics_on_stderr() {
    let dir = std::env::temp_dir().join(format!("ads2-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"lamda": 1.0}"#).unwrap();
    for args in [
        vec!["spectrum", "--config", bad.to_str().unwrap()],
        vec!["spectrum", "--lambda", "2", "--bc", "neumann"],
        vec!["spectrum", "--bc", "robin"],
        vec!["spectrum", "--no-such-flag"],
        vec!["modes", "--lambda", "0.75", "--family", "v"],
    ] {
        let out = ads2(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn config_file_output_file_and_overrides() {
    let dir = std::env::temp_dir().join(format!("ads2-cli-cfg-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("run.json");
    let out_path = dir.join("out.json");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"lambda": 0.9, "bc": {{"named": "mixed90"}}, "scan": {{"lo": -5, "hi": 40, "grid_points": 801, "tol": 1e-12}}, "output": "{}"}}"#,
            out_path.display()
        ),
    )
    .unwrap();
    let out = ads2(&["spectrum", "--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(v["config"]["scan"]["grid_points"], 801);
    let w = omegas(&v);
    for (n, w) in w.iter().enumerate() {
        assert!((w - (n as f64 + 0.5)).abs() < 1e-8);
    }
    // flags override the file
    let o2 = dir.join("out2.json");
    let out = ads2(&["spectrum", "--config", cfg.to_str().unwrap(), "--lambda", "1.2", "-o", o2.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&o2).unwrap()).unwrap();
    assert_eq!(v["config"]["lambda"], 1.2);
}

#[test]
fn echoed_config_round_trips() {
    let v = json_ok(&["spectrum", "--lambda", "0.6", "--bc", "pauli", "--theta", "0.3", "--phi", "1.1", "--hi", "20"]);
    let text = serde_json::to_string(&v["config"]).unwrap();
    let c = ads2::config::RunConfig::from_json(&text).unwrap();
    let canonical = c.to_canonical_json();
    assert_eq!(ads2::config::RunConfig::from_json(&canonical).unwrap().to_canonical_json(), canonical);
    assert_eq!(serde_json::from_str::<Value>(&canonical).unwrap(), v["config"]);
}

#[test]
fn output_does_not_depend_on_thread_count() {
    let args = ["invariance", "--lambda", "1.25", "--bc", "mixed0", "--random", "6", "--seed", "5"];
    let one = ads2(&args);
    let many = Command::new(env!("CARGO_BIN_EXE_ads2")).args(args).env("ADS2_THREADS", "4").output().unwrap();
    let flag = ads2(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(one.stdout, flag.stdout);
}
