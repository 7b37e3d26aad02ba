use std::fs;
use std::process::Command;

use ringscat::config::RunConfig;
use ringscat::error::CliError;
use ringscat::output::OutputDir;
use ringscat::scenarios;

const BIN: &str = env!("CARGO_BIN_EXE_ringscat");

#[test]
fn unknown_keys_are_rejected_with_their_path() {
    let err = RunConfig::from_toml("[grid]\nn = 100\nbogus = 1\n").unwrap_err();
    match err {
        CliError::Config(msg) => assert!(msg.starts_with("grid"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
    let err = RunConfig::from_toml("unknown_top = 3\n").unwrap_err();
    assert!(matches!(err, CliError::Config(_)));
}

#[test]
fn wrongly_typed_values_report_their_path() {
    let err = RunConfig::from_toml("[spacetime]\nLambda = \"big\"\n").unwrap_err();
    match err {
        CliError::Config(msg) => assert!(msg.contains("spacetime.Lambda"), "{msg}"),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn json_and_toml_configs_agree() {
    let toml_cfg = RunConfig::from_toml("[spacetime]\nQ = 0.4\n[grid]\nn = 2001\n").unwrap();
    let json_cfg = RunConfig::from_json(r#"{"spacetime": {"Q": 0.4}, "grid": {"n": 2001}}"#).unwrap();
    assert_eq!(toml_cfg, json_cfg);
    assert_eq!(toml_cfg.spacetime.charge, 0.4);
    assert_eq!(toml_cfg.spacetime.mass, 1.0);
}

#[test]
fn shipped_configs_parse() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/../../configs");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        RunConfig::load(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        count += 1;
    }
    assert!(count >= 7);
}

#[test]
fn unknown_scenario_is_an_error() {
    let cfg = RunConfig::default();
    let err = scenarios::run("nope", &cfg, &OutputDir::discard(), 0).unwrap_err();
    assert!(matches!(err, CliError::UnknownScenario(_)));
}

#[test]
fn invalid_parameters_are_reported() {
    let cfg = RunConfig::from_toml("[spacetime]\nLambda = 1.0\n").unwrap();
    let err = scenarios::run("geodesics", &cfg, &OutputDir::discard(), 0).unwrap_err();
    assert!(matches!(err, CliError::Core { .. }), "{err:?}");
}

#[test]
fn same_seed_gives_identical_outputs() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let cfg = RunConfig::from_toml("[geometry]\npoints = 20\nenergy_samples = 1000\nsweep = 100\n").unwrap();
    for d in [&a, &b] {
        scenarios::run("verify-geometry", &cfg, &OutputDir::new(d.path()).unwrap(), 5).unwrap();
    }
    for name in ["summary.json", "manifest.json", "curvature_points.csv", "horizons.csv"] {
        let x = fs::read(a.path().join(name)).unwrap();
        let y = fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name} differs");
    }
}

#[test]
fn manifest_echoes_config_and_grid_hash() {
    let d = tempfile::tempdir().unwrap();
    let cfg = RunConfig::from_toml("[grid]\nn = 513\n").unwrap();
    scenarios::run("geodesics", &cfg, &OutputDir::new(d.path()).unwrap(), 0).unwrap();
    let m: serde_json::Value = serde_json::from_slice(&fs::read(d.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["config"]["grid"]["n"], 513);
    assert_eq!(m["grid_hash"].as_str().unwrap().len(), 64);
    assert!(m["reference_radius"].as_f64().unwrap() > 2.0);
}

#[test]
fn csv_floats_have_seventeen_significant_digits() {
    let d = tempfile::tempdir().unwrap();
    scenarios::run("geodesics", &RunConfig::default(), &OutputDir::new(d.path()).unwrap(), 0).unwrap();
    let text = fs::read_to_string(d.path().join("path_in.csv")).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("param,t,z,r"));
    let first = lines.next().unwrap().split(',').nth(3).unwrap();
    let mantissa = first.split('e').next().unwrap().trim_start_matches('-').replace('.', "");
    assert_eq!(mantissa.len(), 17, "{first}");
}

#[test]
fn binary_exit_code_follows_the_summary() {
    let d = tempfile::tempdir().unwrap();
    let status = Command::new(BIN).args(["geodesics", "--out"]).arg(d.path()).output().unwrap().status;
    assert!(status.success());
    assert!(d.path().join("summary.json").exists());

    let bad = d.path().join("bad.toml");
    fs::write(&bad, "[grid]\nwhatever = 1\n").unwrap();
    let out = Command::new(BIN).args(["geodesics", "--config"]).arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("grid"));

    let out = Command::new(BIN).args(["not-a-scenario"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_config_runs_through_the_binary() {
    let d = tempfile::tempdir().unwrap();
    let cfg = d.path().join("run.json");
    fs::write(&cfg, r#"{"geodesics": {"samples": 50}}"#).unwrap();
    let status = Command::new(BIN).args(["geodesics", "--config"]).arg(&cfg).arg("--threads").arg("1").output().unwrap().status;
    assert!(status.success());
}
