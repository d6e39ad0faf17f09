use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_neurofuzzy"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generate_run_eval() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("series.csv");
    let out = bin(&["generate", "--count", "1600", "--out", path(&series)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = fs::read_to_string(&series).unwrap();
    assert_eq!(text.lines().next(), Some("value"));
    assert_eq!(text.lines().count(), 1601);

    let config = dir.path().join("experiment.json");
    fs::write(&config, r#"{"h": 5, "lags": [1, 2, 3], "learner": "kaczmarz"}"#).unwrap();
    let results = dir.path().join("results");
    let out = bin(&[
        "run",
        "--config",
        path(&config),
        "--data",
        path(&series),
        "--out-dir",
        path(&results),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    for name in ["train.csv", "test_onestep.csv", "forecast.csv", "summary.json"] {
        assert!(results.join(name).is_file(), "{name}");
    }
    let forecast = fs::read_to_string(results.join("forecast.csv")).unwrap();
    assert_eq!(forecast.lines().count(), 15);

    let fc = results.join("forecast.csv");
    let out = bin(&[
        "eval",
        "--actual",
        path(&fc),
        "--actual-column",
        "actual",
        "--predicted",
        path(&fc),
        "--predicted-column",
        "predicted",
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let metrics: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(metrics["mape"].as_f64().unwrap() >= 0.0);
}

#[test]
fn generated_data_matches_built_in_generation() {
    let dir = tempfile::tempdir().unwrap();
    let series = dir.path().join("series.csv");
    assert!(bin(&["generate", "--out", path(&series)]).status.success());
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    assert!(bin(&["run", "--data", path(&series), "--out-dir", path(&a)]).status.success());
    assert!(bin(&["run", "--out-dir", path(&b)]).status.success());
    for name in ["train.csv", "test_onestep.csv", "forecast.csv"] {
        assert_eq!(
            fs::read(a.join(name)).unwrap(),
            fs::read(b.join(name)).unwrap(),
            "{name}"
        );
    }
}

#[test]
fn freeze_flag_is_echoed() {
    let dir = tempfile::tempdir().unwrap();
    let results = dir.path().join("r");
    assert!(bin(&["run", "--freeze-centers", "--out-dir", path(&results)]).status.success());
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(results.join("summary.json")).unwrap()).unwrap();
    assert_eq!(summary["config"]["freeze_centers"], true);
}

#[test]
fn generate_params_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let params = dir.path().join("mg.json");
    fs::write(&params, r#"{"x0": 1.0}"#).unwrap();
    let series = dir.path().join("flat.csv");
    let out = bin(&["generate", "--params", path(&params), "--count", "20", "--out", path(&series)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let values: Vec<f64> = fs::read_to_string(&series)
        .unwrap()
        .lines()
        .skip(1)
        .map(|l| l.parse().unwrap())
        .collect();
    assert!(values.iter().all(|v| (v - 1.0).abs() < 1e-9));

    let out = bin(&["generate", "--tau", "17.03", "--out", path(&series)]);
    assert!(!out.status.success());
}

#[test]
fn errors_are_one_line_and_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    fs::write(&bad, "value\n1.0\nnope\n").unwrap();
    let out = bin(&["run", "--data", path(&bad), "--out-dir", path(dir.path())]);
    assert!(!out.status.success());
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.trim_end().lines().count(), 1, "{stderr}");
    assert!(stderr.contains(":3:"), "{stderr}");

    let config = dir.path().join("c.json");
    fs::write(&config, r#"{"split": 2.0}"#).unwrap();
    let out = bin(&["run", "--config", path(&config), "--out-dir", path(dir.path())]);
    assert!(!out.status.success());

    let out = bin(&["eval", "--actual", "/nonexistent.csv", "--predicted", "/nonexistent.csv"]);
    assert!(!out.status.success());
}
